"""Numerical polynomials in the binomial basis and lattice-point counting.

A bivariate numerical polynomial is stored by its integer coefficients a_ij in

    f(t1, t2) = sum_ij a_ij * C(t1 + i, i) * C(t2 + j, j),

which is unique, so structural equality is polynomial equality.  Here
C(t, k) is the polynomial t(t-1)...(t-k+1)/k!, C(t, 0) = 1 and C(t, k) = 0
for k < 0.

The inclusion-exclusion formulas run over all subsets of the (minimized)
point set, so their cost is exponential in the antichain size; this is meant
for desk-scale inputs (a dozen or so points).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from .algebra import format_coefficient_term
from .errors import DimensionMismatch, NonNumericalPolynomial

Point = Tuple[int, ...]


def binom(t: int, k: int) -> int:
    """C(t, k) for any integer t, as the value of the polynomial in t."""
    if k < 0:
        return 0
    num = 1
    for j in range(k):
        num *= t - j
    return num // factorial(k)


# -- univariate helpers (lists of coefficients, index = power / basis index) --

def _trim(v: Sequence) -> list:
    v = list(v)
    while v and not v[-1]:
        v.pop()
    return v


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> List[Fraction]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


@lru_cache(maxsize=None)
def _binom_monomial(k: int, shift: int) -> Tuple[Fraction, ...]:
    """Power-basis coefficients of C(t + shift, k)."""
    if k < 0:
        return ()
    p = [Fraction(1)]
    for j in range(k):
        p = _poly_mul(p, [Fraction(shift - j), Fraction(1)])
    f = factorial(k)
    return tuple(c / f for c in p)


def _to_binomial_1d(v: Sequence[Fraction]) -> List[Fraction]:
    """Power basis -> coefficients b_i of sum b_i C(t + i, i)."""
    v = [Fraction(c) for c in _trim(v)]
    out = [Fraction(0)] * len(v)
    for k in range(len(v) - 1, -1, -1):
        if not v[k]:
            continue
        basis = _binom_monomial(k, k)
        b = v[k] / basis[k]
        out[k] = b
        for i, c in enumerate(basis):
            v[i] -= b * c
    return out


def _from_binomial_1d(b: Sequence) -> List[Fraction]:
    out = [Fraction(0)] * len(b)
    for k, bk in enumerate(b):
        if bk:
            for i, c in enumerate(_binom_monomial(k, k)):
                out[i] += bk * c
    return out


@lru_cache(maxsize=None)
def shifted_binomial(k: int, shift: int) -> Tuple[int, ...]:
    """Binomial-basis coefficients (integers) of C(t + shift, k)."""
    b = _to_binomial_1d(_binom_monomial(k, shift))
    assert all(c.denominator == 1 for c in b)
    return tuple(int(c) for c in _trim(b))


def _as_int(c: Fraction) -> int:
    if c.denominator != 1:
        raise NonNumericalPolynomial(f"non-integer binomial-basis coefficient {c}")
    return int(c)


def _term_body(powers: Sequence[Tuple[str, int]]) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in powers if e)


# -- NumPoly2 ------------------------------------------------------------

class NumPoly2:
    """Bivariate numerical polynomial in canonical binomial-basis form."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Iterable[int]] = ()):
        rows = [[int(c) for c in row] for row in coeffs]
        width = max((len(r) for r in rows), default=0)
        rows = [r + [0] * (width - len(r)) for r in rows]
        while rows and not any(rows[-1]):
            rows.pop()
        while rows and not any(r[-1] for r in rows):
            rows = [r[:-1] for r in rows]
        self.coeffs: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in rows)

    @classmethod
    def zero(cls) -> "NumPoly2":
        return cls()

    @classmethod
    def from_dict(cls, entries: Dict[Tuple[int, int], int]) -> "NumPoly2":
        if not entries:
            return cls()
        p = max(i for i, _ in entries) + 1
        q = max(j for _, j in entries) + 1
        rows = [[0] * q for _ in range(p)]
        for (i, j), c in entries.items():
            rows[i][j] += c
        return cls(rows)

    @classmethod
    def binomial_product(cls, k1: int, shift1: int, k2: int, shift2: int, coeff: int = 1) -> "NumPoly2":
        """coeff * C(t1 + shift1, k1) * C(t2 + shift2, k2)."""
        a = shifted_binomial(k1, shift1)
        b = shifted_binomial(k2, shift2)
        return cls([[coeff * x * y for y in b] for x in a])

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, i: int, j: int) -> int:
        if i < len(self.coeffs) and j < len(self.coeffs[0]):
            return self.coeffs[i][j]
        return 0

    def items(self) -> Iterator[Tuple[int, int, int]]:
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c:
                    yield i, j, c

    @property
    def deg_t1(self) -> int:
        return len(self.coeffs) - 1

    @property
    def deg_t2(self) -> int:
        return len(self.coeffs[0]) - 1 if self.coeffs else -1

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j, _ in self.items()), default=-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, NumPoly2) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _combine(self, other: "NumPoly2", sign: int) -> "NumPoly2":
        p = max(len(self.coeffs), len(other.coeffs))
        q = max(self.deg_t2, other.deg_t2) + 1
        return NumPoly2([[self.coeff(i, j) + sign * other.coeff(i, j) for j in range(q)] for i in range(p)])

    def __add__(self, other: "NumPoly2") -> "NumPoly2":
        return self._combine(other, 1)

    def __sub__(self, other: "NumPoly2") -> "NumPoly2":
        return self._combine(other, -1)

    def __neg__(self) -> "NumPoly2":
        return NumPoly2([[-c for c in row] for row in self.coeffs])

    def scale(self, k: int) -> "NumPoly2":
        return NumPoly2([[k * c for c in row] for row in self.coeffs])

    def __call__(self, r: int, s: int) -> int:
        return eval2(self, r, s)

    def to_monomial(self) -> List[List[Fraction]]:
        return to_monomial_basis(self)

    def __repr__(self) -> str:
        return f"NumPoly2({[list(r) for r in self.coeffs]})"

    def __str__(self) -> str:
        return format_monomial_matrix(self.to_monomial(), ("t1", "t2"))

    def binomial_str(self) -> str:
        if not self.coeffs:
            return "0"
        out = []
        entries = sorted(self.items(), key=lambda e: (-(e[0] + e[1]), -e[0]))
        for i, j, c in entries:
            body = "*".join(f"C({v}+{k},{k})" for v, k in (("t1", i), ("t2", j)) if k)
            out.append(format_coefficient_term(Fraction(c), body, not out))
        return "".join(out)


def format_monomial_matrix(m: Sequence[Sequence[Fraction]], names: Tuple[str, str]) -> str:
    entries = [(i, j, c) for i, row in enumerate(m) for j, c in enumerate(row) if c]
    if not entries:
        return "0"
    entries.sort(key=lambda e: (-(e[0] + e[1]), -e[0]))
    out = []
    for i, j, c in entries:
        out.append(format_coefficient_term(c, _term_body([(names[0], i), (names[1], j)]), not out))
    return "".join(out)


def eval2(P: NumPoly2, r: int, s: int) -> int:
    total = 0
    for i, j, c in P.items():
        total += c * binom(r + i, i) * binom(s + j, j)
    return total


def to_monomial_basis(P: NumPoly2) -> List[List[Fraction]]:
    """Coefficient matrix of P in the power basis t1^i t2^j."""
    rows = [_from_binomial_1d(row) for row in P.coeffs]
    if not rows:
        return []
    q = len(rows[0])
    cols = [_from_binomial_1d([rows[i][j] for i in range(len(rows))]) for j in range(q)]
    return [[cols[j][i] for j in range(q)] for i in range(len(rows))]


def to_binomial_basis(m: Sequence[Sequence]) -> NumPoly2:
    """Power-basis coefficient matrix -> canonical NumPoly2.

    Raises NonNumericalPolynomial if the input is not integer valued.
    """
    rows = [[Fraction(c) for c in row] for row in m]
    if not rows:
        return NumPoly2()
    q = max(len(r) for r in rows)
    rows = [r + [Fraction(0)] * (q - len(r)) for r in rows]
    conv_rows = [_to_binomial_1d(r) + [Fraction(0)] * q for r in rows]
    conv_rows = [r[:q] for r in conv_rows]
    p = len(rows)
    cols = []
    for j in range(q):
        c = _to_binomial_1d([conv_rows[i][j] for i in range(p)])
        cols.append(c + [Fraction(0)] * (p - len(c)))
    return NumPoly2([[_as_int(cols[j][i]) for j in range(q)] for i in range(p)])


# -- NumPoly1 ------------------------------------------------------------

class NumPoly1:
    """Univariate numerical polynomial sum_i b_i C(t + i, i)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs: Tuple[int, ...] = tuple(int(c) for c in _trim(list(coeffs)))

    @classmethod
    def binomial(cls, k: int, shift: int, coeff: int = 1) -> "NumPoly1":
        """coeff * C(t + shift, k)."""
        return cls(coeff * c for c in shifted_binomial(k, shift))

    @classmethod
    def from_monomial(cls, v: Sequence) -> "NumPoly1":
        return cls(_as_int(c) for c in _to_binomial_1d([Fraction(c) for c in v]))

    def to_monomial(self) -> List[Fraction]:
        return _from_binomial_1d(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, r: int) -> int:
        return sum(c * binom(r + i, i) for i, c in enumerate(self.coeffs))

    def __add__(self, other: "NumPoly1") -> "NumPoly1":
        k = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (k - len(self.coeffs))
        b = other.coeffs + (0,) * (k - len(other.coeffs))
        return NumPoly1(x + y for x, y in zip(a, b))

    def __sub__(self, other: "NumPoly1") -> "NumPoly1":
        return self + NumPoly1(-c for c in other.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, NumPoly1) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"NumPoly1({list(self.coeffs)})"

    def __str__(self) -> str:
        m = self.to_monomial()
        if not any(m):
            return "0"
        out = []
        for i in range(len(m) - 1, -1, -1):
            if m[i]:
                out.append(format_coefficient_term(m[i], _term_body([("t", i)]), not out))
        return "".join(out)

    def binomial_str(self) -> str:
        if not self.coeffs:
            return "0"
        out = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                out.append(format_coefficient_term(Fraction(c), f"C(t+{i},{i})" if i else "", not out))
        return "".join(out)


# -- exponent sets -------------------------------------------------------

def dominates(v: Point, a: Point) -> bool:
    """v >=_P a in the product order."""
    return all(x >= y for x, y in zip(v, a))


@dataclass(frozen=True)
class ExponentSet:
    """A finite subset of N^(m+n); coordinates 1..m form the first block."""

    m: int
    n: int
    points: FrozenSet[Point]

    def __init__(self, m: int, n: int, points: Iterable[Iterable[int]] = ()):
        pts = frozenset(tuple(int(c) for c in p) for p in points)
        for p in pts:
            if len(p) != m + n:
                raise DimensionMismatch(f"point {p} does not have length m+n={m + n}")
            if min(p, default=0) < 0:
                raise ValueError(f"point {p} has a negative coordinate")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def sorted_points(self) -> List[Point]:
        return sorted(self.points)


def minimize_antichain(A: ExponentSet) -> ExponentSet:
    """Keep only the <=_P-minimal points of A."""
    pts = A.sorted_points()
    keep = [p for p in pts if not any(q != p and dominates(p, q) for q in pts)]
    return ExponentSet(A.m, A.n, keep)


def _lcm_counts(points: Sequence[Point]) -> Dict[Point, int]:
    """Signed subset counts: maps componentwise max of sigma -> sum of (-1)^|sigma|."""
    k = len(points[0]) if points else 0
    acc: Dict[Point, int] = {(0,) * k: 1}
    for p in points:
        new = dict(acc)
        for lcm, c in acc.items():
            key = tuple(max(x, y) for x, y in zip(lcm, p))
            new[key] = new.get(key, 0) - c
        acc = {key: c for key, c in new.items() if c}
    return acc


def omega_A(A: ExponentSet) -> NumPoly2:
    """The (m, n)-dimension polynomial of A by inclusion-exclusion."""
    m, n = A.m, A.n
    pts = minimize_antichain(A).sorted_points()
    if not pts:
        return NumPoly2.binomial_product(m, m, n, n)
    shifts: Dict[Tuple[int, int], int] = {}
    for lcm, c in _lcm_counts(pts).items():
        key = (sum(lcm[:m]), sum(lcm[m:]))
        shifts[key] = shifts.get(key, 0) + c
    out = NumPoly2()
    for (b, c), coeff in sorted(shifts.items()):
        if coeff:
            out = out + NumPoly2.binomial_product(m, m - b, n, n - c, coeff)
    return out


def compositions(k: int, bound: int) -> Iterator[Point]:
    """All k-tuples of naturals with coordinate sum <= bound."""
    if k == 0:
        yield ()
        return
    if bound < 0:
        return
    for first in range(bound + 1):
        for rest in compositions(k - 1, bound - first):
            yield (first,) + rest


def count_V_A(A: ExponentSet, r: int, s: int) -> int:
    """Exhaustive count of v with |v_x| <= r, |v_d| <= s dominating no point of A."""
    pts = A.sorted_points()
    count = 0
    for v1 in compositions(A.m, r):
        for v2 in compositions(A.n, s):
            v = v1 + v2
            if not any(dominates(v, a) for a in pts):
                count += 1
    return count


def count_V_A_grid(A: ExponentSet, r_max: int, s_max: int) -> Dict[Tuple[int, int], int]:
    """count_V_A(A, r, s) for all 0 <= r <= r_max, 0 <= s <= s_max.

    Enumerates the first block once; for each first-block vector only the
    points it dominates constrain the second block, and the second-block
    counts are cached per such subset.
    """
    m = A.m
    pts = A.sorted_points()
    by_sum: Dict[Tuple[int, ...], List[int]] = {}

    def second_counts(idx: Tuple[int, ...]) -> List[int]:
        if idx not in by_sum:
            tails = [pts[i][m:] for i in idx]
            counts = [0] * (s_max + 1)
            for v2 in compositions(A.n, s_max):
                if not any(dominates(v2, t) for t in tails):
                    counts[sum(v2)] += 1
            by_sum[idx] = counts
        return by_sum[idx]

    cells = [[0] * (s_max + 1) for _ in range(r_max + 1)]
    for v1 in compositions(m, r_max):
        idx = tuple(i for i, p in enumerate(pts) if dominates(v1, p[:m]))
        row = cells[sum(v1)]
        for k, c in enumerate(second_counts(idx)):
            row[k] += c
    out: Dict[Tuple[int, int], int] = {}
    for r in range(r_max + 1):
        acc = 0
        for s in range(s_max + 1):
            acc += sum(cells[i][s] for i in range(r + 1))
            out[(r, s)] = acc
    return out


def lcm_sum(points: Iterable[Iterable[int]]) -> int:
    """Coordinate sum of the componentwise maximum (0 for no points)."""
    pts = [tuple(p) for p in points]
    if not pts:
        return 0
    return sum(max(col) for col in zip(*pts))


def kolchin_univariate(A: Iterable[Iterable[int]], k: int) -> NumPoly1:
    """Univariate dimension polynomial of a finite subset of N^k."""
    pts = ExponentSet(k, 0, A)
    pts = minimize_antichain(pts).sorted_points()
    if not pts:
        return NumPoly1.binomial(k, k)
    out = NumPoly1()
    for lcm, c in sorted(_lcm_counts(pts).items()):
        out = out + NumPoly1.binomial(k, k - sum(lcm), c)
    return out


def count_below(A: Iterable[Iterable[int]], k: int, r: int) -> int:
    """Number of k-tuples with coordinate sum <= r dominating no point of A."""
    pts = [tuple(p) for p in A]
    return sum(1 for v in compositions(k, r) if not any(dominates(v, a) for a in pts))


def grid_points(lo: Tuple[int, int], hi: Tuple[int, int]) -> Iterator[Tuple[int, int]]:
    return product(range(lo[0], hi[0] + 1), range(lo[1], hi[1] + 1))
