"""Exact arithmetic in the Weyl algebra A_n(Q).

Elements are sparse maps from normally ordered monomials x^alpha d^beta to
nonzero :class:`fractions.Fraction` coefficients.  The product of two
monomials is expanded with the normal-ordering identity

    d^b x^c = sum_k C(b, k) C(c, k) k! x^(c-k) d^(b-k)

applied independently in each variable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Dict, Iterable, Iterator, NamedTuple, Tuple

from .errors import DimensionMismatch, ZeroElementError

MultiIndex = Tuple[int, ...]
CommPoly = Dict[MultiIndex, Fraction]


class WeylMonomial(NamedTuple):
    """The monomial x^alpha d^beta (x-powers written to the left)."""

    alpha: MultiIndex
    beta: MultiIndex

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def ord_x(self) -> int:
        return sum(self.alpha)

    @property
    def ord_d(self) -> int:
        return sum(self.beta)

    @property
    def order(self) -> int:
        return sum(self.alpha) + sum(self.beta)

    @classmethod
    def one(cls, n: int) -> "WeylMonomial":
        z = (0,) * n
        return cls(z, z)

    def __str__(self) -> str:
        return format_monomial(self)


def mono_key(mono: WeylMonomial):
    """Sort key of the x-order on monomials: (ord_x, ord_d, alpha, beta)."""
    return (sum(mono.alpha), sum(mono.beta), mono.alpha, mono.beta)


def format_monomial(mono: WeylMonomial) -> str:
    n = len(mono.alpha)
    parts = []
    for letter, exps in (("x", mono.alpha), ("d", mono.beta)):
        for i, e in enumerate(exps):
            if e == 0:
                continue
            name = letter if n == 1 else f"{letter}{i + 1}"
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_coefficient_term(c: Fraction, body: str, first: bool) -> str:
    """Render ``c*body`` as one summand of a sum; ``body == ''`` means a constant."""
    sign = "-" if c < 0 else "+"
    a = -c if c < 0 else c
    if body and a == 1:
        text = body
    elif body:
        text = f"{a}*{body}"
    else:
        text = str(a)
    if first:
        return text if sign == "+" else "-" + text
    return f" {sign} {text}"


def _check_same(a: WeylMonomial, b: WeylMonomial) -> None:
    if len(a.alpha) != len(b.alpha):
        raise DimensionMismatch(f"monomials over n={len(a.alpha)} and n={len(b.alpha)}")


@lru_cache(maxsize=1 << 16)
def _mono_mul_terms(a: WeylMonomial, b: WeylMonomial) -> Tuple[Tuple[WeylMonomial, int], ...]:
    alpha, beta = a
    gamma, delta = b
    n = len(alpha)
    ranges = [range(min(beta[i], gamma[i]) + 1) for i in range(n)]
    out = []
    for kappa in product(*ranges):
        c = 1
        for i, k in enumerate(kappa):
            if k:
                c *= comb(beta[i], k) * comb(gamma[i], k) * factorial(k)
        x = tuple(alpha[i] + gamma[i] - kappa[i] for i in range(n))
        d = tuple(beta[i] + delta[i] - kappa[i] for i in range(n))
        out.append((WeylMonomial(x, d), c))
    return tuple(out)


class WeylElement:
    """An element of A_n(Q); treat instances as immutable."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[WeylMonomial, Fraction] | None = None):
        self.n = n
        self.terms = {} if terms is None else {k: v for k, v in terms.items() if v}

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "WeylElement":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "WeylElement":
        return cls(n, {WeylMonomial.one(n): Fraction(1)})

    @classmethod
    def monomial(cls, mono: WeylMonomial, coeff=1) -> "WeylElement":
        return cls(len(mono.alpha), {mono: Fraction(coeff)})

    @classmethod
    def from_exponents(cls, alpha: Iterable[int], beta: Iterable[int], coeff=1) -> "WeylElement":
        return cls.monomial(WeylMonomial(tuple(alpha), tuple(beta)), coeff)

    @classmethod
    def x(cls, i: int, n: int) -> "WeylElement":
        """The coordinate x_i (1-based index)."""
        e = tuple(int(j == i - 1) for j in range(n))
        return cls.from_exponents(e, (0,) * n)

    @classmethod
    def d(cls, i: int, n: int) -> "WeylElement":
        """The derivation d_i (1-based index)."""
        e = tuple(int(j == i - 1) for j in range(n))
        return cls.from_exponents((0,) * n, e)

    # -- basic protocol -----------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, WeylElement):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == WeylElement.one(self.n) * other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __iter__(self) -> Iterator[Tuple[WeylMonomial, Fraction]]:
        """Iterate (monomial, coefficient) from the x-greatest monomial down."""
        for mono in sorted(self.terms, key=mono_key, reverse=True):
            yield mono, self.terms[mono]

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"WeylElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for mono, c in self:
            body = "" if mono.order == 0 else format_monomial(mono)
            out.append(format_coefficient_term(c, body, not out))
        return "".join(out)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            if other.n != self.n:
                raise DimensionMismatch(f"elements over n={self.n} and n={other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return WeylElement.one(self.n).scale(other)
        raise TypeError(f"cannot combine WeylElement with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return WeylElement(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "WeylElement":
        c = Fraction(c)
        if not c:
            return WeylElement(self.n)
        return WeylElement(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return elem_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = WeylElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    # -- orders -------------------------------------------------------
    @property
    def ord(self) -> int:
        return orders(self)[0]

    @property
    def ord_x(self) -> int:
        return orders(self)[1]

    @property
    def ord_d(self) -> int:
        return orders(self)[2]


def mono_mul(a: WeylMonomial, b: WeylMonomial) -> WeylElement:
    """Fully expanded product (x^alpha d^beta)(x^gamma d^delta)."""
    _check_same(a, b)
    return WeylElement(len(a.alpha), {m: Fraction(c) for m, c in _mono_mul_terms(a, b)})


def elem_mul(D1: WeylElement, D2: WeylElement) -> WeylElement:
    if D1.n != D2.n:
        raise DimensionMismatch(f"elements over n={D1.n} and n={D2.n}")
    out: Dict[WeylMonomial, Fraction] = {}
    for a, ca in D1.terms.items():
        for b, cb in D2.terms.items():
            cab = ca * cb
            for mono, c in _mono_mul_terms(a, b):
                out[mono] = out.get(mono, 0) + cab * c
    return WeylElement(D1.n, out)


def elem_add(D1: WeylElement, D2: WeylElement) -> WeylElement:
    return D1 + D2


def scalar_mul(c, D: WeylElement) -> WeylElement:
    return D.scale(c)


def orders(D: WeylElement) -> Tuple[int, int, int]:
    """Return (ord, ord_x, ord_d) of a nonzero element."""
    if not D.terms:
        raise ZeroElementError("the order of the zero element is undefined")
    total = ox = od = 0
    for mono in D.terms:
        a, b = sum(mono.alpha), sum(mono.beta)
        total = max(total, a + b)
        ox = max(ox, a)
        od = max(od, b)
    return total, ox, od


def apply_to_polynomial(D: WeylElement, p: CommPoly) -> CommPoly:
    """Act with the differential operator D on a commutative polynomial.

    ``p`` maps exponent tuples of x_1..x_n to coefficients.
    """
    for exps in p:
        if len(exps) != D.n:
            raise DimensionMismatch(f"polynomial in {len(exps)} variables, operator over n={D.n}")
    out: CommPoly = {}
    for mono, c in D.terms.items():
        for exps, pc in p.items():
            coeff = c * pc
            k = list(exps)
            for i, b in enumerate(mono.beta):
                if b > k[i]:
                    coeff = 0
                    break
                # falling factorial k(k-1)...(k-b+1)
                coeff *= factorial(k[i]) // factorial(k[i] - b)
                k[i] -= b
            if not coeff:
                continue
            key = tuple(k[i] + mono.alpha[i] for i in range(D.n))
            out[key] = out.get(key, 0) + coeff
    return {k: Fraction(v) for k, v in out.items() if v}
