"""Brute-force dim M_rs by exact linear algebra in the quotient E/N.

Each term theta*e_i is sent to its normal form for a single-order Groebner
basis of N; the normal forms are coordinates in E/N, so dim M_rs is the rank
of the normal forms of all theta*e_i with theta in Theta(r, s).  Nothing here
uses the bivariate counting formula or (x,d)-reduction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import CertificationError
from .groebner import Certificate, GroebnerBasis, Order, buchberger
from .algebra import WeylMonomial, _mono_mul_terms
from .numpoly import compositions
from .terms import ModuleElement, Term, divides, key_d, quotient

Cell = Tuple[int, int]
SparseRow = Dict[Term, int]


class NormalForms:
    """Memoized single-order normal forms of terms modulo a Groebner basis."""

    def __init__(self, G: Optional[GroebnerBasis], n: int, m: int):
        if G is not None:
            if G.certificate is Certificate.PARTIAL:
                raise CertificationError("oracle needs a certified single-order basis")
            self.order = G.order
            elems = G.elements
        else:
            self.order = Order.DELTA
            elems = ()
        self.n, self.m = n, m
        key = self.order.key
        self.key = key
        self.leads = []
        for g in elems:
            t = max(g.terms, key=key)
            c = g.terms[t]
            tail = [(s, -v / c) for s, v in g.terms.items() if s != t]
            self.leads.append((t, tail))
        self.memo: Dict[Term, Dict[Term, Fraction]] = {}

    def _step(self, t: Term):
        """One rewriting step: t == sum of returned (term, coeff), all smaller; None if t is normal."""
        for lt, tail in self.leads:
            if divides(lt, t):
                theta = quotient(t, lt)
                out: Dict[Term, Fraction] = {}
                # theta*lt = t + lower terms; move the lower terms to the right side
                for mono, k in _mono_mul_terms(theta, lt.mono):
                    s = Term(mono, lt.gen)
                    if s != t:
                        out[s] = out.get(s, 0) - k
                for s0, c in tail:
                    for mono, k in _mono_mul_terms(theta, s0.mono):
                        s = Term(mono, s0.gen)
                        out[s] = out.get(s, 0) + c * k
                return [(s, c) for s, c in out.items() if c]
        return None

    def term(self, t: Term) -> Dict[Term, Fraction]:
        memo = self.memo
        if t in memo:
            return memo[t]
        stack = [t]
        pending: Dict[Term, list] = {}
        while stack:
            w = stack[-1]
            if w in memo:
                stack.pop()
                continue
            if w not in pending:
                deps = self._step(w)
                if deps is None:
                    memo[w] = {w: Fraction(1)}
                    stack.pop()
                    continue
                pending[w] = deps
            deps = pending[w]
            missing = [s for s, _ in deps if s not in memo]
            if missing:
                stack.extend(missing)
                continue
            acc: Dict[Term, Fraction] = {}
            for s, c in deps:
                for k, v in memo[s].items():
                    acc[k] = acc.get(k, 0) + c * v
            memo[w] = {k: v for k, v in acc.items() if v}
            del pending[w]
            stack.pop()
        return memo[t]

    def element(self, f: ModuleElement) -> Dict[Term, Fraction]:
        acc: Dict[Term, Fraction] = {}
        for t, c in f.terms.items():
            for k, v in self.term(t).items():
                acc[k] = acc.get(k, 0) + c * v
        return {k: v for k, v in acc.items() if v}


def _integer_row(row: Dict[Term, Fraction]) -> SparseRow:
    den = 1
    for v in row.values():
        den = lcm(den, v.denominator)
    out = {k: int(v * den) for k, v in row.items()}
    return _primitive(out)


def _primitive(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


class RankAccumulator:
    """Incremental exact rank over Q with integer (fraction-free) row operations.

    Each stored row has a distinct pivot column (its greatest column under
    ``key``); a new row is cleared of known pivots by cross-multiplication
    and content removal, so entries stay integers.
    """

    def __init__(self, key):
        self.key = key
        self.pivots: Dict[Term, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Dict[Term, Fraction]) -> bool:
        r = _integer_row(row) if row else {}
        key = self.key
        while r:
            col = max(r, key=key)
            p = self.pivots.get(col)
            if p is None:
                self.pivots[col] = r
                return True
            a, b = p[col], r[col]
            out = {k: a * v for k, v in r.items()}
            for k, v in p.items():
                nv = out.get(k, 0) - b * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
            r = _primitive(out)
        return False


def rank(rows: Iterable[Dict[Term, Fraction]], key=None) -> int:
    acc = RankAccumulator(key or key_d)
    for row in rows:
        acc.add(row)
    return acc.rank


@dataclass
class DimGrid:
    entries: Dict[Cell, int]
    n: int
    m: int
    description: str = ""

    def __post_init__(self):
        for (r, s), v in self.entries.items():
            for nb in ((r + 1, s), (r, s + 1)):
                if nb in self.entries and self.entries[nb] < v:
                    raise CertificationError(f"dimension grid not monotone at {(r, s)} -> {nb}")

    def __getitem__(self, cell: Cell) -> int:
        return self.entries[cell]

    def __contains__(self, cell: Cell) -> bool:
        return cell in self.entries

    @property
    def r_max(self) -> int:
        return max(r for r, _ in self.entries)

    @property
    def s_max(self) -> int:
        return max(s for _, s in self.entries)


def single_order_basis(gens: Sequence[ModuleElement], order: Order = Order.DELTA) -> Optional[GroebnerBasis]:
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return None
    return buchberger(gens, order, track=False)


def _check_basis(gens: Sequence[ModuleElement], nf: NormalForms) -> None:
    for g in gens:
        if nf.element(g):
            raise CertificationError("a generator has nonzero normal form for the oracle basis")


def _terms_by_bidegree(n: int, m: int, r: int, s: int) -> List[Term]:
    alphas = list(compositions(n, r))
    betas = sorted(compositions(n, s), key=sum)
    return [Term(WeylMonomial(a, b), j) for b in betas for a in alphas for j in range(1, m + 1)]


def dim_grid(
    gens: Sequence[ModuleElement],
    G_any: Optional[GroebnerBasis],
    r_max: int,
    s_max: int,
    n: Optional[int] = None,
    m: Optional[int] = None,
) -> DimGrid:
    """dim M_rs for all 0 <= r <= r_max, 0 <= s <= s_max."""
    n = n if n is not None else (G_any.n if G_any else gens[0].n)
    m = m if m is not None else (G_any.m if G_any else gens[0].m)
    nf = NormalForms(G_any, n, m)
    _check_basis(gens, nf)
    entries: Dict[Cell, int] = {}
    for r in range(r_max + 1):
        acc = RankAccumulator(nf.key)
        rows = _terms_by_bidegree(n, m, r, s_max)
        i = 0
        for s in range(s_max + 1):
            while i < len(rows) and rows[i].ord_d <= s:
                acc.add(nf.term(rows[i]))
                i += 1
            entries[(r, s)] = acc.rank
    return DimGrid(entries, n, m, f"{len(gens)} relations")


def dim_M_rs(gens: Sequence[ModuleElement], G_any: Optional[GroebnerBasis], r: int, s: int, n=None, m=None) -> int:
    n = n if n is not None else (G_any.n if G_any else gens[0].n)
    m = m if m is not None else (G_any.m if G_any else gens[0].m)
    nf = NormalForms(G_any, n, m)
    _check_basis(gens, nf)
    return rank((nf.term(t) for t in _terms_by_bidegree(n, m, r, s)), nf.key)


def dim_M_r_series(
    gens: Sequence[ModuleElement], G_any: Optional[GroebnerBasis], r_max: int, n=None, m=None
) -> Dict[int, int]:
    """dim M_r for the total-degree filtration, 0 <= r <= r_max."""
    n = n if n is not None else (G_any.n if G_any else gens[0].n)
    m = m if m is not None else (G_any.m if G_any else gens[0].m)
    nf = NormalForms(G_any, n, m)
    _check_basis(gens, nf)
    parts = list(compositions(n, r_max))
    rows = [
        Term(WeylMonomial(a, b), j)
        for a in parts
        for b in parts
        if sum(a) + sum(b) <= r_max
        for j in range(1, m + 1)
    ]
    rows.sort(key=lambda t: t.mono.order)
    acc = RankAccumulator(nf.key)
    out = {}
    i = 0
    for r in range(r_max + 1):
        while i < len(rows) and rows[i].mono.order <= r:
            acc.add(nf.term(rows[i]))
            i += 1
        out[r] = acc.rank
    return out


def dim_M_r(gens, G_any, r: int, n=None, m=None) -> int:
    return dim_M_r_series(gens, G_any, r, n, m)[r]
