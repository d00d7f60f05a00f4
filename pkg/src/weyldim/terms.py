"""Terms of the free module E = A_n(Q)^m, the x- and d-orders, and leaders.

A term is theta*e_i with theta a Weyl monomial.  Both orders compare the
monomial part first (graded by ord_x resp. ord_d, then lexicographically
on the exponents) and break ties by generator index, so e_1 is smallest.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, NamedTuple, Optional, Tuple

from .algebra import (
    WeylElement,
    WeylMonomial,
    _mono_mul_terms,
    format_coefficient_term,
    format_monomial,
)
from .errors import DimensionMismatch, ReductionError, ZeroElementError


class Term(NamedTuple):
    mono: WeylMonomial
    gen: int  # 1-based free generator index

    @property
    def ord_x(self) -> int:
        return sum(self.mono.alpha)

    @property
    def ord_d(self) -> int:
        return sum(self.mono.beta)

    @property
    def exponents(self) -> Tuple[int, ...]:
        return self.mono.alpha + self.mono.beta

    def __str__(self) -> str:
        body = format_monomial(self.mono)
        return f"e{self.gen}" if body == "1" else f"{body}*e{self.gen}"


def key_x(t: Term):
    a, b = t.mono
    return (sum(a), sum(b), a, b, t.gen)


def key_d(t: Term):
    a, b = t.mono
    return (sum(b), sum(a), b, a, t.gen)


def key_bernstein(t: Term):
    """Graded by total order ord_x + ord_d, ties broken by the x-order."""
    a, b = t.mono
    sa, sb = sum(a), sum(b)
    return (sa + sb, sa, sb, a, b, t.gen)


TermKey = Callable[[Term], tuple]


def _sign(a, b) -> int:
    return (a > b) - (a < b)


def _check_ambient(u: Term, v: Term) -> None:
    if len(u.mono.alpha) != len(v.mono.alpha):
        raise DimensionMismatch("terms over different n")


def cmp_x(u: Term, v: Term) -> int:
    """-1, 0, 1 as u <_x v, u == v, u >_x v."""
    _check_ambient(u, v)
    return _sign(key_x(u), key_x(v))


def cmp_d(u: Term, v: Term) -> int:
    _check_ambient(u, v)
    return _sign(key_d(u), key_d(v))


def mono_divides(a: WeylMonomial, b: WeylMonomial) -> bool:
    return all(x <= y for x, y in zip(a.alpha, b.alpha)) and all(x <= y for x, y in zip(a.beta, b.beta))


def divides(v: Term, u: Term) -> bool:
    """v | u: same generator and componentwise-smaller exponents."""
    return v.gen == u.gen and mono_divides(v.mono, u.mono)


def quotient(u: Term, v: Term) -> WeylMonomial:
    """The monomial u/v (exponent difference).

    Only the leading terms of (u/v)*v and u agree; the full operator
    product carries lower corrections.
    """
    if not divides(v, u):
        raise ReductionError(f"{v} does not divide {u}")
    return WeylMonomial(
        tuple(x - y for x, y in zip(u.mono.alpha, v.mono.alpha)),
        tuple(x - y for x, y in zip(u.mono.beta, v.mono.beta)),
    )


def mono_lcm(a: WeylMonomial, b: WeylMonomial) -> WeylMonomial:
    return WeylMonomial(
        tuple(max(x, y) for x, y in zip(a.alpha, b.alpha)),
        tuple(max(x, y) for x, y in zip(a.beta, b.beta)),
    )


def lcm_terms(w1: Term, w2: Term) -> Optional[Term]:
    """Least common multiple, or None (the zero term) across generators."""
    _check_ambient(w1, w2)
    if w1.gen != w2.gen:
        return None
    return Term(mono_lcm(w1.mono, w2.mono), w1.gen)


def mono_times_term(theta: WeylMonomial, t: Term) -> Term:
    """Exponent-sum term theta*t (the leading term of the operator product)."""
    return Term(
        WeylMonomial(
            tuple(x + y for x, y in zip(theta.alpha, t.mono.alpha)),
            tuple(x + y for x, y in zip(theta.beta, t.mono.beta)),
        ),
        t.gen,
    )


class ExtendedTerm(NamedTuple):
    """z^zpow * term; divisibility is termwise plus zpow comparison."""

    term: Term
    zpow: int

    def divides(self, other: "ExtendedTerm") -> bool:
        return self.zpow <= other.zpow and divides(self.term, other.term)

    def __str__(self) -> str:
        z = "" if self.zpow == 0 else ("z*" if self.zpow == 1 else f"z^{self.zpow}*")
        return z + str(self.term)


class ModuleElement:
    """Element of the free module E of rank m over A_n(Q); immutable by convention."""

    __slots__ = ("n", "m", "terms", "_leaders")

    def __init__(self, n: int, m: int, terms: Dict[Term, Fraction] | None = None):
        self.n = n
        self.m = m
        self.terms: Dict[Term, Fraction] = {} if terms is None else {k: v for k, v in terms.items() if v}
        self._leaders = None
        for t in self.terms:
            if not 1 <= t.gen <= m or len(t.mono.alpha) != n:
                raise DimensionMismatch(f"term {t} outside ambient n={n}, m={m}")

    @classmethod
    def _raw(cls, n: int, m: int, terms: Dict[Term, Fraction]) -> "ModuleElement":
        """Trusted constructor: ``terms`` must already be clean."""
        obj = cls.__new__(cls)
        obj.n, obj.m, obj.terms, obj._leaders = n, m, terms, None
        return obj

    @classmethod
    def term(cls, n: int, m: int, t: Term, coeff=1) -> "ModuleElement":
        return cls(n, m, {t: Fraction(coeff)})

    @classmethod
    def basis(cls, n: int, m: int, i: int) -> "ModuleElement":
        """The free generator e_i."""
        return cls.term(n, m, Term(WeylMonomial.one(n), i))

    @classmethod
    def from_operator(cls, D: WeylElement, gen: int, m: int) -> "ModuleElement":
        """D*e_gen."""
        return cls(D.n, m, {Term(mono, gen): c for mono, c in D.terms.items()})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleElement) and (self.n, self.m) == (other.n, other.m) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.m, frozenset(self.terms.items())))

    def __iter__(self) -> Iterator[Tuple[Term, Fraction]]:
        """(term, coeff) from the <_x-greatest term down."""
        for t in sorted(self.terms, key=key_x, reverse=True):
            yield t, self.terms[t]

    def __repr__(self) -> str:
        return f"ModuleElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for t, c in self:
            out.append(format_coefficient_term(c, str(t), not out))
        return "".join(out)

    def _check(self, other: "ModuleElement") -> None:
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionMismatch(f"ambient ({self.n},{self.m}) vs ({other.n},{other.m})")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            c = out.get(k, 0) + v
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return ModuleElement._raw(self.n, self.m, out)

    def __neg__(self) -> "ModuleElement":
        return ModuleElement._raw(self.n, self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def scale(self, c) -> "ModuleElement":
        c = Fraction(c)
        if not c:
            return ModuleElement(self.n, self.m)
        return ModuleElement._raw(self.n, self.m, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, WeylElement):
            return act(other, self)
        return NotImplemented

    def coefficient(self, t: Term) -> Fraction:
        return self.terms.get(t, Fraction(0))

    def max_term(self, key: TermKey) -> Term:
        if not self.terms:
            raise ZeroElementError("zero element has no leading term")
        return max(self.terms, key=key)

    # -- leaders ------------------------------------------------------
    def leaders(self) -> Tuple[Term, Term, Fraction, Fraction]:
        if self._leaders is None:
            if not self.terms:
                raise ZeroElementError("the zero element has no leaders")
            u = max(self.terms, key=key_x)
            v = max(self.terms, key=key_d)
            self._leaders = (u, v, self.terms[u], self.terms[v])
        return self._leaders

    @property
    def u(self) -> Term:
        return self.leaders()[0]

    @property
    def v(self) -> Term:
        return self.leaders()[1]

    @property
    def lc_x(self) -> Fraction:
        return self.leaders()[2]

    @property
    def lc_d(self) -> Fraction:
        return self.leaders()[3]

    @property
    def ord_d(self) -> int:
        """ord_d of the d-leader (the maximal ord_d over all terms)."""
        return self.v.ord_d

    def monic(self, key: TermKey = key_x) -> "ModuleElement":
        return self.scale(1 / self.terms[self.max_term(key)])


def leaders(f: ModuleElement) -> Tuple[Term, Term, Fraction, Fraction]:
    """(u_f, v_f, lc_x(f), lc_d(f))."""
    return f.leaders()


def rho(f: ModuleElement) -> ExtendedTerm:
    u, v, _, _ = f.leaders()
    return ExtendedTerm(u, v.ord_d - u.ord_d)


def mono_act(theta: WeylMonomial, f: ModuleElement, coeff=1) -> ModuleElement:
    """coeff * theta * f, expanded."""
    out: Dict[Term, Fraction] = {}
    coeff = Fraction(coeff)
    for t, c in f.terms.items():
        cc = c * coeff
        for mono, k in _mono_mul_terms(theta, t.mono):
            key = Term(mono, t.gen)
            out[key] = out.get(key, 0) + cc * k
    return ModuleElement._raw(f.n, f.m, {k: v for k, v in out.items() if v})


def act(D: WeylElement, f: ModuleElement) -> ModuleElement:
    """Left action D*f of A_n on E."""
    if D.n != f.n:
        raise DimensionMismatch(f"operator over n={D.n}, module over n={f.n}")
    out: Dict[Term, Fraction] = {}
    for theta, a in D.terms.items():
        for t, c in f.terms.items():
            ac = a * c
            for mono, k in _mono_mul_terms(theta, t.mono):
                key = Term(mono, t.gen)
                out[key] = out.get(key, 0) + ac * k
    return ModuleElement._raw(f.n, f.m, {k: v for k, v in out.items() if v})


def combination(coeffs: Iterable[WeylElement], elems: Iterable[ModuleElement], n: int, m: int) -> ModuleElement:
    """sum_i coeffs[i] * elems[i]."""
    out = ModuleElement(n, m)
    for D, g in zip(coeffs, elems):
        if D:
            out = out + act(D, g)
    return out
