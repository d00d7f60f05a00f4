"""(x,d)-reduction of module elements against a finite set of elements.

A term w of f may be cancelled with g when u_g | w and the cancellation does
not raise the d-order of f, i.e. ord_d((w/u_g) v_g) <= ord_d v_f.  The
normal form always cancels the <_x-greatest eligible term, using the
eligible basis element with the <_x-greatest x-leader (lowest index on ties).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .algebra import WeylElement, WeylMonomial, _mono_mul_terms
from .errors import ReductionError, StepBudgetExceeded, ZeroElementError
from .terms import ModuleElement, Term, act, divides, key_x, quotient

DEFAULT_STEP_BUDGET = 1_000_000


@dataclass
class ReductionResult:
    """f = remainder + sum_i quotients[i] * G[i]."""

    remainder: ModuleElement
    quotients: List[WeylElement]
    steps: int = 0

    def verify(self, f: ModuleElement, G: Sequence[ModuleElement]) -> bool:
        """Re-check the identity by expanding every operator product."""
        total = self.remainder
        for Q, g in zip(self.quotients, G):
            if Q:
                total = total + act(Q, g)
        return total == f


def _cost(w: Term, g: ModuleElement) -> int:
    """ord_d((w/u_g) v_g) for a multiple w of u_g."""
    return w.ord_d - g.u.ord_d + g.v.ord_d


def is_reduced(f: ModuleElement, G: Sequence[ModuleElement]) -> bool:
    if f.is_zero():
        return True
    bound = f.ord_d
    for w in f.terms:
        for g in G:
            if divides(g.u, w) and _cost(w, g) <= bound:
                return False
    return True


def reduce_step(f: ModuleElement, g: ModuleElement, w: Term) -> ModuleElement:
    """One (x,d)-reduction step of f by g at the term w."""
    if g.is_zero():
        raise ZeroElementError("cannot reduce by the zero element")
    a = f.terms.get(w)
    if not a:
        raise ReductionError(f"term {w} does not appear in f")
    if not divides(g.u, w):
        raise ReductionError(f"x-leader {g.u} does not divide {w}")
    if _cost(w, g) > f.ord_d:
        raise ReductionError(
            f"d-order condition fails: ord_d((w/u_g) v_g) = {_cost(w, g)} > ord_d v_f = {f.ord_d}"
        )
    theta = quotient(w, g.u)
    out = dict(f.terms)
    _subtract_multiple(out, theta, g, a / g.lc_x)
    return ModuleElement._raw(f.n, f.m, out)


def _subtract_multiple(terms: Dict[Term, Fraction], theta: WeylMonomial, g: ModuleElement, c: Fraction) -> None:
    """terms -= c * theta * g, in place."""
    for t, gc in g.terms.items():
        cc = c * gc
        for mono, k in _mono_mul_terms(theta, t.mono):
            key = Term(mono, t.gen)
            val = terms.get(key, 0) - cc * k
            if val:
                terms[key] = val
            else:
                terms.pop(key, None)


def normal_form(
    f: ModuleElement,
    G: Sequence[ModuleElement],
    step_budget: Optional[int] = DEFAULT_STEP_BUDGET,
) -> ReductionResult:
    """(x,d)-normal form of f with respect to G, with quotients."""
    if any(g.is_zero() for g in G):
        raise ZeroElementError("reduction set contains the zero element")
    # x-leaders with index for the tie-break rule: greatest u first, then lowest index
    order = sorted(range(len(G)), key=lambda i: (key_x(G[i].u), -i), reverse=True)
    info = [(i, G[i].u, G[i].v.ord_d - G[i].u.ord_d, G[i].lc_x) for i in order]

    rem: Dict[Term, Fraction] = dict(f.terms)
    quots: List[Dict[WeylMonomial, Fraction]] = [{} for _ in G]
    steps = 0
    while rem:
        bound = max(t.ord_d for t in rem)
        pick = None
        for w in sorted(rem, key=key_x, reverse=True):
            wd = w.ord_d
            for i, u, d, lc in info:
                if wd + d <= bound and divides(u, w):
                    pick = (w, i, u, lc)
                    break
            if pick:
                break
        if pick is None:
            break
        w, i, u, lc = pick
        steps += 1
        if step_budget is not None and steps > step_budget:
            raise StepBudgetExceeded(f"normal form exceeded {step_budget} steps")
        c = rem[w] / lc
        theta = quotient(w, u)
        q = quots[i]
        q[theta] = q.get(theta, 0) + c
        _subtract_multiple(rem, theta, G[i], c)
    n = f.n
    return ReductionResult(
        ModuleElement._raw(n, f.m, rem),
        [WeylElement(n, q) for q in quots],
        steps,
    )


def reduces_to_zero(f: ModuleElement, G: Sequence[ModuleElement]) -> bool:
    return normal_form(f, G).remainder.is_zero()
