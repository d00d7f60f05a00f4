"""S-polynomials, single-order Buchberger and (x,d)-Groebner completion.

The (x,d)-completion alternates two closure conditions until both hold for
the same set: the set is an ordinary Groebner basis for the d-order, and every
x-S-polynomial of a pair has zero (x,d)-normal form.  Each adjoined element
carries its leader datum rho outside the monomial ideal spanned by the
existing ones, so the loop stops by Dickson's lemma.
"""
from __future__ import annotations

import enum
import heapq
import random
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import WeylElement, WeylMonomial, elem_mul
from .errors import CertificationError, StepBudgetExceeded, ZeroElementError
from .reduction import DEFAULT_STEP_BUDGET, _subtract_multiple, normal_form
from .terms import (
    ModuleElement,
    Term,
    TermKey,
    act,
    divides,
    key_bernstein,
    key_d,
    key_x,
    lcm_terms,
    mono_act,
    quotient,
    rho,
)


class Order(enum.Enum):
    X = "x"
    DELTA = "d"
    BERNSTEIN = "bernstein"

    @property
    def key(self) -> TermKey:
        return {Order.X: key_x, Order.DELTA: key_d, Order.BERNSTEIN: key_bernstein}[self]


class Certificate(enum.Enum):
    PARTIAL = "partial"
    DELTA_GB = "delta_gb"
    XD_GB = "xd_gb"
    BERNSTEIN_GB = "bernstein_gb"


Cofactors = Tuple[WeylElement, ...]
# a source index i >= 0 names an earlier element of the run, -(j + 1) names inputs[j]
Recipe = Tuple[Fraction, Tuple[Tuple[WeylElement, int], ...]]


@dataclass(frozen=True)
class Derivation:
    """How every element of a completion run was produced.

    ``pool[k] == scale * sum(op * source)`` for ``steps[k] = (scale, ((op, source), ...))``,
    where each source is an earlier pool element or an input.  ``final`` lists
    the pool indices of the returned elements.
    """

    pool: Tuple[ModuleElement, ...]
    steps: Tuple[Recipe, ...]
    final: Tuple[int, ...]

    def needed(self) -> List[int]:
        seen, stack = set(), list(self.final)
        while stack:
            k = stack.pop()
            if k in seen:
                continue
            seen.add(k)
            stack.extend(i for _, i in self.steps[k][1] if i >= 0)
        return sorted(seen)


@dataclass(frozen=True)
class GroebnerBasis:
    """A certified basis together with how each element arises from the inputs.

    ``derivation`` records each step of the run (None when tracking was off);
    ``representation[k][j]`` expands it to the operator H_kj with
    elements[k] = sum_j H_kj * inputs[j].  ``order`` is the single term order
    for which the elements form an ordinary Groebner basis (the d-order for xd_gb).
    """

    n: int
    m: int
    elements: Tuple[ModuleElement, ...]
    certificate: Certificate
    order: Order
    inputs: Tuple[ModuleElement, ...] = ()
    derivation: Optional[Derivation] = None
    stats: Dict[str, int] = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leader_table(self) -> List[Tuple[Term, Term]]:
        return [(g.u, g.v) for g in self.elements]

    @cached_property
    def representation(self) -> Optional[Tuple[Cofactors, ...]]:
        """Cofactors with respect to the inputs; can be large, so built on demand."""
        der = self.derivation
        if der is None:
            return None
        k_in = len(self.inputs)
        reps: Dict[int, List[WeylElement]] = {}
        for k in der.needed():
            scale, terms = der.steps[k]
            row = [WeylElement.zero(self.n) for _ in range(k_in)]
            for op, i in terms:
                if i < 0:
                    row[-i - 1] = row[-i - 1] + op
                else:
                    row = [a + elem_mul(op, b) for a, b in zip(row, reps[i])]
            reps[k] = [H.scale(scale) for H in row]
        return tuple(tuple(reps[k]) for k in der.final)

    def verify_representation(self) -> bool:
        """Check every recorded step, so each element provably lies in the input submodule."""
        der = self.derivation
        if der is None:
            raise ValueError("basis computed without cofactor tracking")
        if tuple(der.pool[k] for k in der.final) != self.elements:
            return False
        for k in der.needed():
            scale, terms = der.steps[k]
            total = ModuleElement(self.n, self.m)
            for op, i in terms:
                total = total + act(op, self.inputs[-i - 1] if i < 0 else der.pool[i])
            if total.scale(scale) != der.pool[k]:
                return False
        return True


def free_basis(n: int, m: int) -> GroebnerBasis:
    """The (empty) basis of the zero submodule of E."""
    return GroebnerBasis(n, m, (), Certificate.XD_GB, Order.DELTA, (), Derivation((), (), ()))


# -- S-polynomials ---------------------------------------------------------

def _s_pair(f: ModuleElement, g: ModuleElement, key: TermKey):
    """Cofactors (c_f, theta_f, c_g, theta_g) of the S-polynomial, or None."""
    lf = max(f.terms, key=key)
    lg = max(g.terms, key=key)
    L = lcm_terms(lf, lg)
    if L is None:
        return None
    return 1 / f.terms[lf], quotient(L, lf), 1 / g.terms[lg], quotient(L, lg)


def s_poly(f: ModuleElement, g: ModuleElement, key: TermKey) -> ModuleElement:
    if f.is_zero() or g.is_zero():
        raise ZeroElementError("S-polynomial of a zero element")
    pair = _s_pair(f, g, key)
    if pair is None:
        return ModuleElement(f.n, f.m)
    cf, tf, cg, tg = pair
    return mono_act(tf, f, cf) - mono_act(tg, g, cg)


def s_poly_x(f: ModuleElement, g: ModuleElement) -> ModuleElement:
    return s_poly(f, g, key_x)


def s_poly_d(f: ModuleElement, g: ModuleElement) -> ModuleElement:
    return s_poly(f, g, key_d)


# -- single-order division -------------------------------------------------

def reduce_full(
    f: ModuleElement,
    G: Sequence[ModuleElement],
    key: TermKey,
    step_budget: Optional[int] = DEFAULT_STEP_BUDGET,
) -> Tuple[ModuleElement, List[Dict[WeylMonomial, Fraction]]]:
    leads = [(i, max(g.terms, key=key)) for i, g in enumerate(G)]
    lcs = [g.terms[t] for g, (_, t) in zip(G, leads)]
    rem = dict(f.terms)
    out = {}
    quots = [{} for _ in G]
    steps = 0
    while rem:
        t = max(rem, key=key)
        for i, lt in leads:
            if divides(lt, t):
                steps += 1
                if step_budget is not None and steps > step_budget:
                    raise StepBudgetExceeded(f"division exceeded {step_budget} steps")
                c = rem[t] / lcs[i]
                theta = quotient(t, lt)
                quots[i][theta] = quots[i].get(theta, 0) + c
                _subtract_multiple(rem, theta, G[i], c)
                break
        else:
            out[t] = rem.pop(t)
    return ModuleElement._raw(f.n, f.m, out), quots


# -- completion ------------------------------------------------------------

class _Completion:
    """Mutable basis-under-construction confined to one completion run.

    Elements carry stable ids so that superseded ones can be dropped without
    disturbing pair bookkeeping.  An element is dropped when a newer one makes
    it redundant: for a single order, its leading term is divisible by the
    newer leading term; in (x,d) mode, the newer element must also have rho
    dividing its rho, so neither termination argument loses ground.
    """

    def __init__(self, gens: Sequence[ModuleElement], track: bool, step_budget: Optional[int], xd: bool = False):
        gens = list(gens)
        if not gens:
            raise ZeroElementError("no generators given")
        self.n, self.m = gens[0].n, gens[0].m
        self.inputs = tuple(gens)
        self.track = track
        self.xd = xd
        self.step_budget = step_budget
        self.pool: Dict[int, ModuleElement] = {}
        self.steps: Dict[int, Recipe] = {}
        self.active: List[int] = []
        self.leads: Dict[Order, Dict[int, Term]] = {o: {} for o in Order}
        self.rhos: Dict[int, object] = {}
        self.stats = {"s_poly_d": 0, "s_poly_x": 0, "zero_reductions": 0, "rounds": 0, "dropped": 0}
        self.done: Dict[Order, set] = {o: set() for o in Order}
        self.queue: Dict[Order, list] = {}
        # a dropped element still owes its S-pair with the element that superseded it
        self.debts: Dict[Order, List[Tuple[int, int]]] = {o: [] for o in Order}
        for j, g in enumerate(gens):
            if g.is_zero():
                continue
            self._adjoin(g, [(WeylElement.one(self.n), -(j + 1))])
        if not self.active:
            raise ZeroElementError("all generators are zero")
        # pool ids below n_inputs hold the (rescaled) nonzero inputs
        self.n_inputs = len(self.pool)

    @property
    def elements(self) -> List[ModuleElement]:
        return [self.pool[i] for i in self.active]

    def lead(self, order: Order, i: int) -> Term:
        table = self.leads[order]
        t = table.get(i)
        if t is None:
            t = table[i] = max(self.pool[i].terms, key=order.key)
        return t

    def _redundant(self, old: int, new: int, order: Optional[Order]) -> bool:
        if self.xd:
            return divides(self.lead(Order.DELTA, new), self.lead(Order.DELTA, old)) and self.rhos[new].divides(
                self.rhos[old]
            )
        return divides(self.lead(order, new), self.lead(order, old))

    def _adjoin(self, g: ModuleElement, rep, order: Optional[Order] = None) -> None:
        # every element is stored with x-leading coefficient 1
        c = g.lc_x
        new = len(self.pool)
        self.pool[new] = g.scale(1 / c)
        if self.track:
            self.steps[new] = (1 / c, tuple(rep))
        if self.xd:
            self.rhos[new] = rho(self.pool[new])
        if self.xd or order is not None:
            keep = [i for i in self.active if not self._redundant(i, new, order)]
            owed = Order.DELTA if self.xd else order
            for i in self.active:
                if i not in keep:
                    self.debts[owed].append((i, new))
            self.stats["dropped"] += len(self.active) - len(keep)
            self.active = keep
        self.active.append(new)
        for o, heap in self.queue.items():
            for i in self.active[:-1]:
                self._push(o, i, new)

    def _combine_rep(self, cf, tf, i, cg, tg, j) -> Optional[list]:
        if not self.track:
            return None
        return [(WeylElement.monomial(tf, cf), i), (WeylElement.monomial(tg, -cg), j)]

    def _subtract_quotients(self, rep, quots) -> None:
        # quots are aligned with self.active
        if rep is None:
            return
        for k, q in zip(self.active, quots):
            if q:
                Q = WeylElement(self.n, dict(q) if isinstance(q, dict) else q.terms)
                rep.append((-Q, k))

    def _push(self, order: Order, i: int, j: int) -> None:
        # normal selection: smallest lcm under the term order first
        L = lcm_terms(self.lead(order, i), self.lead(order, j))
        pk = (0,) if L is None else (1,) + tuple(order.key(L))
        heapq.heappush(self.queue[order], (pk, j, i))

    def _next_pair(self, order: Order) -> Optional[Tuple[int, int]]:
        debts = self.debts[order]
        while debts:
            i, j = debts.pop()
            if (i, j) not in self.done[order]:
                self.done[order].add((i, j))
                return i, j
        if order not in self.queue:
            self.queue[order] = []
            for b, j in enumerate(self.active):
                for i in self.active[:b]:
                    if (i, j) not in self.done[order]:
                        self._push(order, i, j)
        heap = self.queue[order]
        live = set(self.active)
        while heap:
            _, j, i = heapq.heappop(heap)
            if i in live and j in live and (i, j) not in self.done[order]:
                self.done[order].add((i, j))
                return i, j
        return None

    def _single_remainder(self, i: int, j: int, order: Order):
        """Remainder of the S-polynomial of a pair under ordinary division, or None if it vanishes."""
        key = order.key
        f, g = self.pool[i], self.pool[j]
        pair = _s_pair(f, g, key)
        if pair is None:
            return None
        self.stats["s_poly_d"] += 1
        cf, tf, cg, tg = pair
        S = mono_act(tf, f, cf) - mono_act(tg, g, cg)
        rem, quots = reduce_full(S, self.elements, key, self.step_budget)
        if rem.is_zero():
            self.stats["zero_reductions"] += 1
            return None
        rep = self._combine_rep(cf, tf, i, cg, tg, j)
        self._subtract_quotients(rep, quots)
        return rem, rep

    def _final_single_check(self, order: Order):
        """Re-check the returned set on its own: all pairs and all inputs divide to zero."""
        key = order.key
        for b, j in enumerate(self.active):
            for i in self.active[:b]:
                out = self._single_remainder(i, j, order)
                if out is not None:
                    return out
        for k in range(self.n_inputs):
            rem, quots = reduce_full(self.pool[k], self.elements, key, self.step_budget)
            if not rem.is_zero():
                rep = [(WeylElement.one(self.n), k)] if self.track else None
                self._subtract_quotients(rep, quots)
                return rem, rep
        return None

    def close_single(self, order: Order) -> int:
        """Buchberger closure for one order; returns the number of adjoined elements."""
        added = 0
        while True:
            pair_ids = self._next_pair(order)
            if pair_ids is None:
                out = self._final_single_check(order)
                if out is None:
                    return added
            else:
                out = self._single_remainder(*pair_ids, order)
                if out is None:
                    continue
            self._adjoin(out[0], out[1], order)
            added += 1

    def _x_remainder(self, i: int, j: int):
        f, g = self.pool[i], self.pool[j]
        pair = _s_pair(f, g, key_x)
        if pair is None:
            return None
        self.stats["s_poly_x"] += 1
        cf, tf, cg, tg = pair
        S = mono_act(tf, f, cf) - mono_act(tg, g, cg)
        res = normal_form(S, self.elements, self.step_budget)
        if res.remainder.is_zero():
            return None
        rep = self._combine_rep(cf, tf, i, cg, tg, j)
        self._subtract_quotients(rep, [Q.terms for Q in res.quotients])
        return res.remainder, rep

    def enter_xd(self) -> None:
        """Switch pruning to the (x,d) rule; the current set must already be a d-basis."""
        self.xd = True
        for i in self.active:
            self.rhos[i] = rho(self.pool[i])

    def complete_xd(self) -> None:
        if not self.xd:
            self.close_single(Order.DELTA)
            self.enter_xd()
        while True:
            self.stats["rounds"] += 1
            self.close_single(Order.DELTA)
            added = False
            while True:
                pair_ids = self._next_pair(Order.X)
                if pair_ids is None:
                    break
                out = self._x_remainder(*pair_ids)
                if out is not None:
                    self._adjoin(out[0], out[1])
                    added = True
                    break
            if added:
                continue
            # final pass: every pair against the final set
            bad = None
            for b, j in enumerate(self.active):
                for i in self.active[:b]:
                    out = self._x_remainder(i, j)
                    if out is not None:
                        bad = out
                        break
                if bad:
                    break
            if bad is None:
                return
            self._adjoin(bad[0], bad[1])

    def result(self, certificate: Certificate, order: Order) -> GroebnerBasis:
        der = None
        if self.track:
            ids = sorted(self.pool)
            der = Derivation(tuple(self.pool[k] for k in ids), tuple(self.steps[k] for k in ids), tuple(self.active))
        return GroebnerBasis(
            self.n, self.m, tuple(self.elements), certificate, order, self.inputs, der, dict(self.stats)
        )


def buchberger(
    gens: Sequence[ModuleElement],
    order: Order = Order.DELTA,
    track: bool = True,
    step_budget: Optional[int] = DEFAULT_STEP_BUDGET,
) -> GroebnerBasis:
    """Ordinary Groebner basis of the submodule generated by ``gens``."""
    if order not in (Order.DELTA, Order.BERNSTEIN):
        raise ValueError("buchberger runs for the d-order or the Bernstein order")
    run = _Completion(gens, track, step_budget)
    run.close_single(order)
    cert = Certificate.DELTA_GB if order is Order.DELTA else Certificate.BERNSTEIN_GB
    return run.result(cert, order)


def xd_complete(
    gens: Sequence[ModuleElement],
    track: bool = True,
    step_budget: Optional[int] = DEFAULT_STEP_BUDGET,
) -> GroebnerBasis:
    """(x,d)-Groebner basis of the submodule generated by ``gens``."""
    run = _Completion(gens, track, step_budget)
    run.complete_xd()
    return run.result(Certificate.XD_GB, Order.DELTA)


def compute_xd_basis(relations: Sequence[ModuleElement], n: int, m: int, **kw) -> GroebnerBasis:
    """xd_complete that also accepts an empty relation list (free module)."""
    rels = [f for f in relations if not f.is_zero()]
    if not rels:
        return free_basis(n, m)
    return xd_complete(rels, **kw)


# -- certification ---------------------------------------------------------

def check_closure(G: GroebnerBasis) -> List[Tuple[str, int, int]]:
    """Pairs whose S-polynomial does not reduce to zero; empty when closed.

    d-S-polynomials are divided by the ordinary d-order division and
    x-S-polynomials by (x,d)-reduction.
    """
    bad = []
    E = G.elements
    for j in range(len(E)):
        for i in range(j):
            Sd = s_poly_d(E[i], E[j])
            if Sd and reduce_full(Sd, E, key_d)[0]:
                bad.append(("d", i, j))
            Sx = s_poly_x(E[i], E[j])
            if Sx and normal_form(Sx, E).remainder:
                bad.append(("x", i, j))
    return bad


def random_operator(rng: random.Random, n: int, max_terms: int = 3, max_exp: int = 2, max_coeff: int = 3) -> WeylElement:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        a = tuple(rng.randint(0, max_exp) for _ in range(n))
        b = tuple(rng.randint(0, max_exp) for _ in range(n))
        c = rng.randint(-max_coeff, max_coeff) or 1
        terms[WeylMonomial(a, b)] = Fraction(c)
    return WeylElement(n, terms)


def random_probes(G: GroebnerBasis, count: int, rng: random.Random) -> List[ModuleElement]:
    """Random members sum_i D_i g_i of the submodule (some may be zero)."""
    out = []
    for _ in range(count):
        f = ModuleElement(G.n, G.m)
        chosen = [g for g in G.elements if rng.random() < 0.7] or [rng.choice(G.elements)]
        for g in chosen:
            f = f + act(random_operator(rng, G.n), g)
        out.append(f)
    return out


@dataclass
class CertificationReport:
    checked: int
    skipped: int
    seed: Optional[int] = None

    @property
    def passed(self) -> int:
        return self.checked


def certify_xd(
    G: GroebnerBasis,
    probes: Optional[Sequence[ModuleElement]] = None,
    count: int = 50,
    seed: int = 0,
) -> CertificationReport:
    """Membership and rho-divisibility checks on members of the submodule."""
    if G.certificate is not Certificate.XD_GB:
        raise CertificationError(f"basis certificate is {G.certificate.value}, not xd_gb")
    if probes is None:
        probes = random_probes(G, count, random.Random(seed))
    checked = skipped = 0
    rhos = [rho(g) for g in G.elements]
    for f in probes:
        if f.is_zero():
            skipped += 1
            continue
        if normal_form(f, G.elements).remainder:
            raise CertificationError("probe does not reduce to zero", witness=f)
        rf = rho(f)
        if not any(r.divides(rf) for r in rhos):
            raise CertificationError("no basis element has rho dividing rho(probe)", witness=f)
        checked += 1
    return CertificationReport(checked, skipped, seed)
