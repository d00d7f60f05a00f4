"""Characteristic polynomial phi(t1, t2), Bernstein polynomial psi(t), invariants.

For an (x,d)-Groebner basis G the quotient bifiltration M_rs has the basis of
terms w with ord_x w <= r, ord_d w <= s such that either no x-leader u_g
divides w, or every decomposition w = theta*u_g is expensive, that is
ord_d(theta*v_g) > s.  Writing a_i, b_i for the bidegree of u_i, c_i for
ord_d v_i and d_i = c_i - b_i, the count over one free generator is

    C(r+n, n) C(s+n, n)
      - sum_{sigma} (-1)^{|sigma|+1} C(r+n-a_sigma, n) C(s+n-b_sigma-max_sigma d_i, n)

(inclusion-exclusion over nonempty subsets of leaders on that generator,
a_sigma, b_sigma the bidegree of their lcm), valid once every binomial
argument is at least -n.  It splits as omega + omega_bar with omega the
Kolchin polynomial of the x-leaders.

The ``quantifier="any"`` variant replaces ``max`` by ``min``; it counts terms
having at least one expensive decomposition instead of requiring all of them
to be, and is kept only for diagnostics.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .algebra import WeylMonomial
from .errors import CertificationError
from .groebner import Certificate, GroebnerBasis, Order, buchberger, compute_xd_basis
from .numpoly import ExponentSet, NumPoly1, NumPoly2, binom, compositions, kolchin_univariate, omega_A
from .reduction import DEFAULT_STEP_BUDGET
from .terms import ModuleElement, Term, divides, key_bernstein

QUANTIFIERS = ("all", "any")


@dataclass(frozen=True)
class Leader:
    """Leader data of one basis element."""

    element: ModuleElement
    u: Term
    v: Term

    @property
    def gen(self) -> int:
        return self.u.gen

    @property
    def a(self) -> int:
        return self.u.ord_x

    @property
    def b(self) -> int:
        return self.u.ord_d

    @property
    def c(self) -> int:
        return self.v.ord_d

    @property
    def shift(self) -> int:
        """d(g) = ord_d v_g - ord_d u_g, the z-exponent of rho(g)."""
        return self.c - self.b


def leader_table(G: GroebnerBasis) -> List[Leader]:
    return [Leader(g, g.u, g.v) for g in G.elements]


def _groups(G: GroebnerBasis) -> Dict[int, List[Leader]]:
    out: Dict[int, List[Leader]] = {j: [] for j in range(1, G.m + 1)}
    for L in leader_table(G):
        out[L.gen].append(L)
    return out


def _require_xd(G: GroebnerBasis) -> None:
    if G.certificate is not Certificate.XD_GB:
        raise CertificationError(f"an xd_gb basis is required, got {G.certificate.value}")


def _check_quantifier(q: str) -> None:
    if q not in QUANTIFIERS:
        raise ValueError(f"quantifier must be one of {QUANTIFIERS}, got {q!r}")


@dataclass(frozen=True)
class InvariantSet:
    """Generator-independent data read off phi in the binomial basis."""

    d: int
    a_nn: int
    mu: Tuple[int, int]
    nu: Tuple[int, int]
    a_mu: int
    a_nu: int
    top_coeffs: Tuple[Tuple[int, int, int], ...]
    bernstein_class: bool
    is_zero: bool = False


def extract_invariants(phi: NumPoly2, n: int) -> InvariantSet:
    """Invariants of phi; the zero polynomial gives the all-zero set."""
    if phi.is_zero():
        return InvariantSet(0, 0, (0, 0), (0, 0), 0, 0, (), False, True)
    support = [(i, j) for i, j, _ in phi.items()]
    d = max(i + j for i, j in support)
    mu = max(support)
    nu = max(support, key=lambda p: (p[1], p[0]))
    top = tuple(sorted(((i, j, c) for i, j, c in phi.items() if i + j == d), reverse=True))
    return InvariantSet(
        d=d,
        a_nn=phi.coeff(n, n),
        mu=mu,
        nu=nu,
        a_mu=phi.coeff(*mu),
        a_nu=phi.coeff(*nu),
        top_coeffs=top,
        bernstein_class=(d == n),
    )


@dataclass
class CharPolyReport:
    n: int
    m: int
    phi: NumPoly2
    omega: NumPoly2
    omega_bar: NumPoly2
    invariants: InvariantSet
    basis: GroebnerBasis
    psi: Optional[NumPoly1] = None
    quantifier: str = "all"
    stability_point: Optional[Tuple[int, int]] = None
    extra: Dict[str, object] = field(default_factory=dict)

    @property
    def leaders(self) -> List[Leader]:
        return leader_table(self.basis)


# -- phi -------------------------------------------------------------------

def omega_part(G: GroebnerBasis) -> NumPoly2:
    """Sum over free generators of the Kolchin polynomial of the x-leaders."""
    n = G.n
    out = NumPoly2()
    for _, group in sorted(_groups(G).items()):
        A = ExponentSet(n, n, [L.u.mono.alpha + L.u.mono.beta for L in group])
        out = out + omega_A(A)
    return out


def omega_bar_part(G: GroebnerBasis, quantifier: str = "all") -> NumPoly2:
    """Correction for multiples of x-leaders that stay outside M_rs's relations."""
    _check_quantifier(quantifier)
    pick = max if quantifier == "all" else min
    n = G.n
    out = NumPoly2()
    for _, group in sorted(_groups(G).items()):
        for size in range(1, len(group) + 1):
            sign = 1 if size % 2 else -1
            for sigma in combinations(group, size):
                alpha = tuple(max(L.u.mono.alpha[i] for L in sigma) for i in range(n))
                beta = tuple(max(L.u.mono.beta[i] for L in sigma) for i in range(n))
                a_s, b_s = sum(alpha), sum(beta)
                extra = pick(L.shift for L in sigma)
                if extra == 0:
                    continue
                out = out + NumPoly2.binomial_product(n, n - a_s, n, n - b_s, sign)
                out = out - NumPoly2.binomial_product(n, n - a_s, n, n - b_s - extra, sign)
    return out


def char_polynomial(
    G: GroebnerBasis,
    n: Optional[int] = None,
    m: Optional[int] = None,
    quantifier: str = "all",
) -> CharPolyReport:
    """phi = omega + omega_bar for the module E / <G>."""
    _require_xd(G)
    if (n is not None and n != G.n) or (m is not None and m != G.m):
        raise ValueError(f"basis lives over (n, m) = ({G.n}, {G.m})")
    omega = omega_part(G)
    omega_bar = omega_bar_part(G, quantifier)
    phi = omega + omega_bar
    return CharPolyReport(G.n, G.m, phi, omega, omega_bar, extract_invariants(phi, G.n), G, quantifier=quantifier)


# -- enumeration -----------------------------------------------------------

def theta_terms(n: int, m: int, r: int, s: int) -> Iterable[Term]:
    """All terms theta*e_j with ord_x theta <= r, ord_d theta <= s."""
    if r < 0 or s < 0:
        return
    alphas = list(compositions(n, r))
    betas = list(compositions(n, s))
    for j in range(1, m + 1):
        for a in alphas:
            for b in betas:
                yield Term(WeylMonomial(a, b), j)


def in_U(w: Term, leaders: Sequence[Leader], s: int, quantifier: str = "all") -> bool:
    """Whether w is a basis term of M_rs (given ord_x w <= r, ord_d w <= s)."""
    costs = [w.ord_d + L.shift for L in leaders if divides(L.u, w)]
    if not costs:
        return True
    if quantifier == "all":
        return all(c > s for c in costs)
    return any(c > s for c in costs)


def enumerate_U_rs(G: GroebnerBasis, r: int, s: int, quantifier: str = "all") -> Set[Term]:
    _require_xd(G)
    _check_quantifier(quantifier)
    leaders = leader_table(G)
    return {w for w in theta_terms(G.n, G.m, r, s) if in_U(w, leaders, s, quantifier)}


def count_U_grid(G: GroebnerBasis, r_max: int, s_max: int, quantifier: str = "all") -> Dict[Tuple[int, int], int]:
    """|U_rs| for all 0 <= r <= r_max, 0 <= s <= s_max in one pass."""
    _require_xd(G)
    _check_quantifier(quantifier)
    leaders = leader_table(G)
    counts = [[0] * (s_max + 1) for _ in range(r_max + 1)]
    for w in theta_terms(G.n, G.m, r_max, s_max):
        ox, od = w.ord_x, w.ord_d
        costs = [od + L.shift for L in leaders if divides(L.u, w)]
        for s in range(od, s_max + 1):
            if not costs:
                ok = True
            elif quantifier == "all":
                ok = min(costs) > s
            else:
                ok = max(costs) > s
            if ok:
                counts[ox][s] += 1
    out = {}
    for s in range(s_max + 1):
        acc = 0
        for r in range(r_max + 1):
            acc += counts[r][s]
            out[(r, s)] = acc
    return out


# -- stability -------------------------------------------------------------

def window_start(G: GroebnerBasis) -> int:
    """B = max over G of ord_x u_g + ord_d v_g (0 for the free module)."""
    return max((L.a + L.c for L in leader_table(G)), default=0)


def stability_bound(G: GroebnerBasis) -> Tuple[int, int]:
    """(r0, s0) from which the binomial counting formula is exact.

    Every binomial argument in the formula is at least -n once r and s
    exceed the lcm bidegree of each group (plus its largest shift) minus n.
    """
    n = G.n
    r0 = s0 = 0
    for _, group in _groups(G).items():
        if not group:
            continue
        ax = sum(max(L.u.mono.alpha[i] for L in group) for i in range(n))
        bx = sum(max(L.u.mono.beta[i] for L in group) for i in range(n))
        r0 = max(r0, ax - n)
        s0 = max(s0, bx + max(L.shift for L in group) - n)
    return r0, s0


def verify_window(G: GroebnerBasis, size: int = 4) -> Tuple[int, int]:
    """[lo, hi] for the diagonal-square validation window."""
    if size < 1:
        raise ValueError("window size must be at least 1")
    lo = max([window_start(G), *stability_bound(G)])
    return lo, lo + size - 1


def empirical_stability(phi: NumPoly2, values: Dict[Tuple[int, int], int], k_max: int) -> Optional[Tuple[int, int]]:
    """Smallest (k, k) with phi = values on all of [k, k_max]^2, or None."""
    best = None
    for k in range(k_max, -1, -1):
        row_ok = all(phi(k, s) == values[(k, s)] for s in range(k, k_max + 1))
        col_ok = all(phi(r, k) == values[(r, k)] for r in range(k, k_max + 1))
        if not (row_ok and col_ok):
            break
        best = (k, k)
    return best


def quantifier_discrepancy(G: GroebnerBasis, r_max: int, s_max: int) -> List[Tuple[int, int, int, int]]:
    """Grid points where the two quantifier readings give different counts.

    Returns (r, s, count_all, count_any) for each disagreement.
    """
    A = count_U_grid(G, r_max, s_max, "all")
    B = count_U_grid(G, r_max, s_max, "any")
    return [(r, s, A[(r, s)], B[(r, s)]) for (r, s) in sorted(A) if A[(r, s)] != B[(r, s)]]


# -- psi -------------------------------------------------------------------

def bernstein_polynomial(
    gens: Sequence[ModuleElement],
    n: int,
    m: int,
    basis: Optional[GroebnerBasis] = None,
) -> NumPoly1:
    """psi(t) = dim M_r for large r, under the total-degree filtration."""
    gens = [g for g in gens if not g.is_zero()]
    if basis is None:
        basis = buchberger(gens, Order.BERNSTEIN, track=False) if gens else None
    groups: Dict[int, List[Tuple[int, ...]]] = {j: [] for j in range(1, m + 1)}
    if basis is not None:
        for g in basis.elements:
            t = g.max_term(key_bernstein)
            groups[t.gen].append(t.mono.alpha + t.mono.beta)
    out = NumPoly1()
    for j in range(1, m + 1):
        out = out + kolchin_univariate(groups[j], 2 * n)
    return out


def free_phi(n: int, m: int) -> NumPoly2:
    return NumPoly2.binomial_product(n, n, n, n, m)


def analyze(
    relations: Sequence[ModuleElement],
    n: int,
    m: int,
    bernstein: bool = True,
    quantifier: str = "all",
    step_budget: Optional[int] = None,
) -> CharPolyReport:
    """Full pipeline: (x,d)-basis, phi, invariants and optionally psi."""
    budget = DEFAULT_STEP_BUDGET if step_budget is None else step_budget
    G = compute_xd_basis(relations, n, m, step_budget=budget)
    report = char_polynomial(G, quantifier=quantifier)
    if bernstein:
        # the basis elements generate the same submodule and are usually a far better start
        report.psi = bernstein_polynomial(list(G.elements) or relations, n, m)
    return report


def sandwich_holds(phi: NumPoly2, psi: NumPoly1, r: int) -> bool:
    """psi(r) <= phi(r, r) <= psi(2r)."""
    return psi(r) <= phi(r, r) <= psi(2 * r)


def binomial_count(n: int, r: int, s: int) -> int:
    """|Theta(r, s)| = C(r+n, n) C(s+n, n) for r, s >= 0."""
    return binom(r + n, n) * binom(s + n, n)
