import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weyldim.algebra import WeylElement, WeylMonomial
from weyldim.errors import DimensionMismatch, ReductionError, ZeroElementError
from weyldim.terms import (
    ExtendedTerm,
    ModuleElement,
    Term,
    act,
    cmp_d,
    cmp_x,
    divides,
    key_d,
    key_x,
    lcm_terms,
    leaders,
    mono_act,
    mono_times_term,
    quotient,
    rho,
)

from helpers import D, X, mono, on, parametric, quadratic, term


def test_cmp_examples():
    assert cmp_x(term((1,), (2,)), term((2,), (0,))) == -1
    assert cmp_d(term((1,), (2,)), term((2,), (0,))) == 1
    assert cmp_x(term((1,), (0,), 1), term((1,), (0,), 2)) == -1
    assert cmp_x(term((1,), (0,)), term((1,), (0,))) == 0


def test_lex_tiebreak_reads_x_then_d():
    # same bidegree (1, 1): x1 d2 < x2 d1 because alpha=(1,0) < (0,1) is false; compare tuples
    a = term((1, 0), (0, 1))
    b = term((0, 1), (1, 0))
    assert cmp_x(a, b) == 1
    assert cmp_d(a, b) == -1


def test_cmp_dimension_check():
    with pytest.raises(DimensionMismatch):
        cmp_x(term((1,), (0,)), term((1, 0), (0, 0)))


def test_divides_and_quotient():
    u, v = term((2,), (3,)), term((1,), (2,))
    assert divides(v, u)
    assert quotient(u, v) == mono((1,), (1,))
    assert quotient(u, u) == WeylMonomial.one(1)
    assert not divides(term((2,), (0,), 1), term((3,), (0,), 2))
    with pytest.raises(ReductionError):
        quotient(v, u)


def test_lcm():
    assert lcm_terms(term((2,), (1,)), term((1,), (3,))) == term((2,), (3,))
    assert lcm_terms(term((1,), (1,), 1), term((1,), (1,), 2)) is None
    u = term((1,), (4,))
    assert lcm_terms(u, u) == u


def test_leaders_quadratic():
    u, v, cu, cv = leaders(quadratic())
    assert (u, v) == (term((2,), (0,)), term((0,), (2,)))
    assert cu == cv == 1


@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (2, 3)])
def test_leaders_parametric(a, b):
    f = parametric(a, b)
    assert f.u == term((a,), (b,))
    assert f.v == term((0,), (a + b,))


def test_single_term_leaders_and_rho():
    f = ModuleElement.term(1, 1, term((3,), (1,)), 5)
    assert f.u == f.v == term((3,), (1,))
    assert rho(f) == ExtendedTerm(f.u, 0)


def test_rho_values():
    assert rho(quadratic()) == ExtendedTerm(term((2,), (0,)), 2)
    assert str(rho(quadratic())) == "z^2*x^2*e1"
    assert rho(parametric(2, 1)) == ExtendedTerm(term((2,), (1,)), 2)


def test_zero_has_no_leaders():
    with pytest.raises(ZeroElementError):
        leaders(ModuleElement(1, 1))


def test_act_examples():
    f = quadratic()
    assert act(WeylElement.one(1), f) == f
    assert act(D, on(X)) == on(X * D + 1)


def test_element_validation():
    with pytest.raises(DimensionMismatch):
        ModuleElement(1, 1, {term((1,), (0,), 2): 1})
    with pytest.raises(DimensionMismatch):
        on(X, 1, 1) + on(X, 1, 2)


def test_rho_divisibility_implies_u_divisibility():
    f, g = quadratic(), act(X * D, quadratic())
    assert rho(f).divides(rho(g))
    assert divides(f.u, g.u)


def test_str():
    assert str(quadratic()) == "x^2*e1 + x*d*e1 + d^2*e1"
    assert str(ModuleElement(1, 2)) == "0"


terms2 = st.builds(
    lambda a, b, g: Term(WeylMonomial(tuple(a), tuple(b)), g),
    st.lists(st.integers(0, 3), min_size=2, max_size=2),
    st.lists(st.integers(0, 3), min_size=2, max_size=2),
    st.integers(1, 2),
)


@given(terms2, terms2, terms2)
def test_orders_total_and_transitive(a, b, c):
    for cmp in (cmp_x, cmp_d):
        assert cmp(a, b) == -cmp(b, a)
        assert (cmp(a, b) == 0) == (a == b)
        if cmp(a, b) <= 0 and cmp(b, c) <= 0:
            assert cmp(a, c) <= 0


@given(terms2, terms2, terms2)
def test_lcm_is_least(a, b, c):
    L = lcm_terms(a, b)
    if L is None:
        assert a.gen != b.gen
        return
    assert divides(a, L) and divides(b, L)
    common = lcm_terms(L, c)
    if divides(a, c) and divides(b, c):
        assert divides(L, c)
        assert common == c


@settings(max_examples=60)
@given(
    st.builds(lambda a, b: WeylMonomial(tuple(a), tuple(b)),
              st.lists(st.integers(0, 3), min_size=2, max_size=2),
              st.lists(st.integers(0, 3), min_size=2, max_size=2)),
    terms2,
)
def test_leading_term_of_monomial_action(theta, w):
    f = mono_act(theta, ModuleElement.term(2, 2, w))
    lead = mono_times_term(theta, w)
    assert max(f.terms, key=key_x) == lead
    assert max(f.terms, key=key_d) == lead
    for t in f.terms:
        if t != lead:
            assert t.ord_x < lead.ord_x and t.ord_d < lead.ord_d
