from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weyldim.algebra import (
    WeylElement,
    WeylMonomial,
    apply_to_polynomial,
    elem_add,
    elem_mul,
    mono_mul,
    orders,
    scalar_mul,
)
from weyldim.errors import DimensionMismatch, ZeroElementError

from helpers import D, X, mono


def poly_x(k):
    return {(k,): Fraction(1)}


def test_d_times_x():
    assert D * X == X * D + 1


def test_x_times_d_is_normal():
    assert X * D == WeylElement.from_exponents((1,), (1,))


def test_d2_x2():
    assert D**2 * X**2 == X**2 * D**2 + 4 * (X * D) + 2


def test_d2_x2_against_operator_action():
    lhs = mono_mul(mono((0,), (2,)), mono((2,), (0,)))
    for k in range(5):
        p = poly_x(k)
        direct = apply_to_polynomial(D**2, apply_to_polynomial(X**2, p))
        assert apply_to_polynomial(lhs, p) == direct


def test_unit_and_zero():
    f = X + D
    assert f * WeylElement.one(1) == f
    assert WeylElement.zero(1) * f == WeylElement.zero(1)


def test_d_times_xd():
    assert elem_mul(D, X * D) == WeylElement.from_exponents((1,), (2,)) + D


def test_add_and_scale():
    assert elem_add(X, scalar_mul(-1, X)).is_zero()
    assert X * D + X * D == scalar_mul(2, X * D)
    assert scalar_mul(3, X.scale(Fraction(1, 3))) == X


def test_apply_examples():
    assert apply_to_polynomial(D, poly_x(2)) == {(1,): 2}
    assert apply_to_polynomial(X * D, poly_x(3)) == {(3,): 3}
    assert apply_to_polynomial(D * X, poly_x(0)) == {(0,): 1}


def test_orders():
    assert orders(X**2 * D**3 + X * D) == (5, 2, 3)
    assert orders(WeylElement.one(1)) == (0, 0, 0)
    assert orders(X**2 * D + D**3) == (3, 2, 3)


def test_orders_of_zero():
    with pytest.raises(ZeroElementError):
        orders(WeylElement.zero(1))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        WeylElement.x(1, 1) * WeylElement.x(1, 2)


def test_str_two_variables():
    x1, d2 = WeylElement.x(1, 2), WeylElement.d(2, 2)
    assert str(d2 * x1 - 3) == "x1*d2 - 3"


small_mono = st.builds(
    lambda a, b: WeylMonomial(tuple(a), tuple(b)),
    st.lists(st.integers(0, 3), min_size=2, max_size=2),
    st.lists(st.integers(0, 3), min_size=2, max_size=2),
)


def sparse_elements(n=2, max_exp=4, max_terms=5):
    monos = st.builds(
        lambda a, b: WeylMonomial(tuple(a), tuple(b)),
        st.lists(st.integers(0, max_exp), min_size=n, max_size=n),
        st.lists(st.integers(0, max_exp), min_size=n, max_size=n),
    )
    coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)
    return st.dictionaries(monos, coeffs, min_size=1, max_size=max_terms).map(lambda d: WeylElement(n, d))


test_polys = [{(i, j): Fraction(1)} for i in range(4) for j in range(4) if i + j <= 6]


@settings(max_examples=60, deadline=None)
@given(small_mono, small_mono)
def test_product_respects_action(a, b):
    prod = mono_mul(a, b)
    A, B = WeylElement.monomial(a), WeylElement.monomial(b)
    for p in test_polys:
        assert apply_to_polynomial(prod, p) == apply_to_polynomial(A, apply_to_polynomial(B, p))


@settings(max_examples=40, deadline=None)
@given(sparse_elements(max_exp=2, max_terms=4), sparse_elements(max_exp=2, max_terms=4), sparse_elements(max_exp=2, max_terms=4))
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(sparse_elements(), sparse_elements())
def test_order_additive(a, b):
    p = a * b
    assert not p.is_zero()
    assert p.ord == a.ord + b.ord
    assert p.ord_x <= a.ord_x + b.ord_x
    assert p.ord_d <= a.ord_d + b.ord_d


@settings(max_examples=60, deadline=None)
@given(small_mono, small_mono)
def test_corrections_strictly_lower(a, b):
    lead = WeylMonomial(
        tuple(x + y for x, y in zip(a.alpha, b.alpha)), tuple(x + y for x, y in zip(a.beta, b.beta))
    )
    prod = mono_mul(a, b)
    assert prod.terms[lead] == 1
    for m in prod.terms:
        if m != lead:
            assert m.ord_x < lead.ord_x and m.ord_d < lead.ord_d
