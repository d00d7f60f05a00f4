import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weyldim.algebra import WeylElement
from weyldim.errors import ReductionError, StepBudgetExceeded, ZeroElementError
from weyldim.groebner import random_operator, xd_complete
from weyldim.reduction import is_reduced, normal_form, reduce_step
from weyldim.terms import ModuleElement, act, key_x

from helpers import D, X, on, parametric, quadratic, random_relation, term


def test_is_reduced_examples():
    G = [quadratic()]
    assert is_reduced(on(WeylElement.one(1)), G)
    assert is_reduced(ModuleElement(1, 1), G)
    # x^2 e is divisible by x^2 e, but cancelling would raise the d-order from 0 to 2
    assert is_reduced(on(X**2), G)
    assert not is_reduced(on(X**2 + D**2), G)


def test_reduce_step_cancels_leader():
    g = quadratic()
    out = reduce_step(g, g, g.u)
    assert out.is_zero()
    f = g + on(D**3)
    out = reduce_step(f, g, f.u)
    assert out == on(D**3)
    assert key_x(out.u) < key_x(f.u)


def test_reduce_step_subtraction():
    g = quadratic()
    f = on(X**2 + D**2)
    assert reduce_step(f, g, term((2,), (0,))) == on(-(X * D))


def test_reduce_step_errors():
    g = quadratic()
    with pytest.raises(ReductionError):
        reduce_step(on(X**2), g, term((2,), (0,)))
    with pytest.raises(ReductionError):
        reduce_step(on(X + D**2), g, term((1,), (0,)))
    with pytest.raises(ReductionError):
        reduce_step(on(X), g, term((3,), (0,)))
    with pytest.raises(ZeroElementError):
        reduce_step(on(X), ModuleElement(1, 1), term((1,), (0,)))


def test_normal_form_of_reduced_input():
    G = [quadratic()]
    f = on(X + 3 * D)
    res = normal_form(f, G)
    assert res.remainder == f
    assert all(Q.is_zero() for Q in res.quotients)
    assert res.steps == 0


def test_normal_form_of_member():
    g = quadratic()
    res = normal_form(g, [g])
    assert res.remainder.is_zero()
    assert res.quotients[0] == WeylElement.one(1)


def test_normal_form_of_multiple():
    g = quadratic()
    f = act(X * D, g)
    res = normal_form(f, [g])
    assert res.remainder.is_zero()
    assert res.quotients[0] == X * D
    assert res.verify(f, [g])


def test_step_budget():
    g = quadratic()
    f = act(X**3 * D**3 + X + D, g)
    assert normal_form(f, [g]).steps == 3
    with pytest.raises(StepBudgetExceeded):
        normal_form(f, [g], step_budget=2)


def test_zero_in_reduction_set():
    with pytest.raises(ZeroElementError):
        normal_form(quadratic(), [ModuleElement(1, 1)])


def _check(f, G):
    res = normal_form(f, G)
    assert res.verify(f, G)
    assert is_reduced(res.remainder, G)
    if res.remainder and f:
        assert res.remainder.ord_d <= f.ord_d
    return res


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_identity_and_reducedness_on_random_inputs(seed):
    rng = random.Random(seed)
    n, m = rng.choice([(1, 1), (1, 2), (2, 1)])
    G = [random_relation(rng, n, m, deg=2) for _ in range(rng.randint(1, 3))]
    f = random_relation(rng, n, m, deg=4, max_terms=5)
    _check(f, G)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (2, 3)])
def test_membership_of_multiples(a, b):
    g = parametric(a, b)
    rng = random.Random(a * 10 + b)
    for _ in range(20):
        f = act(random_operator(rng, 1), g)
        assert _check(f, [g]).remainder.is_zero()


def test_reduced_member_is_zero():
    rng = random.Random(7)
    gens = [random_relation(rng, 1, 2, deg=2) for _ in range(2)]
    G = xd_complete(gens)
    for _ in range(20):
        f = ModuleElement(1, 2)
        for g in gens:
            f = f + act(random_operator(rng, 1), g)
        if f and is_reduced(f, G.elements):
            pytest.fail(f"nonzero reduced member {f}")
