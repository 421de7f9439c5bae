from math import gcd

import numpy as np
import pytest

from apnext.catalog import FunctionSpec, instantiate
from apnext.field import field_new
from apnext.ortho import NotAPNError, NotQuadraticError, b_alpha, ortho_derivative, trace_dual_table
from apnext.vecfun import VectorialFunction, from_monomial


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_trace_dual_table(n):
    ctx = field_new(n)
    dual = trace_dual_table(ctx)
    assert sorted(dual.tolist()) == list(range(ctx.order))
    y = ctx.elements()
    for p in (1, 3, ctx.order - 1):
        assert np.array_equal(ctx.trace_vec(ctx.mul_vec(y, p)), np.bitwise_count(y & int(dual[p])) & 1)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_gold_closed_form(n):
    ctx = field_new(n)
    for t in range(1, n):
        if gcd(t, n) != 1:
            continue
        pi = ortho_derivative(ctx, from_monomial(ctx, (1 << t) + 1)).pi.table
        assert np.array_equal(pi, ctx.pow_vec(ctx.elements(), ctx.order - (1 << t) - 2))


@pytest.mark.parametrize("n", [5, 7, 9])
def test_switched_cube_splits_on_trace(n):
    ctx = field_new(n)
    pi = ortho_derivative(ctx, instantiate(ctx, FunctionSpec("switched_cube"))).pi.table
    x = ctx.elements()
    inv3 = ctx.pow_vec(x, ctx.order - 4)
    zeta = ctx.pow_vec(x, 6) ^ ctx.pow_vec(x, (1 << (n - 1)) + 1) ^ ctx.pow_vec(x, ctx.order - 3 * (1 << (n - 2)) - 1)
    on = ctx.trace_vec(inv3) == 0
    assert np.array_equal(pi[on], inv3[on])
    assert np.array_equal(pi[~on], zeta[~on])


def test_uniqueness_by_enumeration():
    ctx = field_new(6)
    F = instantiate(ctx, FunctionSpec("gold", t=1))
    pi = ortho_derivative(ctx, F).pi.table
    assert pi[0] == 0
    for alpha in range(1, ctx.order):
        B = b_alpha(F, alpha).table
        hits = [p for p in range(1, ctx.order) if not ctx.trace_vec(ctx.mul_vec(B, p)).any()]
        assert hits == [pi[alpha]]


def test_invariant_under_adding_affine_terms():
    ctx = field_new(7)
    F = from_monomial(ctx, 3)
    G = VectorialFunction(7, 7, F.table ^ ctx.mul_vec(ctx.elements(), 0x2A) ^ 0x11)
    assert ortho_derivative(ctx, F).pi == ortho_derivative(ctx, G).pi


def test_not_apn():
    ctx = field_new(6)
    with pytest.raises(NotAPNError):
        ortho_derivative(ctx, from_monomial(ctx, 5))  # gcd(2, 6) = 2


def test_not_quadratic():
    ctx = field_new(5)
    with pytest.raises(NotQuadraticError):
        ortho_derivative(ctx, from_monomial(ctx, 30))


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        ortho_derivative(field_new(4), VectorialFunction(3, 3, np.arange(8)))
