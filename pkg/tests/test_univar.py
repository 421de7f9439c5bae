import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from apnext.extend import LinearizedPoly, is_zero_extendable
from apnext.field import field_new
from apnext.univar import (
    build_f_cube,
    build_f_gold,
    build_g,
    closed_form_g_coefficient,
    closed_form_v_coefficient,
    evaluate_polynomial,
    indicator_of_zero_coefficients,
    is_indicator_of_zero,
    univariate_coefficient,
    univariate_coefficients,
)
from apnext.catalog import FunctionSpec, instantiate


def lagrange_coefficients(ctx, f):
    """Expand sum_a f(a) prod_{b != a} (X - b)/(a - b) with polynomial arithmetic."""
    q = ctx.order
    out = [0] * q
    for a in range(q):
        if not f[a]:
            continue
        poly = [1]
        denom = 1
        for b in range(q):
            if b == a:
                continue
            nxt = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] ^= c
                nxt[i] ^= ctx.mul(c, b)
            poly = nxt
            denom = ctx.mul(denom, a ^ b)
        scale = ctx.mul(int(f[a]), ctx.inv(denom))
        for i, c in enumerate(poly):
            out[i] ^= ctx.mul(c, scale)
    return out


def random_L(ctx, rng):
    return LinearizedPoly(tuple(rng.randrange(ctx.order) for _ in range(ctx.n)))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_matches_lagrange_interpolation(n):
    ctx = field_new(n)
    rng = random.Random(n)
    f = np.array([rng.randrange(ctx.order) for _ in range(ctx.order)])
    assert univariate_coefficients(ctx, f).tolist() == lagrange_coefficients(ctx, f)


def test_monomial_and_constant():
    ctx = field_new(6)
    x = ctx.elements()
    for r in (1, 5, 17, 62):
        c = univariate_coefficients(ctx, ctx.pow_vec(x, r))
        assert [i for i in range(1, ctx.group_order) if c[i]] == [r] and c[r] == 1
    c = univariate_coefficients(ctx, np.full(ctx.order, 9))
    assert not c[1:ctx.group_order].any() and c[0] == 9


def test_single_coefficient_range():
    ctx = field_new(4)
    with pytest.raises(ValueError):
        univariate_coefficient(ctx, np.zeros(16), 0)
    with pytest.raises(ValueError):
        univariate_coefficient(ctx, np.zeros(16), 15)


@given(st.integers(2, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, (1 << n) - 1), min_size=1 << n, max_size=1 << n))))
def test_interpolation_round_trip(args):
    n, vals = args
    ctx = field_new(n)
    f = np.array(vals)
    c = univariate_coefficients(ctx, f)
    assert np.array_equal(evaluate_polynomial(ctx, c), f)
    assert c[5 % ctx.group_order or 1] == univariate_coefficient(ctx, f, 5 % ctx.group_order or 1)


def test_named_witness_gives_indicator_of_zero():
    ctx = field_new(5)
    f = build_f_gold(ctx, 1, LinearizedPoly.from_terms(5, {0: 1, 4: 1}))
    assert f.tolist() == [1] + [0] * 31
    assert is_indicator_of_zero(ctx, f)
    assert indicator_of_zero_coefficients(ctx).tolist() == [1] + [0] * 30 + [1]


@pytest.mark.parametrize("t", [1, 2])
def test_every_searched_witness_gives_indicator(t):
    ctx = field_new(5)
    res = is_zero_extendable(ctx, instantiate(ctx, FunctionSpec("gold", t=t)))
    assert res.witness.a == 1
    assert is_indicator_of_zero(ctx, build_f_gold(ctx, t, res.witness.L))


def test_random_L_at_n7_is_not_indicator():
    ctx = field_new(7)
    rng = random.Random(7)
    for _ in range(20):
        assert not is_indicator_of_zero(ctx, build_f_gold(ctx, 1, random_L(ctx, rng)))


def test_boolean_function_shapes():
    ctx = field_new(7)
    rng = random.Random(0)
    a, L = 0x35, random_L(ctx, rng)
    x = ctx.elements()
    g = build_g(ctx, a, 2, L)
    f = build_f_cube(ctx, a, L)
    assert g[0] == 1 and f[0] == 1
    assert not f[ctx.trace_vec(ctx.mul_vec(x, a)) == 1].any()
    inv3 = ctx.pow_vec(x, ctx.order - 4)
    assert not f[1:][ctx.trace_vec(inv3[1:]) == 1].any()
    with pytest.raises(ValueError):
        build_f_cube(ctx, 0, L)


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_closed_forms_match_extraction(n):
    ctx = field_new(n)
    rng = random.Random(f"closed:{n}")
    ts = [t for t in range(1, n) if np.gcd(t, n) == 1]
    for _ in range(60):
        a, t, L = rng.randrange(1, ctx.order), rng.choice(ts), random_L(ctx, rng)
        r = rng.randrange(1, ctx.group_order)
        assert closed_form_g_coefficient(ctx, a, t, L, r) == univariate_coefficient(ctx, build_g(ctx, a, t, L), r)
        assert closed_form_v_coefficient(ctx, a, L, r) == univariate_coefficient(ctx, build_f_cube(ctx, a, L), r)


@pytest.mark.parametrize("n", [7, 9])
def test_closed_forms_on_every_index(n):
    ctx = field_new(n)
    rng = random.Random(n)
    a, L = rng.randrange(1, ctx.order), random_L(ctx, rng)
    u = univariate_coefficients(ctx, build_g(ctx, a, 1, L))
    v = univariate_coefficients(ctx, build_f_cube(ctx, a, L))
    for r in range(1, ctx.group_order):
        assert closed_form_g_coefficient(ctx, a, 1, L, r) == u[r]
        assert closed_form_v_coefficient(ctx, a, L, r) == v[r]


@pytest.mark.parametrize("n", [9, 11])
def test_gold_t1_low_indices(n):
    ctx = field_new(n)
    rng = random.Random(n)
    for _ in range(10):
        L = random_L(ctx, rng)
        l = L.coeffs
        for s in range(4, n - 1):
            assert closed_form_g_coefficient(ctx, 1, 1, L, (1 << s) - 3) == l[s - 1] ^ l[s]


@pytest.mark.parametrize("n", [11, 13])
def test_cube_second_example(n):
    ctx = field_new(n)
    rng = random.Random(n)
    for _ in range(10):
        a, L = rng.randrange(1, ctx.order), random_L(ctx, rng)
        l = L.coeffs
        for m in range(5, n - 2):
            am = ctx.frob(a, m - 1)
            expect = l[m] ^ ctx.frob(l[m - 1], 1) ^ ctx.mul(am, l[m - 1]) ^ ctx.mul(am, ctx.frob(l[m - 2], 1))
            assert closed_form_v_coefficient(ctx, a, L, (1 << m) - 9) == expect


def test_closed_form_rejects_bad_index():
    ctx = field_new(5)
    with pytest.raises(ValueError):
        closed_form_g_coefficient(ctx, 1, 1, LinearizedPoly.zero(5), 0)
    with pytest.raises(ValueError):
        closed_form_v_coefficient(ctx, 1, LinearizedPoly.zero(5), 31)
