import numpy as np
import pytest
from hypothesis import given, strategies as st

from apnext.field import DEFAULT_MODULI, FieldError, field_new, is_irreducible, poly_mod, poly_mulmod


def irreducible_by_trial_division(m):
    deg = m.bit_length() - 1
    for d in range(2, 1 << (deg // 2 + 1)):
        if d.bit_length() - 1 >= 1 and poly_mod(m, d) == 0 and d != m:
            return False
    return True


def test_rabin_matches_trial_division_up_to_degree_10():
    for m in range(4, 1 << 11):
        assert is_irreducible(m) == irreducible_by_trial_division(m), hex(m)


def test_default_moduli_are_lowest_irreducible():
    for n, m in DEFAULT_MODULI.items():
        assert m.bit_length() - 1 == n
        assert is_irreducible(m)
        assert not any(is_irreducible(c) for c in range(1 << n, m))


def test_reducible_product_rejected():
    # x (x^2+x+1)(x^3+x+1) has degree 6 and passes a naive order test
    m = poly_mulmod(poly_mulmod(0b10, 0b111, 1 << 20), 0b1011, 1 << 20)
    assert m.bit_length() - 1 == 6
    with pytest.raises(FieldError):
        field_new(6, m)


@pytest.mark.parametrize("n", [0, 1, 17])
def test_degree_out_of_range(n):
    with pytest.raises(FieldError):
        field_new(n)


def test_modulus_degree_mismatch():
    with pytest.raises(FieldError):
        field_new(5, 0x13)


def test_x4_times_x_at_n5():
    ctx = field_new(5)  # x^5 + x^2 + 1
    assert ctx.mul(0b10000, 0b10) == 0b00101


def test_pow_conventions():
    ctx = field_new(5)
    assert ctx.pow(0, 0) == 1
    assert ctx.pow(0, 7) == 0
    assert ctx.pow(3, ctx.group_order) == 1
    assert ctx.pow(3, -1) == ctx.inv(3)
    with pytest.raises(FieldError):
        ctx.inv(0)


def test_out_of_range_element():
    ctx = field_new(4)
    with pytest.raises(FieldError):
        ctx.check(16)
    assert ctx.check(15) == 15


def test_generator_not_x_for_aes_modulus():
    ctx = field_new(8)
    assert ctx.modulus == 0x11B
    assert len(set(ctx.exp[: ctx.group_order].tolist())) == 255


@pytest.mark.parametrize("n", range(2, 11))
def test_trace_is_balanced_and_in_prime_field(n):
    ctx = field_new(n)
    x = ctx.elements()
    frob_sum = np.zeros_like(x)
    for k in range(n):
        frob_sum ^= ctx.frob_vec(x, k)
    assert np.array_equal(frob_sum, ctx.trace_vec(x))
    assert ctx.trace_vec(x).sum() == ctx.order // 2


@pytest.mark.parametrize("n", [3, 5, 8])
def test_vector_ops_match_scalar(n):
    ctx = field_new(n)
    x = ctx.elements()
    y = x[::-1].copy()
    assert ctx.mul_vec(x, y).tolist() == [ctx.mul_slow(int(a), int(b)) for a, b in zip(x, y)]
    assert ctx.pow_vec(x, 5).tolist() == [ctx.pow(int(a), 5) for a in x]
    assert ctx.inv_vec(x[1:]).tolist() == [ctx.inv(int(a)) for a in x[1:]]


fields = st.sampled_from(range(2, 17)).map(field_new)


@st.composite
def field_and_elements(draw, k=3):
    ctx = draw(fields)
    return (ctx, *[draw(st.integers(0, ctx.order - 1)) for _ in range(k)])


@given(field_and_elements())
def test_ring_axioms(args):
    ctx, x, y, z = args
    assert ctx.mul(x, y) == ctx.mul(y, x) == ctx.mul_slow(x, y)
    assert ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z))
    assert ctx.mul(x, y ^ z) == ctx.mul(x, y) ^ ctx.mul(x, z)
    assert ctx.mul(x, 1) == x


@given(field_and_elements(k=2))
def test_frobenius_and_trace_linear(args):
    ctx, x, y = args
    assert ctx.frob(x ^ y, 1) == ctx.frob(x, 1) ^ ctx.frob(y, 1)
    assert ctx.frob(x, ctx.n) == x
    assert ctx.trace(x ^ y) == ctx.trace(x) ^ ctx.trace(y)
    assert ctx.trace(ctx.mul(x, x)) == ctx.trace(x)


@given(field_and_elements(k=1), st.integers(0, 10**6), st.integers(0, 10**6))
def test_pow_laws(args, e1, e2):
    ctx, x = args[0], args[1]
    assert ctx.mul(ctx.pow(x, e1), ctx.pow(x, e2)) == ctx.pow(x, e1 + e2)
    if x:
        assert ctx.mul(x, ctx.inv(x)) == 1
