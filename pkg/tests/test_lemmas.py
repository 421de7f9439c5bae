import pytest
from hypothesis import given, strategies as st

from apnext.lemmas import LEMMAS, verify_weight_lemma, weight_mod


def test_six_lemmas():
    assert set(LEMMAS) == {"gold_exponents2", "gold_exponents3", "trace2", "trace", "trace4", "trace5"}


@pytest.mark.parametrize("name", sorted(LEMMAS))
def test_lemma_sweep_to_16(name):
    rep = verify_weight_lemma(name, (2, 16))
    assert rep.passed and rep.tuples_checked > 0
    assert rep.to_json()["counterexamples"] == []


def test_gold_exponents2_from_6():
    assert verify_weight_lemma("gold_exponents2", (6, 16)).passed


def test_k0_reduces_to_power_of_two():
    # with r = 2^s - 2^t - 1 and k = 0, r + 2^k + 2^(k+t) = 2^s
    for n in range(6, 14):
        for t in range(2, n // 2):
            for s in range(t + 2, n - 1):
                h = (1 << s) - (1 << t) - 1 + 1 + (1 << t)
                assert h == 1 << s and weight_mod(h, n) == 1


def test_k1_instance_has_weight_three():
    # r = 2^s - 2^t - 1 and k = 1 give r + 2 + 2^(t+1) = 2^s + 2^t + 1
    for n in range(6, 14):
        for t in range(2, n // 2):
            for s in range(t + 2, n - 1):
                h = (1 << s) - (1 << t) - 1 + 2 + (1 << (t + 1))
                assert h == (1 << s) + (1 << t) + 1
                assert weight_mod(h, n) == 3


def test_unknown_lemma():
    with pytest.raises(ValueError):
        verify_weight_lemma("nope", (2, 5))


@given(st.integers(2, 20), st.integers(-(10**9), 10**9))
def test_weight_mod_matches_reduction(n, h):
    q1 = (1 << n) - 1
    assert weight_mod(h, n) == (h % q1).bit_count()


@given(st.integers(2, 20), st.integers(0, 10**9), st.integers(0, 40))
def test_weight_invariant_under_doubling(n, h, k):
    assert weight_mod(h << k, n) == weight_mod(h, n)
