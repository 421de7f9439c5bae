"""Univariate coefficients over F(2^n) and the closed-form coefficient rules.

For 1 <= r <= 2^n - 2 the coefficient of x^r in the interpolating polynomial
of f is sum_{x != 0} f(x) x^(2^n - 1 - r).  The closed forms below give the
same coefficients for the Boolean functions

    g(x) = (tr(ax) + 1)(tr(x^(2^n - 2^t - 2) L(x)) + 1)
    f(x) = (tr(x^(2^n - 4)) + 1) g(x)          (t = 1)

directly from a and the coefficients of L.
"""

from __future__ import annotations

import numpy as np

from .extend import LinearizedPoly, eval_linearized_vec
from .field import FieldCtx


def univariate_coefficient(ctx: FieldCtx, f, r: int) -> int:
    q1 = ctx.group_order
    if not 1 <= r <= q1 - 1:
        raise ValueError(f"r must lie in 1..{q1 - 1}, got {r}")
    f = np.asarray(f, dtype=np.int64)
    x = ctx.elements()[1:]
    terms = ctx.mul_vec(f[1:], ctx.pow_vec(x, q1 - r))
    return int(np.bitwise_xor.reduce(terms))


def univariate_coefficients(ctx: FieldCtx, f, block: int = 256) -> np.ndarray:
    """All 2^n coefficients c_0 .. c_{2^n - 1}; O(4^n), intended for n <= 10."""
    q1 = ctx.group_order
    f = np.asarray(f, dtype=np.int64)
    nz = f[1:] != 0
    logf = ctx.log[f[1:][nz]]
    logx = ctx.log[1:][nz]
    out = np.zeros(ctx.order, dtype=np.int64)
    out[0] = f[0]
    for start in range(1, q1, block):
        r = np.arange(start, min(start + block, q1), dtype=np.int64)
        e = (logf[None, :] + (q1 - r)[:, None] * logx[None, :]) % q1
        out[r] = np.bitwise_xor.reduce(ctx.exp[e], axis=1) if logf.size else 0
    out[q1] = int(np.bitwise_xor.reduce(f))  # c_0 + c_{q-1} = sum over nonzero x
    return out


def evaluate_polynomial(ctx: FieldCtx, coeffs) -> np.ndarray:
    """Evaluate sum_r coeffs[r] x^r at every field element."""
    x = ctx.elements()
    acc = np.zeros(ctx.order, dtype=np.int64)
    for r, c in enumerate(coeffs):
        if c:
            acc ^= ctx.mul_vec(ctx.pow_vec(x, r), int(c))
    return acc


def indicator_of_zero_coefficients(ctx: FieldCtx) -> np.ndarray:
    """Coefficients of x^(2^n - 1) + 1."""
    c = np.zeros(ctx.order, dtype=np.int64)
    c[0] = 1
    c[ctx.group_order] = 1
    return c


def is_indicator_of_zero(ctx: FieldCtx, f) -> bool:
    return bool(np.array_equal(univariate_coefficients(ctx, f), indicator_of_zero_coefficients(ctx)))


# --- the Boolean functions -------------------------------------------------


def build_g(ctx: FieldCtx, a: int, t: int, L: LinearizedPoly) -> np.ndarray:
    x = ctx.elements()
    e = ctx.order - (1 << t) - 2
    tr_ax = ctx.trace_vec(ctx.mul_vec(x, a))
    tr_p = ctx.trace_vec(ctx.mul_vec(ctx.pow_vec(x, e), eval_linearized_vec(ctx, L, x)))
    return (tr_ax ^ 1) & (tr_p ^ 1)


def build_f_gold(ctx: FieldCtx, t: int, L: LinearizedPoly) -> np.ndarray:
    return build_g(ctx, 1, t, L)


def build_f_cube(ctx: FieldCtx, a: int, L: LinearizedPoly) -> np.ndarray:
    if a == 0:
        raise ValueError("a must be nonzero")
    x = ctx.elements()
    tr_inv3 = ctx.trace_vec(ctx.pow_vec(x, ctx.order - 4))
    return (tr_inv3 ^ 1) & build_g(ctx, a, 1, L)


# --- closed forms ------------------------------------------------------------


def _g_coefficient_mod(ctx: FieldCtx, a: int, t: int, L: LinearizedPoly, r: int) -> int:
    """Coefficient of x^r in g restricted to nonzero x (exponents mod 2^n - 1).

    r is taken mod 2^n - 1; index 0 is the constant on F*, which also collects
    the constant 1 of g.
    """
    n, q1 = ctx.n, ctx.group_order
    r %= q1
    pow2 = [1 << i for i in range(n)]
    a_frob = [ctx.frob(a, i) for i in range(n)]
    ell = L.coeffs
    # where each target exponent 2^i + 2^m (mod q1) is hit, grouped by m = j + k
    acc = 0 if r else 1
    for k in range(n):
        target = (r + pow2[k] + pow2[(k + t) % n]) % q1
        for j in range(n):
            if not ell[j]:
                continue
            m = (j + k) % n
            lk = None
            # rule (iii): 2^(j+k) = target
            if pow2[m] % q1 == target:
                lk = ctx.frob(ell[j], k)
                acc ^= lk
            # rule (i): 2^i + 2^(j+k) = target
            rest = (target - pow2[m]) % q1
            if rest and rest & (rest - 1) == 0:
                i = rest.bit_length() - 1
                if lk is None:
                    lk = ctx.frob(ell[j], k)
                acc ^= ctx.mul(a_frob[i], lk)
    # rule (ii)
    if r and r & (r - 1) == 0:
        acc ^= a_frob[r.bit_length() - 1]
    return acc


def closed_form_g_coefficient(ctx: FieldCtx, a: int, t: int, L: LinearizedPoly, r: int) -> int:
    """Rules (i) + (ii) + (iii) for the coefficient u_r of g, 1 <= r <= 2^n - 2."""
    if not 1 <= r <= ctx.group_order - 1:
        raise ValueError(f"r must lie in 1..{ctx.group_order - 1}, got {r}")
    return _g_coefficient_mod(ctx, a, t, L, r)


def closed_form_v_coefficient(ctx: FieldCtx, a: int, L: LinearizedPoly, r: int) -> int:
    """v_r = u_r + sum_s u_{r + 2^s + 2^(s+1)}, indices mod 2^n - 1."""
    q1 = ctx.group_order
    if not 1 <= r <= q1 - 1:
        raise ValueError(f"r must lie in 1..{q1 - 1}, got {r}")
    v = _g_coefficient_mod(ctx, a, 1, L, r)
    for s in range(ctx.n):
        v ^= _g_coefficient_mod(ctx, a, 1, L, r + 3 * (1 << s))
    return v
