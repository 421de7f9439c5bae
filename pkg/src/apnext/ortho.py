"""Ortho-derivatives of quadratic APN functions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FieldCtx
from .vecfun import VectorialFunction, algebraic_degree


class NotQuadraticError(ValueError):
    pass


class NotAPNError(ValueError):
    pass


@dataclass(frozen=True)
class OrthoDerivative:
    pi: VectorialFunction

    def __call__(self, alpha: int) -> int:
        return self.pi(alpha)


def b_alpha(F: VectorialFunction, alpha: int) -> VectorialFunction:
    """x -> F(x) + F(x + alpha) + F(alpha) + F(0)."""
    t = F.table
    x = np.arange(t.size, dtype=np.int64)
    return VectorialFunction(F.n_in, F.n_out, t ^ t[x ^ alpha] ^ t[alpha] ^ t[0])


def trace_dual_table(ctx: FieldCtx) -> np.ndarray:
    """dual[p] is the bit mask with tr(p*y) = parity(y & dual[p]) for every y."""
    elems = ctx.elements()
    dual = np.zeros(ctx.order, dtype=np.int64)
    for b in range(ctx.n):
        dual |= ctx.trace_vec(ctx.mul_vec(elems, 1 << b)) << b
    return dual


def _null_vector(rows: list[int], n: int) -> tuple[int, int]:
    """(rank, v) where v is a nonzero vector orthogonal to all rows if rank == n - 1."""
    rows = list(rows)
    pivots = []
    r = 0
    for c in range(n):
        bit = 1 << c
        p = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
    if r != n - 1:
        return r, 0
    free = next(c for c in range(n) if c not in pivots)
    v = 1 << free
    for i, c in enumerate(pivots):
        if rows[i] >> free & 1:
            v |= 1 << c
    return r, v


def ortho_derivative(ctx: FieldCtx, F: VectorialFunction, check_degree: bool = True) -> OrthoDerivative:
    """Compute pi_F as a truth table.

    For each alpha != 0 the image of the linear map B_alpha is spanned by the
    images of the basis vectors and must be a hyperplane; pi_F(alpha) is the
    unique nonzero element trace-orthogonal to it.
    """
    n = ctx.n
    if (F.n_in, F.n_out) != (n, n):
        raise ValueError(f"need an ({n},{n})-function, got ({F.n_in},{F.n_out})")
    if check_degree and algebraic_degree(F) > 2:
        raise NotQuadraticError("ortho-derivative needs a function of algebraic degree <= 2")

    t = [int(v) for v in F.table]
    basis = [1 << i for i in range(n)]
    dual = trace_dual_table(ctx)
    undual = np.empty_like(dual)
    undual[dual] = np.arange(ctx.order, dtype=np.int64)

    pi = np.zeros(ctx.order, dtype=np.int64)
    for alpha in range(1, ctx.order):
        c = t[alpha] ^ t[0]
        images = [t[e] ^ t[e ^ alpha] ^ c for e in basis]
        rank, v = _null_vector(images, n)
        if rank != n - 1:
            raise NotAPNError(f"image of B_alpha at alpha={alpha:#x} has dimension {rank}, not {n - 1}")
        pi[alpha] = undual[v]
    return OrthoDerivative(VectorialFunction(n, n, pi))
