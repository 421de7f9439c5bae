"""Pure Python / numpy versions of the hot kernels.

Same signatures and results as the compiled ``_speedups`` module; selected by
:mod:`apnext.backend` when the extension is missing or disabled.
"""

import numpy as np

BACKEND = "python"


def _rows_to_ints(rows):
    rows = np.ascontiguousarray(rows, dtype=np.uint64)
    out = []
    for r in rows:
        v = 0
        for w in range(rows.shape[1] - 1, -1, -1):
            v = (v << 64) | int(r[w])
        out.append(v)
    return out


def _eliminate(rows, ncols):
    """Reduced row echelon form over GF(2) on a list of ints; returns (rows, pivots)."""
    pivots = []
    rank = 0
    for c in range(ncols):
        bit = 1 << c
        p = next((i for i in range(rank, len(rows)) if rows[i] & bit), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(c)
        rank += 1
    return rows, pivots


def solve_affine(rows, ncols):
    """Solve the GF(2) system whose augmented rows carry the right-hand side at bit ``ncols``.

    Returns ``(consistent, solution, rank)``; free variables are set to zero, and
    ``solution`` is an int with bit c the value of unknown c (None if inconsistent).
    """
    ints, pivots = _eliminate(_rows_to_ints(rows), ncols)
    rank = len(pivots)
    rhs = 1 << ncols
    if any(r & rhs for r in ints[rank:]):
        return False, None, rank
    sol = 0
    for i, c in enumerate(pivots):
        if ints[i] & rhs:
            sol |= 1 << c
    return True, sol, rank


def rank(rows, ncols):
    return len(_eliminate(_rows_to_ints(rows), ncols)[1])


def differential_uniformity(table, n_in, n_out):
    t = np.asarray(table, dtype=np.int64)
    x = np.arange(1 << n_in, dtype=np.int64)
    best = 0
    for a in range(1, 1 << n_in):
        counts = np.bincount(t ^ t[x ^ a], minlength=1 << n_out)
        best = max(best, int(counts.max()))
    return best


def walsh_transform(values):
    """Unnormalised Walsh-Hadamard transform along the last axis."""
    a = np.array(values, dtype=np.int64)
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        a = a.reshape(lead + (size // (2 * h), 2, h))
        x = a[..., 0, :]
        y = a[..., 1, :]
        a = np.stack((x + y, x - y), axis=-2).reshape(lead + (size,))
        h *= 2
    return a


def linearity(table, n_in, n_out, block=64):
    """max over nonzero output masks w and all input masks u of |sum_x (-1)^(w.F(x) + u.x)|."""
    t = np.asarray(table, dtype=np.int64)
    best = 0
    masks = np.arange(1, 1 << n_out, dtype=np.int64)
    for start in range(0, masks.size, block):
        w = masks[start:start + block, None]
        signs = 1 - 2 * (np.bitwise_count(t[None, :] & w) & 1).astype(np.int64)
        best = max(best, int(np.abs(walsh_transform(signs)).max()))
    return best
