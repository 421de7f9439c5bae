"""Truth tables of vectorial functions and their differential / linear / degree analysis.

Index convention: entry ``i`` of a table is the image of the element whose bit
vector is ``i`` (bit j = coefficient of X^j).  Outputs use the same convention.
For the (n+1)-dimensional extensions, input ``x | (y << n)`` stands for (x, y).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .field import FieldCtx


@dataclass(frozen=True, eq=False)
class VectorialFunction:
    n_in: int
    n_out: int
    table: np.ndarray

    def __post_init__(self):
        table = np.ascontiguousarray(self.table, dtype=np.int64)
        if table.ndim != 1 or table.size != 1 << self.n_in:
            raise ValueError(f"table must have exactly 2^{self.n_in} entries, got {table.size}")
        if table.size and (table.min() < 0 or table.max() >= 1 << self.n_out):
            raise ValueError(f"table entries must be below 2^{self.n_out}")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other):
        return (
            isinstance(other, VectorialFunction)
            and (self.n_in, self.n_out) == (other.n_in, other.n_out)
            and np.array_equal(self.table, other.table)
        )

    def __xor__(self, other: "VectorialFunction") -> "VectorialFunction":
        if (self.n_in, self.n_out) != (other.n_in, other.n_out):
            raise ValueError("dimension mismatch")
        return VectorialFunction(self.n_in, self.n_out, self.table ^ other.table)


@dataclass(frozen=True)
class SpectrumReport:
    linearity: int
    nonlinearity: int
    differential_uniformity: int
    algebraic_degree: int
    is_apn: bool
    is_quadratic: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def from_monomial(ctx: FieldCtx, d: int) -> VectorialFunction:
    if d < 0:
        raise ValueError("exponent must be non-negative")
    return VectorialFunction(ctx.n, ctx.n, ctx.pow_vec(ctx.elements(), d))


def _require_square(F: VectorialFunction):
    if F.n_in != F.n_out:
        raise ValueError(f"need an (n,n)-function, got ({F.n_in},{F.n_out})")


def ddt_row(F: VectorialFunction, a: int) -> np.ndarray:
    """Row ``a`` of the difference distribution table, O(2^n) memory."""
    x = np.arange(F.table.size, dtype=np.int64)
    return np.bincount(F.table ^ F.table[x ^ a], minlength=1 << F.n_out)


def ddt(F: VectorialFunction) -> np.ndarray:
    _require_square(F)
    return np.stack([ddt_row(F, a) for a in range(F.table.size)])


def differential_uniformity(F: VectorialFunction) -> int:
    _require_square(F)
    if F.n_in == 0:
        return 0
    return int(backend.differential_uniformity(F.table, F.n_in, F.n_out))


def is_apn(F: VectorialFunction) -> bool:
    return differential_uniformity(F) <= 2


def walsh_spectrum(F: VectorialFunction, w: int) -> np.ndarray:
    """Walsh coefficients of the component x -> w.F(x) at every input mask u."""
    signs = 1 - 2 * (np.bitwise_count(F.table & w) & 1).astype(np.int64)
    return backend.walsh_transform(signs)


def walsh_linearity(F: VectorialFunction) -> tuple[int, int]:
    """(linearity, nonlinearity).

    Components tr(vF(x)) and affine forms tr(ux) range over all nonzero output
    masks and all input masks as v, u range over the field, so the maximum is
    taken over plain bit masks.
    """
    lin = int(backend.linearity(F.table, F.n_in, F.n_out))
    return lin, (F.table.size - lin) // 2


def anf(F: VectorialFunction) -> np.ndarray:
    """Binary Moebius transform applied to all coordinates at once (XOR is bitwise)."""
    a = F.table.copy()
    size = a.size
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        a[:, 1, :] ^= a[:, 0, :]
        a = a.reshape(size)
        h *= 2
    return a


def algebraic_degree(F: VectorialFunction) -> int:
    coeffs = anf(F)
    support = np.nonzero(coeffs)[0]
    if support.size == 0:
        return 0
    return int(np.bitwise_count(support).max())


def is_quadratic(F: VectorialFunction) -> bool:
    return algebraic_degree(F) == 2


def analyze(F: VectorialFunction) -> SpectrumReport:
    lin, nl = walsh_linearity(F)
    du = differential_uniformity(F)
    deg = algebraic_degree(F)
    return SpectrumReport(
        linearity=lin,
        nonlinearity=nl,
        differential_uniformity=du,
        algebraic_degree=deg,
        is_apn=du == 2,
        is_quadratic=deg == 2,
    )
