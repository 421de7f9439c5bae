"""(0,L,a)-extensions and the 0-extendability search.

The criterion tr(pi_F(x) L(x)) = 1 for every nonzero x with tr(ax) = 0 is
affine in the n^2 bits of L's coefficients, so for each candidate ``a`` the
question is whether a GF(2) system with 2^(n-1) - 1 equations is consistent.
Unknown number ``j*n + b`` is bit b of the coefficient of X^(2^j).
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .field import FieldCtx, field_new
from .ortho import OrthoDerivative, ortho_derivative, trace_dual_table
from .vecfun import VectorialFunction, is_apn, walsh_linearity

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearizedPoly:
    """L(X) = sum_j coeffs[j] * X^(2^j)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, n: int) -> "LinearizedPoly":
        return cls((0,) * n)

    @classmethod
    def from_terms(cls, n: int, terms: dict[int, int]) -> "LinearizedPoly":
        """Build from {j: coefficient of X^(2^j)}."""
        coeffs = [0] * n
        for j, c in terms.items():
            coeffs[j % n] ^= c
        return cls(tuple(coeffs))

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "LinearizedPoly":
        mask = (1 << n) - 1
        return cls(tuple((bits >> (j * n)) & mask for j in range(n)))

    def to_bits(self) -> int:
        n = len(self.coeffs)
        return sum(c << (j * n) for j, c in enumerate(self.coeffs))

    def validate(self, ctx: FieldCtx) -> "LinearizedPoly":
        if len(self.coeffs) != ctx.n:
            raise ValueError(f"a linearized polynomial over F(2^{ctx.n}) needs {ctx.n} coefficients")
        for c in self.coeffs:
            ctx.check(c)
        return self

    def hex(self) -> list[str]:
        return [format(c, "x") for c in self.coeffs]


@dataclass(frozen=True)
class ExtensionSpec:
    L: LinearizedPoly
    a: int

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("a must be nonzero")

    def to_json(self) -> dict:
        return {"L": self.L.hex(), "a": format(self.a, "x")}


@dataclass
class ExtendSearchResult:
    witness: ExtensionSpec | None
    tried_a: int
    elapsed: float
    n: int
    feasible_a: list[int] | None = None
    per_a_rank_stats: dict[int, dict] | None = field(default=None, repr=False)
    frobenius_pruned: bool = False

    @property
    def extendable(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "extendable": self.extendable,
            "tried_a": self.tried_a,
            "elapsed_ms": round(self.elapsed * 1000, 3),
            "frobenius_pruned": self.frobenius_pruned,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.feasible_a is not None:
            out["feasible_a"] = [format(a, "x") for a in self.feasible_a]
        if self.per_a_rank_stats is not None:
            out["per_a"] = {format(a, "x"): s for a, s in sorted(self.per_a_rank_stats.items())}
        return out


def eval_linearized(ctx: FieldCtx, L: LinearizedPoly, x: int) -> int:
    y = 0
    for j, c in enumerate(L.coeffs):
        if c:
            y ^= ctx.mul(c, ctx.frob(x, j))
    return y


def eval_linearized_vec(ctx: FieldCtx, L: LinearizedPoly, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    y = np.zeros_like(x)
    for j, c in enumerate(L.coeffs):
        if c:
            y ^= ctx.mul_vec(ctx.frob_vec(x, j), c)
    return y


def build_extension(ctx: FieldCtx, F: VectorialFunction, spec: ExtensionSpec) -> VectorialFunction:
    """T(x, y) = (F(x) + y L(x), y tr(ax)) on index x | (y << n)."""
    n = ctx.n
    if (F.n_in, F.n_out) != (n, n):
        raise ValueError(f"need an ({n},{n})-function")
    spec.L.validate(ctx)
    x = ctx.elements()
    upper = F.table ^ eval_linearized_vec(ctx, spec.L, x) ^ (ctx.trace_vec(ctx.mul_vec(x, spec.a)) << n)
    return VectorialFunction(n + 1, n + 1, np.concatenate([F.table, upper]))


def prop4_violations(ctx: FieldCtx, pi: OrthoDerivative, spec: ExtensionSpec) -> np.ndarray:
    """Nonzero x with tr(ax) = 0 and tr(pi(x) L(x)) = 0."""
    x = ctx.elements()[1:]
    on_hyperplane = ctx.trace_vec(ctx.mul_vec(x, spec.a)) == 0
    values = ctx.trace_vec(ctx.mul_vec(pi.pi.table[1:], eval_linearized_vec(ctx, spec.L, x)))
    return x[on_hyperplane & (values == 0)]


def check_prop4(ctx: FieldCtx, pi: OrthoDerivative, spec: ExtensionSpec) -> bool:
    return prop4_violations(ctx, pi, spec).size == 0


# --- the linear system ----------------------------------------------------


def prop4_rows(ctx: FieldCtx, pi: OrthoDerivative) -> np.ndarray:
    """Packed augmented rows for x = 1 .. 2^n - 1, right-hand side 1 at bit n^2.

    The coefficient of unknown (j, b) for x is tr(pi(x) x^(2^j) X^b), i.e. bit b
    of the trace-dual mask of pi(x) x^(2^j).
    """
    n = ctx.n
    ncols = n * n
    words = ncols // 64 + 1
    x = ctx.elements()[1:]
    dual = trace_dual_table(ctx)
    rows = np.zeros((x.size, words), dtype=np.uint64)
    for j in range(n):
        chunk = dual[ctx.mul_vec(pi.pi.table[1:], ctx.frob_vec(x, j))].astype(np.uint64)
        lo = j * n
        w, off = divmod(lo, 64)
        rows[:, w] |= chunk << np.uint64(off)
        if off + n > 64:
            rows[:, w + 1] |= chunk >> np.uint64(64 - off)
    w, off = divmod(ncols, 64)
    rows[:, w] |= np.uint64(1) << np.uint64(off)
    return rows


def solve_for_a(ctx: FieldCtx, rows: np.ndarray, a: int) -> tuple[LinearizedPoly | None, int]:
    """(L or None, rank) for the system restricted to tr(ax) = 0."""
    x = ctx.elements()[1:]
    selected = rows[ctx.trace_vec(ctx.mul_vec(x, a)) == 0]
    ok, sol, rank = backend.solve_affine(selected, ctx.n * ctx.n)
    return (LinearizedPoly.from_bits(ctx.n, sol) if ok else None), rank


def frobenius_cosets(ctx: FieldCtx) -> list[list[int]]:
    seen = set()
    cosets = []
    for a in range(1, ctx.order):
        if a in seen:
            continue
        orbit = []
        b = a
        while b not in orbit:
            orbit.append(b)
            b = ctx.mul(b, b)
        seen.update(orbit)
        cosets.append(orbit)
    return cosets


def validate_witness(ctx: FieldCtx, F: VectorialFunction, pi: OrthoDerivative, spec: ExtensionSpec) -> None:
    if not check_prop4(ctx, pi, spec):
        raise RuntimeError("solver returned a pair that violates the ortho-derivative criterion")
    T = build_extension(ctx, F, spec)
    lin, _ = walsh_linearity(T)
    if not is_apn(T) or lin != 1 << ctx.n:
        raise RuntimeError(f"extension is not APN with linearity 2^{ctx.n} (linearity {lin})")


def _solve_chunk(args):
    n, modulus, pi_table, rows, avals = args
    ctx = field_new(n, modulus)
    out = []
    for a in avals:
        L, rank = solve_for_a(ctx, rows, a)
        out.append((a, None if L is None else L.to_bits(), rank))
    return out


def is_zero_extendable(
    ctx: FieldCtx,
    F: VectorialFunction,
    all_a: bool = False,
    jobs: int = 1,
    frobenius_pruning: bool = False,
    progress=None,
    pi: OrthoDerivative | None = None,
) -> ExtendSearchResult:
    """Decide 0-extendability of a quadratic APN F by one GF(2) solve per nonzero a.

    Stops at the first witness unless ``all_a``.  With ``frobenius_pruning`` only
    one ``a`` per Frobenius orbit is solved, and ``a^2`` is solved as well to
    check that the orbit really shares one answer; on disagreement the search
    falls back to every ``a``.  ``progress(tried, total)`` is called per ``a``.
    """
    start = time.perf_counter()
    if pi is None:
        pi = ortho_derivative(ctx, F)
    rows = prop4_rows(ctx, pi)
    total = ctx.order - 1

    if frobenius_pruning:
        order = [c for c in frobenius_cosets(ctx)]
        candidates = [c[0] for c in order]
    else:
        order = None
        candidates = list(range(1, ctx.order))

    results: dict[int, tuple[LinearizedPoly | None, int]] = {}
    witness = None
    tried = 0

    def record(a, L, rank):
        nonlocal witness, tried
        tried += 1
        results[a] = (L, rank)
        if progress is not None:
            progress(tried, total)
        if L is not None and witness is None:
            witness = ExtensionSpec(L, a)

    if jobs > 1 and len(candidates) > 1:
        chunks = [candidates[i::jobs] for i in range(jobs)]
        payload = [(ctx.n, ctx.modulus, pi.pi.table, rows, c) for c in chunks if c]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(_solve_chunk, payload):
                for a, bits, rank in chunk:
                    record(a, None if bits is None else LinearizedPoly.from_bits(ctx.n, bits), rank)
        # first-witness election: smallest feasible a, independent of scheduling
        feasible = sorted(a for a, (L, _) in results.items() if L is not None)
        witness = ExtensionSpec(results[feasible[0]][0], feasible[0]) if feasible else None
    else:
        for a in candidates:
            L, rank = solve_for_a(ctx, rows, a)
            record(a, L, rank)
            if witness is not None and not all_a:
                break

    pruned = False
    if frobenius_pruning:
        pruned = True
        for coset in order:
            rep = coset[0]
            if rep not in results or len(coset) == 1:
                continue
            L2, rank2 = solve_for_a(ctx, rows, coset[1])
            tried += 1
            if (L2 is None) != (results[rep][0] is None):
                log.warning("feasibility is not constant on the Frobenius orbit of %#x; searching every a", rep)
                return is_zero_extendable(ctx, F, all_a=all_a, jobs=jobs, progress=progress, pi=pi)
            results.setdefault(coset[1], (L2, rank2))

    if witness is not None:
        validate_witness(ctx, F, pi, witness)

    feasible_a = None
    stats = None
    if all_a:
        if pruned:
            feasible_a = sorted(b for c in order if results[c[0]][0] is not None for b in c)
        else:
            feasible_a = sorted(a for a, (L, _) in results.items() if L is not None)
        stats = {a: {"rank": r, "feasible": L is not None} for a, (L, r) in results.items()}

    return ExtendSearchResult(
        witness=witness,
        tried_a=tried,
        elapsed=time.perf_counter() - start,
        n=ctx.n,
        feasible_a=feasible_a,
        per_a_rank_stats=stats,
        frobenius_pruned=pruned,
    )
