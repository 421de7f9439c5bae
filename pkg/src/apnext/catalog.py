"""Constructors for the function families used throughout: Gold, switched cube, monomials, files."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .field import FieldCtx
from .tableio import read_table
from .vecfun import VectorialFunction, from_monomial

FAMILIES = ("gold", "switched_cube", "monomial", "file")


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class FunctionSpec:
    """``mu`` is a tuple of (c, e) pairs meaning mu(x) = sum_i tr(c_i x^e_i)."""

    family: str
    t: int | None = None
    d: int | None = None
    mu: tuple[tuple[int, int], ...] = ()
    path: str | None = None

    def describe(self) -> str:
        if self.family == "gold":
            return f"x^(2^{self.t}+1)"
        if self.family == "monomial":
            return f"x^{self.d}"
        if self.family == "switched_cube":
            return "x^3 + " + " + ".join(f"tr({c:#x} x^{e})" for c, e in self.mu)
        return f"file {self.path}"


def parse_mu(text: str) -> tuple[tuple[int, int], ...]:
    """Parse ``"c:e,c:e"`` (c hex, e decimal) or bare exponents ``"9"`` meaning c = 1."""
    terms = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            if ":" in item:
                c, e = item.split(":", 1)
                terms.append((int(c, 16), int(e)))
            else:
                terms.append((1, int(item)))
        except ValueError:
            raise SpecError(f"malformed mu term {item!r}; expected c:e with c in hex") from None
    if not terms:
        raise SpecError("mu needs at least one term")
    return tuple(terms)


def switched_cube(ctx: FieldCtx, mu) -> VectorialFunction:
    x = ctx.elements()
    boolean = 0
    for c, e in mu:
        if e < 0 or e.bit_count() > 2:
            raise SpecError(f"exponent {e} has 2-weight > 2, so tr(c x^{e}) is not quadratic")
        ctx.check(c)
        boolean = boolean ^ ctx.trace_vec(ctx.mul_vec(ctx.pow_vec(x, e), c))
    return VectorialFunction(ctx.n, ctx.n, ctx.pow_vec(x, 3) ^ boolean)


def instantiate(ctx: FieldCtx, spec: FunctionSpec) -> VectorialFunction:
    if spec.family == "gold":
        if spec.t is None or spec.t < 1:
            raise SpecError("gold needs t >= 1")
        if gcd(spec.t, ctx.n) != 1:
            raise SpecError(f"gold needs gcd(t, n) = 1, got gcd({spec.t}, {ctx.n}) = {gcd(spec.t, ctx.n)}")
        return from_monomial(ctx, (1 << spec.t) + 1)
    if spec.family == "monomial":
        if spec.d is None or spec.d < 0:
            raise SpecError("monomial needs an exponent d >= 0")
        return from_monomial(ctx, spec.d)
    if spec.family == "switched_cube":
        return switched_cube(ctx, spec.mu or ((1, 9),))
    if spec.family == "file":
        F = read_table(spec.path)
        if F.n_in != ctx.n:
            raise SpecError(f"table has n={F.n_in} but the field has n={ctx.n}")
        return F
    raise SpecError(f"unknown family {spec.family!r}; known: {', '.join(FAMILIES)}")
