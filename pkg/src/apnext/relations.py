"""Coefficient identities for the Gold and switched-cube arguments.

Each relation pairs a family of indices r with a right-hand side in a and the
coefficients of L.  The left-hand side is always the coefficient extracted
numerically from the truth table of f, so a relation passes only when the
stated expression is the exact coefficient for arbitrary L (not just under the
hypothesis that f is the indicator of {0}).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterator

from .extend import LinearizedPoly
from .field import FieldCtx
from .univar import build_f_cube, build_f_gold, univariate_coefficient


@dataclass
class CoeffIdentityReport:
    relation_name: str
    n: int
    t: int | None
    trials: int
    seed: int
    checked: int = 0
    mismatches: list[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches and self.checked > 0

    def to_json(self) -> dict:
        return {
            "relation": self.relation_name,
            "n": self.n,
            "t": self.t,
            "trials": self.trials,
            "seed": self.seed,
            "checked": self.checked,
            "passed": self.passed,
            "mismatches": [
                {"L": [format(c, "x") for c in L], "a": format(a, "x"), "index": idx,
                 "lhs": format(lhs, "x"), "rhs": format(rhs, "x")}
                for L, a, idx, lhs, rhs in self.mismatches
            ],
        }


class RelationError(ValueError):
    pass


@dataclass(frozen=True)
class Part:
    """One block of indices sharing a right-hand side and a distribution for L."""

    indices: Callable[[int, int], Iterator[tuple[tuple, int]]]  # (n, t) -> (label, r)
    rhs: Callable  # (ctx, t, a, ell, label) -> field element
    restrict: int | None = None  # keep only ell_0 .. ell_{restrict-1} nonzero
    lhs: Callable | None = None  # (ctx, coeff, label, r) -> field element; default coeff(r)


@dataclass(frozen=True)
class Relation:
    name: str
    family: str  # "gold" (a = 1, f from build_f_gold) or "cube" (t = 1, random a)
    min_n: int
    ts: Callable[[int], list]  # admissible t for a given n
    parts: tuple[Part, ...]
    odd_only: bool = False


def _p(ctx, x, k):
    return ctx.frob(x, k)


def _m(ctx, *xs):
    out = 1
    for x in xs:
        out = ctx.mul(out, x)
    return out


# --- Gold, t = 1 -------------------------------------------------------------


def _gold_t1_idx(n, t):
    for s in range(4, n):
        yield ("s", s), (1 << s) - 3


def _gold_t1_rhs(ctx, t, a, l, label):
    s = label[1]
    return l[s - 1] ^ l[s]


def _gold_t1_low_idx(n, t):
    yield ("r", 7), 7
    yield ("r", 1), 1
    yield ("r", 3), 3


def _gold_t1_low_lhs(ctx, coeff, label, r):
    # c_7 = l_1 + l_0^(2^(n-1)) is stated through its square; the r = 3 fact
    # is stated after substituting c_7 = 0
    if r == 7:
        return ctx.mul(coeff(7), coeff(7))
    if r == 3:
        return coeff(3) ^ coeff(7)
    return coeff(r)


def _gold_t1_low_rhs(ctx, t, a, l, label):
    n, r = ctx.n, label[1]
    if r == 7:
        return _p(ctx, l[1], 1) ^ l[0]
    if r == 1:
        return l[1] ^ _p(ctx, l[0], n - 1) ^ _p(ctx, l[2], n - 1) ^ 1 ^ l[2]
    return l[2] ^ _p(ctx, l[2], 1)


# --- Gold, 1 < t < n/2 - 1 ------------------------------------------------------


def _mid_ts(n):
    return [t for t in range(2, n) if 2 * t < n - 2 and gcd(t, n) == 1]


def _mid_s(n, t):
    return [s for s in range(2, n - 1) if s <= t - 1 or s >= t + 2]


def _gold_mid_idx(n, t):
    q1 = (1 << n) - 1
    for s in _mid_s(n, t):
        yield ("s", s), ((1 << s) - (1 << t) - 1) % q1


def _gold_mid_rhs(ctx, t, a, l, label):
    s = label[1]
    return l[s - 1] ^ l[s]


# --- Gold, t = (n - 1)/2 -----------------------------------------------------------


def _half_t(n):
    return [(n - 1) // 2] if n % 2 == 1 and n >= 5 else []


def _half_s_idx(n, t):
    q1 = (1 << n) - 1
    for s in _mid_s(n, t):
        yield ("s", s), ((1 << s) - (1 << t) - 1) % q1


def _half_s_rhs(ctx, t, a, l, label):
    n, s = ctx.n, label[1]
    return l[s - 1] ^ _p(ctx, l[n - 1], t + 1) ^ _p(ctx, l[(t + s) % n], t + 1) ^ l[s]


def _half_s2_idx(n, t):
    for s in range(2, n - 1):
        if s <= t - 1 or s >= t + 3:
            yield ("s", s), (1 << s) - 1


def _half_s2_rhs(ctx, t, a, l, label):
    n, s = ctx.n, label[1]
    return l[t] ^ l[s] ^ _p(ctx, l[0], t + 1) ^ _p(ctx, l[(t + s) % n], t + 1)


def _half_st_idx(n, t):
    yield ("s", t), (1 << t) - 1


def _half_st_rhs(ctx, t, a, l, label):
    n = ctx.n
    return l[t] ^ l[t + 1] ^ _p(ctx, l[0], t + 1) ^ _p(ctx, l[n - 1], t + 1)


def _half_st1_idx(n, t):
    yield ("s", 1), 1


def _half_st1_rhs(ctx, t, a, l, label):
    return l[t] ^ l[1] ^ _p(ctx, l[0], t + 1) ^ _p(ctx, l[t + 1], t + 1) ^ 1


# --- switched cube ---------------------------------------------------------------


def _second_idx(n, t):
    for m in range(5, n - 2):
        yield ("m", m), (1 << m) - 9


def _second_rhs(ctx, t, a, l, label):
    m = label[1]
    am1 = _p(ctx, a, m - 1)
    return l[m] ^ _p(ctx, l[m - 1], 1) ^ _m(ctx, am1, l[m - 1]) ^ _m(ctx, am1, _p(ctx, l[m - 2], 1))


def _first_idx(n, t):
    for m in range(6, n - 2):
        yield ("m", m), (1 << m) - 3


def _first_rhs(ctx, t, a, l, label):
    n, m = ctx.n, label[1]
    am1, am, ap1 = _p(ctx, a, m - 1), _p(ctx, a, m), _p(ctx, a, m + 1)
    return (
        l[m + 2]
        ^ _p(ctx, l[m + 1], n - 1)
        ^ _m(ctx, am1 ^ ap1, l[m + 1])
        ^ _m(ctx, am1, _p(ctx, l[m], n - 1))
        ^ l[m]
        ^ _m(ctx, am1 ^ ap1, l[m - 1])
        ^ _m(ctx, am1, _p(ctx, l[2], m - 1))
        ^ _p(ctx, l[2], m)
        ^ _m(ctx, ap1, _p(ctx, l[1], m))
        ^ _m(ctx, ap1, _p(ctx, l[0], m - 1))
        ^ am
    )


def _fourth_idx(n, t):
    for m in range(4, n - 2):
        yield ("m", m), (1 << m) - 5


def _fourth_rhs(ctx, t, a, l, label):
    n, m = ctx.n, label[1]
    am, ap2 = _p(ctx, a, m), _p(ctx, a, m + 2)
    a4 = _p(ctx, a, 2)
    sq = lambda x: _p(ctx, x, 1)  # noqa: E731
    return (
        _m(ctx, ap2 ^ am, sq(l[n - 1]))
        ^ _m(ctx, ap2, _p(ctx, l[n - m], m))
        ^ _m(ctx, a, sq(l[m + 1]))
        ^ _m(ctx, a4 ^ a, l[m])
        ^ _m(ctx, a4 ^ a, sq(l[m - 1]))
        ^ _m(ctx, a, _p(ctx, l[2], m))
        ^ _m(ctx, am, l[2])
        ^ _m(ctx, am, sq(l[1]))
        ^ _m(ctx, am, l[0])
    )


def _fifth_idx(n, t):
    yield ("r", 19), 19


def _fifth_rhs(ctx, t, a, l, label):
    n = ctx.n
    a32, a2, ahalf = _p(ctx, a, 5), _p(ctx, a, 1), _p(ctx, a, n - 1)
    return (
        _m(ctx, a32, _p(ctx, l[0], n - 1))
        ^ _m(ctx, a32, l[1])
        ^ _m(ctx, a2 ^ ahalf, _p(ctx, l[3], 2))
        ^ _m(ctx, a2, l[5])
        ^ _m(ctx, ahalf, _p(ctx, l[6], n - 1))
        ^ _m(ctx, a32, _p(ctx, l[n - 3], 2))
        ^ _m(ctx, a32, _p(ctx, l[n - 1], 2))
    )


_ONE = lambda n: [1]  # noqa: E731
_NONE = lambda n: [None]  # noqa: E731

RELATIONS: dict[str, Relation] = {
    r.name: r
    for r in [
        Relation("gold_t1", "gold", 6, _ONE, (
            Part(_gold_t1_idx, _gold_t1_rhs),
            Part(_gold_t1_low_idx, _gold_t1_low_rhs, restrict=3, lhs=_gold_t1_low_lhs),
        )),
        Relation("gold_mid_t", "gold", 7, _mid_ts, (Part(_gold_mid_idx, _gold_mid_rhs),)),
        Relation("gold_half_s", "gold", 7, _half_t, (Part(_half_s_idx, _half_s_rhs),), odd_only=True),
        Relation("gold_half_s2", "gold", 7, _half_t, (Part(_half_s2_idx, _half_s2_rhs),), odd_only=True),
        Relation("gold_half_st", "gold", 7, _half_t, (Part(_half_st_idx, _half_st_rhs),), odd_only=True),
        Relation("gold_half_st1", "gold", 7, _half_t, (Part(_half_st1_idx, _half_st1_rhs),), odd_only=True),
        Relation("cube_second", "cube", 11, _NONE, (Part(_second_idx, _second_rhs),), odd_only=True),
        Relation("cube_first", "cube", 11, _NONE, (Part(_first_idx, _first_rhs),), odd_only=True),
        Relation("cube_fourth", "cube", 11, _NONE, (Part(_fourth_idx, _fourth_rhs),), odd_only=True),
        Relation("cube_fifth", "cube", 11, _NONE, (Part(_fifth_idx, _fifth_rhs),), odd_only=True),
    ]
}


def admissible_ts(name: str, n: int) -> list[int | None]:
    return RELATIONS[name].ts(n)


def random_linearized(ctx: FieldCtx, rng: random.Random, restrict: int | None = None) -> LinearizedPoly:
    keep = ctx.n if restrict is None else restrict
    return LinearizedPoly(tuple(rng.randrange(ctx.order) if j < keep else 0 for j in range(ctx.n)))


def verify_relation(name: str, ctx: FieldCtx, trials: int, seed: int = 0, t: int | None = None) -> list[CoeffIdentityReport]:
    """Check relation ``name`` on ``trials`` seeded random (L, a); one report per admissible t."""
    if name not in RELATIONS:
        raise RelationError(f"unknown relation {name!r}; known: {', '.join(RELATIONS)}")
    rel = RELATIONS[name]
    n = ctx.n
    if n < rel.min_n or (rel.odd_only and n % 2 == 0):
        raise RelationError(f"{name} needs {'odd ' if rel.odd_only else ''}n >= {rel.min_n}, got n={n}")
    ts = rel.ts(n) if t is None else [t]
    if not ts:
        raise RelationError(f"{name} has no admissible t for n={n}")
    if rel.family == "gold":
        for tt in ts:
            if tt not in rel.ts(n):
                raise RelationError(f"t={tt} is not admissible for {name} at n={n}")

    reports = []
    for tt in ts:
        rng = random.Random(f"{seed}:{name}:{n}:{tt}")
        rep = CoeffIdentityReport(name, n, tt, trials, seed)
        tval = 1 if tt is None else tt
        for part in rel.parts:
            idx = list(part.indices(n, tval))
            for _ in range(trials):
                L = random_linearized(ctx, rng, part.restrict)
                if rel.family == "gold":
                    a = 1
                    f = build_f_gold(ctx, tval, L)
                else:
                    a = rng.randrange(1, ctx.order)
                    f = build_f_cube(ctx, a, L)
                cache = {}

                def coeff(r):
                    if r not in cache:
                        cache[r] = univariate_coefficient(ctx, f, r)
                    return cache[r]

                for label, r in idx:
                    lhs = coeff(r) if part.lhs is None else part.lhs(ctx, coeff, label, r)
                    rhs = part.rhs(ctx, tval, a, L.coeffs, label)
                    rep.checked += 1
                    if lhs != rhs:
                        rep.mismatches.append((L.coeffs, a, label[1], lhs, rhs))
        reports.append(rep)
    return reports
