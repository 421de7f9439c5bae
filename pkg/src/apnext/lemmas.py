"""Exhaustive sweeps of the 2-weight lemmas behind the coefficient relations.

Each lemma fixes a family of integers h (mod 2^n - 1) indexed by parameter
tuples and claims exactly which tuples give wt(h) <= 2.  A sweep enumerates
every admissible tuple and records a counterexample whenever the observed
classification differs from the claimed one, in either direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator


def weight_mod(h: int, n: int) -> int:
    """2-weight of h reduced into 0 .. 2^n - 2."""
    q1 = (1 << n) - 1
    if h < 0:
        h %= q1
    while h >> n:  # fold-add: 2^n = 1 mod 2^n - 1
        h = (h & q1) + (h >> n)
    if h == q1:
        h = 0
    return h.bit_count()


@dataclass
class WeightLemmaReport:
    lemma_name: str
    n_range: tuple[int, int]
    tuples_checked: int = 0
    counterexamples: list[tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma_name,
            "n_range": list(self.n_range),
            "tuples_checked": self.tuples_checked,
            "passed": self.passed,
            "counterexamples": [list(c) for c in self.counterexamples],
        }


@dataclass(frozen=True)
class WeightLemma:
    """``cases(n)`` yields (params, h, low) with low the claimed truth of wt(h) <= 2."""

    name: str
    min_n: int
    cases: Callable[[int], Iterator[tuple[tuple, int, bool]]]
    odd_only: bool = False


def _gold_exponents2(n):
    for t in range(2, n):
        if 2 * t >= n:
            break
        for s in range(2, n - 1):
            if t <= s <= t + 1:
                continue
            for k in range(n):
                h = (1 << s) - (1 << t) - 1 + (1 << k) + (1 << (k + t))
                if k not in (0, t + 1):
                    yield ("h", n, t, s, k), h, False


def _gold_exponents3(n):
    t = (n - 1) // 2
    for s in range(1, n - 1):
        if t < s < t + 3:
            continue
        for k in range(n):
            h = (1 << s) - 1 + (1 << k) + (1 << (k + t))
            yield ("h", n, t, s, k), h, k in (0, t + 1)


def _double_sweep(n, base, low_pairs, low_single):
    """h = base + 3*2^s + 3*2^k over all (s, k), and h' = base + 3*2^k over all k."""
    for s in range(n):
        for k in range(n):
            yield ("h", n, base, s, k), base + 3 * (1 << s) + 3 * (1 << k), (s, k) in low_pairs
    for k in range(n):
        yield ("h'", n, base, k), base + 3 * (1 << k), k in low_single


def _trace2(n):
    for m in range(5, n - 2):
        # (s, k): k = 0 needs s = 1; k = 1 needs s = 0; nothing else
        yield from _double_sweep(n, (1 << m) - 9, {(1, 0), (0, 1)}, set())


def _trace(n):
    for m in range(6, n - 2):
        pairs = {(m, 0), (m - 1, 0), (0, m - 1), (0, m), (n - 1, n - 1)}
        yield from _double_sweep(n, (1 << m) - 3, pairs, {0})


def _trace4(n):
    for m in range(4, n - 2):
        pairs = {(0, 0), (1, 0), (0, 1), (m, 1), (1, m)}
        yield from _double_sweep(n, (1 << m) - 5, pairs, {1})


def _trace5(n):
    pairs = {(2, 0), (0, 2), (n - 1, 2), (2, n - 1)}
    yield from _double_sweep(n, 19, pairs, set())


LEMMAS: dict[str, WeightLemma] = {
    lem.name: lem
    for lem in [
        WeightLemma("gold_exponents2", 5, _gold_exponents2),
        WeightLemma("gold_exponents3", 5, _gold_exponents3, odd_only=True),
        WeightLemma("trace2", 10, _trace2),
        WeightLemma("trace", 9, _trace),
        WeightLemma("trace4", 9, _trace4),
        WeightLemma("trace5", 9, _trace5),
    ]
}


def verify_weight_lemma(name: str, n_range: tuple[int, int]) -> WeightLemmaReport:
    """Sweep lemma ``name`` for every admissible n in the inclusive range."""
    if name not in LEMMAS:
        raise ValueError(f"unknown lemma {name!r}; known: {', '.join(LEMMAS)}")
    lem = LEMMAS[name]
    lo, hi = n_range
    rep = WeightLemmaReport(name, (lo, hi))
    for n in range(max(lo, lem.min_n), hi + 1):
        if lem.odd_only and n % 2 == 0:
            continue
        for params, h, low in lem.cases(n):
            rep.tuples_checked += 1
            if (weight_mod(h, n) <= 2) != low:
                rep.counterexamples.append(params)
    return rep
