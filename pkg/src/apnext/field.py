"""Arithmetic in F(2^n), 2 <= n <= 16, in the polynomial basis of a fixed modulus.

Elements are plain integers whose bit i is the coefficient of X^i.  Scalar
operations go through log/antilog tables; the ``*_vec`` variants accept numpy
integer arrays and are what the truth-table code uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

MIN_N = 2
MAX_N = 16

# Smallest (as an integer) irreducible polynomial of each degree.
DEFAULT_MODULI = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}


class FieldError(ValueError):
    """Invalid field parameters or a field operation without a defined result."""


# --- GF(2)[X] polynomial helpers (integers as bit vectors) -----------------


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    """Carry-less product of ``a`` and ``b`` reduced modulo ``m``."""
    dm = m.bit_length() - 1
    top = 1 << dm
    a = poly_mod(a, m)
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= m
    return r


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _prime_factors(k: int) -> list[int]:
    out, p = [], 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


def is_irreducible(m: int) -> bool:
    """Rabin's test: X^(2^n) = X mod m and gcd(X^(2^(n/q)) - X, m) = 1 for each prime q | n."""
    n = m.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True

    def x_pow_2k(k):
        r = 2  # the class of X
        for _ in range(k):
            r = poly_mulmod(r, r, m)
        return r

    if x_pow_2k(n) != 2:
        return False
    return all(poly_gcd(x_pow_2k(n // q) ^ 2, m) == 1 for q in _prime_factors(n))


# --- the field context -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Immutable description of F(2^n) with precomputed exp/log tables.

    ``exp`` has length 2*(2^n - 1) so that ``exp[log[x] + log[y]]`` needs no
    reduction; ``log[0]`` is -1 and must never be used as an exponent.
    """

    n: int
    modulus: int
    generator: int = dc_field(repr=False)
    exp: np.ndarray = dc_field(repr=False)
    log: np.ndarray = dc_field(repr=False)
    trace_mask: int = dc_field(repr=False)

    @property
    def order(self) -> int:
        return 1 << self.n

    @property
    def group_order(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.n, self.modulus) == (other.n, other.modulus)

    def __hash__(self):
        return hash((self.n, self.modulus))

    # scalar operations

    def check(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise FieldError(f"{x:#x} is not an element of F(2^{self.n})")
        return x

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.exp[self.log[x] + self.log[y]])

    def mul_slow(self, x: int, y: int) -> int:
        """Table-free multiplication, used to validate the tables."""
        return poly_mulmod(x, y, self.modulus)

    def pow(self, x: int, e: int) -> int:
        if e == 0:
            return 1
        if x == 0:
            return 0
        return int(self.exp[(int(self.log[x]) * e) % self.group_order])

    def inv(self, x: int) -> int:
        if x == 0:
            raise FieldError("zero has no inverse")
        return int(self.exp[(self.group_order - self.log[x]) % self.group_order])

    def trace(self, x: int) -> int:
        return (x & self.trace_mask).bit_count() & 1

    def frob(self, x: int, k: int) -> int:
        return self.pow(x, 1 << (k % self.n))

    # vectorised operations on integer arrays

    def mul_vec(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        lx = self.log[x]
        ly = self.log[y]
        out = self.exp[np.where((lx < 0) | (ly < 0), 0, lx + ly)]
        return np.where((x == 0) | (y == 0), 0, out)

    def pow_vec(self, x, e: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if e == 0:
            return np.ones_like(x)
        lx = self.log[x]
        red = (lx * (e % self.group_order)) % self.group_order
        return np.where(x == 0, 0, self.exp[np.where(lx < 0, 0, red)])

    def inv_vec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise FieldError("zero has no inverse")
        return self.exp[(self.group_order - self.log[x]) % self.group_order]

    def trace_vec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return (np.bitwise_count(x & self.trace_mask) & 1).astype(np.int64)

    def frob_vec(self, x, k: int) -> np.ndarray:
        return self.pow_vec(x, 1 << (k % self.n))

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)


def _find_generator(n: int, modulus: int) -> int:
    q1 = (1 << n) - 1
    factors = _prime_factors(q1)
    for g in range(2, 1 << n):
        if all(_slow_pow(g, q1 // p, modulus) != 1 for p in factors):
            return g
    return 1  # n == 1 only; unreachable for supported n


def _slow_pow(x: int, e: int, m: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = poly_mulmod(r, x, m)
        x = poly_mulmod(x, x, m)
        e >>= 1
    return r


def _trace_mask(n: int, modulus: int) -> int:
    mask = 0
    for i in range(n):
        y, t = 1 << i, 0
        for _ in range(n):
            t ^= y
            y = poly_mulmod(y, y, modulus)
        if t not in (0, 1):
            raise FieldError("trace left the prime field; modulus is not irreducible")
        mask |= t << i
    return mask


@lru_cache(maxsize=None)
def field_new(n: int, modulus: int | None = None) -> FieldCtx:
    """Build (and cache) the context for F(2^n) with the given or default modulus."""
    if not isinstance(n, int) or not MIN_N <= n <= MAX_N:
        raise FieldError(f"unsupported field dimension n={n!r} (need {MIN_N} <= n <= {MAX_N})")
    if modulus is None:
        modulus = DEFAULT_MODULI[n]
    if modulus.bit_length() - 1 != n:
        raise FieldError(f"modulus {modulus:#x} does not have degree {n}")
    if not modulus & 1 or not is_irreducible(modulus):
        raise FieldError(f"modulus {modulus:#x} is reducible over GF(2)")

    q1 = (1 << n) - 1
    g = _find_generator(n, modulus)
    exp = np.zeros(2 * q1, dtype=np.int64)
    log = np.full(1 << n, -1, dtype=np.int64)
    x = 1
    for k in range(q1):
        exp[k] = x
        log[x] = k
        x = poly_mulmod(x, g, modulus)
    exp[q1:] = exp[:q1]
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldCtx(n, modulus, g, exp, log, _trace_mask(n, modulus))
