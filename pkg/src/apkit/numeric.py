"""Exact integer/rational helpers: generalized multinomials, limit values,
and the modular units used to rescale progressions.

Integers are plain Python ints and rationals are :class:`fractions.Fraction`;
nothing in here touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple


class IndeterminateTerm(ArithmeticError):
    """A guarded term of the form x/0 * binom(0; ) has no value."""


@lru_cache(maxsize=None)
def factorial(k: int) -> int:
    return math.factorial(k)


def falling_factorial(x: int, k: int) -> int:
    """x (x-1) ... (x-k+1); empty product for k == 0."""
    out = 1
    for i in range(k):
        out *= x - i
    return out


def multinomial(ks: Sequence[int]) -> int:
    """Classical multinomial coefficient (k_1+...+k_r)! / (k_1! ... k_r!)."""
    if any(k < 0 for k in ks):
        raise ValueError(f"negative entry in {list(ks)}")
    out = factorial(sum(ks))
    for k in ks:
        out //= factorial(k)
    return out


def gen_multinomial(x: int, ks: Sequence[int]) -> int:
    """binom(x; k_1, ..., k_r) = x(x-1)...(x-K+1) / (k_1! ... k_r!).

    Defined through the falling factorial for every integer ``x``, negative
    values included.  The result is always an integer.
    """
    if any(k < 0 for k in ks):
        raise ValueError(f"negative entry in {list(ks)}")
    num = falling_factorial(x, sum(ks))
    den = 1
    for k in ks:
        den *= factorial(k)
    q, rem = divmod(num, den)
    assert rem == 0, (x, ks)
    return q


def cyclic_multinomial(n: int, ks: Sequence[int]) -> Fraction:
    """n / K * multinomial(K; ks) with K = sum(ks).

    Returned as an exact Fraction.  It is an integer (the number of
    dissections of an n-cycle of type ks) whenever n == sum(i * k_i).
    """
    total = sum(ks)
    if total == 0:
        raise ValueError("empty type")
    return Fraction(n * multinomial(ks), total)


def limit0_multinomial(ks: Sequence[int]) -> Fraction:
    """Limit of binom(z; ks) / z as z -> 0."""
    total = sum(ks)
    if total == 0:
        raise ValueError("limit undefined for an empty multinomial")
    sign = -1 if (total - 1) % 2 else 1
    return Fraction(sign * multinomial(ks), total)


def guarded_cyclic_term(x: int, w: int, ks: Sequence[int]) -> Fraction:
    """x / (x - w) * binom(x - w; ks), continued through its pole at x == w.

    At x == w the value is x times :func:`limit0_multinomial`, which is what
    the polynomial x (x-w-1)...(x-w-K+1) / prod(k!) evaluates to there.
    """
    z = x - w
    if z != 0:
        return Fraction(x, z) * gen_multinomial(z, ks)
    if sum(ks) == 0:
        raise IndeterminateTerm(f"indeterminate term x={x}, w={w}, ks={list(ks)}")
    return x * limit0_multinomial(ks)


def gcd(a: int, b: int) -> int:
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def egcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, u, v) with g = gcd(a, b) >= 0 and u*a + v*b == g."""
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def inverse_mod(a: int, n: int) -> int:
    """Multiplicative inverse of a modulo n (raises ValueError if none)."""
    g, u, _ = egcd(a % n, n)
    if g != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    return u % n


def find_scaling_unit(m: int, n: int) -> int:
    """Smallest a >= 1 with gcd(a, n) == 1 and a*m = gcd(m, n) (mod n).

    Multiplication by such an ``a`` carries m-progressions of Z_n onto
    d-progressions, d = gcd(m, n).  For n == 1 the answer is 1.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    d = math.gcd(m, n)
    for a in range(1, max(n, 2)):
        if math.gcd(a, n) == 1 and (a * m - d) % n == 0:
            return a
    raise AssertionError(f"no scaling unit for m={m}, n={n}")  # pragma: no cover
