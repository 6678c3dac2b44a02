"""Closed-form counts for AP-partitions of Z_n and separated subsets.

Everything is evaluated in exact arithmetic and every assembled count is
checked to be an integer before it is returned.
"""

from __future__ import annotations

import enum
import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

from . import enumeration
from .enumeration import PartitionType, TypeLike, bind_type
from .numeric import (
    cyclic_multinomial,
    gen_multinomial,
    guarded_cyclic_term,
    multinomial,
)

DEFAULT_BUDGET = 10**7


class DeltaClassification(str, enum.Enum):
    POSITIVE = "POSITIVE"
    ZERO = "ZERO"
    MINUS_D = "MINUS_D"
    OTHER = "OTHER"


class Method(str, enum.Enum):
    CYCLIC_MULTINOMIAL = "cyclic_multinomial"
    BOUNDARY_CORRECTION = "boundary_correction"
    BRUTE_FORCE = "brute_force"
    SEPARATION_GENERAL = "separation_general"
    SEPARATION_N_EQ_MPK = "separation_n_eq_mpk"
    SEPARATION_N_EQ_MPK_MINUS_M = "separation_n_eq_mpk_minus_m"
    SINGLE_DIFFERENCE = "single_difference"


class NoClosedForm(ValueError):
    """No closed form applies and brute force would exceed the budget."""


@dataclass(frozen=True)
class DeltaClass:
    delta: int
    d: int
    classification: DeltaClassification


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {value}")
    return value.numerator


def delta_classify(n: int, m: int, t: TypeLike) -> DeltaClass:
    """delta = n - d (n - K), d = gcd(m, n); it is always a multiple of d."""
    t = bind_type(n, t)
    d = math.gcd(m, n)
    delta = n - d * (n - t.blocks)
    if delta > 0:
        cls = DeltaClassification.POSITIVE
    elif delta == 0:
        cls = DeltaClassification.ZERO
    elif delta == -d:
        cls = DeltaClassification.MINUS_D
    else:
        cls = DeltaClassification.OTHER
    return DeltaClass(delta, d, cls)


def count_theorem_general(n: int, m: int, t: TypeLike) -> int:
    """Partition count n/K * multinomial(K; k) when delta > 0."""
    t = bind_type(n, t)
    dc = delta_classify(n, m, t)
    if dc.delta <= 0:
        raise ValueError(f"delta={dc.delta} <= 0: outside the cyclic multinomial range")
    return _as_int(cyclic_multinomial(n, t.counts), "cyclic multinomial")


def _split_pairs_symmetric(t: PartitionType) -> bool:
    # the two columns of a "one 2-block here, the rest there" exclusion matrix
    # coincide when the rest is a single 2-block, so ordered pairs double count
    return t.k(2) == 2 and t.long_blocks == 2


def clubsuit(n: int, d: int, t: TypeLike, uncorrected: bool = False) -> Fraction:
    """Correction coefficient of the delta == -d count (may be non-integral).

    For type 1^a 2^2 (which with delta == -d forces d == n) the plain
    coefficient counts each split exclusion matrix twice; that case is halved
    unless ``uncorrected`` is set.
    """
    t = PartitionType.of(t)
    kp = t.long_blocks
    k2 = t.k(2)
    if k2 == 0:
        return Fraction(n)
    if kp <= 1:
        raise ValueError("k_2 > 0 needs at least two non-singleton blocks here")
    pairs = d * kp * (kp - 1)
    if not uncorrected and _split_pairs_symmetric(t):
        pairs *= 2
    return n * (1 - Fraction(n * (d - 1) * k2, pairs))


def count_theorem_boundary(n: int, m: int, t: TypeLike, uncorrected: bool = False) -> int:
    """Partition count when delta is 0 or -d.

    ``uncorrected`` selects the uncorrected coefficient (see :func:`clubsuit`);
    it is wrong for m = 0 (mod n) with type 1^(n-4) 2^2.
    """
    t = bind_type(n, t)
    dc = delta_classify(n, m, t)
    kp = t.long_blocks
    tail = multinomial(t.counts[1:])
    sign = -1 if kp % 2 else 1
    base = cyclic_multinomial(n, t.counts)
    if dc.classification is DeltaClassification.ZERO:
        value = base + Fraction(n * sign * tail, kp)
    elif dc.classification is DeltaClassification.MINUS_D:
        value = base + clubsuit(n, dc.d, t, uncorrected) * sign * tail
    else:
        raise ValueError(f"delta={dc.delta} is neither 0 nor -d={-dc.d}")
    return _as_int(value, "boundary count")


# -- separated subsets ------------------------------------------------------

def _cyclic_binomial(n: int, top: int, k: int) -> Fraction:
    """n / top * binom(top, k) with the pole at top == 0 taken as a limit."""
    return guarded_cyclic_term(n, n - top, [k])


def count_mansour_sun(n: int, k: int, m: int, p: int) -> int:
    """k-subsets of Z_n avoiding differences m..pm, valid for n >= mpk + 1."""
    if min(n, m, p) < 1 or k < 0:
        raise ValueError("n, m, p must be positive and k nonnegative")
    if n < m * p * k + 1:
        raise ValueError(
            f"n={n} < mpk+1={m * p * k + 1}; use count_cor1/count_cor2/hwang_g or the dispatcher"
        )
    return _as_int(_cyclic_binomial(n, n - p * k, k), "separated subset count")


def count_cor1(m: int, p: int, k: int) -> int:
    """Separated k-subsets of Z_n for n == mpk (k >= 2)."""
    if m < 1 or p < 1:
        raise ValueError("m and p must be positive")
    if k < 2:
        raise ValueError("k must be at least 2")
    n = m * p * k
    sign = 1 if k % 2 == 0 else -1
    value = _cyclic_binomial(n, n - p * k, k) + Fraction(sign * n, k)
    return _as_int(value, "separated subset count")


def count_cor2(m: int, p: int, k: int) -> int:
    """Separated k-subsets of Z_n for n == mpk - m (pk > p + 1)."""
    if min(m, p, k) < 1:
        raise ValueError("m, p, k must be positive")
    if p * k <= p + 1:
        raise ValueError("need pk > p + 1")
    n = m * p * k - m
    sign = 1 if k % 2 == 0 else -1
    if p == 1:
        value = _cyclic_binomial(n, n - k, k) - sign * n * (m - 2)
    else:
        value = _cyclic_binomial(n, n - p * k, k) + sign * n
    return _as_int(value, "separated subset count")


def hwang_g(n: int, k: int, m: int) -> int:
    """k-subsets of Z_n with no difference equal to +-m (0 < m < n)."""
    if not 0 < m < n:
        raise ValueError("need 0 < m < n")
    if k < 0:
        raise ValueError("k must be nonnegative")
    d = math.gcd(m, n)
    step = n // d
    total = 0
    for j in range(d // 2 + 1):
        low = k - step * j
        top = n - k - step * j
        # coefficient of x^low in a Lucas-type power sum; zero outside 0 <= low <= top
        if low < 0 or low > top:
            continue
        sign = -1 if (step * j) % 2 else 1
        if low == 0:
            term = Fraction(1)
        else:
            term = Fraction(top + low, top) * math.comb(top, low)
        total += sign * math.comb(d, j) * term
    return _as_int(total, "single-difference count")


# -- residue multi-sum ------------------------------------------------------

def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All ordered tuples of ``parts`` nonnegative ints summing to ``total``."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def residue_matrices(m: int, t: TypeLike) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """Every matrix (k_{i,j}), i = 2..r, j = 0..m-1, with row sums k_i.

    Yielded as a tuple of columns, each column being (k_{2,j}, ..., k_{r,j}).
    """
    t = PartitionType.of(t)
    rows = [list(_compositions(k, m)) for k in t.counts[1:]]
    for choice in itertools.product(*rows):
        yield tuple(zip(*choice)) if choice else tuple(() for _ in range(m))


def column_weight(column: Sequence[int]) -> int:
    """sum (i - 1) k_{i,j} over i >= 2."""
    return sum(i * k for i, k in enumerate(column, 1))


def general_x_sum(x: int, m: int, t: TypeLike, n1: int = None, exclude: bool = True) -> Fraction:
    """Sum over residue matrices of prod_j x/(x - w_j) binom(x - w_j; column j).

    With ``exclude`` the matrices with some n1 - w_j <= 0 are dropped
    (n1 defaults to n / m).  Poles at x == w_j are continued by their limit.
    """
    t = PartitionType.of(t)
    if n1 is None:
        if t.n % m:
            raise ValueError(f"m={m} does not divide n={t.n}")
        n1 = t.n // m
    total = Fraction(0)
    for cols in residue_matrices(m, t):
        if exclude and any(n1 - column_weight(c) <= 0 for c in cols):
            continue
        prod = Fraction(1)
        for c in cols:
            prod *= guarded_cyclic_term(x, column_weight(c), c)
            if not prod:
                break
        total += prod
    return total


@lru_cache(maxsize=None)
def _column_count(n1: int, column: Tuple[int, ...]) -> int:
    w = column_weight(column)
    if n1 - w <= 0:
        return 0
    return _as_int(Fraction(n1, n1 - w) * gen_multinomial(n1 - w, column), "column count")


def multi_sum_count(n: int, m: int, t: TypeLike) -> int:
    """Partition count as a sum over residue matrices (requires m | n).

    Each column contributes the number of dissections of Z_{n/m} with that
    column's non-singleton blocks, so the sum is the exact count for every
    delta, not only for delta > 0.
    """
    t = bind_type(n, t)
    if n % m:
        raise ValueError(f"m={m} does not divide n={n}; reduce m to gcd(m, n) first")
    n1 = n // m
    total = 0
    for cols in residue_matrices(m, t):
        prod = 1
        for c in cols:
            prod *= _column_count(n1, c)
            if not prod:
                break
        total += prod
    return total


def boundary_rhs_x(x: int, m: int, t: TypeLike, case: DeltaClassification) -> Fraction:
    """Closed right-hand side for the general-x sum in the two boundary cases.

    ``m`` must divide n = sum(i k_i); n1 = n / m.  At x == n1 this equals
    :func:`count_theorem_boundary`.
    """
    t = PartitionType.of(t)
    n = t.n
    if n % m:
        raise ValueError(f"m={m} does not divide n={n}")
    n1 = n // m
    tail = list(t.counts[1:])
    weight = column_weight(tail)
    case = DeltaClassification(case)
    value = guarded_cyclic_term(m * x, weight, tail)
    if case is DeltaClassification.ZERO:
        return value - m * guarded_cyclic_term(x, n1, tail)
    if case is DeltaClassification.MINUS_D:
        value -= m * guarded_cyclic_term(x, n1 + 1, tail)
        if t.k(2) > 0:
            reduced = [tail[0] - 1] + tail[1:]
            pairs = m * (m - 1)
            if _split_pairs_symmetric(t):
                pairs //= 2
            value -= pairs * x * guarded_cyclic_term(x, n1, reduced)
        return value
    raise ValueError(f"no boundary closed form for {case}")


# -- dispatch ---------------------------------------------------------------

def search_estimate(n: int, t: TypeLike) -> int:
    """Rough size of the brute-force search tree (orderings of blocks times n)."""
    t = PartitionType.of(t)
    return n * multinomial(t.counts)


def enumeration_budget() -> int:
    raw = os.environ.get("APKIT_MAX_ENUM")
    return int(raw) if raw else DEFAULT_BUDGET


def count_auto(n: int, m: int, t: TypeLike, fallback_budget: int = None) -> Tuple[int, Method]:
    """Count m-AP-partitions by the best available route."""
    t = bind_type(n, t)
    if fallback_budget is None:
        fallback_budget = enumeration_budget()
    dc = delta_classify(n, m, t)
    if dc.classification is DeltaClassification.POSITIVE:
        return count_theorem_general(n, m, t), Method.CYCLIC_MULTINOMIAL
    if dc.classification in (DeltaClassification.ZERO, DeltaClassification.MINUS_D):
        return count_theorem_boundary(n, m, t), Method.BOUNDARY_CORRECTION
    if search_estimate(n, t) > fallback_budget:
        raise NoClosedForm(
            f"no closed form for delta={dc.delta} (d={dc.d}) and the search estimate "
            f"exceeds the budget {fallback_budget}"
        )
    return enumeration.count_ap_partitions(n, m, t), Method.BRUTE_FORCE


def count_subsets_auto(n: int, k: int, m: int, p: int, fallback_budget: int = None) -> Tuple[int, Method]:
    """Count separated k-subsets, preferring a closed form whose hypothesis holds."""
    if fallback_budget is None:
        fallback_budget = enumeration_budget()
    if n >= m * p * k + 1:
        return count_mansour_sun(n, k, m, p), Method.SEPARATION_GENERAL
    if k >= 2 and n == m * p * k:
        return count_cor1(m, p, k), Method.SEPARATION_N_EQ_MPK
    if p * k > p + 1 and n == m * p * k - m:
        return count_cor2(m, p, k), Method.SEPARATION_N_EQ_MPK_MINUS_M
    if p == 1 and 0 < m < n:
        return hwang_g(n, k, m), Method.SINGLE_DIFFERENCE
    if math.comb(n, k) > fallback_budget:
        raise NoClosedForm(f"no closed form for n={n}, k={k}, m={m}, p={p} within budget")
    spec = enumeration.SeparationSpec(n, k, m, p)
    return enumeration.count_separated_subsets(spec), Method.BRUTE_FORCE


def cwz_condition(n: int, m: int, t: TypeLike) -> bool:
    """k_1 > (k_2 + ... + k_r) ((m - 1)(i_r - 1) - 1), i_r the longest length.

    Types without singletons return False.
    """
    t = bind_type(n, t)
    if t.k(1) < 1:
        return False
    return t.k(1) > t.long_blocks * ((m - 1) * (t.r - 1) - 1)
