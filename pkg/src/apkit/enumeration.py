"""Arithmetic-progression partitions of Z_n and separated subsets.

A block is identified by its ``(start, length)`` pair, so the same element set
read from two different starting points gives two different blocks.  All
enumerators are lazy and emit in lexicographic order of the sorted
``(start, length)`` lists (subsets: lexicographic order of sorted tuples).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .kernels import count_ap_partitions_kernel, count_separated_subsets_kernel
from .numeric import inverse_mod


@dataclass(frozen=True)
class PartitionType:
    """Block-length multiplicities (k_1, ..., k_r), trailing zeros trimmed."""

    counts: Tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(k) for k in self.counts)
        if any(k < 0 for k in counts):
            raise ValueError(f"negative multiplicity in {counts}")
        while counts and counts[-1] == 0:
            counts = counts[:-1]
        object.__setattr__(self, "counts", counts)

    @classmethod
    def of(cls, t: "TypeLike") -> "PartitionType":
        if isinstance(t, PartitionType):
            return t
        if isinstance(t, str):
            return parse_type(t)
        return cls(tuple(t))

    @classmethod
    def from_lengths(cls, lengths: Iterable[int]) -> "PartitionType":
        lengths = list(lengths)
        counts = [0] * (max(lengths, default=0))
        for L in lengths:
            counts[L - 1] += 1
        return cls(tuple(counts))

    @property
    def r(self) -> int:
        return len(self.counts)

    @property
    def n(self) -> int:
        """The modulus this type tiles: sum of i * k_i."""
        return sum(i * k for i, k in enumerate(self.counts, 1))

    @property
    def blocks(self) -> int:
        """K = k_1 + ... + k_r."""
        return sum(self.counts)

    @property
    def long_blocks(self) -> int:
        """K' = k_2 + ... + k_r."""
        return sum(self.counts[1:])

    def k(self, i: int) -> int:
        return self.counts[i - 1] if 1 <= i <= self.r else 0

    def support(self) -> List[int]:
        return [i for i, k in enumerate(self.counts, 1) if k > 0]

    def __str__(self) -> str:
        return format_type(self)


TypeLike = Union[PartitionType, str, Sequence[int]]

_TERM = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_type(text: str) -> PartitionType:
    """Parse ``"1^4 2^3 3^2"`` (spaces or commas; ``"3"`` means ``3^1``)."""
    counts: dict = {}
    for tok in re.split(r"[\s,]+", text.strip()):
        if not tok:
            continue
        match = _TERM.match(tok)
        if not match:
            raise ValueError(f"bad type term {tok!r}")
        base = int(match.group(1))
        exp = int(match.group(2)) if match.group(2) is not None else 1
        if base < 1:
            raise ValueError(f"block length must be positive in {tok!r}")
        if base in counts:
            raise ValueError(f"duplicate block length {base} in {text!r}")
        counts[base] = exp
    if not counts:
        return PartitionType(())
    vec = [0] * max(counts)
    for base, exp in counts.items():
        vec[base - 1] = exp
    return PartitionType(tuple(vec))


def format_type(t: PartitionType) -> str:
    return " ".join(f"{i}^{k}" for i, k in enumerate(t.counts, 1) if k > 0)


def bind_type(n: int, t: TypeLike) -> PartitionType:
    t = PartitionType.of(t)
    if n < 1:
        raise ValueError("modulus must be positive")
    if t.n != n:
        raise ValueError(f"type {format_type(t) or '(empty)'} tiles {t.n}, not n={n}")
    return t


def all_types(n: int) -> Iterator[PartitionType]:
    """Every type tiling n, in reverse-lexicographic order of length lists."""

    def rec(rest: int, largest: int) -> Iterator[List[int]]:
        if rest == 0:
            yield []
            return
        for L in range(min(rest, largest), 0, -1):
            for tail in rec(rest - L, L):
                yield [L] + tail

    for lengths in rec(n, n):
        yield PartitionType.from_lengths(lengths)


@dataclass(frozen=True, order=True)
class APBlock:
    start: int
    length: int
    difference: int
    modulus: int

    def __post_init__(self):
        n, m = self.modulus, self.difference
        if n < 1 or self.length < 1:
            raise ValueError("modulus and length must be positive")
        object.__setattr__(self, "start", self.start % n)
        object.__setattr__(self, "difference", m % n)
        if self.length > 1 and self.length > n // math.gcd(m % n, n):
            raise ValueError(f"block of length {self.length} repeats elements in Z_{n} with step {m}")

    @property
    def key(self) -> Tuple[int, int]:
        return (self.start, self.length)

    def elements(self) -> Tuple[int, ...]:
        return block_elements(self)


def block_elements(b: APBlock) -> Tuple[int, ...]:
    return tuple((b.start + i * b.difference) % b.modulus for i in range(b.length))


@dataclass(frozen=True)
class APPartition:
    modulus: int
    difference: int
    blocks: Tuple[APBlock, ...]

    @classmethod
    def from_keys(cls, n: int, m: int, keys: Iterable[Tuple[int, int]]) -> "APPartition":
        blocks = tuple(sorted(APBlock(s, L, m, n) for s, L in keys))
        return cls(n, m % n, blocks)

    def keys(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(b.key for b in self.blocks)

    def type(self) -> PartitionType:
        return PartitionType.from_lengths(b.length for b in self.blocks)

    def is_valid(self) -> bool:
        seen = [0] * self.modulus
        for b in self.blocks:
            if b.modulus != self.modulus or (b.length > 1 and b.difference != self.difference % self.modulus):
                return False
            for x in b.elements():
                seen[x] += 1
        starts = [b.start for b in self.blocks]
        return all(c == 1 for c in seen) and len(set(starts)) == len(starts)

    def __str__(self) -> str:
        return " ".join("(" + ",".join(map(str, b.elements())) + ")" for b in self.blocks)


@dataclass(frozen=True)
class SeparationSpec:
    """k-subsets of Z_n with no difference in {m, 2m, ..., pm} (mod n)."""

    n: int
    k: int
    m: int
    p: int

    def __post_init__(self):
        if self.n < 1 or self.k < 0 or self.m < 1 or self.p < 1:
            raise ValueError(f"invalid separation spec {self}")

    def forbidden_mask(self) -> np.ndarray:
        mask = np.zeros(self.n, np.bool_)
        for t in range(1, self.p + 1):
            mask[(t * self.m) % self.n] = True
            mask[(-t * self.m) % self.n] = True
        return mask

    def admits(self, subset: Iterable[int]) -> bool:
        mask = self.forbidden_mask()
        xs = list(subset)
        return len(set(x % self.n for x in xs)) == len(xs) and not any(
            mask[(a - b) % self.n] for a in xs for b in xs
        )


# -- partitions -------------------------------------------------------------

def _max_length(n: int, m: int) -> int:
    return n // math.gcd(m, n)


def enumerate_ap_partitions(
    n: int, m: int, t: TypeLike, limit: Optional[int] = None
) -> Iterator[APPartition]:
    """Yield every m-AP-partition of Z_n of type ``t`` in canonical order.

    The scan walks x = 0, 1, ..., n-1 and decides whether x starts a block
    (shorter blocks first) or is left for a block starting further right;
    that decision order is exactly lexicographic order on the sorted
    ``(start, length)`` lists, so no buffering is needed.
    """
    t = bind_type(n, t)
    mod_m = m % n
    lmax = _max_length(n, m)
    if any(L > lmax for L in t.support() if L > 1):
        return
    remaining = [0] + list(t.counts)
    covered = [False] * n
    chosen: List[Tuple[int, int]] = []
    emitted = 0

    def cells(s: int, L: int) -> List[int]:
        return [(s + i * mod_m) % n for i in range(L)]

    def coverable_later(e: int, pos: int) -> bool:
        # e is uncovered; some block starting at s >= pos must reach it
        top = max((L for L in range(2, len(remaining)) if remaining[L]), default=1)
        for j in range(1, top):
            s = (e - j * mod_m) % n
            if s >= pos and all(not covered[c] for c in cells(s, j + 1)):
                return True
        return False

    def rec(pos: int) -> Iterator[APPartition]:
        while pos < n and covered[pos]:
            pos += 1
        if pos == n:
            if all(covered):
                yield APPartition.from_keys(n, m, chosen)
            return
        for e in range(pos):
            if not covered[e] and not coverable_later(e, pos):
                return
        for L in range(1, len(remaining)):
            if not remaining[L]:
                continue
            block = cells(pos, L)
            if any(covered[c] for c in block):
                continue
            for c in block:
                covered[c] = True
            remaining[L] -= 1
            chosen.append((pos, L))
            yield from rec(pos + 1)
            chosen.pop()
            remaining[L] += 1
            for c in block:
                covered[c] = False
        if coverable_later(pos, pos + 1):
            yield from rec(pos + 1)

    for part in rec(0):
        yield part
        emitted += 1
        if limit is not None and emitted >= limit:
            return


def enumerate_dissections(n: int, t: TypeLike, limit: Optional[int] = None) -> Iterator[APPartition]:
    return enumerate_ap_partitions(n, 1, t, limit=limit)


def count_ap_partitions(n: int, m: int, t: TypeLike) -> int:
    """Number of m-AP-partitions of Z_n of type ``t`` by exhaustive search."""
    t = bind_type(n, t)
    lmax = _max_length(n, m)
    if any(L > lmax for L in t.support() if L > 1):
        return 0
    lens, offs = [], []
    for L in t.support():
        for j in range(L):
            lens.append(L)
            offs.append(j)
    remaining = np.zeros(t.r + 1, np.int64)
    remaining[1:] = t.counts
    return int(
        count_ap_partitions_kernel(
            n, m % n, remaining, np.array(lens, np.int64), np.array(offs, np.int64)
        )
    )


# -- separated subsets ------------------------------------------------------

def enumerate_separated_subsets(spec: SeparationSpec, limit: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Yield every admissible k-subset as a sorted tuple, lexicographically."""
    n, k = spec.n, spec.k
    mask = spec.forbidden_mask()
    if k > n or (k > 0 and mask[0]):
        return
    chosen: List[int] = []
    emitted = 0

    def rec(lo: int) -> Iterator[Tuple[int, ...]]:
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for e in range(lo, n - (k - len(chosen)) + 1):
            if any(mask[(e - c) % n] or mask[(c - e) % n] for c in chosen):
                continue
            chosen.append(e)
            yield from rec(e + 1)
            chosen.pop()

    for subset in rec(0):
        yield subset
        emitted += 1
        if limit is not None and emitted >= limit:
            return


def count_separated_subsets(spec: SeparationSpec) -> int:
    return int(count_separated_subsets_kernel(spec.n, spec.k, spec.forbidden_mask()))


def subset_partition_type(n: int, k: int, p: int) -> PartitionType:
    """The type 1^(n-(p+1)k) (p+1)^k matching k-subsets with bound p."""
    ones = n - (p + 1) * k
    if ones < 0:
        raise ValueError(f"n={n} < (p+1)k={(p + 1) * k}")
    counts = [0] * (p + 1)
    counts[0] += ones
    counts[p] += k
    return PartitionType(tuple(counts))


def partition_to_subset(part: APPartition) -> Tuple[int, ...]:
    """Starts of the non-singleton blocks, which must all share one length."""
    lengths = {b.length for b in part.blocks if b.length > 1}
    if len(lengths) > 1:
        raise ValueError(f"blocks of several lengths {sorted(lengths)}; expected only 1 and p+1")
    return tuple(sorted(b.start for b in part.blocks if b.length > 1))


def subset_to_partition(subset: Iterable[int], n: int, m: int, p: int) -> APPartition:
    subset = sorted(x % n for x in subset)
    spec = SeparationSpec(n, len(subset), m, p)
    if not spec.admits(subset):
        raise ValueError(f"{subset} has a forbidden difference for m={m}, p={p} in Z_{n}")
    covered = set()
    keys = []
    for x in subset:
        keys.append((x, p + 1))
        covered.update((x + i * m) % n for i in range(p + 1))
    keys.extend((y, 1) for y in range(n) if y not in covered)
    return APPartition.from_keys(n, m, keys)


# -- bijections -------------------------------------------------------------

def scale_partition(part: APPartition, a: int) -> APPartition:
    """Multiply every element by the unit ``a``; the type is unchanged."""
    n = part.modulus
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    return APPartition.from_keys(n, a * part.difference, ((a * s, L) for s, L in part.keys()))


def unscale_partition(part: APPartition, a: int) -> APPartition:
    return scale_partition(part, inverse_mod(a, part.modulus))


def residue_decompose(part: APPartition, m: Optional[int] = None) -> List[APPartition]:
    """Split an m-AP-partition (m | n) into m dissections of Z_{n/m}.

    Component j collects the blocks inside the residue class j mod m,
    relabelled by x -> (x - j) / m.
    """
    n = part.modulus
    m = part.difference if m is None else m
    if m == 0:
        m = n
    if n % m:
        raise ValueError(f"m={m} does not divide n={n}")
    if part.difference % n != m % n:
        raise ValueError("partition difference does not match m")
    n1 = n // m
    keys: List[List[Tuple[int, int]]] = [[] for _ in range(m)]
    for s, L in part.keys():
        j = s % m
        keys[j].append(((s - j) // m, L))
    return [APPartition.from_keys(n1, 1, ks) for ks in keys]


def residue_compose(components: Sequence[APPartition]) -> APPartition:
    m = len(components)
    if m == 0:
        raise ValueError("need at least one component")
    n1 = components[0].modulus
    keys = []
    for j, comp in enumerate(components):
        if comp.modulus != n1 or (comp.difference % n1) != 1 % n1:
            raise ValueError("components must be dissections of the same cycle")
        keys.extend((s * m + j, L) for s, L in comp.keys())
    return APPartition.from_keys(n1 * m, m, keys)


def residue_matrix(components: Sequence[APPartition], r: int) -> List[List[int]]:
    """Rows i = 2..r, columns j: number of length-i blocks in component j."""
    rows = [[0] * len(components) for _ in range(2, r + 1)]
    for j, comp in enumerate(components):
        for b in comp.blocks:
            if b.length >= 2:
                rows[b.length - 2][j] += 1
    return rows
