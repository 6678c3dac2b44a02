"""Oracle-equivalence grids: every closed form against brute force.

A grid is split into one cell per modulus n so cells can run in worker
processes; results are always merged back in n order.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from . import enumeration as en
from . import formulas as fm
from .numeric import find_scaling_unit, inverse_mod

PARTITION_CAP = 12
SUBSET_CAP = 14


@dataclass
class GridResult:
    name: str
    max_n: int
    checked: int = 0
    mismatches: List[dict] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches


Cell = Tuple[int, List[dict]]


def _types_with(n: int, m: int, classes) -> Iterable[en.PartitionType]:
    for t in en.all_types(n):
        if fm.delta_classify(n, m, t).classification in classes:
            yield t


def cell_general(n: int) -> Cell:
    checked, bad = 0, []
    for m in range(1, n + 1):
        for t in _types_with(n, m, {fm.DeltaClassification.POSITIVE}):
            checked += 1
            got, want = fm.count_theorem_general(n, m, t), en.count_ap_partitions(n, m, t)
            if got != want:
                bad.append({"n": n, "m": m, "type": str(t), "formula": got, "oracle": want})
    return checked, bad


def cell_boundary(n: int) -> Cell:
    checked, bad = 0, []
    classes = {fm.DeltaClassification.ZERO, fm.DeltaClassification.MINUS_D}
    for m in range(1, n + 1):
        for t in _types_with(n, m, classes):
            checked += 1
            got, want = fm.count_theorem_boundary(n, m, t), en.count_ap_partitions(n, m, t)
            if got != want:
                bad.append({"n": n, "m": m, "type": str(t), "formula": got, "oracle": want})
    return checked, bad


def cell_multisum(n: int) -> Cell:
    checked, bad = 0, []
    for m in range(1, n + 1):
        d = math.gcd(m, n)
        for t in en.all_types(n):
            checked += 1
            got, want = fm.multi_sum_count(n, d, t), en.count_ap_partitions(n, m, t)
            if got != want:
                bad.append({"n": n, "m": m, "type": str(t), "formula": got, "oracle": want})
    return checked, bad


def _subset_oracle(n: int, k: int, m: int, p: int) -> int:
    return en.count_separated_subsets(en.SeparationSpec(n, k, m, p))


def cell_mansour_sun(n: int) -> Cell:
    checked, bad = 0, []
    for m in range(1, n):
        for p in range(1, n):
            for k in range(1, n):
                if n < m * p * k + 1:
                    break
                checked += 1
                got, want = fm.count_mansour_sun(n, k, m, p), _subset_oracle(n, k, m, p)
                if got != want:
                    bad.append({"n": n, "k": k, "m": m, "p": p, "formula": got, "oracle": want})
    return checked, bad


def cell_cor1(n: int) -> Cell:
    checked, bad = 0, []
    for m in range(1, n + 1):
        for p in range(1, n + 1):
            if n % (m * p):
                continue
            k = n // (m * p)
            if k < 2:
                continue
            checked += 1
            got, want = fm.count_cor1(m, p, k), _subset_oracle(n, k, m, p)
            if got != want:
                bad.append({"n": n, "k": k, "m": m, "p": p, "formula": got, "oracle": want})
    return checked, bad


def cell_cor2(n: int) -> Cell:
    checked, bad = 0, []
    for m in range(1, n + 1):
        if n % m:
            continue
        for p in range(1, n + 2):
            # n = m (pk - 1)
            q = n // m + 1
            if q % p:
                continue
            k = q // p
            if p * k <= p + 1:
                continue
            checked += 1
            got, want = fm.count_cor2(m, p, k), _subset_oracle(n, k, m, p)
            if got != want:
                bad.append({"n": n, "k": k, "m": m, "p": p, "formula": got, "oracle": want})
    return checked, bad


def cell_hwang(n: int, k_max: int = 7) -> Cell:
    checked, bad = 0, []
    for m in range(1, n):
        for k in range(0, k_max + 1):
            checked += 1
            got, want = fm.hwang_g(n, k, m), _subset_oracle(n, k, m, 1)
            if got != want:
                bad.append({"n": n, "k": k, "m": m, "d": math.gcd(m, n), "formula": got, "oracle": want})
    return checked, bad


def _feasible_types(n: int, m: int):
    lmax = n // math.gcd(m, n)
    for t in en.all_types(n):
        if all(L <= lmax for L in t.support() if L > 1):
            yield t


def cell_scaling(n: int) -> Cell:
    """Scale-by-unit round trips, type preservation, and count invariance."""
    checked, bad = 0, []
    for m in range(1, n + 1):
        d = math.gcd(m, n)
        a = find_scaling_unit(m, n)
        a_inv = inverse_mod(a, n)
        for t in _feasible_types(n, m):
            images = set()
            parts = list(en.enumerate_ap_partitions(n, m, t))
            for part in parts:
                checked += 1
                img = en.scale_partition(part, a)
                back = en.scale_partition(img, a_inv)
                if (
                    back != part
                    or img.type() != t
                    or not img.is_valid()
                    or img.difference != d % n
                ):
                    bad.append({"n": n, "m": m, "type": str(t), "partition": str(part)})
                images.add(img.keys())
            if len(images) != len(parts) or len(parts) != en.count_ap_partitions(n, d, t):
                bad.append({"n": n, "m": m, "type": str(t), "check": "count invariance"})
    return checked, bad


def cell_residue(n: int) -> Cell:
    """Residue-class decomposition round trips and row-sum constraints."""
    checked, bad = 0, []
    for m in range(1, n + 1):
        if n % m:
            continue
        for t in _feasible_types(n, m):
            for part in en.enumerate_ap_partitions(n, m, t):
                checked += 1
                comps = en.residue_decompose(part, m)
                matrix = en.residue_matrix(comps, max(t.r, 2))
                row_sums = [sum(row) for row in matrix]
                want_sums = [t.k(i) for i in range(2, max(t.r, 2) + 1)]
                if (
                    en.residue_compose(comps) != part
                    or row_sums != want_sums
                    or not all(c.is_valid() and c.modulus == n // m for c in comps)
                ):
                    bad.append({"n": n, "m": m, "type": str(t), "partition": str(part)})
    return checked, bad


GRIDS: Dict[str, Tuple[Callable[[int], Cell], int, int]] = {
    # name: (cell, smallest n, safety cap)
    "general": (cell_general, 1, PARTITION_CAP),
    "boundary": (cell_boundary, 1, PARTITION_CAP),
    "multisum": (cell_multisum, 1, PARTITION_CAP),
    "mansour-sun": (cell_mansour_sun, 1, SUBSET_CAP),
    "cor1": (cell_cor1, 1, SUBSET_CAP),
    "cor2": (cell_cor2, 1, SUBSET_CAP),
    "hwang": (cell_hwang, 2, SUBSET_CAP),
    "scaling": (cell_scaling, 1, 10),
    "residue": (cell_residue, 1, PARTITION_CAP),
}


def _run_cell(args) -> Cell:
    name, n = args
    return GRIDS[name][0](n)


def run_grid(name: str, max_n: int, jobs: int = 1) -> GridResult:
    cell, lo, _cap = GRIDS[name]
    res = GridResult(name, max_n)
    start = time.perf_counter()
    ns = list(range(lo, max_n + 1))
    if jobs > 1 and len(ns) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outs = list(pool.map(_run_cell, [(name, n) for n in ns]))
    else:
        outs = [cell(n) for n in ns]
    for checked, bad in outs:
        res.checked += checked
        res.mismatches.extend(bad)
    res.elapsed_ms = (time.perf_counter() - start) * 1000
    return res


def run_grids(names: Sequence[str], max_n: int, jobs: int = 1) -> List[GridResult]:
    return [run_grid(name, max_n, jobs) for name in names]
