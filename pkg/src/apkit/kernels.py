"""Brute-force counting kernels.

Both kernels walk the full search tree with an explicit stack and return the
number of leaves.  They count, they never materialize; the lazy generators in
:mod:`apkit.enumeration` are the object-level counterpart.  Counts are int64,
which is far beyond anything a brute-force walk can reach.
"""

from __future__ import annotations

import numpy as np

from ._jit import kernel


@kernel
def count_ap_partitions_kernel(n, m, remaining, cand_len, cand_off):
    """Count m-AP-partitions of Z_n with block multiplicities ``remaining``.

    ``remaining[L]`` is the number of blocks of length L still to place.
    Candidate i is the block of length ``cand_len[i]`` that holds the current
    smallest uncovered element at offset ``cand_off[i]``.  Every candidate
    length must satisfy L <= n / gcd(m, n).
    """
    remaining = remaining.copy()
    nblocks = 0
    for L in range(remaining.shape[0]):
        nblocks += remaining[L]
    ncand = cand_len.shape[0]
    covered = np.zeros(n, np.bool_)
    xs = np.zeros(nblocks + 1, np.int64)
    nxt = np.zeros(nblocks + 1, np.int64)
    starts = np.zeros(nblocks + 1, np.int64)
    lens = np.zeros(nblocks + 1, np.int64)

    total = 0
    depth = 0
    while True:
        if depth == nblocks:
            total += 1
            depth -= 1
            if depth < 0:
                break
            s = starts[depth]
            for i in range(lens[depth]):
                covered[(s + i * m) % n] = False
            remaining[lens[depth]] += 1
            continue

        placed = False
        while nxt[depth] < ncand:
            c = nxt[depth]
            nxt[depth] += 1
            L = cand_len[c]
            if remaining[L] == 0:
                continue
            s = (xs[depth] - cand_off[c] * m) % n
            ok = True
            for i in range(L):
                if covered[(s + i * m) % n]:
                    ok = False
                    break
            if not ok:
                continue
            for i in range(L):
                covered[(s + i * m) % n] = True
            remaining[L] -= 1
            starts[depth] = s
            lens[depth] = L
            x = xs[depth]
            depth += 1
            nxt[depth] = 0
            if depth < nblocks:
                while covered[x]:
                    x += 1
                xs[depth] = x
            placed = True
            break

        if not placed:
            depth -= 1
            if depth < 0:
                break
            s = starts[depth]
            for i in range(lens[depth]):
                covered[(s + i * m) % n] = False
            remaining[lens[depth]] += 1
    return total


@kernel
def count_separated_subsets_kernel(n, k, forbidden):
    """Count k-subsets of Z_n whose pairwise differences avoid ``forbidden``.

    ``forbidden[delta]`` flags residues delta that may not occur as x_i - x_j
    (either order, and delta == 0 for i == j).
    """
    if k == 0:
        return 1
    if k > n or forbidden[0]:
        return 0
    chosen = np.zeros(k, np.int64)
    total = 0
    depth = 0
    chosen[0] = -1
    while depth >= 0:
        e = chosen[depth] + 1
        found = False
        while e <= n - (k - depth):
            ok = True
            for i in range(depth):
                c = chosen[i]
                if forbidden[(e - c) % n] or forbidden[(c - e) % n]:
                    ok = False
                    break
            if ok:
                found = True
                break
            e += 1
        if not found:
            depth -= 1
            continue
        chosen[depth] = e
        if depth == k - 1:
            total += 1
        else:
            depth += 1
            chosen[depth] = e
    return total
