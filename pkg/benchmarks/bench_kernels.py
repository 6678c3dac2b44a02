"""Compare the compiled counting kernels with their plain Python versions.

    python3 benchmarks/bench_kernels.py [--repeat 3]

The first compiled call is timed separately since it includes JIT compilation
(or loading from the on-disk cache).
"""

import argparse
import time

import apkit.enumeration as en
from apkit._jit import USE_NUMBA, python_impl
from apkit.kernels import count_ap_partitions_kernel, count_separated_subsets_kernel

CASES = [
    ("partitions", (20, 3, "1^4 2^3 3^2 4^1")),
    ("partitions", (18, 2, "1^6 2^3 3^2")),
    ("partitions", (16, 1, "1^4 2^4 4^1")),
    ("subsets", (26, 6, 3, 1)),
    ("subsets", (30, 5, 2, 2)),
]


def run_case(kind, args):
    if kind == "partitions":
        return en.count_ap_partitions(*args)
    n, k, m, p = args
    return en.count_separated_subsets(en.SeparationSpec(n, k, m, p))


def best_of(fn, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not USE_NUMBA:
        print("numba disabled (APKIT_NUMBA=0 or not installed): both columns run plain Python")

    jitted = (en.count_ap_partitions_kernel, en.count_separated_subsets_kernel)
    t0 = time.perf_counter()
    for kind, case in CASES[:1] + CASES[3:4]:
        run_case(kind, case)
    print(f"first compiled calls (compile or cache load): {time.perf_counter() - t0:.3f}s")

    print(f"{'case':<40} {'count':>14} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for kind, case in CASES:
        en.count_ap_partitions_kernel, en.count_separated_subsets_kernel = jitted
        fast, v1 = best_of(lambda: run_case(kind, case), args.repeat)
        en.count_ap_partitions_kernel = python_impl(count_ap_partitions_kernel)
        en.count_separated_subsets_kernel = python_impl(count_separated_subsets_kernel)
        slow, v2 = best_of(lambda: run_case(kind, case), 1)
        en.count_ap_partitions_kernel, en.count_separated_subsets_kernel = jitted
        assert v1 == v2, (case, v1, v2)
        label = f"{kind} {case}"
        print(f"{label:<40} {v1:>14} {fast:>9.4f}s {slow:>9.4f}s {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
