"""apkit command line.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import List, Optional

from . import enumeration as en
from . import formulas as fm
from . import identity as rm
from . import verify as vf

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _range(text: str) -> range:
    """'A..B' inclusive, or a single integer."""
    if ".." in text:
        a, b = text.split("..", 1)
        return range(int(a), int(b) + 1)
    return range(int(text), int(text) + 1)


def _emit(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(record, sort_keys=True) + "\n")
    elif fmt == "csv":
        flat = _flatten(record)
        w = csv.DictWriter(out, fieldnames=sorted(flat), lineterminator="\n")
        w.writeheader()
        w.writerow(flat)
    else:
        for key in sorted(record):
            value = record[key]
            if value is None:
                continue
            if isinstance(value, dict):
                value = " ".join(f"{k}={v}" for k, v in sorted(value.items()))
            out.write(f"{key}: {value}\n")


def _flatten(record: dict) -> dict:
    flat = {}
    for key, value in record.items():
        if isinstance(value, dict):
            for k, v in value.items():
                flat[f"{key}.{k}"] = v
        else:
            flat[key] = value
    return flat


def _elapsed(args, start: float):
    return round((time.perf_counter() - start) * 1000, 3) if args.timing else None


# -- count ------------------------------------------------------------------

def cmd_count(args, out) -> int:
    start = time.perf_counter()
    if args.type is not None:
        if args.k is not None or args.p is not None:
            raise UsageError("give either --type or --k/--p, not both")
        t = en.bind_type(args.n, en.parse_type(args.type))
        dc = fm.delta_classify(args.n, args.m, t)
        count, method = fm.count_auto(args.n, args.m, t, args.budget)
        record = {
            "input": {"n": args.n, "m": args.m, "type": str(t)},
            "delta": dc.delta,
            "d": dc.d,
            "class": dc.classification.value,
            "method": method.value,
            "count": count,
        }
    else:
        if args.k is None or args.p is None:
            raise UsageError("give --type, or both --k and --p")
        n, k, m, p = args.n, args.k, args.m, args.p
        en.SeparationSpec(n, k, m, p)
        count, method = fm.count_subsets_auto(n, k, m, p, args.budget)
        delta = d = cls = None
        if n >= (p + 1) * k:
            dc = fm.delta_classify(n, m, en.subset_partition_type(n, k, p))
            delta, d, cls = dc.delta, dc.d, dc.classification.value
        record = {
            "input": {"n": n, "k": k, "m": m, "p": p},
            "delta": delta,
            "d": d,
            "class": cls,
            "method": method.value,
            "count": count,
        }
    record["elapsed_ms"] = _elapsed(args, start)
    _emit(record, args.format, out)
    return EXIT_OK


# -- enumerate --------------------------------------------------------------

def cmd_enumerate(args, out) -> int:
    limit = args.limit if args.limit is not None else fm.enumeration_budget()
    if args.subsets:
        if args.k is None or args.p is None:
            raise UsageError("--subsets needs --k and --p")
        spec = en.SeparationSpec(args.n, args.k, args.m, args.p)
        expected = fm.count_subsets_auto(args.n, args.k, args.m, args.p)[0]
        stream = en.enumerate_separated_subsets(spec)
        render = lambda s: "{" + ",".join(map(str, s)) + "}"
        inputs = {"n": args.n, "m": args.m, "k": args.k, "p": args.p}
    else:
        if args.type is None:
            raise UsageError("give --type (or --subsets with --k/--p)")
        t = en.bind_type(args.n, en.parse_type(args.type))
        try:
            expected = fm.count_auto(args.n, args.m, t, fallback_budget=limit)[0]
        except fm.NoClosedForm:
            expected = None
        stream = en.enumerate_ap_partitions(args.n, args.m, t)
        render = str
        inputs = {"n": args.n, "m": args.m, "type": str(t)}

    if args.count_only:
        if expected is None:
            expected = en.count_ap_partitions(args.n, args.m, t)
        _emit({"input": inputs, "count": expected}, args.format, out)
        return EXIT_OK
    if expected is None or expected > limit:
        shown = "an unknown number of" if expected is None else str(expected)
        raise UsageError(f"output would be {shown} lines, above --limit {limit}; raise --limit or use --count-only")

    items = [render(item) for item in stream]
    if args.format == "json":
        out.write(json.dumps({"input": inputs, "count": len(items), "items": items}, sort_keys=True) + "\n")
    else:
        for line in items:
            out.write(line + "\n")
    return EXIT_OK


# -- verify -----------------------------------------------------------------

def cmd_verify(args, out) -> int:
    names = args.theorems.split(",") if args.theorems else list(vf.GRIDS)
    for name in names:
        if name not in vf.GRIDS:
            raise UsageError(f"unknown grid {name!r}; choose from {', '.join(vf.GRIDS)}")
        cap = vf.GRIDS[name][2]
        if args.max_n > cap and not args.force:
            raise UsageError(f"--max-n {args.max_n} exceeds the {name} cap {cap} (use --force)")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    results = vf.run_grids(names, args.max_n, args.jobs)
    ok = all(r.ok for r in results)
    record = {
        "input": {"max_n": args.max_n, "theorems": ",".join(names)},
        "status": "PASS" if ok else "FAIL",
        "grids": {
            r.name: {
                "checked": r.checked,
                "mismatches": r.mismatches,
                "elapsed_ms": round(r.elapsed_ms, 3) if args.timing else None,
            }
            for r in results
        },
    }
    if args.format == "json":
        out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        for r in results:
            out.write(f"{'PASS' if r.ok else 'FAIL'} {r.name}: {r.checked} instances, {len(r.mismatches)} mismatches\n")
            for bad in r.mismatches:
                out.write("  mismatch " + json.dumps(bad, sort_keys=True) + "\n")
        out.write(f"{record['status']}\n")
    return EXIT_OK if ok else EXIT_MISMATCH


# -- identity ---------------------------------------------------------------

def _corrupted_rhs(inst, guarded=False):
    return rm.rm_rhs(inst, guarded=guarded) + 1


def cmd_identity(args, out) -> int:
    start = time.perf_counter()
    rhs = _corrupted_rhs if args.negative_control else None
    summary = rm.rm_random_suite(
        m_max=args.m_max,
        z_bound=args.z_bound,
        N_bound=args.n_bound,
        xy_bound=args.xy_bound,
        trials=args.trials,
        seed=args.seed,
        rhs=rhs,
        keep_instances=args.log_instances,
    )
    record = {
        "input": {
            "m_max": args.m_max,
            "z_bound": args.z_bound,
            "N_bound": args.n_bound,
            "xy_bound": args.xy_bound,
            "trials": args.trials,
            "negative_control": bool(args.negative_control),
        },
        "seed": summary.seed,
        "passed": summary.passed,
        "failed": summary.failed,
        "rejected": summary.rejected,
        "status": "PASS" if summary.ok else "FAIL",
        "elapsed_ms": _elapsed(args, start),
    }
    if summary.first_counterexample is not None:
        ce = summary.first_counterexample
        record["first_counterexample"] = {
            "x": ce.instance.x,
            "y": ce.instance.y,
            "z": list(ce.instance.z),
            "N": list(ce.instance.N),
            "lhs": str(ce.lhs),
            "rhs": str(ce.rhs),
        }
    _emit(record, args.format, out)
    if args.log_instances and args.format == "text":
        for inst in summary.instances:
            out.write(f"  x={inst.x} y={inst.y} z={list(inst.z)} N={list(inst.N)}\n")
    return EXIT_OK if summary.ok else EXIT_MISMATCH


# -- table ------------------------------------------------------------------

TABLE_FIELDS = ["n", "m", "type", "d", "delta", "class", "cwz", "method", "count", "oracle"]


def table_rows(n_range, m_range, types: str, type_spec: Optional[str], budget: int, with_oracle: bool):
    for n in n_range:
        if n < 1:
            continue
        if types == "spec":
            if type_spec is None:
                raise UsageError("--types spec needs --type")
            tlist = [en.bind_type(n, en.parse_type(type_spec))]
        else:
            tlist = list(en.all_types(n))
        ms = m_range if m_range is not None else range(1, n + 1)
        for t in tlist:
            for m in ms:
                if m < 1:
                    continue
                dc = fm.delta_classify(n, m, t)
                try:
                    count, method = fm.count_auto(n, m, t, budget)
                    method = method.value
                except fm.NoClosedForm:
                    count, method = None, "unavailable"
                oracle = en.count_ap_partitions(n, m, t) if with_oracle else None
                yield {
                    "n": n,
                    "m": m,
                    "type": str(t),
                    "d": dc.d,
                    "delta": dc.delta,
                    "class": dc.classification.value,
                    "cwz": fm.cwz_condition(n, m, t),
                    "method": method,
                    "count": count,
                    "oracle": oracle,
                }


def cmd_table(args, out) -> int:
    n_range = _range(args.n_range)
    m_range = _range(args.m_range) if args.m_range else None
    if args.types == "spec" and args.type is None:
        raise UsageError("--types spec needs --type")
    rows = list(table_rows(n_range, m_range, args.types, args.type, args.budget, args.with_oracle))
    buf = io.StringIO()
    if args.format == "json":
        buf.write(json.dumps(rows, sort_keys=True, indent=1) + "\n")
    else:
        w = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: ("" if v is None else v) for k, v in row.items()})
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    return EXIT_OK


# -- wiring -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="apkit", description="Count and enumerate arithmetic-progression partitions of Z_n.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats=("text", "json", "csv")):
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--timing", action="store_true", help="fill elapsed_ms (otherwise null)")

    c = sub.add_parser("count", help="count partitions (--type) or separated subsets (--k/--p)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--type")
    c.add_argument("--k", type=int)
    c.add_argument("--p", type=int)
    c.add_argument("--budget", type=int, default=None, help="brute-force fallback budget")
    common(c)
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("enumerate", help="list partitions or subsets in canonical order")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--type")
    e.add_argument("--subsets", action="store_true")
    e.add_argument("--k", type=int)
    e.add_argument("--p", type=int)
    e.add_argument("--limit", type=int, default=None)
    e.add_argument("--count-only", action="store_true")
    common(e, ("text", "json"))
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run formula-vs-oracle grids")
    v.add_argument("--max-n", type=int, required=True)
    v.add_argument("--theorems", help="comma list of: " + ",".join(vf.GRIDS))
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--force", action="store_true", help="allow --max-n above the safety caps")
    common(v, ("text", "json"))
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("identity", help="random exact checks of the convolution identity")
    i.add_argument("--m-max", type=int, default=3)
    i.add_argument("--trials", type=int, default=1000)
    i.add_argument("--seed", type=int, default=42)
    i.add_argument("--z-bound", type=int, default=3)
    i.add_argument("--n-bound", type=int, default=4)
    i.add_argument("--xy-bound", type=int, default=30)
    i.add_argument("--log-instances", action="store_true")
    i.add_argument("--negative-control", action="store_true", help="corrupt the right side by +1")
    common(i)
    i.set_defaults(func=cmd_identity)

    t = sub.add_parser("table", help="tabulate counts over ranges of n and m")
    t.add_argument("--n-range", required=True, help="A..B")
    t.add_argument("--m-range", help="A..B (default 1..n)")
    t.add_argument("--types", choices=("all", "spec"), default="all")
    t.add_argument("--type", help="type string for --types spec")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--out", help="output file (default stdout)")
    t.add_argument("--budget", type=int, default=None)
    t.add_argument("--with-oracle", action="store_true", help="add a brute-force count column")
    t.set_defaults(func=cmd_table)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"apkit: error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
