"""Command line entry point: ``jointkit <command> ...``.

Exit status is 0 when every check passes, 1 when a check fails, and 2 for
usage or configuration errors.  Relative output paths are resolved under
``$JOINTKIT_OUT_DIR`` when that variable is set.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from .certify import (
    CarberyConfig,
    InfeasibleThresholds,
    carbery_audit,
    joints_proof_trace,
    multijoints_proof_trace,
)
from .generators import KINDS, BadParams, generate
from .incidence import MissingFamilies, find_joints, joint_records, multijoint_multiplicity
from .serialize import dumps, load_system, system_to_dict
from .suites import SUITES

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# suite name -> (default p, default d, default cases)
SUITE_DEFAULTS = {
    "multiplicity": (7, 3, 200),
    "bezout": (7, 3, 500),
    "classical": (7, 3, 500),
    "lower-bound": (7, 3, 100),
    "minima": (3, 3, 100),
    "sandwich": (3, 3, 100),
    "flags": (3, 3, 100),
    "reduction": (3, 3, 20),
}


class UsageError(Exception):
    pass


def out_path(path: str) -> Path:
    p = Path(path)
    base = os.environ.get("JOINTKIT_OUT_DIR")
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _emit(text: str, out: str | None):
    if out:
        out_path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return load_system(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _sizes(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise UsageError(f"--sizes expects comma-separated integers, got {text!r}") from None


def cmd_gen(args) -> int:
    params: dict[str, Any] = {"p": args.p, "d": args.d, "seed": args.seed}
    if args.kind == "grid":
        params["k"] = args.k
    elif args.kind == "random":
        if args.n is None:
            raise UsageError("--n is required for --kind random")
        params.update(n=args.n, planted=args.planted, max_mult=args.max_mult)
    elif args.kind == "families-random":
        params.update(sizes=_sizes(args.sizes), planted=args.planted or 1)
    elif args.kind == "from-file":
        if not args.path:
            raise UsageError("--path is required for --kind from-file")
        params["path"] = args.path
    L = generate(args.kind, **params)
    _emit(dumps(system_to_dict(L)), args.out)
    if args.out:
        print(f"wrote {len(L.entries)} lines (N={L.N}) to {out_path(args.out)}")
    return EXIT_OK


def _joint_table(L) -> list[dict]:
    rows = []
    for rec in joint_records(L):
        row = {"point": list(rec.point.coords), "M": rec.M, "r": list(rec.r)}
        if L.has_families:
            row["mu"] = multijoint_multiplicity(L, rec.point)
        rows.append(row)
    return rows


def cmd_joints(args) -> int:
    L = _load(args.file)
    rows = _joint_table(L) if args.table or args.out else []
    count = len(rows) if rows else len(find_joints(L))
    report = {
        "input": {"file": Path(args.file).name, "sha256": _digest(args.file)},
        "p": L.p,
        "d": L.d,
        "N": L.N,
        "joints": count,
        "joint_ratio": count / L.N ** (L.d / (L.d - 1)),
    }
    print(f"{count} joints among {len(L.entries)} lines (N={L.N}) in F_{L.p}^{L.d}")
    if args.table:
        head = "point\tM\tr" + ("\tmu" if L.has_families else "")
        print(head)
        for row in rows:
            cells = [str(tuple(row["point"])), str(row["M"]), str(tuple(row["r"]))]
            if "mu" in row:
                cells.append(str(row["mu"]))
            print("\t".join(cells))
    if args.out:
        report["table"] = rows
        out_path(args.out).write_text(dumps(report))
    return EXIT_OK


def _carbery_config(args) -> CarberyConfig:
    try:
        return CarberyConfig(B=args.B, floor=args.floor, growth=args.growth, row_budget=args.row_budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_certify(args) -> int:
    L = _load(args.file)
    if args.argument == "joints":
        trace = joints_proof_trace(L)
    elif args.argument == "multijoints":
        if not L.has_families:
            raise UsageError("multijoints needs a family-labelled line system")
        trace = multijoints_proof_trace(L)
    else:
        cfg = _carbery_config(args)
        try:
            trace = carbery_audit(L, cfg)
        except InfeasibleThresholds as exc:
            raise UsageError(str(exc)) from None
    report = trace.to_dict()
    report["input"] = {"file": Path(args.file).name, "sha256": _digest(args.file)}
    for name, ok in trace.checks.items():
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    summary = ", ".join(f"{k}={v}" for k, v in trace.degrees.items() if not isinstance(v, list))
    print(f"{args.argument}: {'passed' if trace.passed else 'FAILED'} ({summary})")
    if args.out:
        out_path(args.out).write_text(dumps(report))
    return EXIT_OK if trace.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    p0, d0, n0 = SUITE_DEFAULTS[args.suite]
    p = args.p or p0
    d = args.d or d0
    cases = args.cases or n0
    try:
        res = SUITES[args.suite](p=p, d=d, cases=cases, seed=args.seed)
    except (ValueError, BadParams) as exc:
        raise UsageError(str(exc)) from None
    report = res.to_dict()
    report["config"] = {"p": p, "d": d, "cases": cases, "seed": args.seed}
    print(f"suite {args.suite}: {res.cases} cases, {len(res.failures)} failures -> {'PASS' if res.passed else 'FAIL'}")
    for k, v in res.stats.items():
        print(f"  {k}: {v}")
    if args.out:
        out_path(args.out).write_text(dumps(report))
    return EXIT_OK if res.passed else EXIT_FAIL


def bound_metrics(L) -> dict[str, float | int]:
    d = L.d
    records = joint_records(L)
    out: dict[str, float | int] = {
        "p": L.p,
        "d": d,
        "N": L.N,
        "lines": len(L.distinct_lines()),
        "joints": len(records),
        "joints_over_N_pow": len(records) / L.N ** (d / (d - 1)),
        "sum_M_root_over_N_pow": sum(r.M ** (1 / (d - 1)) for r in records) / L.N ** (d / (d - 1)),
    }
    if L.has_families:
        sizes = L.family_sizes()
        mus = [multijoint_multiplicity(L, r.point) for r in records]
        prod = math.prod(sizes)
        out["multijoints"] = sum(1 for m in mus if m)
        out["multijoints_over_prodN_root"] = out["multijoints"] / prod ** (1 / (d - 1))
        out["sum_mu_root_over_prodN_root"] = sum(m ** (1 / (d - 1)) for m in mus) / prod ** (1 / (d - 1))
    return out


def cmd_report(args) -> int:
    L = _load(args.file)
    metrics = bound_metrics(L)
    if args.format == "json":
        doc = {"input": {"file": Path(args.file).name, "sha256": _digest(args.file)}, "metrics": metrics}
        text = dumps(doc)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["metric", "value"])
        for k, v in metrics.items():
            w.writerow([k, f"{v:.6f}" if isinstance(v, float) else v])
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jointkit", description="Joints, multijoints and weighted joints over F_p.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a line system")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--p", type=int, default=5)
    g.add_argument("--d", type=int, default=3)
    g.add_argument("--k", type=int, help="grid side (default p)")
    g.add_argument("--n", type=int, help="number of lines for --kind random")
    g.add_argument("--planted", type=int, default=0)
    g.add_argument("--max-mult", type=int, default=1)
    g.add_argument("--sizes", help="family sizes, e.g. 2,3,2")
    g.add_argument("--path", help="input file for --kind from-file")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    j = sub.add_parser("joints", help="detect joints and tabulate M, mu, r")
    j.add_argument("file")
    j.add_argument("--table", action="store_true")
    j.add_argument("--out")
    j.set_defaults(func=cmd_joints)

    c = sub.add_parser("certify", help="run a proof trace")
    c.add_argument("argument", choices=("joints", "multijoints", "carbery"))
    c.add_argument("file")
    c.add_argument("--B", type=int, default=1)
    c.add_argument("--floor", type=int, default=1)
    c.add_argument("--growth", type=int, default=1)
    c.add_argument("--row-budget", type=int, default=5000)
    c.add_argument("--out")
    c.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify", help="run a seeded invariant suite")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--p", type=int)
    v.add_argument("--d", type=int)
    v.add_argument("--cases", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="bound ratios as CSV or JSON")
    r.add_argument("file")
    r.add_argument("--format", choices=("csv", "json"), default="csv")
    r.add_argument("--out")
    r.set_defaults(func=cmd_report)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, BadParams, MissingFamilies) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
