"""Run every invariant suite over several seeds and write a JSON summary."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from jointkit.cli import SUITE_DEFAULTS, out_path
from jointkit.serialize import dumps
from jointkit.suites import SUITES


@dataclass
class Sweep:
    seeds: list[int] = field(default_factory=lambda: [0, 1, 2])
    scale: float = 0.25
    suites: list[str] = field(default_factory=lambda: sorted(SUITES))
    out: str = "suite_sweep.json"


def run(cfg: Sweep) -> dict:
    summary = {}
    for name in cfg.suites:
        p, d, cases = SUITE_DEFAULTS[name]
        n = max(1, int(cases * cfg.scale))
        per_seed = []
        for seed in cfg.seeds:
            res = SUITES[name](p=p, d=d, cases=n, seed=seed)
            per_seed.append({"seed": seed, "passed": res.passed, "failures": len(res.failures), "stats": res.stats})
            print(f"{name:13s} seed={seed} cases={n} failures={len(res.failures)}", flush=True)
        summary[name] = {"p": p, "d": d, "cases": n, "runs": per_seed}
    return summary


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--scale", type=float, default=0.25, help="fraction of each suite's default case count")
    ap.add_argument("--suite", action="append", choices=sorted(SUITES))
    ap.add_argument("--out", default="suite_sweep.json")
    a = ap.parse_args(argv)
    cfg = Sweep(a.seeds, a.scale, a.suite or sorted(SUITES), a.out)
    summary = run(cfg)
    out_path(cfg.out).write_text(dumps(summary))
    return 0


if __name__ == "__main__":
    sys.exit(main())
