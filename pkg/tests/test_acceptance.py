"""The twelve acceptance criteria, one test each.

Every test records a one-line verdict; the lines are printed in the
terminal summary (see conftest.py) and immediately when run with ``-s``.
Run standalone with ``python3 tests/test_acceptance.py``.
"""
import random
import time

import pytest

from jointkit.certify import CarberyConfig, carbery_audit, joints_proof_trace, multijoints_proof_trace
from jointkit.generators import families_random, grid, random_lines
from jointkit.incidence import find_joints, joint_multiplicity, successive_minima
from jointkit.oracle import oracle_joint_tuples, oracle_minima
from jointkit.suites import (
    suite_bezout,
    suite_classical,
    suite_flags,
    suite_invariance,
    suite_lower_bound,
    suite_minima,
    suite_reduction,
    suite_sandwich,
)

pytestmark = pytest.mark.acceptance

VERDICTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {detail}"
    VERDICTS[n] = line
    print(line)
    assert ok, line


def _random_f11_systems(count=20, seed=2024):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(6, 20)
        out.append(random_lines(11, 3, n, seed=rng.randrange(2**31), planted=rng.randint(1, n // 3)))
    return out


def test_01_grid_counts():
    t0 = time.perf_counter()
    L = grid(5, 3)
    J = find_joints(L)
    bad = [P for P in J if joint_multiplicity(L, P) != 6 or successive_minima(L, P) != (3, 2, 1)]
    oracle_ok = all(
        oracle_joint_tuples(L, P) == 6 and tuple(oracle_minima(L, P, j) for j in (1, 2, 3)) == (3, 2, 1)
        for P in J
    )
    dt = time.perf_counter() - t0
    ratio = len(J) / L.N**1.5
    ok = len(L.entries) == 75 and len(J) == 125 and not bad and oracle_ok and dt < 10
    record(1, ok, f"grid F_5^3: {len(J)} joints, M=6 and r=(3,2,1) everywhere, |J|/N^1.5={ratio:.4f}, {dt:.2f}s")


def test_02_joints_trace():
    systems = [grid(5, 3)] + _random_f11_systems()
    failures = []
    nonvacuous = 0
    for k, L in enumerate(systems):
        t = joints_proof_trace(L)
        nonvacuous += not t.vacuous
        ok = t.passed
        if not t.vacuous:
            ok &= len(find_joints(L)) <= L.N * t.degrees["deg_Q"]
        if not ok:
            failures.append((k, {n: v for n, v in t.checks.items() if not v}))
    record(2, not failures and nonvacuous == len(systems),
           f"joints trace on grid + 20 systems over F_11^3: {len(failures)} failures")


def test_03_invariance():
    r = suite_invariance(p=7, d=3, cases=200, seed=3, transforms=10, max_degree=6)
    record(3, r.passed, f"200 (Q,P,l) x 10 frames over F_7^3: {len(r.failures)} frame-dependent values")


def test_04_bezout():
    r7 = suite_bezout(p=7, d=3, cases=500, seed=4)
    r11 = suite_bezout(p=11, d=3, cases=500, seed=4)
    s = r7.stats
    ok = r7.passed and r11.passed and s["contained"] >= 50 and s["split_equalities"] == s["split"] > 0
    record(4, ok, f"500 cases each over F_7, F_11: {len(r7.failures) + len(r11.failures)} violations, "
                  f"{s['contained']} contained lines, {s['split_equalities']}/{s['split']} split equalities")


def test_05_classical():
    r = suite_classical(p=7, d=3, cases=500, seed=5)
    record(5, r.passed, f"500 nonzero restrictions: {500 - len(r.failures)}/500 agree with the root count")


def test_06_lower_bound():
    r = suite_lower_bound(p=7, d=3, cases=100, seed=6)
    record(6, r.passed, f"100 designed polynomials: {len(r.failures)} cases with m < beta0_d")


def test_07_sandwich():
    r = suite_sandwich(p=3, d=3, cases=100, seed=7)
    ok = r.passed and r.stats["joints"] > 0
    record(7, ok, f"100 systems over F_3^3, {r.stats['joints']} joints: {len(r.failures)} outside [prod r, 3! prod r]")


def test_08_flags():
    r = suite_flags(p=3, d=3, cases=100, seed=7)
    ok = r.passed and r.stats["joints"] > 0
    record(8, ok, f"{r.stats['joints']} flags on the sandwich corpus: {len(r.failures)} violate (a), (b) or (c)")


def test_09_multijoints_trace():
    rng = random.Random(9)
    failures = []
    multijoints = 0
    for k in range(12):
        sizes = [rng.randint(1, 3) for _ in range(3)]
        L = families_random(7, 3, sizes, seed=rng.randrange(2**31), planted=rng.randint(1, min(sizes)))
        t = multijoints_proof_trace(L)
        multijoints += t.degrees["multijoints"]
        if t.vacuous or not t.passed:
            failures.append((k, sizes, {n: v for n, v in t.checks.items() if not v}))
    record(9, not failures, f"12 family systems over F_7^3 ({multijoints} multijoints): {len(failures)} failed traces")


def test_10_carbery_audit():
    cfg = CarberyConfig(B=1, floor=1)
    rng = random.Random(10)
    systems = [grid(5, 3)]
    for _ in range(10):
        n = rng.randint(6, 15)
        systems.append(random_lines(7, 3, n, seed=rng.randrange(2**31), planted=rng.randint(1, n // 3), max_mult=2))
    failures = []
    ratios = []
    for k, L in enumerate(systems):
        t = carbery_audit(L, cfg)
        if not t.passed or t.vacuous:
            failures.append(k)
            continue
        ratios.append((t.metrics["min_point_ratio"], t.metrics["global_ratio"]))
    lo = min(r[0] for r in ratios) if ratios else float("nan")
    record(10, not failures, f"grid + 10 systems, B=1 floor=1: {len(failures)} hard failures; "
                             f"min point ratio {lo:.3f}, grid global ratio {ratios[0][1] if ratios else float('nan'):.4f}")


def test_11_reduction_identity():
    r = suite_reduction(p=3, d=3, cases=20, seed=11, max_family=2)
    s = r.stats
    oracle_mismatch = any(f.get("reason") == "oracle mismatch" for f in r.failures)
    record(
        11,
        r.passed and not oracle_mismatch,
        f"20 family systems: M = (prod N)^(d-1) mu at {s['identity_holds']}/{s['points']} incident points; "
        f"M >= d! (prod N)^(d-1) mu at {s['weighted_lower_bound_holds']}/{s['points']}",
    )


def test_12_oracle_concordance():
    r = suite_minima(p=3, d=3, cases=100, seed=12)
    r5 = suite_minima(p=5, d=3, cases=30, seed=12)
    pts = r.stats["points_checked"] + r5.stats["points_checked"]
    record(12, r.passed and r5.passed, f"{pts} points over F_3^3 and F_5^3: {len(r.failures) + len(r5.failures)} disagreements")


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
