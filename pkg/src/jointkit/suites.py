"""Seeded invariant suites shared by the CLI ``verify`` command and the tests.

Each suite draws its cases from ``random.Random(seed)`` and returns a
SuiteResult listing every failing case, so a red suite is reproducible from
its seed alone.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable

from .geometry import AffineMap, Point, random_axis_transform, random_line
from .generators import families_random, random_lines
from .incidence import (
    LineSystem,
    build_flag,
    find_joints,
    joint_multiplicity,
    multijoint_multiplicity,
    replicate_families,
    successive_minima,
)
from .multiplicity import (
    bezout_sum,
    classify_joint,
    line_multiplicities,
    monomial_lower_bound,
    pl_multiplicity,
)
from .oracle import (
    oracle_classical_multiplicity,
    oracle_flag_check,
    oracle_joint_tuples,
    oracle_minima,
    oracle_multijoint_tuples,
)
from .polynomials import (
    SparsePoly,
    compose_affine,
    monomials_up_to,
    poly_from_roots,
    random_poly,
    shift_to_point,
)


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and self.cases > 0

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "cases": self.cases,
            "passed": self.passed,
            "failures": self.failures[:20],
            "failure_count": len(self.failures),
            "stats": self.stats,
        }


def _pl_case(p: int, d: int, rng: random.Random, max_degree: int):
    l = random_line(d, p, rng)
    P = l.point_at(rng.randrange(p))
    Q = random_poly(d, p, rng.randint(1, max_degree), rng, nterms=rng.randint(1, 8))
    return Q, P, l


def suite_invariance(p=7, d=3, cases=200, seed=0, transforms=10, max_degree=6) -> SuiteResult:
    """m_Q(P, l), its lowest degree, and the ordinary/special verdict across random frames."""
    rng = random.Random(seed)
    res = SuiteResult("multiplicity")
    for n in range(cases):
        Q, P, l = _pl_case(p, d, rng, max_degree)
        base = pl_multiplicity(Q, P, l)
        kind = classify_joint(Q, P, l)
        for _ in range(transforms):
            T = random_axis_transform(l, rng)
            rep = pl_multiplicity(Q, P, l, transform=T)
            shift = [0] * d
            shift[-1] = -T(P).coords[-1]
            frame = AffineMap.translation(shift, p).compose(T)
            k2 = classify_joint(Q, P, l, frame=frame)
            if (rep.value, rep.lowest_degree) != (base.value, base.lowest_degree) or k2 != kind:
                res.failures.append({"case": n, "Q": repr(Q), "P": P.coords, "values": (base.value, rep.value)})
                break
        res.cases += 1
    return res


def _contained_poly(p, d, rng, max_degree) -> SparsePoly:
    """Nonzero R in the ideal (y_1, ..., y_{d-1}): vanishes on the x_d-axis."""
    while True:
        R = SparsePoly.zero(d, p)
        for i in range(d - 1):
            g = random_poly(d, p, rng.randint(0, max_degree - 1), rng, nterms=rng.randint(1, 4))
            R = R + SparsePoly.var(i, d, p) * g
        if R:
            return R


def suite_bezout(p=7, d=3, cases=500, seed=0, max_degree=8) -> SuiteResult:
    """sum_P m_Q(P, l) <= deg Q; contained-line and split cases mixed in."""
    rng = random.Random(seed)
    res = SuiteResult("bezout")
    contained = split = equal = 0
    for n in range(cases):
        l = random_line(d, p, rng)
        T = random_axis_transform(l, rng)
        mode = n % 5
        if mode == 0:
            Q = compose_affine(_contained_poly(p, d, rng, max_degree), T)
            if oracle_classical_multiplicity(Q, l.base, l) is not None:
                res.failures.append({"case": n, "reason": "constructed polynomial does not contain l"})
            contained += 1
        elif mode == 1:
            roots = [rng.randrange(p) for _ in range(rng.randint(1, max_degree))]
            Q = compose_affine(poly_from_roots(roots, d - 1, d, p) * rng.randrange(1, p), T)
            split += 1
        else:
            Q = random_poly(d, p, rng.randint(1, max_degree), rng, nterms=rng.randint(1, 8))
        ms = line_multiplicities(Q, l)
        total = sum(ms)
        ok = total <= Q.degree() and sum(1 for m in ms if m) <= Q.degree()
        if mode == 1:
            ok &= total == Q.degree()
            equal += total == Q.degree()
        if ok:
            ok = bezout_sum(Q, l) == total
        if not ok:
            res.failures.append({"case": n, "Q": repr(Q), "line": repr(l), "sum": total, "deg": Q.degree()})
        res.cases += 1
    res.stats = {"contained": contained, "split": split, "split_equalities": equal}
    return res


def suite_classical(p=7, d=3, cases=500, seed=0, max_degree=6) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("classical")
    skipped = 0
    while res.cases < cases:
        Q, P, l = _pl_case(p, d, rng, max_degree)
        ref = oracle_classical_multiplicity(Q, P, l)
        if ref is None:
            skipped += 1
            continue
        got = pl_multiplicity(Q, P, l).value
        if got != ref:
            res.failures.append({"case": res.cases, "Q": repr(Q), "P": P.coords, "got": got, "oracle": ref})
        res.cases += 1
    res.stats = {"skipped_zero_restriction": skipped}
    return res


def lower_bound_case(p: int, d: int, rng: random.Random, max_degree: int = 6):
    """Q with a designated minimal-|beta| Taylor term beta0 in a random frame for (P, l)."""
    l = random_line(d, p, rng)
    P = l.point_at(rng.randrange(p))
    T = random_axis_transform(l, rng)
    k = rng.randint(0, max_degree - 1)
    low_mons = monomials_up_to(k, d)
    beta0 = rng.choice([e for e in low_mons if sum(e) == k])
    terms = {beta0: rng.randrange(1, p)}
    higher = [e for e in monomials_up_to(max_degree, d) if sum(e) > k]
    for e in rng.sample(higher, min(len(higher), rng.randint(0, 6))):
        terms[e] = rng.randrange(1, p)
    # same-degree companions keep beta0 minimal but not unique
    same = [e for e in low_mons if sum(e) == k and e != beta0]
    for e in rng.sample(same, min(len(same), rng.randint(0, 2))):
        terms[e] = rng.randrange(1, p)
    S = SparsePoly(terms, d, p)
    R = shift_to_point(S, tuple(-x for x in T(P).coords))
    return compose_affine(R, T), P, l, T, beta0


def suite_lower_bound(p=7, d=3, cases=100, seed=0, max_degree=6) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("lower-bound")
    for n in range(cases):
        Q, P, l, T, beta0 = lower_bound_case(p, d, rng, max_degree)
        m = pl_multiplicity(Q, P, l).value
        via_terms = monomial_lower_bound(Q, P, l, T)
        if not (m >= via_terms >= beta0[-1]):
            res.failures.append({"case": n, "Q": repr(Q), "beta0": beta0, "m": m, "term_bound": via_terms})
        res.cases += 1
    return res


def small_system(p: int, d: int, rng: random.Random, max_lines: int = 8) -> LineSystem:
    n = rng.randint(d, max_lines)
    planted = rng.randint(1, n // d)
    return random_lines(p, d, n, rng.randrange(2**31), planted, max_mult=2)


def _probe_points(L: LineSystem, limit: int = 12) -> list[Point]:
    joints = find_joints(L)
    extra = []
    for e in L.entries:
        P = e.line.point_at(0)
        if P not in joints and P not in extra:
            extra.append(P)
    return (joints + extra)[:limit]


def suite_minima(p=3, d=3, cases=100, seed=0) -> SuiteResult:
    """successive_minima vs oracle_minima and joint_multiplicity vs oracle_joint_tuples."""
    rng = random.Random(seed)
    res = SuiteResult("minima")
    checked = 0
    for n in range(cases):
        L = small_system(p, d, rng)
        for P in _probe_points(L):
            r = successive_minima(L, P)
            ref = tuple(oracle_minima(L, P, j) for j in range(1, d + 1))
            M, M_ref = joint_multiplicity(L, P), oracle_joint_tuples(L, P, bound=20)
            checked += 1
            if r != ref or M != M_ref:
                res.failures.append({"case": n, "P": P.coords, "r": r, "oracle_r": ref, "M": M, "oracle_M": M_ref})
        res.cases += 1
    res.stats = {"points_checked": checked}
    return res


def suite_sandwich(p=3, d=3, cases=100, seed=0) -> SuiteResult:
    """prod r_j <= M(P) <= d! prod r_j at every joint, M from the exhaustive oracle."""
    rng = random.Random(seed)
    res = SuiteResult("sandwich")
    joints = 0
    worst = 0.0
    for n in range(cases):
        L = small_system(p, d, rng)
        for P in find_joints(L):
            r = successive_minima(L, P)
            M = oracle_joint_tuples(L, P, bound=20)
            prod = math.prod(r)
            joints += 1
            worst = max(worst, M / prod)
            if not prod <= M <= math.factorial(d) * prod:
                res.failures.append({"case": n, "P": P.coords, "r": r, "M": M})
        res.cases += 1
    res.stats = {"joints": joints, "max_M_over_prod_r": worst}
    return res


def suite_flags(p=3, d=3, cases=100, seed=0) -> SuiteResult:
    rng = random.Random(seed)
    res = SuiteResult("flags")
    joints = 0
    for n in range(cases):
        L = small_system(p, d, rng)
        for P in find_joints(L):
            verdict = oracle_flag_check(L, build_flag(L, P))
            joints += 1
            if not all(verdict.values()):
                res.failures.append({"case": n, "P": P.coords, "verdict": verdict})
        res.cases += 1
    res.stats = {"joints": joints}
    return res


def suite_reduction(p=3, d=3, cases=20, seed=0, max_family=2) -> SuiteResult:
    """Replicated system: literal identity M(P) = (prod N_i)^(d-1) mu(P) at every point.

    Also records whether the weaker relation M(P) >= d! (prod N_i)^(d-1) mu(P)
    holds, which is what the counting argument actually uses.
    """
    rng = random.Random(seed)
    res = SuiteResult("reduction")
    identity_points = bound_points = points = 0
    for n in range(cases):
        sizes = [rng.randint(1, max_family) for _ in range(d)]
        L = families_random(p, d, sizes, rng.randrange(2**31), planted=rng.randint(1, min(sizes)))
        R = replicate_families(L)
        factor = math.prod(L.family_sizes()) ** (d - 1)
        bad = []
        for coords in _all_points(p, d):
            P = Point(coords, p)
            if not L.incident(P):
                continue
            mu = oracle_multijoint_tuples(L, P)
            M = oracle_joint_tuples(R, P, bound=64)
            # fast paths must agree with the oracles first
            if mu != multijoint_multiplicity(L, P) or M != joint_multiplicity(R, P):
                res.failures.append({"case": n, "P": coords, "reason": "oracle mismatch"})
            points += 1
            identity_points += M == factor * mu
            bound_points += M >= math.factorial(d) * factor * mu
            if M != factor * mu:
                bad.append({"P": coords, "M": M, "mu": mu, "factor": factor})
        if bad:
            res.failures.append({"case": n, "sizes": sizes, "violations": bad[:3], "count": len(bad)})
        res.cases += 1
    res.stats = {
        "points": points,
        "identity_holds": identity_points,
        "weighted_lower_bound_holds": bound_points,
    }
    return res


def _all_points(p: int, d: int):
    return itertools.product(range(p), repeat=d)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "multiplicity": suite_invariance,
    "bezout": suite_bezout,
    "classical": suite_classical,
    "lower-bound": suite_lower_bound,
    "minima": suite_minima,
    "sandwich": suite_sandwich,
    "flags": suite_flags,
    "reduction": suite_reduction,
}

