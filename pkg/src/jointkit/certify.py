"""Parameter-counting certificates and executable proof traces.

A constraint system is a set of homogeneous linear forms in the
coefficients of a generic polynomial of degree <= D (unknowns indexed by
``monomials_up_to(D, d)``).  When there are fewer forms than unknowns a
nonzero solution exists; ``solve_certificate`` finds the deterministic one.

The three traces replay the counting arguments for joints, multijoints and
joints with multiplicity on a concrete configuration, recording every
intermediate verdict and checking each inequality exactly.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
from sympy import integer_nthroot

from .algebra_core import Matrix, _matmul_mod, nullspace_vector
from .geometry import AffineMap, Line, Point, frame_transform, line_contains, span_rank
from .incidence import (
    JointRecord,
    LineSystem,
    find_joints,
    find_multijoints,
    joint_records,
)
from .multiplicity import (
    JointKind,
    bezout_sum,
    classify_joint,
    line_multiplicities,
    monomial_lower_bound,
    pl_multiplicity,
)
from .polynomials import Exp, SparsePoly, lowest_homogeneous, monomials_up_to, pullback


class DegreeTooSmall(ValueError):
    pass


class InfeasibleThresholds(ValueError):
    pass


def num_monomials(D: int, d: int) -> int:
    return math.comb(D + d, d)


def min_degree_for(count: int, d: int) -> int:
    """Least D with C(D + d, d) > count."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    lo, hi = 0, 1
    while num_monomials(hi, d) <= count:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if num_monomials(mid, d) > count:
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass
class ConstraintSystem:
    D: int
    d: int
    p: int
    rows: np.ndarray
    provenance: list[tuple]
    monomials: list[Exp] = field(default_factory=list)

    def __post_init__(self):
        if not self.monomials:
            self.monomials = monomials_up_to(self.D, self.d)
        n = len(self.monomials)
        if n != num_monomials(self.D, self.d):
            raise ValueError("monomial basis does not match the degree bound")
        if self.rows.size == 0:
            self.rows = np.zeros((0, n), dtype=np.int64)
        if self.rows.shape[1] != n:
            raise ValueError("row width must equal the number of unknowns")
        if len(self.provenance) != self.rows.shape[0]:
            raise ValueError("one provenance tag per row")

    @property
    def num_rows(self) -> int:
        return self.rows.shape[0]

    @property
    def num_unknowns(self) -> int:
        return len(self.monomials)

    def evaluate(self, coeffs: Sequence[int]) -> np.ndarray:
        """Value of every row on a coefficient vector."""
        if self.num_rows == 0:
            return np.zeros(0, dtype=np.int64)
        v = np.array(coeffs, dtype=self.rows.dtype).reshape(-1, 1)
        return _matmul_mod(self.rows, v, self.p)[:, 0]


@dataclass
class Certificate:
    Q: SparsePoly
    system: ConstraintSystem
    config: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.Q.degree()

    def coefficient_vector(self) -> list[int]:
        return [self.Q.coefficient(e) for e in self.system.monomials]


def _monomial_values(P: Point, monomials: Sequence[Exp]) -> list[int]:
    p = P.p
    out = []
    for e in monomials:
        v = 1
        for x, k in zip(P.coords, e):
            if k:
                v = v * pow(x, k, p) % p
        out.append(v)
    return out


def vanishing_constraints(points: Sequence[Point], D: int, d: int, p: int) -> ConstraintSystem:
    mons = monomials_up_to(D, d)
    rows = np.array([_monomial_values(P, mons) for P in points], dtype=np.int64).reshape(-1, len(mons))
    return ConstraintSystem(D, d, p, rows, [("vanish", P.coords) for P in points], mons)


def _box_indices(bounds: Sequence[int]) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(b + 1) for b in bounds)))


def truncated_pullback_images(
    frames: Sequence[AffineMap], bounds: Sequence[int], monomials: Sequence[Exp], p: int
) -> np.ndarray:
    """Coefficients of x^beta (beta in the box) in x^gamma o T^{-1}, for every frame.

    Returns an array of shape (len(monomials), len(frames), b_1+1, ..., b_d+1).
    Products are truncated to the box, so each monomial costs one
    multiplication by an affine form regardless of D.
    """
    d = len(bounds)
    shape = tuple(b + 1 for b in bounds)
    nf = len(frames)
    inverses = [T.inverse() for T in frames]
    # coordinate i of T^{-1}(y) is c0[:, i] + sum_k lin[:, i, k] y_k
    c0 = np.array([Ti.shift for Ti in inverses], dtype=np.int64).reshape(nf, d)
    lin = np.array([Ti.rows for Ti in inverses], dtype=np.int64).reshape(nf, d, d)
    images: dict[Exp, np.ndarray] = {}
    unit = np.zeros((nf,) + shape, dtype=np.int64)
    unit[(slice(None),) + (0,) * d] = 1
    out = np.zeros((len(monomials), nf) + shape, dtype=np.int64)
    bcast = (slice(None),) + (None,) * d
    for idx, gamma in enumerate(monomials):
        if not any(gamma):
            A = unit
        else:
            i = next(k for k, g in enumerate(gamma) if g)
            prev = list(gamma)
            prev[i] -= 1
            B = images[tuple(prev)]
            A = B * c0[:, i][bcast]
            for k in range(d):
                if bounds[k] == 0:
                    continue
                coef = lin[:, i, k]
                if not coef.any():
                    continue
                dst = [slice(None)] * (d + 1)
                src = [slice(None)] * (d + 1)
                dst[k + 1] = slice(1, None)
                src[k + 1] = slice(0, -1)
                A[tuple(dst)] += coef[bcast] * B[tuple(src)]
            A %= p
        images[gamma] = A
        out[idx] = A
    return out


def _kill_rows(
    frames: Sequence[tuple[Point, AffineMap]],
    bounds_per_point: Sequence[tuple[int, ...]],
    D: int,
    d: int,
    p: int,
) -> ConstraintSystem:
    mons = monomials_up_to(D, d)
    blocks: list[np.ndarray | None] = [None] * len(frames)
    prov: list[list[tuple]] = [[] for _ in frames]
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, b in enumerate(bounds_per_point):
        groups.setdefault(tuple(b), []).append(i)
    for bounds, idxs in groups.items():
        imgs = truncated_pullback_images([frames[i][1] for i in idxs], bounds, mons, p)
        box = _box_indices(bounds)
        for pos, i in enumerate(idxs):
            sub = imgs[:, pos]  # (n_mons, *shape)
            blocks[i] = np.stack([sub[(slice(None),) + beta] for beta in box]) if box else None
            prov[i] = [("kill", frames[i][0].coords, beta) for beta in box]
    rows = [b for b in blocks if b is not None]
    mat = np.concatenate(rows, axis=0) if rows else np.zeros((0, len(mons)), dtype=np.int64)
    return ConstraintSystem(D, d, p, mat, [t for ts in prov for t in ts], mons)


def box_kill_constraints(
    frames: Sequence[tuple[Point, AffineMap]], bounds: Sequence[int], D: int
) -> ConstraintSystem:
    """Rows: coefficient of x^beta in (T_P^{-1})^* Q for each beta <= bounds, each frame."""
    if not frames:
        raise ValueError("need at least one frame (or build an empty system directly)")
    P0, T0 = frames[0]
    d, p = P0.d, P0.p
    for P, T in frames:
        if any(T(P).coords):
            raise ValueError(f"frame for {P} does not send it to the origin")
    rows = len(frames) * math.prod(b + 1 for b in bounds)
    if num_monomials(D, d) <= rows:
        raise DegreeTooSmall(f"D={D} gives {num_monomials(D, d)} unknowns for {rows} rows")
    return _kill_rows(frames, [tuple(bounds)] * len(frames), D, d, p)


def threshold_compare(beta_j: int, j: int, B: int, r: Sequence[int], growth: int = 100) -> bool:
    """beta_j <= growth^j B prod_{k!=j} r_k / (prod r)^((d-2)/(d-1)), exactly.

    Both sides are nonnegative, so raising to the (d-1)-th power preserves
    the comparison and clears the irrational root.
    """
    d = len(r)
    if any(x < 1 for x in r):
        raise ValueError("all successive minima must be positive")
    prod = math.prod(r)
    num = growth**j * B * (prod // r[j - 1])
    return beta_j ** (d - 1) * prod ** (d - 2) <= num ** (d - 1)


def threshold_bound(j: int, B: int, r: Sequence[int], growth: int = 100) -> int:
    """Largest beta_j accepted by threshold_compare."""
    d = len(r)
    prod = math.prod(r)
    num = growth**j * B * (prod // r[j - 1])
    cap = num ** (d - 1) // prod ** (d - 2)
    b = int(integer_nthroot(cap, d - 1)[0]) if d > 1 else 0
    assert threshold_compare(b, j, B, r, growth) and not threshold_compare(b + 1, j, B, r, growth)
    return b


def weighted_bounds(r: Sequence[int], B: int, growth: int = 100, floor: int = 0) -> tuple[int, ...]:
    """Per-coordinate kill extents: beta_j <= max(floor, threshold_j)."""
    return tuple(max(floor, threshold_bound(j, B, r, growth)) for j in range(1, len(r) + 1))


def weighted_kill_constraints(
    records: Sequence[JointRecord],
    B: int,
    D: int | None = None,
    growth: int = 100,
    floor: int = 0,
    row_budget: int | None = None,
    d: int | None = None,
    p: int | None = None,
) -> ConstraintSystem:
    """Kill boxes sized by successive minima, one frame per joint (transversals to axes).

    With ``D=None`` the least degree beating the row count is used.  ``d`` and
    ``p`` only matter for an empty record list.
    """
    if B < 1:
        raise ValueError("B must be a positive integer")
    if not records:
        return _empty_system(0 if D is None else D, d or 1, p or 2)
    d, p = records[0].point.d, records[0].point.p
    bounds = [weighted_bounds(rec.r, B, growth, floor) for rec in records]
    total = sum(math.prod(b + 1 for b in bs) for bs in bounds)
    if row_budget is not None and total > row_budget:
        raise InfeasibleThresholds(f"{total} kill rows exceed the budget of {row_budget}")
    if D is None:
        D = min_degree_for(total, d)
    elif num_monomials(D, d) <= total:
        raise DegreeTooSmall(f"D={D} gives {num_monomials(D, d)} unknowns for {total} rows")
    frames = [(rec.point, frame_transform(rec.point, rec.frame_lines)) for rec in records]
    return _kill_rows(frames, bounds, D, d, p)


def _empty_system(D: int, d: int = 1, p: int = 2) -> ConstraintSystem:
    n = num_monomials(D, d)
    return ConstraintSystem(D, d, p, np.zeros((0, n), dtype=np.int64), [])


def solve_certificate(CS: ConstraintSystem, config: dict | None = None) -> Certificate:
    """Nonzero polynomial of degree <= D annihilated by every row (deterministic)."""
    n = CS.num_unknowns
    if CS.num_rows == 0:
        v = (1,) + (0,) * (n - 1)
    else:
        v = nullspace_vector(Matrix(CS.rows, CS.p))
    Q = SparsePoly({e: c for e, c in zip(CS.monomials, v) if c}, CS.d, CS.p)
    if Q.is_zero():
        raise AssertionError("nullspace vector is zero")
    residual = CS.evaluate([Q.coefficient(e) for e in CS.monomials])
    if residual.any():
        raise AssertionError("certificate does not satisfy its constraint system")
    return Certificate(Q, CS, dict(config or {}))


# --- proof traces ------------------------------------------------------------


@dataclass
class ProofTrace:
    kind: str
    checks: dict[str, bool] = field(default_factory=dict)
    verdicts: list[dict] = field(default_factory=list)
    line_tallies: list[dict] = field(default_factory=list)
    degrees: dict[str, Any] = field(default_factory=dict)
    metrics: dict[str, Any] = field(default_factory=dict)
    vacuous: bool = False
    certificate: Certificate | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def check(self, name: str, ok: bool) -> bool:
        self.checks[name] = bool(self.checks.get(name, True) and ok)
        return ok

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "passed": self.passed,
            "vacuous": self.vacuous,
            "checks": dict(self.checks),
            "degrees": dict(self.degrees),
            "metrics": dict(self.metrics),
            "verdicts": list(self.verdicts),
            "line_tallies": list(self.line_tallies),
        }
        if self.certificate is not None:
            out["certificate"] = {
                "degree": self.certificate.degree,
                "degree_bound": self.certificate.system.D,
                "rows": self.certificate.system.num_rows,
                "unknowns": self.certificate.system.num_unknowns,
                "terms": self.certificate.Q.to_json(),
            }
        return out


def _line_repr(l: Line) -> dict:
    return {"base": list(l.base.coords), "dir": list(l.dir.vec)}


def joints_proof_trace(L: LineSystem) -> ProofTrace:
    """Vanishing certificate, ordinary/special split, per-line count of special joints."""
    trace = ProofTrace("joints")
    J = find_joints(L)
    lines = L.distinct_lines()
    n_lines = len(lines)
    trace.degrees["joints"] = len(J)
    trace.degrees["lines"] = n_lines
    if not J:
        trace.vacuous = True
        trace.check("vacuous", True)
        return trace
    D = min_degree_for(len(J), L.d)
    cert = solve_certificate(vanishing_constraints(J, D, L.d, L.p), {"rule": "vanish"})
    Q = cert.Q
    trace.certificate = cert
    deg = Q.degree()
    trace.degrees.update(D=D, deg_Q=deg)
    trace.check("degree_within_bound", deg <= D)
    trace.check("vanishes_on_joints", all(Q(P) == 0 for P in J))

    special_on: dict[Line, int] = {l: 0 for l in lines}
    for P in J:
        kinds = {}
        for l in lines:
            if line_contains(l, P):
                k = classify_joint(Q, P, l)
                kinds[l] = k
                if k is JointKind.SPECIAL:
                    special_on[l] += 1
        n_special = sum(k is JointKind.SPECIAL for k in kinds.values())
        trace.check("every_joint_special_somewhere", n_special >= 1)
        trace.verdicts.append(
            {
                "point": list(P.coords),
                "incident_lines": len(kinds),
                "special_lines": [_line_repr(l) for l, k in kinds.items() if k is JointKind.SPECIAL],
            }
        )
    for l in lines:
        trace.line_tallies.append({"line": _line_repr(l), "special_joints": special_on[l]})
        trace.check("special_per_line_at_most_deg", special_on[l] <= deg)
    trace.check("joints_at_most_N_deg", len(J) <= n_lines * deg)
    trace.metrics["joint_ratio"] = len(J) / n_lines ** (L.d / (L.d - 1))
    return trace


def _choose_multijoint_lines(L: LineSystem, P: Point) -> tuple[Line, ...] | None:
    per_family = []
    for i in range(1, L.d + 1):
        per_family.append(sorted({e.line for e in L.family(i) if line_contains(e.line, P)}))
    for combo in itertools.product(*per_family):
        if span_rank([l.dir.vec for l in combo], L.p) == L.d:
            return combo
    return None


def _min_terms(R: SparsePoly) -> list[Exp]:
    return sorted(lowest_homogeneous(R).terms)


def _in_box(beta: Sequence[int], bounds: Sequence[int]) -> bool:
    return all(b <= c for b, c in zip(beta, bounds))


def multijoints_proof_trace(L: LineSystem) -> ProofTrace:
    """Box-kill certificate, type assignment, pigeonhole over types and the Bezout chain."""
    trace = ProofTrace("multijoints")
    sizes = L.family_sizes()
    d = L.d
    J = find_multijoints(L)
    trace.degrees.update(multijoints=len(J), family_sizes=list(sizes))
    if not J:
        trace.vacuous = True
        trace.check("vacuous", True)
        return trace
    chosen = {P: _choose_multijoint_lines(L, P) for P in J}
    frames = [(P, frame_transform(P, chosen[P])) for P in J]
    rows = len(J) * math.prod(b + 1 for b in sizes)
    D = min_degree_for(rows, d)
    cert = solve_certificate(box_kill_constraints(frames, sizes, D), {"rule": "box-kill"})
    Q = cert.Q
    trace.certificate = cert
    deg = Q.degree()
    trace.degrees.update(D=D, deg_Q=deg, rows=rows)
    trace.check("degree_within_bound", deg <= D)

    types: dict[Point, int] = {}
    for P, T in frames:
        R = pullback(Q, T)
        trace.check("kill_box_empty", not any(_in_box(e, sizes) for e in R.terms))
        low = _min_terms(R)
        beta, i = next(
            ((b, k) for b in low for k in range(d) if b[k] > sizes[k]), (None, None)
        )
        if beta is None:
            trace.check("type_exists", False)
            continue
        types[P] = i
        line = chosen[P][i]
        m = pl_multiplicity(Q, P, line).value
        via_terms = monomial_lower_bound(Q, P, line, _axis_last(T, i))
        trace.check("type_multiplicity_exceeds_family_size", m >= beta[i] > sizes[i])
        trace.check("lower_bound_route_agrees", m >= via_terms >= beta[i])
        trace.verdicts.append(
            {"point": list(P.coords), "type": i + 1, "beta": list(beta), "m": m, "term_bound": via_terms}
        )
    trace.check("type_exists", len(types) == len(J))
    if len(types) != len(J):
        return trace

    tally = [sum(1 for t in types.values() if t == i) for i in range(d)]
    i0 = max(range(d), key=lambda i: (tally[i], -i))
    trace.degrees["type_tally"] = tally
    trace.degrees["popular_type"] = i0 + 1
    trace.check("popular_type_pigeonhole", d * tally[i0] >= len(J))

    m_at = {P: pl_multiplicity(Q, P, chosen[P][i0]).value for P in J}
    S = sum(m_at.values())
    by_line: dict[Line, int] = {}
    for P in J:
        by_line[chosen[P][i0]] = by_line.get(chosen[P][i0], 0) + m_at[P]
    bez_total = 0
    for line, s in sorted(by_line.items()):
        b = bezout_sum(Q, line)
        bez_total += b
        trace.check("per_line_sum_within_bezout", s <= b <= deg)
        trace.line_tallies.append({"line": _line_repr(line), "sum_m": s, "bezout_sum": b})
    n0 = sizes[i0]
    trace.check("distinct_lines_within_family", len(by_line) <= n0)
    trace.check("chain_lower", len(J) * n0 <= d * S)
    trace.check("chain_upper", S <= bez_total <= n0 * deg)
    trace.metrics.update(
        sum_m=S,
        multijoint_ratio=len(J) / math.prod(sizes) ** (1 / (d - 1)),
    )
    return trace


def _axis_last(T: AffineMap, i: int) -> AffineMap:
    """Compose T with the coordinate swap i <-> d, so axis i becomes the x_d-axis."""
    d, p = T.d, T.p
    perm = list(range(d))
    perm[i], perm[-1] = perm[-1], perm[i]
    S = Matrix([[int(perm[r] == c) for c in range(d)] for r in range(d)], p)
    return AffineMap(S, (0,) * d).compose(T)


@dataclass(frozen=True)
class CarberyConfig:
    B: int = 1
    floor: int = 1
    growth: int = 1
    row_budget: int = 5000

    def __post_init__(self):
        if self.B < 1:
            raise ValueError("B must be a positive integer")
        if self.floor < 0 or self.growth < 1 or self.row_budget < 0:
            raise ValueError("floor >= 0, growth >= 1 and row_budget >= 0 are required")


def carbery_audit(L: LineSystem, config: CarberyConfig = CarberyConfig()) -> ProofTrace:
    """Weighted kill certificate; hard-checks kill boxes and the global Bezout chain.

    The per-point estimate sum_i m_Q(P, l_i) >~ B M(P)^(1/(d-1)) and the global
    joint ratio are reported, not asserted.
    """
    trace = ProofTrace("carbery")
    d = L.d
    records = joint_records(L)
    trace.degrees.update(joints=len(records), N=L.N)
    trace.metrics["config"] = {
        "B": config.B,
        "floor": config.floor,
        "growth": config.growth,
        "row_budget": config.row_budget,
    }
    if not records:
        trace.vacuous = True
        trace.check("vacuous", True)
        return trace
    CS = weighted_kill_constraints(
        records, config.B, None, config.growth, config.floor, config.row_budget
    )
    cert = solve_certificate(CS, trace.metrics["config"])
    Q = cert.Q
    trace.certificate = cert
    deg = Q.degree()
    trace.degrees.update(D=CS.D, deg_Q=deg, rows=CS.num_rows)
    trace.check("degree_within_bound", deg <= CS.D)

    for rec in records:
        bounds = weighted_bounds(rec.r, config.B, config.growth, config.floor)
        T = frame_transform(rec.point, rec.frame_lines)
        R = pullback(Q, T)
        trace.check("kill_box_empty", not any(_in_box(e, bounds) for e in R.terms))

    mults: dict[Line, list[int]] = {}
    total = 0
    for e in L.entries:
        if e.line not in mults:
            mults[e.line] = line_multiplicities(Q, e.line)
            s = sum(mults[e.line])
            trace.check("bezout_per_line", s <= deg)
            trace.line_tallies.append({"line": _line_repr(e.line), "bezout_sum": s})
        total += e.mult * sum(mults[e.line])
    trace.check("global_chain", total <= L.N * deg)
    trace.degrees["sum_m_all"] = total

    root_sum = 0.0
    for rec in records:
        P = rec.point
        s = sum(
            e.mult * mults[e.line][e.line.parameter_of(P)]
            for e in L.entries
            if line_contains(e.line, P)
        )
        root = rec.M ** (1 / (d - 1))
        root_sum += root
        trace.verdicts.append(
            {
                "point": list(P.coords),
                "M": rec.M,
                "r": list(rec.r),
                "kill_bounds": list(weighted_bounds(rec.r, config.B, config.growth, config.floor)),
                "sum_m": s,
                "ratio": s / (config.B * root),
            }
        )
    ratios = [v["ratio"] for v in trace.verdicts]
    trace.metrics.update(
        min_point_ratio=min(ratios),
        max_point_ratio=max(ratios),
        global_ratio=root_sum / L.N ** (d / (d - 1)),
        sum_M_root=root_sum,
    )
    return trace
