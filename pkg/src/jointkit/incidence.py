"""Joints, multijoints, joint multiplicities, successive minima and flags.

A LineSystem is a multiset of lines.  A line repeated k times adds k to
every count (M, mu, r_j) but contributes a single direction to rank tests.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .geometry import (
    Line,
    Point,
    Subspace,
    Vec,
    canonicalize_line,
    intersect_lines,
    line_contains,
    span_rank,
)


class NoJoint(ValueError):
    pass


class MissingFamilies(ValueError):
    pass


@dataclass(frozen=True)
class LineEntry:
    line: Line
    mult: int = 1
    family: int | None = None

    def __post_init__(self):
        if self.mult < 1:
            raise ValueError("line multiplicity must be positive")


@dataclass(frozen=True)
class LineSystem:
    entries: tuple[LineEntry, ...]
    d: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("a line system needs at least one line")
        for e in self.entries:
            if e.line.d != self.d or e.line.p != self.p:
                raise ValueError(f"{e.line} does not live in F_{self.p}^{self.d}")
        labels = [e.family for e in self.entries]
        if any(x is not None for x in labels):
            if any(x is None for x in labels):
                raise ValueError("either every line carries a family label or none does")
            if set(labels) != set(range(1, self.d + 1)):
                raise ValueError(f"family labels must cover exactly 1..{self.d}")

    @classmethod
    def from_lines(cls, lines: Iterable[Line], d: int | None = None, p: int | None = None) -> "LineSystem":
        lines = list(lines)
        d = d if d is not None else lines[0].d
        p = p if p is not None else lines[0].p
        return cls(tuple(LineEntry(l) for l in lines), d, p)

    @classmethod
    def from_families(cls, families: Sequence[Sequence[Line]]) -> "LineSystem":
        entries = tuple(LineEntry(l, 1, i + 1) for i, fam in enumerate(families) for l in fam)
        first = entries[0].line
        return cls(entries, first.d, first.p)

    @property
    def N(self) -> int:
        return sum(e.mult for e in self.entries)

    @property
    def has_families(self) -> bool:
        return self.entries[0].family is not None

    def family(self, i: int) -> list[LineEntry]:
        return [e for e in self.entries if e.family == i]

    def family_sizes(self) -> tuple[int, ...]:
        if not self.has_families:
            raise MissingFamilies("line system has no family labels")
        return tuple(sum(e.mult for e in self.family(i)) for i in range(1, self.d + 1))

    def distinct_lines(self) -> list[Line]:
        return sorted({e.line for e in self.entries})

    def incident(self, P: Point) -> list[LineEntry]:
        return [e for e in self.entries if line_contains(e.line, P)]

    def weighted_incident(self, P: Point) -> dict[Line, int]:
        """Incident distinct lines through P with their total multiplicity."""
        out: dict[Line, int] = {}
        for e in self.incident(P):
            out[e.line] = out.get(e.line, 0) + e.mult
        return dict(sorted(out.items()))


def find_joints(L: LineSystem) -> list[Point]:
    """Points where d incident lines have independent directions (sorted)."""
    lines = L.distinct_lines()
    candidates: set[Point] = set()
    for a, b in itertools.combinations(lines, 2):
        pt = intersect_lines(a, b)
        if pt is not None:
            candidates.add(pt)
    joints = []
    for P in sorted(candidates):
        dirs = [l.dir.vec for l in lines if line_contains(l, P)]
        if len(dirs) >= L.d and span_rank(dirs, L.p) == L.d:
            joints.append(P)
    return joints


def joint_multiplicity(L: LineSystem, P: Point) -> int:
    """Ordered d-tuples of entries (copies distinguishable) forming a joint at P."""
    inc = list(L.weighted_incident(P).items())
    d = L.d
    total = 0
    for combo in itertools.combinations(inc, d):
        if span_rank([l.dir.vec for l, _ in combo], L.p) == d:
            total += math.prod(w for _, w in combo)
    return math.factorial(d) * total


def multijoint_multiplicity(L: LineSystem, P: Point) -> int:
    """Tuples (l_1..l_d), l_i from family i, through P with independent directions."""
    if not L.has_families:
        raise MissingFamilies("multijoint multiplicity needs family labels")
    per_family = []
    for i in range(1, L.d + 1):
        per_family.append([e for e in L.family(i) if line_contains(e.line, P)])
    total = 0
    for combo in itertools.product(*per_family):
        if span_rank([e.line.dir.vec for e in combo], L.p) == L.d:
            total += math.prod(e.mult for e in combo)
    return total


def find_multijoints(L: LineSystem) -> list[Point]:
    return [P for P in find_joints(L) if multijoint_multiplicity(L, P) > 0]


def _pad(S: Subspace, within: Subspace, k: int) -> Subspace:
    for b in within.basis:
        if S.dim >= k:
            break
        if not S.contains(b):
            S = S.extend(b)
    return S


def max_parallel_subspace(
    weighted: dict[Line, int], k: int, within: Subspace
) -> tuple[int, Subspace]:
    """Best k-dim subspace of ``within`` by weighted count of parallel lines.

    The maximiser can be taken as a span of incident directions padded with
    basis vectors of ``within``; ties go to the lexicographically least
    echelon basis.
    """
    if k > within.dim:
        raise ValueError("requested dimension exceeds the container")
    d, p = within.d, within.p
    cands = [(l.dir.vec, w) for l, w in weighted.items() if within.contains(l.dir.vec)]
    dirs = [v for v, _ in cands]
    s = min(k, span_rank(dirs, p)) if dirs else 0
    best: tuple[int, tuple] | None = None
    best_V = None
    subsets = itertools.combinations(dirs, s) if s else [()]
    for sub in subsets:
        if s and span_rank(list(sub), p) < s:
            continue
        V = _pad(Subspace.span(list(sub), d, p), within, k)
        count = sum(w for v, w in cands if V.contains(v))
        key = (-count, V.key())
        if best is None or key < best:
            best, best_V = key, V
    return -best[0], best_V


def successive_minima(L: LineSystem, P: Point) -> tuple[int, ...]:
    """(r_1, ..., r_d): r_j = min over (j-1)-dim V of incident lines not parallel to V."""
    weighted = L.weighted_incident(P)
    total = sum(weighted.values())
    whole = Subspace.whole(L.d, L.p)
    return tuple(total - max_parallel_subspace(weighted, j - 1, whole)[0] for j in range(1, L.d + 1))


def count_not_parallel(weighted: dict[Line, int], V: Subspace) -> int:
    return sum(w for l, w in weighted.items() if not V.contains(l.dir.vec))


def count_parallel(weighted: dict[Line, int], V: Subspace) -> int:
    return sum(w for l, w in weighted.items() if V.contains(l.dir.vec))


@dataclass(frozen=True)
class Flag:
    """V_1 <= ... <= V_d with dim V_j = j - 1, plus transversal directions.

    ``transversals[j-1]`` lies in V_{j+1} but not V_j, so V_j is spanned by
    the first j - 1 transversals.
    """

    subspaces: tuple[Subspace, ...]
    anchor: Point
    witness_counts: tuple[int, ...]
    transversals: tuple[Vec, ...]

    def V(self, j: int) -> Subspace:
        """1-based access; V(d+1) is the whole space."""
        if j == len(self.subspaces) + 1:
            return Subspace.whole(self.anchor.d, self.anchor.p)
        return self.subspaces[j - 1]


def build_flag(L: LineSystem, P: Point) -> Flag:
    """Downward construction: each V_j maximises parallel lines inside V_{j+1}."""
    if joint_multiplicity(L, P) == 0:
        raise NoJoint(f"no joint at {P}")
    d, p = L.d, L.p
    weighted = L.weighted_incident(P)
    Vs: list[Subspace] = [None] * (d + 2)  # type: ignore[list-item]
    Vs[d + 1] = Subspace.whole(d, p)
    for j in range(d, 0, -1):
        _, Vs[j] = max_parallel_subspace(weighted, j - 1, Vs[j + 1])
    transversals = []
    for j in range(1, d + 1):
        w = next(b for b in Vs[j + 1].basis if not Vs[j].contains(b))
        transversals.append(w)
    counts = tuple(count_not_parallel(weighted, Vs[j]) for j in range(1, d + 1))
    return Flag(tuple(Vs[1 : d + 1]), P, counts, tuple(transversals))


@dataclass(frozen=True)
class JointRecord:
    point: Point
    M: int
    r: tuple[int, ...]
    flag: Flag
    frame_lines: tuple[Line, ...] = field(default=())

    def __post_init__(self):
        if any(a < b for a, b in zip(self.r, self.r[1:])):
            raise ValueError(f"successive minima not monotone: {self.r}")


def joint_record(L: LineSystem, P: Point) -> JointRecord:
    flag = build_flag(L, P)
    frame = tuple(canonicalize_line(P, w) for w in flag.transversals)
    return JointRecord(P, joint_multiplicity(L, P), successive_minima(L, P), flag, frame)


def joint_records(L: LineSystem) -> list[JointRecord]:
    return [joint_record(L, P) for P in find_joints(L)]


def replicate_families(L: LineSystem) -> LineSystem:
    """Each line of family i repeated prod_{j != i} N_j times, labels dropped."""
    sizes = L.family_sizes()
    total = math.prod(sizes)
    entries = tuple(
        LineEntry(e.line, e.mult * (total // sizes[e.family - 1]), None) for e in L.entries
    )
    return LineSystem(entries, L.d, L.p)
