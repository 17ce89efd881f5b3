import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jointkit.generators import axes, families_random, grid, random_lines
from jointkit.geometry import Point, Subspace, axis_line, canonicalize_line
from jointkit.incidence import (
    LineEntry,
    LineSystem,
    MissingFamilies,
    NoJoint,
    build_flag,
    count_parallel,
    find_joints,
    find_multijoints,
    joint_multiplicity,
    multijoint_multiplicity,
    replicate_families,
    successive_minima,
)
from jointkit.oracle import oracle_flag_check, oracle_joint_tuples, oracle_minima

O = Point((0, 0, 0), 5)
AX = [axis_line(i, 3, 5) for i in range(3)]


def test_find_joints_examples():
    assert find_joints(axes(3, 5)) == [O]
    assert len(find_joints(grid(5, 3))) == 125
    par = LineSystem.from_lines([AX[0], axis_line(0, 3, 5, Point((0, 1, 0), 5))])
    assert find_joints(par) == []


def test_joint_multiplicity_examples():
    assert joint_multiplicity(axes(3, 5), O) == 6
    L = LineSystem((LineEntry(AX[0], 2), LineEntry(AX[1]), LineEntry(AX[2])), 3, 5)
    assert joint_multiplicity(L, O) == 12
    assert joint_multiplicity(axes(3, 5), Point((1, 0, 0), 5)) == 0


def test_multijoint_multiplicity_examples():
    L = LineSystem.from_families([[AX[0]], [AX[1]], [AX[2]]])
    assert multijoint_multiplicity(L, O) == 1
    L2 = LineSystem.from_families([[AX[0], canonicalize_line(O, (1, 1, 0))], [AX[1]], [AX[2]]])
    assert multijoint_multiplicity(L2, O) == 2
    assert multijoint_multiplicity(L, Point((1, 1, 1), 5)) == 0
    with pytest.raises(MissingFamilies):
        multijoint_multiplicity(axes(3, 5), O)
    assert find_multijoints(L2) == [O]


def test_minima_examples():
    assert successive_minima(axes(3, 5), O) == (3, 2, 1)
    assert successive_minima(LineSystem.from_lines([AX[0]]), O) == (1, 0, 0)
    assert successive_minima(axes(3, 5), Point((1, 1, 1), 5)) == (0, 0, 0)


def test_flag_examples():
    F = build_flag(axes(3, 5), O)
    V3 = F.V(3)
    assert V3.dim == 2 and count_parallel(axes(3, 5).weighted_incident(O), V3) == 2
    with pytest.raises(NoJoint):
        build_flag(axes(3, 5), Point((1, 1, 1), 5))


def test_general_position_flag_counts_equal_minima():
    dirs = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    L = LineSystem.from_lines([canonicalize_line(O, v) for v in dirs])
    F = build_flag(L, O)
    assert tuple(F.witness_counts) == successive_minima(L, O)
    assert all(oracle_flag_check(L, F).values())


def test_fourth_general_line_gives_24_tuples():
    L = LineSystem.from_lines(AX + [canonicalize_line(O, (1, 1, 1))])
    assert joint_multiplicity(L, O) == oracle_joint_tuples(L, O) == 24


def test_family_labels_all_or_none():
    with pytest.raises(ValueError):
        LineSystem((LineEntry(AX[0], 1, 1), LineEntry(AX[1])), 3, 5)


def test_replication_multiplies_lines():
    L = families_random(3, 3, [2, 1, 2], seed=4, planted=1)
    R = replicate_families(L)
    sizes = L.family_sizes()
    assert R.N == sum(n * math.prod(sizes) // n for n in sizes)
    assert not R.has_families


@given(st.integers(0, 2**31))
def test_minima_monotone_and_match_oracle(seed):
    L = random_lines(3, 3, 7, seed=seed, planted=1, max_mult=2)
    for P in find_joints(L)[:4]:
        r = successive_minima(L, P)
        assert list(r) == sorted(r, reverse=True)
        assert r == tuple(oracle_minima(L, P, j) for j in (1, 2, 3))
        M = joint_multiplicity(L, P)
        assert math.prod(r) <= M <= 6 * math.prod(r)
        assert r[-1] > 0


@given(st.integers(0, 2**31))
def test_joints_are_points_with_positive_last_minimum(seed):
    L = random_lines(3, 3, 6, seed=seed, planted=1)
    joints = set(find_joints(L))
    for e in L.entries:
        for t in range(3):
            P = e.line.point_at(t)
            assert (P in joints) == (successive_minima(L, P)[-1] > 0)


@given(st.integers(0, 2**31))
def test_flags_satisfy_oracle(seed):
    L = random_lines(3, 3, 6, seed=seed, planted=2, max_mult=2)
    for P in find_joints(L)[:3]:
        assert all(oracle_flag_check(L, build_flag(L, P)).values())


def test_subspace_padding_stays_deterministic():
    rng = random.Random(0)
    L = random_lines(5, 3, 8, seed=rng.randrange(1000), planted=2)
    P = find_joints(L)[0]
    assert build_flag(L, P).subspaces == build_flag(L, P).subspaces
    assert isinstance(build_flag(L, P).V(1), Subspace)
