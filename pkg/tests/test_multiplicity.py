import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jointkit.geometry import NotIncident, Point, axis_line, random_axis_transform, random_line
from jointkit.multiplicity import (
    InvariantViolation,
    JointKind,
    bezout_sum,
    classify_joint,
    line_multiplicities,
    monomial_lower_bound,
    pl_multiplicity,
)
from jointkit.oracle import oracle_classical_multiplicity
from jointkit.polynomials import SparsePoly, ZeroPolynomial, random_poly
from jointkit.suites import lower_bound_case

from conftest import polys

x1, x2, x3 = (SparsePoly.var(i, 3, 5) for i in range(3))
O = Point((0, 0, 0), 5)
Z = axis_line(2, 3, 5)


def test_pl_multiplicity_examples():
    r = pl_multiplicity(x1, O, Z)
    assert r.value == 0 and r.lowest_tuples == ((1, 0),)
    assert pl_multiplicity(x1 * x3, O, Z).value == 1
    assert pl_multiplicity(x3 * (x3 - 1) * (x3 - 2), O, Z).value == 1


def test_pl_multiplicity_errors():
    with pytest.raises(ZeroPolynomial):
        pl_multiplicity(SparsePoly.zero(3, 5), O, Z)
    with pytest.raises(NotIncident):
        pl_multiplicity(x1, Point((1, 0, 0), 5), Z)


def test_bezout_examples():
    assert bezout_sum(x3 * (x3 - 1), Z) == 2
    assert bezout_sum(x1, Z) == 0
    assert bezout_sum(SparsePoly.constant(3, 3, 5), Z) == 0


def test_classify_examples():
    assert classify_joint(x1, O, Z) is JointKind.ORDINARY
    assert classify_joint(x1 * x2 * x3, O, Z) is JointKind.SPECIAL
    assert classify_joint(x1 * x2 * x3, O, axis_line(0, 3, 5)) is JointKind.SPECIAL


def test_contained_line_has_finite_multiplicities():
    Q = x1 * x3**2 + x2 * x3
    ms = line_multiplicities(Q, Z)
    assert ms[0] == 1 and sum(ms) <= Q.degree()


@given(polys(p=5, d=3), st.integers(0, 2**31))
def test_frame_invariance(Q, seed):
    rng = random.Random(seed)
    l = random_line(3, 5, rng)
    P = l.point_at(rng.randrange(5))
    base = pl_multiplicity(Q, P, l).value
    for _ in range(4):
        assert pl_multiplicity(Q, P, l, transform=random_axis_transform(l, rng)).value == base


@given(polys(p=7, d=3, max_degree=5), st.integers(0, 2**31))
def test_bezout_bound(Q, seed):
    l = random_line(3, 7, random.Random(seed))
    assert sum(line_multiplicities(Q, l)) <= Q.degree()


@given(polys(p=7, d=3), st.integers(0, 2**31))
def test_agrees_with_restriction_when_defined(Q, seed):
    rng = random.Random(seed)
    l = random_line(3, 7, rng)
    P = l.point_at(rng.randrange(7))
    ref = oracle_classical_multiplicity(Q, P, l)
    if ref is not None:
        assert pl_multiplicity(Q, P, l).value == ref


@given(st.integers(0, 2**31))
def test_monomial_lower_bound(seed):
    Q, P, l, T, beta0 = lower_bound_case(7, 3, random.Random(seed))
    assert pl_multiplicity(Q, P, l).value >= monomial_lower_bound(Q, P, l, T) >= beta0[-1]


def test_bezout_overflow_is_an_invariant_violation():
    assert issubclass(InvariantViolation, AssertionError)


def test_random_poly_respects_degree():
    rng = random.Random(3)
    Q = random_poly(3, 5, 4, rng, nterms=5)
    assert 0 <= Q.degree() <= 4
