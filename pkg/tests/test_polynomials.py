import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jointkit.geometry import AffineMap, Point, random_affine
from jointkit.polynomials import (
    SparsePoly,
    UniPoly,
    ZeroPolynomial,
    axis_decomposition,
    compose_affine,
    lowest_homogeneous,
    pullback,
    reassemble,
    root_multiplicity,
    shift_to_point,
)

from conftest import polys

x1, x2, x3 = (SparsePoly.var(i, 3, 5) for i in range(3))


def test_pullback_examples():
    Q = x1 * x3 + x2**2 + 3
    assert pullback(Q, AffineMap.identity(3, 5)) == Q
    T = AffineMap.translation((1, 0, 0), 5)
    R = pullback(x1, T)
    assert R == x1 - 1
    for c in itertools.product(range(5), repeat=3):
        assert R(c) == x1(T.inverse()(Point(c, 5)).coords)


def test_axis_decomposition_examples():
    dec = axis_decomposition(x1 * x3 + x2**2)
    assert set(dec) == {(1, 0), (0, 2)}
    assert dec[(1, 0)].coeffs == (0, 1)
    assert dec[(0, 2)].coeffs == (1,)
    assert axis_decomposition(SparsePoly.constant(4, 3, 5)) == {(0, 0): UniPoly((4,), 5)}
    assert axis_decomposition(SparsePoly.zero(3, 5)) == {}


def test_lowest_homogeneous_examples():
    assert lowest_homogeneous(x1 + x2**2) == x1
    H = x1 * x2 + x3**2
    assert lowest_homogeneous(H) == H
    assert lowest_homogeneous(x1 + 3) == SparsePoly.constant(3, 3, 5)
    with pytest.raises(ZeroPolynomial):
        lowest_homogeneous(SparsePoly.zero(3, 5))


def test_shift_examples():
    Q = x3**2
    assert shift_to_point(Q, Point((0, 0, 0), 5)) == Q
    assert shift_to_point(Q, Point((0, 0, 1), 5)) == x3**2 + 2 * x3 + 1


def test_root_multiplicity_examples():
    f = UniPoly.from_roots([0, 0, 1], 5)
    assert root_multiplicity(f, 0) == 2
    assert root_multiplicity(f, 2) == 0
    with pytest.raises(ZeroPolynomial):
        root_multiplicity(UniPoly((), 5), 0)


def test_zero_terms_are_dropped():
    Q = SparsePoly({(1, 0, 0): 5, (0, 1, 0): 2}, 3, 5)
    assert Q.terms == {(0, 1, 0): 2}
    assert (x1 - x1).is_zero() and (x1 - x1).degree() == -1


@given(polys(p=5, d=3), polys(p=5, d=3), st.tuples(*[st.integers(0, 4)] * 3))
def test_ring_ops_commute_with_evaluation(A, B, c):
    assert (A + B)(c) == (A(c) + B(c)) % 5
    assert (A * B)(c) == A(c) * B(c) % 5
    assert (A - B)(c) == (A(c) - B(c)) % 5


@given(polys(p=5, d=3), st.integers(0, 2**31))
def test_pullback_composes_with_inverse(Q, seed):
    rng = random.Random(seed)
    T = random_affine(3, 5, rng)
    R = pullback(Q, T)
    assert R.degree() == Q.degree()
    assert compose_affine(R, T) == Q
    P = Point(tuple(rng.randrange(5) for _ in range(3)), 5)
    assert R(T(P).coords) == Q(P.coords)


@given(polys(p=7, d=3))
def test_decomposition_reassembles(Q):
    assert reassemble(axis_decomposition(Q), 3, 7) == Q


@given(polys(p=7, d=2), st.tuples(st.integers(0, 6), st.integers(0, 6)))
def test_shift_evaluates_at_translate(Q, P):
    S = shift_to_point(Q, P)
    for c in [(0, 0), (1, 3), (6, 2)]:
        assert S(c) == Q(((c[0] + P[0]) % 7, (c[1] + P[1]) % 7))
