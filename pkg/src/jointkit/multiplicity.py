"""The (P, l)-multiplicity of a polynomial and the ordinary/special test.

Both quantities are read off the polynomial after moving l onto the
x_d-axis.  Writing the moved polynomial as sum_alpha x^(alpha,0) f_alpha(x_d),
the multiplicity at the point with x_d-coordinate t is the least root
multiplicity of t among the f_alpha of minimal |alpha|.  This stays finite
when the polynomial vanishes on the whole line.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .geometry import AffineMap, Line, NotIncident, Point, axis_transform, line_contains
from .polynomials import (
    Exp,
    SparsePoly,
    UniPoly,
    ZeroPolynomial,
    axis_decomposition,
    lowest_homogeneous,
    pullback,
    root_multiplicity,
    shift_to_point,
)


class InvariantViolation(AssertionError):
    """A proven inequality failed on a concrete instance (indicates a bug)."""


class JointKind(enum.Enum):
    ORDINARY = "ordinary"
    SPECIAL = "special"


@dataclass(frozen=True)
class MultiplicityReport:
    value: int
    lowest_degree: int
    lowest_tuples: tuple[Exp, ...]
    transform_used: AffineMap
    p_T: int
    tuple_multiplicities: tuple[int, ...]


def _check_axis_map(T: AffineMap, l: Line):
    for pt in (l.point_at(0), l.point_at(1)):
        if any(T(pt).coords[:-1]):
            raise ValueError("transform does not send the line onto the x_d-axis")


def _lowest(decomp: dict[Exp, UniPoly]) -> tuple[int, list[Exp]]:
    k = min(sum(a) for a in decomp)
    return k, sorted(a for a in decomp if sum(a) == k)


def pl_multiplicity(
    Q: SparsePoly, P: Point, l: Line, transform: AffineMap | None = None
) -> MultiplicityReport:
    if Q.is_zero():
        raise ZeroPolynomial("(P,l)-multiplicity is only defined for nonzero Q")
    if not line_contains(l, P):
        raise NotIncident(f"{P} is not on {l}")
    if transform is None:
        T, p_T = axis_transform(P, l)
    else:
        _check_axis_map(transform, l)
        T, p_T = transform, transform(P).coords[-1]
    decomp = axis_decomposition(pullback(Q, T))
    k, lowest = _lowest(decomp)
    mults = tuple(root_multiplicity(decomp[a], p_T) for a in lowest)
    return MultiplicityReport(min(mults), k, tuple(lowest), T, p_T, mults)


def line_multiplicities(Q: SparsePoly, l: Line) -> list[int]:
    """m_Q(P, l) for P = l.point_at(t), t = 0..p-1, from a single frame."""
    if Q.is_zero():
        raise ZeroPolynomial("(P,l)-multiplicity is only defined for nonzero Q")
    T, _ = axis_transform(l.base, l)
    decomp = axis_decomposition(pullback(Q, T))
    _, lowest = _lowest(decomp)
    fs = [decomp[a] for a in lowest]
    return [min(root_multiplicity(f, t) for f in fs) for t in range(l.p)]


def bezout_sum(Q: SparsePoly, l: Line) -> int:
    """sum over P in l of m_Q(P, l); never exceeds deg Q."""
    total = sum(line_multiplicities(Q, l))
    if total > Q.degree():
        raise InvariantViolation(f"multiplicity sum {total} exceeds deg Q = {Q.degree()}")
    return total


def point_frame(P: Point, l: Line) -> AffineMap:
    """Axis frame for l, translated so that P lands on the origin."""
    T, p_T = axis_transform(P, l)
    shift = [0] * P.d
    shift[-1] = -p_T
    return AffineMap.translation(shift, P.p).compose(T)


def classify_joint(
    Q: SparsePoly, P: Point, l: Line, frame: AffineMap | None = None
) -> JointKind:
    """Ordinary iff the lowest homogeneous part in a (P -> 0, l -> x_d-axis) frame avoids x_d."""
    if Q.is_zero():
        raise ZeroPolynomial("classification needs a nonzero polynomial")
    if not line_contains(l, P):
        raise NotIncident(f"{P} is not on {l}")
    if frame is None:
        frame = point_frame(P, l)
    else:
        _check_axis_map(frame, l)
        if any(frame(P).coords):
            raise ValueError("frame must send P to the origin")
    low = lowest_homogeneous(pullback(Q, frame))
    return JointKind.SPECIAL if low.depends_on(P.d - 1) else JointKind.ORDINARY


def taylor_terms(Q: SparsePoly, P: Point, T: AffineMap) -> SparsePoly:
    """Coefficients c_beta of (T^{-1})^*Q expanded around T(P)."""
    return shift_to_point(pullback(Q, T), T(P))


def monomial_lower_bound(Q: SparsePoly, P: Point, l: Line, transform: AffineMap | None = None) -> int:
    """Largest beta_d over minimal-|beta| Taylor terms in an axis frame for l.

    Any such term bounds m_Q(P, l) from below.
    """
    if Q.is_zero():
        raise ZeroPolynomial("lower bound needs a nonzero polynomial")
    T = transform if transform is not None else axis_transform(P, l)[0]
    _check_axis_map(T, l)
    low = lowest_homogeneous(taylor_terms(Q, P, T))
    return max(e[-1] for e in low.terms)
