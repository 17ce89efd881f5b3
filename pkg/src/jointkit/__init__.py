"""Exact polynomial-method machinery for joints of lines over prime fields."""
from .algebra_core import FieldElem, Matrix, PrimeField, field_inverse, nullspace_vector, rank
from .certify import (
    CarberyConfig,
    ProofTrace,
    carbery_audit,
    joints_proof_trace,
    multijoints_proof_trace,
    solve_certificate,
)
from .generators import generate
from .geometry import AffineMap, Direction, Line, Point, Subspace, axis_transform, canonicalize_line
from .incidence import (
    LineSystem,
    build_flag,
    find_joints,
    find_multijoints,
    joint_multiplicity,
    multijoint_multiplicity,
    successive_minima,
)
from .multiplicity import JointKind, bezout_sum, classify_joint, pl_multiplicity
from .polynomials import SparsePoly, compose_affine, pullback

__all__ = [
    "AffineMap", "CarberyConfig", "Direction", "FieldElem", "JointKind", "Line", "LineSystem",
    "Matrix", "Point", "PrimeField", "ProofTrace", "SparsePoly", "Subspace", "axis_transform",
    "bezout_sum", "build_flag", "canonicalize_line", "carbery_audit", "classify_joint",
    "compose_affine", "field_inverse", "find_joints", "find_multijoints", "generate",
    "joint_multiplicity", "joints_proof_trace", "multijoint_multiplicity",
    "multijoints_proof_trace", "nullspace_vector", "pl_multiplicity", "pullback", "rank",
    "solve_certificate", "successive_minima",
]
