import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from jointkit.algebra_core import (
    FieldElem,
    Matrix,
    ModulusMismatch,
    PrimeField,
    TrivialNullspace,
    ZeroInverse,
    field_inverse,
    matrix_inverse,
    nullspace_basis,
    nullspace_vector,
    rank,
    row_reduce,
)
from jointkit.oracle import naive_rank


def test_inverse_examples():
    F = PrimeField(7)
    assert field_inverse(F(1)) == 1
    assert field_inverse(F(3)) == 5
    with pytest.raises(ZeroInverse):
        field_inverse(F(0))


def test_composite_modulus_rejected():
    with pytest.raises(ValueError):
        PrimeField(9)


def test_mixed_moduli_rejected():
    with pytest.raises(ModulusMismatch):
        PrimeField(5)(1) + PrimeField(7)(1)


def test_elements_reduce_on_construction():
    assert PrimeField(5)(12).value == 2
    assert FieldElem(3, PrimeField(5)) * 4 == 2


def test_rank_examples():
    assert rank(Matrix.identity(3, 5)) == 3
    assert rank(Matrix.zeros(2, 2, 5)) == 0
    assert rank(Matrix([[1, 2], [2, 4]], 5)) == 1


def test_nullspace_examples():
    assert nullspace_vector(Matrix([[1, 0, 0]], 5)) == (0, 1, 0)
    with pytest.raises(TrivialNullspace):
        nullspace_vector(Matrix.identity(2, 5))
    assert nullspace_vector(Matrix([[0, 0]], 5)) == (1, 0)


def test_large_prime_uses_exact_objects():
    p = 2**61 - 1
    M = Matrix([[p - 1, 2], [3, 5]], p)
    inv = matrix_inverse(M)
    assert (M @ inv) == Matrix.identity(2, p)


def test_sparse_rows_match_dense():
    S = Matrix.from_sparse_rows([{0: 1, 2: 3}, {1: 4}], 3, 5)
    assert S.tolist() == [[1, 0, 3], [0, 4, 0]]


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_rank_matches_naive(rows):
    assert rank(Matrix(rows, 7)) == naive_rank(rows, 7)


@given(matrices)
def test_nullspace_vector_is_annihilated_and_deterministic(rows):
    M = Matrix(rows, 7)
    if rank(M) == M.cols:
        with pytest.raises(TrivialNullspace):
            nullspace_vector(M)
        return
    v = nullspace_vector(M)
    assert any(v)
    assert not np.any(np.array(M @ v) % 7)
    assert nullspace_vector(Matrix(rows, 7)) == v
    # lowest free variable set to 1, every other free variable to 0
    _, pivots = row_reduce(M)
    free = [c for c in range(M.cols) if c not in pivots]
    assert v[free[0]] == 1 and not any(v[c] for c in free[1:])


@given(matrices)
def test_rank_nullity(rows):
    M = Matrix(rows, 7)
    assert rank(M) + len(nullspace_basis(M)) == M.cols
