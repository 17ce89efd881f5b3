"""Prime fields F_p and exact linear algebra over them.

Matrices are stored as numpy integer arrays reduced mod p; all elimination
is exact.  For p below ~3e9 the products of two residues fit in int64, so
the fast path uses machine integers; larger moduli fall back to object
arrays of Python ints.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime

# p * p must stay below 2**63 on the int64 path.
_INT64_SAFE = 3_037_000_499


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting 0 in F_p."""


class ModulusMismatch(ValueError):
    """Raised when combining values from different prime fields."""


class TrivialNullspace(ValueError):
    """Raised when a matrix has full column rank, so only v = 0 solves Mv = 0."""


def _dtype(p: int):
    return np.int64 if p < _INT64_SAFE else object


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise ValueError(f"modulus {self.p!r} is not prime")

    def __call__(self, value: int) -> "FieldElem":
        return FieldElem(value % self.p, self)

    def zero(self) -> "FieldElem":
        return FieldElem(0, self)

    def one(self) -> "FieldElem":
        return FieldElem(1 % self.p, self)

    def elements(self):
        return [FieldElem(v, self) for v in range(self.p)]

    def sample(self, rng: random.Random, nonzero: bool = False) -> "FieldElem":
        lo = 1 if nonzero else 0
        return FieldElem(rng.randrange(lo, self.p), self)


@dataclass(frozen=True)
class FieldElem:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"{self.value} is not reduced mod {self.field.p}")

    @property
    def p(self) -> int:
        return self.field.p

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field.p != self.field.p:
                raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def _make(self, v: int) -> "FieldElem":
        return FieldElem(v % self.p, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._make(self.value * inv_mod(o, self.p))

    def __pow__(self, e: int):
        if e < 0:
            return field_inverse(self) ** (-e)
        return self._make(pow(self.value, e, self.p))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def field_inverse(a: FieldElem) -> FieldElem:
    return FieldElem(inv_mod(a.value, a.p), a.field)


class Matrix:
    """Dense matrix over F_p.  Immutable: the backing array is read-only."""

    __slots__ = ("_a", "p")

    def __init__(self, entries, p: int):
        a = np.array(entries, dtype=_dtype(p))
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if a.ndim != 2:
            raise ValueError("matrix entries must be two-dimensional")
        a = a % p
        a.setflags(write=False)
        self._a = a
        self.p = p

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "Matrix":
        return cls(np.zeros((rows, cols), dtype=_dtype(p)), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "Matrix":
        return cls(np.eye(n, dtype=_dtype(p)), p)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[dict[int, int]], cols: int, p: int) -> "Matrix":
        a = np.zeros((len(rows), cols), dtype=_dtype(p))
        for i, row in enumerate(rows):
            for j, v in row.items():
                if not 0 <= j < cols:
                    raise IndexError(f"column {j} out of range for {cols} columns")
                a[i, j] = v
        return cls(a, p)

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    def array(self) -> np.ndarray:
        """Writable copy of the entries."""
        return self._a.copy()

    def entry(self, i: int, j: int) -> FieldElem:
        return FieldElem(int(self._a[i, j]), PrimeField(self.p))

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._a]

    def _check(self, other: "Matrix"):
        if other.p != self.p:
            raise ModulusMismatch(f"F_{self.p} vs F_{other.p}")

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            return Matrix(_matmul_mod(self._a, other._a, self.p), self.p)
        v = np.array([int(x) for x in other], dtype=_dtype(self.p)).reshape(-1, 1)
        out = _matmul_mod(self._a, v, self.p)
        return tuple(int(x) for x in out[:, 0])

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self._a + other._a, self.p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self._a - other._a, self.p)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.all(self._a == other._a))

    def __hash__(self):
        return hash((self.p, self.shape, tuple(map(int, self._a.ravel()))))

    def transpose(self) -> "Matrix":
        return Matrix(self._a.T, self.p)

    T = property(transpose)

    def __repr__(self):
        return f"Matrix(F_{self.p}, {self.tolist()})"


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.dtype == object or a.shape[1] * (p - 1) ** 2 >= 2**63:
        a_o = a.astype(object)
        out = a_o.dot(b.astype(object)) % p
        return out.astype(_dtype(p))
    return (a @ b) % p


def _echelon(a: np.ndarray, p: int, stop_at_free: bool = False):
    """Forward elimination in place, leftmost pivots first.

    Returns ``(pivot_cols, first_free)``.  Pivot rows are normalized to a
    leading 1 and occupy rows ``0..len(pivot_cols)-1``.  With
    ``stop_at_free`` elimination stops at the first column lacking a pivot.
    """
    nrows, ncols = a.shape
    pivots: list[int] = []
    first_free = None
    r = 0
    for c in range(ncols):
        if r == nrows:
            if first_free is None:
                first_free = c
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            if first_free is None:
                first_free = c
                if stop_at_free:
                    break
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = inv_mod(int(a[r, c]), p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            factors = a[below, c].reshape(-1, 1)
            a[np.ix_(below, range(c, ncols))] = (a[below, c:] - factors * a[r, c:]) % p
        pivots.append(c)
        r += 1
    return pivots, first_free


def rank(M: Matrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    a = M.array()
    pivots, _ = _echelon(a, M.p)
    return len(pivots)


def row_reduce(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and its pivot columns."""
    a = M.array()
    if a.size == 0:
        return Matrix(a, M.p), []
    pivots, _ = _echelon(a, M.p)
    p = M.p
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        above = np.flatnonzero(a[:i, c])
        if above.size:
            factors = a[above, c].reshape(-1, 1)
            a[above, c:] = (a[above, c:] - factors * a[i, c:]) % p
    return Matrix(a[: len(pivots)], p), pivots


def nullspace_vector(M: Matrix) -> tuple[int, ...]:
    """Deterministic nonzero solution of M v = 0.

    The lowest-index free variable is set to 1 and every other free variable
    to 0; pivot variables follow by back substitution.  Since all columns
    before the first free one are pivots, elimination stops there.
    """
    if M.cols < 1:
        raise ValueError("nullspace_vector needs at least one column")
    p = M.p
    if M.rows == 0:
        return (1,) + (0,) * (M.cols - 1)
    a = M.array()
    pivots, f = _echelon(a, p, stop_at_free=True)
    if f is None:
        raise TrivialNullspace(f"{M.rows}x{M.cols} matrix has full column rank")
    v = [0] * M.cols
    v[f] = 1
    # every column < f is a pivot, and row i has its pivot in column i
    for i in range(f - 1, -1, -1):
        s = int(a[i, f])
        for k in range(i + 1, f):
            if v[k]:
                s += int(a[i, k]) * v[k]
        v[i] = (-s) % p
    return tuple(v)


def nullspace_basis(M: Matrix) -> list[tuple[int, ...]]:
    """One basis vector per free column, each following the nullspace_vector rule."""
    R, pivots = row_reduce(M)
    p = M.p
    free = [c for c in range(M.cols) if c not in set(pivots)]
    rr = R.array()
    basis = []
    for f in free:
        v = [0] * M.cols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-int(rr[i, f])) % p
        basis.append(tuple(v))
    return basis


def matrix_inverse(M: Matrix) -> Matrix:
    n = M.rows
    if M.cols != n:
        raise ValueError("only square matrices are invertible")
    aug = np.concatenate([M.array(), np.eye(n, dtype=M.array().dtype)], axis=1)
    R, pivots = row_reduce(Matrix(aug, M.p))
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroInverse("matrix is singular")
    return Matrix(R.array()[:, n:], M.p)


def vectors_rank(vectors: Iterable[Sequence[int]], p: int) -> int:
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    return rank(Matrix(rows, p))
