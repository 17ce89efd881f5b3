"""Points, directions, lines, subspaces and affine frames in F_p^d.

Everything is stored in a canonical form so that equal geometric objects
compare equal as values: directions have leading coordinate 1, a line's base
point is zero at the direction's pivot, subspaces are kept as reduced row
echelon bases.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .algebra_core import Matrix, inv_mod, matrix_inverse, rank


class ZeroDirection(ValueError):
    pass


class NotIncident(ValueError):
    pass


class DependentDirections(ValueError):
    pass


Vec = tuple[int, ...]


def _vec(v: Sequence[int], p: int) -> Vec:
    return tuple(int(x) % p for x in v)


def rref(rows: Sequence[Sequence[int]], p: int) -> list[Vec]:
    """Reduced row echelon basis of the row span (pure Python, small inputs)."""
    m = [list(r) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    out_rows = 0
    for c in range(ncols):
        piv = next((i for i in range(out_rows, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[out_rows], m[piv] = m[piv], m[out_rows]
        row = m[out_rows]
        inv = inv_mod(row[c], p)
        row[:] = [(x * inv) % p for x in row]
        for i in range(len(m)):
            if i != out_rows and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], row)]
        out_rows += 1
        if out_rows == len(m):
            break
    return [tuple(r) for r in m[:out_rows]]


def span_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p))


@dataclass(frozen=True, order=True)
class Point:
    coords: Vec
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coords", _vec(self.coords, self.p))

    @property
    def d(self) -> int:
        return len(self.coords)

    @classmethod
    def origin(cls, d: int, p: int) -> "Point":
        return cls((0,) * d, p)

    def __add__(self, v: Sequence[int]) -> "Point":
        return Point(tuple(a + b for a, b in zip(self.coords, v)), self.p)

    def __sub__(self, other) -> Vec:
        o = other.coords if isinstance(other, Point) else other
        return _vec([a - b for a, b in zip(self.coords, o)], self.p)

    def __neg__(self) -> "Point":
        return Point(tuple(-a for a in self.coords), self.p)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return f"Point{self.coords}"


def normalize_direction(v: Sequence[int], p: int) -> Vec:
    v = _vec(v, p)
    lead = next((x for x in v if x), 0)
    if lead == 0:
        raise ZeroDirection("direction vector is zero")
    inv = inv_mod(lead, p)
    return tuple((x * inv) % p for x in v)


@dataclass(frozen=True, order=True)
class Direction:
    vec: Vec
    p: int

    def __post_init__(self):
        object.__setattr__(self, "vec", normalize_direction(self.vec, self.p))

    @property
    def pivot(self) -> int:
        return next(i for i, x in enumerate(self.vec) if x)

    def __iter__(self):
        return iter(self.vec)

    def __repr__(self):
        return f"Direction{self.vec}"


@dataclass(frozen=True, order=True)
class Line:
    """Line ``base + t * dir``; base is zeroed at the direction's pivot."""

    base: Point
    dir: Direction

    def __post_init__(self):
        k = self.dir.pivot
        t = self.base.coords[k]
        if t:
            object.__setattr__(
                self, "base", self.base + tuple(-t * x for x in self.dir.vec)
            )

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def d(self) -> int:
        return self.base.d

    def point_at(self, t: int) -> Point:
        return self.base + tuple(t * x for x in self.dir.vec)

    def parameter_of(self, P: Point) -> int:
        """The t with P = base + t*dir (P must lie on the line)."""
        return P.coords[self.dir.pivot]

    def __repr__(self):
        return f"Line(base={self.base.coords}, dir={self.dir.vec})"


def canonicalize_line(point: Point, raw_dir: Sequence[int]) -> Line:
    return Line(point, Direction(tuple(raw_dir), point.p))


def axis_line(i: int, d: int, p: int, through: Point | None = None) -> Line:
    """Line parallel to the i-th coordinate axis (0-based), through the origin by default."""
    e = [0] * d
    e[i] = 1
    return canonicalize_line(through or Point.origin(d, p), e)


def line_contains(l: Line, P: Point) -> bool:
    diff = P - l.base
    t = diff[l.dir.pivot]
    return all((x - t * y) % l.p == 0 for x, y in zip(diff, l.dir.vec))


def enumerate_line_points(l: Line) -> list[Point]:
    return [l.point_at(t) for t in range(l.p)]


def intersect_lines(l1: Line, l2: Line) -> Point | None:
    """Unique common point of two distinct lines, or None."""
    if l1 == l2:
        raise ValueError("identical lines meet everywhere")
    if l1.dir == l2.dir:
        return None
    p = l1.p
    # base1 + s*u = base2 + t*v  <=>  s*u - t*v = base2 - base1
    u, v = l1.dir.vec, l2.dir.vec
    rhs = l2.base - l1.base
    rows = [[u[i], (-v[i]) % p, rhs[i]] for i in range(l1.d)]
    red = rref(rows, p)
    if any(r[0] == 0 and r[1] == 0 and r[2] for r in red):
        return None
    s = next(r[2] for r in red if r[0] == 1)
    return l1.point_at(s)


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of F_p^d held by its reduced row echelon basis."""

    basis: tuple[Vec, ...]
    d: int
    p: int

    @classmethod
    def span(cls, vectors: Sequence[Sequence[int]], d: int, p: int) -> "Subspace":
        return cls(tuple(rref([_vec(v, p) for v in vectors], p)), d, p)

    @classmethod
    def zero(cls, d: int, p: int) -> "Subspace":
        return cls((), d, p)

    @classmethod
    def whole(cls, d: int, p: int) -> "Subspace":
        return cls.span([tuple(int(i == j) for j in range(d)) for i in range(d)], d, p)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        v = _vec(v, self.p)
        if not any(v):
            return True
        return span_rank(list(self.basis) + [v], self.p) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def extend(self, v: Sequence[int]) -> "Subspace":
        return Subspace.span(list(self.basis) + [tuple(v)], self.d, self.p)

    def key(self) -> tuple[int, ...]:
        return tuple(x for row in self.basis for x in row)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={list(self.basis)})"


def parallel_to(l: Line, V: Subspace) -> bool:
    return V.contains(l.dir.vec)


@dataclass(frozen=True, eq=False)
class AffineMap:
    """x -> linear @ x + shift, with invertible linear part."""

    linear: Matrix
    shift: Vec

    def __post_init__(self):
        d = len(self.shift)
        if self.linear.shape != (d, d):
            raise ValueError("linear part must be d x d")
        if rank(self.linear) != d:
            raise ValueError("affine map is not invertible")
        object.__setattr__(self, "shift", _vec(self.shift, self.p))
        object.__setattr__(self, "_rows", tuple(tuple(r) for r in self.linear.tolist()))

    @property
    def p(self) -> int:
        return self.linear.p

    @property
    def d(self) -> int:
        return len(self.shift)

    @property
    def rows(self) -> tuple[Vec, ...]:
        return self._rows

    @classmethod
    def identity(cls, d: int, p: int) -> "AffineMap":
        return cls(Matrix.identity(d, p), (0,) * d)

    @classmethod
    def translation(cls, v: Sequence[int], p: int) -> "AffineMap":
        return cls(Matrix.identity(len(v), p), tuple(v))

    def apply_vec(self, x: Sequence[int]) -> Vec:
        return tuple(
            (sum(a * b for a, b in zip(row, x)) + s) % self.p
            for row, s in zip(self._rows, self.shift)
        )

    def linear_apply(self, x: Sequence[int]) -> Vec:
        return tuple(sum(a * b for a, b in zip(row, x)) % self.p for row in self._rows)

    def __call__(self, P: Point) -> Point:
        return Point(self.apply_vec(P.coords), self.p)

    def image_line(self, l: Line) -> Line:
        return canonicalize_line(self(l.base), self.linear_apply(l.dir.vec))

    def inverse(self) -> "AffineMap":
        inv = matrix_inverse(self.linear)
        shift = inv @ self.shift
        return AffineMap(inv, tuple(-x for x in shift))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self o inner."""
        lin = self.linear @ inner.linear
        shift = self.apply_vec(inner.shift)
        return AffineMap(lin, shift)

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return self.linear == other.linear and self.shift == other.shift

    def __hash__(self):
        return hash((self._rows, self.shift))

    def __repr__(self):
        return f"AffineMap(linear={[list(r) for r in self._rows]}, shift={self.shift})"


def _from_columns(cols: Sequence[Sequence[int]], p: int) -> Matrix:
    d = len(cols)
    return Matrix([[cols[j][i] for j in range(d)] for i in range(d)], p)


def map_sending_columns(origin: Point, columns: Sequence[Sequence[int]]) -> AffineMap:
    """Affine T with T(origin) = 0 and T(origin + c_i) = e_i for the given columns."""
    p = origin.p
    D = _from_columns(columns, p)
    if rank(D) != len(columns):
        raise DependentDirections("frame directions are linearly dependent")
    A = matrix_inverse(D)
    shift = A @ origin.coords
    return AffineMap(A, tuple(-x for x in shift))


def frame_transform(P: Point, lines: Sequence[Line]) -> AffineMap:
    """Send P to the origin and lines[i] onto the i-th coordinate axis."""
    if len(lines) != P.d:
        raise ValueError(f"need exactly {P.d} lines")
    for l in lines:
        if not line_contains(l, P):
            raise NotIncident(f"{P} is not on {l}")
    return map_sending_columns(P, [l.dir.vec for l in lines])


def complete_basis(first: Sequence[Vec], d: int, p: int) -> list[Vec]:
    """Greedily extend independent vectors with standard basis vectors in index order."""
    out = list(first)
    for i in range(d):
        if len(out) == d:
            break
        e = tuple(int(i == j) for j in range(d))
        if span_rank(out + [e], p) > len(out):
            out.append(e)
    return out


def axis_transform(P: Point, l: Line) -> tuple[AffineMap, int]:
    """Frame sending l to the x_d-axis; returns (T, p_T) with T(P) = (0,...,0,p_T).

    The other basis vectors are standard vectors chosen greedily in index
    order; dir(l) is placed last and the line's base point goes to 0.
    """
    if not line_contains(l, P):
        raise NotIncident(f"{P} is not on {l}")
    others = complete_basis([l.dir.vec], l.d, l.p)[1:]
    T = map_sending_columns(l.base, others + [l.dir.vec])
    return T, l.parameter_of(P)


def random_axis_transform(l: Line, rng: random.Random) -> AffineMap:
    """A uniformly random affine map sending l onto the x_d-axis."""
    p, d = l.p, l.d
    origin = l.point_at(rng.randrange(p))
    lam = rng.randrange(1, p)
    last = tuple((lam * x) % p for x in l.dir.vec)
    while True:
        cols = [tuple(rng.randrange(p) for _ in range(d)) for _ in range(d - 1)]
        if span_rank(cols + [last], p) == d:
            return map_sending_columns(origin, cols + [last])


def random_frame(P: Point, lines: Sequence[Line], rng: random.Random) -> AffineMap:
    """Random affine map sending P to 0 and lines[i] onto the i-th axis (scalings vary)."""
    p = P.p
    cols = [tuple((rng.randrange(1, p) * x) % p for x in l.dir.vec) for l in lines]
    for l in lines:
        if not line_contains(l, P):
            raise NotIncident(f"{P} is not on {l}")
    return map_sending_columns(P, cols)


def random_invertible(d: int, p: int, rng: random.Random) -> Matrix:
    while True:
        M = Matrix([[rng.randrange(p) for _ in range(d)] for _ in range(d)], p)
        if rank(M) == d:
            return M


def random_affine(d: int, p: int, rng: random.Random) -> AffineMap:
    return AffineMap(random_invertible(d, p, rng), tuple(rng.randrange(p) for _ in range(d)))


def random_line(d: int, p: int, rng: random.Random, through: Point | None = None) -> Line:
    while True:
        v = [rng.randrange(p) for _ in range(d)]
        if any(v):
            break
    base = through or Point(tuple(rng.randrange(p) for _ in range(d)), p)
    return canonicalize_line(base, v)
