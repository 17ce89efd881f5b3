"""Sparse multivariate polynomials over F_p.

Polynomials are formal: two polynomials are equal iff their coefficient maps
agree, even when deg >= p lets a nonzero polynomial vanish as a function.
Affine substitution (pullback, shifting) expands into a dense coefficient
cube by multivariate Horner evaluation and converts back to sparse form.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .geometry import AffineMap, Point

Exp = tuple[int, ...]

MAX_EXPONENT = 2**31 - 1


class ZeroPolynomial(ValueError):
    """Raised by operations undefined on the zero polynomial."""


def _check_exp(e: Exp) -> Exp:
    for x in e:
        if x < 0 or x > MAX_EXPONENT:
            raise OverflowError(f"exponent {x} outside [0, {MAX_EXPONENT}]")
    return e


class SparsePoly:
    """Map exponent vector -> nonzero residue mod p."""

    __slots__ = ("terms", "nvars", "p", "_hash")

    def __init__(self, terms: Mapping[Exp, int] | Iterable[tuple[Exp, int]], nvars: int, p: int):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exp, int] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            acc[e] = (acc.get(e, 0) + int(c)) % p
        self.terms = {_check_exp(e): c for e, c in acc.items() if c}
        self.nvars = nvars
        self.p = p
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, nvars: int, p: int) -> "SparsePoly":
        return cls({}, nvars, p)

    @classmethod
    def constant(cls, c: int, nvars: int, p: int) -> "SparsePoly":
        return cls({(0,) * nvars: c}, nvars, p)

    @classmethod
    def var(cls, i: int, nvars: int, p: int) -> "SparsePoly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars, p)

    @classmethod
    def monomial(cls, e: Sequence[int], nvars: int, p: int, c: int = 1) -> "SparsePoly":
        return cls({tuple(e): c}, nvars, p)

    @classmethod
    def linear_form(cls, const: int, coeffs: Sequence[int], p: int) -> "SparsePoly":
        n = len(coeffs)
        t = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            t[tuple(e)] = c
        return cls(t, n, p)

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def coefficient(self, e: Sequence[int]) -> int:
        return self.terms.get(tuple(e), 0)

    def depends_on(self, i: int) -> bool:
        return any(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, k: int) -> "SparsePoly":
        return SparsePoly({e: c for e, c in self.terms.items() if sum(e) == k}, self.nvars, self.p)

    def evaluate(self, x: Sequence[int]) -> int:
        p = self.p
        total = 0
        for e, c in self.terms.items():
            t = c
            for xi, ei in zip(x, e):
                if ei:
                    t = t * pow(int(xi), ei, p) % p
            total += t
        return total % p

    def __call__(self, x) -> int:
        return self.evaluate(x.coords if isinstance(x, Point) else x)

    # arithmetic
    def _same(self, other: "SparsePoly"):
        if other.p != self.p or other.nvars != self.nvars:
            raise ValueError("polynomials live in different rings")

    def _lift(self, other) -> "SparsePoly":
        if isinstance(other, int):
            return SparsePoly.constant(other, self.nvars, self.p)
        self._same(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return SparsePoly(t, self.nvars, self.p)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly({e: -c for e, c in self.terms.items()}, self.nvars, self.p)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return SparsePoly({e: c * other for e, c in self.terms.items()}, self.nvars, self.p)
        self._same(other)
        t: dict[Exp, int] = defaultdict(int)
        p = self.p
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = (t[e] + c1 * c2) % p
        return SparsePoly(t, self.nvars, p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = SparsePoly.constant(1, self.nvars, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = SparsePoly.constant(other, self.nvars, self.p)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.p == other.p and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) + f" (mod {self.p})"

    def to_json(self) -> list:
        return [[list(e), c] for e, c in sorted(self.terms.items())]


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial, coefficients low degree first, trailing zeros trimmed."""

    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self):
        c = [int(x) % self.p for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % self.p
        return acc

    def divide_linear(self, a: int) -> tuple["UniPoly", int]:
        """Synthetic division by (x - a): returns (quotient, remainder)."""
        if not self.coeffs:
            return self, 0
        p = self.p
        out = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % p
            out.append(acc)
        rem = out.pop()
        return UniPoly(tuple(reversed(out)), p), rem

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(tuple(out), self.p)

    @classmethod
    def from_roots(cls, roots: Iterable[int], p: int, lead: int = 1) -> "UniPoly":
        f = cls((lead,), p)
        for r in roots:
            f = f * cls((-r, 1), p)
        return f


def root_multiplicity(f: UniPoly, a: int) -> int:
    """Largest m with (x - a)^m dividing f."""
    if f.is_zero():
        raise ZeroPolynomial("root multiplicity of the zero polynomial")
    m = 0
    while True:
        q, r = f.divide_linear(a % f.p)
        if r:
            return m
        m += 1
        f = q


# --- affine substitution ---------------------------------------------------

AffineForm = tuple[int, Sequence[int]]  # (constant, linear coefficients)


def _dense_dtype(p: int, m: int):
    return np.int64 if (m + 2) * p * p < 2**62 else object


def _mul_affine(A: np.ndarray, form: AffineForm, p: int) -> np.ndarray:
    c0, cs = form
    R = A * c0
    m = A.ndim
    for k, ck in enumerate(cs):
        if ck:
            dst = [slice(None)] * m
            src = [slice(None)] * m
            dst[k] = slice(1, None)
            src[k] = slice(0, -1)
            R[tuple(dst)] += ck * A[tuple(src)]
    return R % p


def substitute(Q: SparsePoly, forms: Sequence[AffineForm], nvars_out: int) -> SparsePoly:
    """Q(l_1(y), ..., l_n(y)) for affine forms l_i in ``nvars_out`` variables."""
    if len(forms) != Q.nvars:
        raise ValueError("need one affine form per variable")
    p = Q.p
    if Q.is_zero():
        return SparsePoly.zero(nvars_out, p)
    D = Q.degree()
    shape = (D + 1,) * nvars_out
    dtype = _dense_dtype(p, nvars_out)
    forms = [(int(c) % p, tuple(int(x) % p for x in cs)) for c, cs in forms]
    n = Q.nvars

    def horner(terms: dict[Exp, int], var: int) -> np.ndarray:
        if var == n:
            out = np.zeros(shape, dtype=dtype)
            out[(0,) * nvars_out] = terms[()]
            return out
        groups: dict[int, dict[Exp, int]] = defaultdict(dict)
        for e, c in terms.items():
            groups[e[0]][e[1:]] = c
        kmax = max(groups)
        acc = horner(groups[kmax], var + 1)
        for k in range(kmax - 1, -1, -1):
            acc = _mul_affine(acc, forms[var], p)
            if k in groups:
                acc = (acc + horner(groups[k], var + 1)) % p
        return acc

    dense = horner(dict(Q.terms), 0)
    idx = np.argwhere(dense != 0)
    return SparsePoly(
        {tuple(int(x) for x in i): int(dense[tuple(i)]) for i in idx}, nvars_out, p
    )


def _map_forms(T: AffineMap) -> list[AffineForm]:
    return [(s, row) for row, s in zip(T.rows, T.shift)]


def compose_affine(Q: SparsePoly, T: AffineMap) -> SparsePoly:
    """Q o T."""
    return substitute(Q, _map_forms(T), T.d)


def pullback(Q: SparsePoly, T: AffineMap) -> SparsePoly:
    """(T^{-1})^* Q = Q o T^{-1}: the polynomial Q written in T's coordinates."""
    return compose_affine(Q, T.inverse())


def shift_to_point(Q: SparsePoly, P: Point | Sequence[int]) -> SparsePoly:
    """Q(x + P), expanded formally."""
    coords = P.coords if isinstance(P, Point) else tuple(P)
    n = Q.nvars
    forms = [(coords[i], tuple(int(i == j) for j in range(n))) for i in range(n)]
    return substitute(Q, forms, n)


def axis_decomposition(Q: SparsePoly) -> dict[Exp, UniPoly]:
    """Q = sum_alpha x^(alpha, 0) f_alpha(x_d); only nonzero f_alpha are returned."""
    groups: dict[Exp, dict[int, int]] = defaultdict(dict)
    for e, c in Q.terms.items():
        groups[e[:-1]][e[-1]] = c
    out = {}
    for alpha, cs in groups.items():
        coeffs = [0] * (max(cs) + 1)
        for k, c in cs.items():
            coeffs[k] = c
        out[alpha] = UniPoly(tuple(coeffs), Q.p)
    return out


def reassemble(decomp: Mapping[Exp, UniPoly], nvars: int, p: int) -> SparsePoly:
    terms = {}
    for alpha, f in decomp.items():
        for k, c in enumerate(f.coeffs):
            if c:
                terms[tuple(alpha) + (k,)] = c
    return SparsePoly(terms, nvars, p)


def lowest_homogeneous(Q: SparsePoly) -> SparsePoly:
    if Q.is_zero():
        raise ZeroPolynomial("zero polynomial has no lowest homogeneous part")
    k = min(sum(e) for e in Q.terms)
    return Q.homogeneous_part(k)


def monomials_up_to(D: int, n: int) -> list[Exp]:
    """All exponent vectors of total degree <= D, graded, then lex with x_1 highest."""
    out: list[Exp] = []

    def rec(prefix: list[int], remaining: int, k: int):
        if k == n - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + [a], remaining - a, k + 1)

    for deg in range(D + 1):
        if n == 0:
            out.append(())
            break
        rec([], deg, 0)
    return out


def random_poly(
    nvars: int,
    p: int,
    max_degree: int,
    rng: random.Random,
    nterms: int = 6,
    nonzero: bool = True,
) -> SparsePoly:
    mons = monomials_up_to(max_degree, nvars)
    while True:
        picks = rng.sample(mons, min(nterms, len(mons)))
        Q = SparsePoly({e: rng.randrange(1, p) for e in picks}, nvars, p)
        if Q or not nonzero:
            return Q


def poly_from_roots(roots: Iterable[int], var: int, nvars: int, p: int) -> SparsePoly:
    """prod_i (x_var - a_i)."""
    out = SparsePoly.constant(1, nvars, p)
    x = SparsePoly.var(var, nvars, p)
    for a in roots:
        out = out * (x - a)
    return out

