"""Brute-force reference implementations.

These deliberately avoid the optimized code paths: ranks come from a
list-based elimination written here, incidence is tested by scanning the
line's parameter, subspaces are enumerated in full, and restrictions to a
line are expanded term by term.
"""
from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence

from .geometry import Line, Point, random_axis_transform
from .incidence import Flag, LineSystem
from .multiplicity import pl_multiplicity
from .polynomials import SparsePoly, ZeroPolynomial


class TooLarge(ValueError):
    pass


class InvarianceViolation(AssertionError):
    pass


def naive_rank(vectors: Sequence[Sequence[int]], p: int) -> int:
    m = [[x % p for x in v] for v in vectors]
    if not m:
        return 0
    r = 0
    for c in range(len(m[0])):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] * inv % p
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
    return r


def _on_line(l: Line, P: Point) -> int | None:
    """Parameter t with base + t*dir = P, by scanning all t."""
    p = l.p
    for t in range(p):
        if all((b + t * v - x) % p == 0 for b, v, x in zip(l.base.coords, l.dir.vec, P.coords)):
            return t
    return None


def all_subspaces(k: int, d: int, p: int) -> Iterable[list[tuple[int, ...]]]:
    """Every k-dim subspace of F_p^d, as a list of basis vectors, via echelon patterns."""
    if k == 0:
        yield []
        return
    for pivots in itertools.combinations(range(d), k):
        slots = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, d)
            if c not in pivots
        ]
        for values in itertools.product(range(p), repeat=len(slots)):
            rows = [[0] * d for _ in range(k)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, c), v in zip(slots, values):
                rows[r][c] = v
            yield [tuple(row) for row in rows]


def _in_span(v: Sequence[int], basis: Sequence[Sequence[int]], p: int) -> bool:
    return naive_rank(list(basis) + [v], p) == naive_rank(basis, p)


def _incident_weights(L: LineSystem, P: Point) -> list[tuple[tuple[int, ...], int]]:
    return [(e.line.dir.vec, e.mult) for e in L.entries if _on_line(e.line, P) is not None]


def _guard(p: int, d: int):
    if p > 5 or d > 4:
        raise TooLarge(f"exhaustive subspace enumeration refused for p={p}, d={d}")


def oracle_minima(L: LineSystem, P: Point, j: int) -> int:
    """r_j(P, L) as a minimum over every (j-1)-dim subspace of F_p^d."""
    _guard(L.p, L.d)
    inc = _incident_weights(L, P)
    best = None
    for V in all_subspaces(j - 1, L.d, L.p):
        count = sum(w for v, w in inc if not _in_span(v, V, L.p))
        best = count if best is None else min(best, count)
    return best if best is not None else 0


def _restriction(Q: SparsePoly, l: Line) -> list[int]:
    """Coefficients (low first) of t -> Q(base + t*dir)."""
    p = Q.p
    out = [0]
    for e, c in Q.terms.items():
        poly = [c]
        for b, v, k in zip(l.base.coords, l.dir.vec, e):
            for _ in range(k):
                nxt = [0] * (len(poly) + 1)
                for i, a in enumerate(poly):
                    nxt[i] = (nxt[i] + a * b) % p
                    nxt[i + 1] = (nxt[i + 1] + a * v) % p
                poly = nxt
        if len(poly) > len(out):
            out += [0] * (len(poly) - len(out))
        for i, a in enumerate(poly):
            out[i] = (out[i] + a) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def oracle_classical_multiplicity(Q: SparsePoly, P: Point, l: Line) -> int | None:
    """Root multiplicity of P's parameter in Q restricted to l; None when the restriction is 0."""
    if Q.is_zero():
        raise ZeroPolynomial("classical multiplicity needs a nonzero polynomial")
    t0 = _on_line(l, P)
    if t0 is None:
        raise ValueError(f"{P} is not on {l}")
    f = _restriction(Q, l)
    if not f:
        return None
    p = Q.p
    m = 0
    while True:
        # divide by (t - t0)
        q = [0] * (len(f) - 1)
        acc = 0
        for i in range(len(f) - 1, -1, -1):
            acc = (acc * t0 + f[i]) % p
            if i:
                q[i - 1] = acc
        if acc:
            return m
        m += 1
        f = q
        while f and f[-1] == 0:
            f.pop()


def oracle_joint_tuples(L: LineSystem, P: Point, bound: int = 12) -> int:
    """M(P) by listing ordered d-tuples of line copies and testing their rank."""
    copies = []
    for v, w in _incident_weights(L, P):
        copies += [v] * w
    if len(copies) > bound:
        raise TooLarge(f"{len(copies)} incident line copies exceed the bound {bound}")
    return sum(
        1
        for tup in itertools.permutations(range(len(copies)), L.d)
        if naive_rank([copies[i] for i in tup], L.p) == L.d
    )


def oracle_multijoint_tuples(L: LineSystem, P: Point) -> int:
    per = []
    for i in range(1, L.d + 1):
        fam = []
        for e in L.entries:
            if e.family == i and _on_line(e.line, P) is not None:
                fam += [e.line.dir.vec] * e.mult
        per.append(fam)
    return sum(1 for tup in itertools.product(*per) if naive_rank(list(tup), L.p) == L.d)


def oracle_invariance(
    Q: SparsePoly,
    P: Point,
    l: Line,
    k: int,
    rng: random.Random | None = None,
    transforms: Sequence | None = None,
) -> int:
    """m_Q(P, l) under k random axis frames; raises if two frames disagree."""
    if Q.is_zero():
        raise ZeroPolynomial("invariance check needs a nonzero polynomial")
    if k < 2:
        raise ValueError("k must be at least 2")
    rng = rng or random.Random(0)
    frames = list(transforms) if transforms is not None else [random_axis_transform(l, rng) for _ in range(k)]
    values = {pl_multiplicity(Q, P, l, transform=T).value for T in frames}
    if len(values) != 1:
        raise InvarianceViolation(f"frame-dependent multiplicities {sorted(values)}")
    return values.pop()


def oracle_flag_check(L: LineSystem, flag: Flag) -> dict[str, bool]:
    """Properties (a), (b) with constant d-j+1, and (c) by full subspace enumeration."""
    d, p = L.d, L.p
    _guard(p, d)
    P = flag.anchor
    inc = _incident_weights(L, P)
    spaces = [list(V.basis) for V in flag.subspaces] + [[tuple(int(i == j) for j in range(d)) for i in range(d)]]
    ok_a = all(naive_rank(spaces[j - 1], p) == j - 1 for j in range(1, d + 1))
    ok_nest = all(
        all(_in_span(v, spaces[j], p) for v in spaces[j - 1]) for j in range(1, d + 1)
    )
    r = [oracle_minima(L, P, j) for j in range(1, d + 1)]
    ok_b = True
    for j in range(1, d + 1):
        not_par = sum(w for v, w in inc if not _in_span(v, spaces[j - 1], p))
        ok_b &= not_par == flag.witness_counts[j - 1] and not_par <= (d - j + 1) * r[j - 1]
    ok_c = True
    for j in range(1, d + 1):
        W = spaces[j]  # V_{j+1}
        here = sum(w for v, w in inc if _in_span(v, spaces[j - 1], p))
        for coords in all_subspaces(j - 1, len(W), p):
            V = [
                tuple(sum(c * w[i] for c, w in zip(row, W)) % p for i in range(d))
                for row in coords
            ]
            par = sum(w for v, w in inc if _in_span(v, V, p))
            if par > here:
                ok_c = False
    ok_trans = all(
        _in_span(flag.transversals[j - 1], spaces[j], p)
        and not _in_span(flag.transversals[j - 1], spaces[j - 1], p)
        for j in range(1, d + 1)
    )
    return {"a": ok_a and ok_nest, "b": ok_b, "c": ok_c, "transversals": ok_trans}
