"""Seeded generators for line systems."""
from __future__ import annotations

import itertools
import random
from typing import Sequence

from .geometry import Line, Point, axis_line, canonicalize_line, random_line, span_rank
from .incidence import LineEntry, LineSystem
from .algebra_core import PrimeField


class BadParams(ValueError):
    pass


def _check_space(p: int, d: int):
    try:
        PrimeField(p)
    except ValueError as exc:
        raise BadParams(str(exc)) from None
    if d < 2:
        raise BadParams("dimension must be at least 2")


def axes(d: int, p: int) -> LineSystem:
    _check_space(p, d)
    return LineSystem.from_lines([axis_line(i, d, p) for i in range(d)], d, p)


def grid(p: int, d: int, k: int | None = None) -> LineSystem:
    """All axis-parallel lines through {0..k-1}^d; d * k^(d-1) lines."""
    _check_space(p, d)
    k = p if k is None else k
    if not 1 <= k <= p:
        raise BadParams(f"grid side must lie in [1, {p}]")
    lines = []
    for i in range(d):
        for rest in itertools.product(range(k), repeat=d - 1):
            coords = list(rest)
            coords.insert(i, 0)
            lines.append(axis_line(i, d, p, Point(tuple(coords), p)))
    return LineSystem.from_lines(lines, d, p)


def _independent_dirs(d: int, p: int, rng: random.Random) -> list[tuple[int, ...]]:
    while True:
        dirs = [tuple(rng.randrange(p) for _ in range(d)) for _ in range(d)]
        if span_rank(dirs, p) == d:
            return dirs


def _random_point(d: int, p: int, rng: random.Random) -> Point:
    return Point(tuple(rng.randrange(p) for _ in range(d)), p)


def random_lines(
    p: int,
    d: int,
    n: int,
    seed: int = 0,
    planted: int = 0,
    max_mult: int = 1,
) -> LineSystem:
    """n distinct lines; ``planted`` of the points get d concurrent independent lines."""
    _check_space(p, d)
    if n < 1:
        raise BadParams("need at least one line")
    if planted * d > n:
        raise BadParams(f"{planted} planted joints need {planted * d} lines, only {n} requested")
    rng = random.Random(seed)
    chosen: list[Line] = []
    seen: set[Line] = set()

    def add(l: Line) -> bool:
        if l in seen:
            return False
        seen.add(l)
        chosen.append(l)
        return True

    for _ in range(planted):
        P = _random_point(d, p, rng)
        for v in _independent_dirs(d, p, rng):
            add(canonicalize_line(P, v))
    attempts = 0
    while len(chosen) < n:
        attempts += 1
        if attempts > 100 * n + 1000:
            raise BadParams("could not draw enough distinct lines")
        add(random_line(d, p, rng))
    entries = tuple(LineEntry(l, rng.randint(1, max_mult)) for l in chosen[:n])
    return LineSystem(entries, d, p)


def families_random(
    p: int,
    d: int,
    sizes: Sequence[int],
    seed: int = 0,
    planted: int = 1,
) -> LineSystem:
    """d labelled families; each planted point gets one line from every family."""
    _check_space(p, d)
    if len(sizes) != d or any(s < 1 for s in sizes):
        raise BadParams(f"need {d} positive family sizes")
    if planted > min(sizes):
        raise BadParams("more planted multijoints than the smallest family allows")
    rng = random.Random(seed)
    fams: list[list[Line]] = [[] for _ in range(d)]
    for _ in range(planted):
        P = _random_point(d, p, rng)
        for _ in range(1000):
            dirs = _independent_dirs(d, p, rng)
            cand = [canonicalize_line(P, v) for v in dirs]
            if all(c not in fams[i] for i, c in enumerate(cand)):
                break
        else:
            raise BadParams("could not plant a multijoint")
        for i, c in enumerate(cand):
            fams[i].append(c)
    for i in range(d):
        attempts = 0
        while len(fams[i]) < sizes[i]:
            attempts += 1
            if attempts > 10000:
                raise BadParams("could not draw enough distinct lines")
            l = random_line(d, p, rng)
            if l not in fams[i]:
                fams[i].append(l)
    return LineSystem.from_families(fams)


KINDS = ("axes", "grid", "random", "families-random", "from-file")


def generate(kind: str, **params) -> LineSystem:
    if kind == "axes":
        return axes(params["d"], params["p"])
    if kind == "grid":
        return grid(params["p"], params["d"], params.get("k"))
    if kind == "random":
        return random_lines(
            params["p"],
            params["d"],
            params["n"],
            params.get("seed", 0),
            params.get("planted", 0),
            params.get("max_mult", 1),
        )
    if kind == "families-random":
        sizes = params.get("sizes") or [2] * params["d"]
        return families_random(params["p"], params["d"], sizes, params.get("seed", 0), params.get("planted", 1))
    if kind == "from-file":
        from .serialize import load_system

        return load_system(params["path"])
    raise BadParams(f"unknown generator kind {kind!r}; expected one of {KINDS}")
