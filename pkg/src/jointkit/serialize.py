"""JSON line-system files: {p, d, lines: [{base, dir, mult, family?}]}.

Directions and base points are re-canonicalized on load, so any
representative of a line may appear in a file.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .geometry import Point, canonicalize_line
from .incidence import LineEntry, LineSystem


def system_to_dict(L: LineSystem) -> dict[str, Any]:
    lines = []
    for e in L.entries:
        item: dict[str, Any] = {
            "base": list(e.line.base.coords),
            "dir": list(e.line.dir.vec),
            "mult": e.mult,
        }
        if e.family is not None:
            item["family"] = e.family
        lines.append(item)
    return {"p": L.p, "d": L.d, "lines": lines}


def system_from_dict(doc: dict[str, Any]) -> LineSystem:
    try:
        p, d = int(doc["p"]), int(doc["d"])
        entries = []
        for item in doc["lines"]:
            base = Point(tuple(item["base"]), p)
            if base.d != d or len(item["dir"]) != d:
                raise ValueError(f"line {item} does not have {d} coordinates")
            line = canonicalize_line(base, item["dir"])
            entries.append(LineEntry(line, int(item.get("mult", 1)), item.get("family")))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed line-system document: {exc}") from None
    return LineSystem(tuple(entries), d, p)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def save_system(L: LineSystem, path: str | Path) -> None:
    Path(path).write_text(dumps(system_to_dict(L)))


def load_system(path: str | Path) -> LineSystem:
    return system_from_dict(json.loads(Path(path).read_text()))
