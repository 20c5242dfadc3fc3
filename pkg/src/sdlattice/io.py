"""Lattice JSON files, report serialization and DOT output."""

from __future__ import annotations

import json
import sys

from .analysis import analyze
from .lattice import FiniteLattice, from_covers
from .minimal_pairs import crowned_crown, find_crowned_cycles

_KEYS = {"n", "covers", "names"}


class BadLatticeFile(ValueError):
    """The input is not a valid lattice file."""


def lattice_from_dict(d) -> FiniteLattice:
    """Build a lattice from ``{"n": int, "covers": [[lo, hi], ...], "names": [...]}``."""
    if not isinstance(d, dict):
        raise BadLatticeFile("lattice file must hold a JSON object")
    extra = set(d) - _KEYS
    if extra:
        raise BadLatticeFile(f"unknown keys: {sorted(extra)}")
    if "n" not in d or "covers" not in d:
        raise BadLatticeFile("keys 'n' and 'covers' are required")
    n, covers, names = d["n"], d["covers"], d.get("names")
    if not isinstance(n, int) or isinstance(n, bool):
        raise BadLatticeFile("'n' must be an integer")
    if not isinstance(covers, list) or not all(
        isinstance(c, list) and len(c) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in c)
        for c in covers
    ):
        raise BadLatticeFile("'covers' must be a list of [lo, hi] integer pairs")
    if names is not None and not (isinstance(names, list) and all(isinstance(s, str) for s in names)):
        raise BadLatticeFile("'names' must be a list of strings")
    return from_covers(n, covers, names)


def load_lattice(path: str) -> FiniteLattice:
    """Read a lattice file; ``-`` reads standard input."""
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise BadLatticeFile(f"invalid JSON: {e}") from None
    return lattice_from_dict(data)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def report_dict(L: FiniteLattice) -> dict:
    """The analysis report plus the crowned cycles, as emitted by ``analyze``."""
    rep = analyze(L)
    d = rep.to_dict()
    d["witnesses"] = {k: list(v) if v is not None else None for k, v in rep.witnesses.items()}
    d["crowned_cycles"] = [
        dict(c.to_dict(crowned=True), crown=list(crowned_crown(L, c) or []))
        for c in find_crowned_cycles(L)
    ]
    return d


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(L: FiniteLattice, name: str = "L") -> str:
    """Hasse diagram as DOT: one edge per cover pair, elements ranked by height."""
    h = [L.height(x) for x in range(L.size)]
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(L.size):
        lines.append(f"  {x} [label={_quote(L.name(x))}];")
    for r in sorted(set(h)):
        same = " ".join(str(x) for x in range(L.size) if h[x] == r)
        lines.append(f"  {{ rank=same; {same} }}")
    for lo, hi in L.covers:
        lines.append(f"  {lo} -> {hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
