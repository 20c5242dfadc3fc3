"""Standard lattices, crowns, Day doubling, snakes and the figure catalog."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotAnInterval, OrderTooSmall, UnknownName
from .lattice import FiniteLattice, _bits, from_covers


def chain(n: int) -> FiniteLattice:
    if n < 1:
        raise ValueError("chain needs n >= 1")
    return from_covers(n, [(i, i + 1) for i in range(n - 1)])


def boolean(k: int) -> FiniteLattice:
    """The boolean lattice of subsets of a ``k``-set; id = subset bit mask."""
    if k < 0:
        raise ValueError("boolean needs k >= 0")
    n = 1 << k
    covers = [(s, s | 1 << i) for s in range(n) for i in range(k) if not s >> i & 1]
    return from_covers(n, covers)


def product(L1: FiniteLattice, L2: FiniteLattice) -> FiniteLattice:
    """Direct product; element ``(x, y)`` has id ``x * len(L2) + y``."""
    m = L2.size
    covers = [(a * m + y, b * m + y) for a, b in L1.covers for y in range(m)]
    covers += [(x * m + a, x * m + b) for a, b in L2.covers for x in range(L1.size)]
    names = None
    if L1.names or L2.names:
        names = [f"({L1.name(x)},{L2.name(y)})" for x in range(L1.size) for y in range(m)]
    return from_covers(L1.size * m, covers, names)


def pentagon() -> FiniteLattice:
    """N5 with ``0 < 1 < 2 < 4`` and ``0 < 3 < 4``."""
    return from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])


def diamond_m3() -> FiniteLattice:
    """M3 with atoms 1, 2, 3."""
    return from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


@dataclass(frozen=True)
class Poset:
    """Raw finite poset given by its cover pairs (need not be a lattice)."""

    size: int
    covers: tuple

    def to_dict(self):
        return {"n": self.size, "covers": [list(c) for c in self.covers]}


def crown_poset(n: int) -> Poset:
    """The crown of order ``2n``.

    Ids ``2j`` and ``2j + 1`` are ``x_{2j+1}`` (lower) and ``x_{2j+2}``
    (upper); each upper element lies above its own lower element and the
    next one, cyclically.
    """
    if n < 3:
        raise OrderTooSmall("crowns need n >= 3")
    covers = []
    for j in range(n):
        up = 2 * j + 1
        covers.append((2 * j, up))
        covers.append((2 * ((j + 1) % n), up))
    return Poset(2 * n, tuple(sorted(covers)))


def day_double(L: FiniteLattice, u: int, v: int) -> FiniteLattice:
    """Day's doubling of the interval ``[u, v]``.

    Elements of the interval are replaced by a lower copy (same name) and
    an upper copy (name with a trailing prime); other ids keep their
    relative order.
    """
    if not L.le(u, v):
        raise NotAnInterval(f"{L.name(u)} is not below {L.name(v)}")
    interval = [x for x in range(L.size) if L.le(u, x) and L.le(x, v)]
    inside = set(interval)
    # new element list: (old id, copy) where copy is None outside the interval
    elems = []
    for x in range(L.size):
        if x in inside:
            elems += [(x, 0), (x, 1)]
        else:
            elems.append((x, None))
    n = len(elems)

    def le(p, q):
        (x, i), (y, j) = p, q
        if not L.le(x, y):
            return False
        if i is not None and j is not None:
            return i <= j
        return True

    up = [sum(1 << b for b, q in enumerate(elems) if le(p, q)) for p in elems]
    covers = []
    for a in range(n):
        strict = up[a] & ~(1 << a)
        for b in _bits(strict):
            if not any(up[c] >> b & 1 for c in _bits(strict & ~(1 << b))):
                covers.append((a, b))
    names = [L.name(x) + ("'" if i == 1 else "") for x, i in elems]
    return from_covers(n, covers, names)


def snake(n: int) -> FiniteLattice:
    """The snake lattice ``S_n``.

    The body is a column of ``2n + 3`` squares ``Q_0 .. Q_{2n+2}``; pattern
    ``k`` spans ``Q_{2k}``, ``Q_{2k+1}``, ``Q_{2k+2}``.  Inside a pattern the
    top of each square is covered by the bottom of the next one, the right
    corner of ``Q_{2k}`` reaches the right corner of ``Q_{2k+1}`` through
    ``b_{k+2}``, and the left corner of ``Q_{2k+1}`` reaches the left corner
    of ``Q_{2k+2}`` through ``a_{k+2}``.  Finally ``c`` sits between the
    left corner of ``Q_0`` (``a_1``) and the right corner of the last
    square (``b_{n+3}``).
    """
    if n < 0:
        raise ValueError("snake needs n >= 0")
    names: list = []
    index: dict = {}

    def new(key, label):
        index[key] = len(names)
        names.append(label)
        return index[key]

    squares = 2 * n + 3
    for q in range(squares):
        for corner in ("bot", "left", "right", "top"):
            new((q, corner), f"q{q}{corner[0]}")
    names[index[0, "bot"]] = "0"
    names[index[squares - 1, "top"]] = "1"
    names[index[0, "left"]] = "a1"
    names[index[0, "right"]] = "b1"
    names[index[squares - 1, "left"]] = f"a{n + 3}"
    names[index[squares - 1, "right"]] = f"b{n + 3}"
    covers = []
    for q in range(squares):
        b, l, r, t = (index[q, c] for c in ("bot", "left", "right", "top"))
        covers += [(b, l), (b, r), (l, t), (r, t)]
        if q + 1 < squares:
            covers.append((t, index[q + 1, "bot"]))
    for k in range(n + 1):
        bk = new(("bchain", k), f"b{k + 2}")
        covers += [(index[2 * k, "right"], bk), (bk, index[2 * k + 1, "right"])]
        ak = new(("achain", k), f"a{k + 2}")
        covers += [(index[2 * k + 1, "left"], ak), (ak, index[2 * k + 2, "left"])]
    c = new("c", "c")
    covers += [(index[0, "left"], c), (c, index[squares - 1, "right"])]
    return from_covers(len(names), covers, names)


# figure catalog -------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    lattice: FiniteLattice
    provenance: str


def _named(names: Sequence[str], covers: Sequence[tuple]) -> FiniteLattice:
    ids = {s: i for i, s in enumerate(names)}
    return from_covers(len(names), [(ids[a], ids[b]) for a, b in covers], names)


# Three-stage figure.  The unlabeled nodes are named after their TikZ node
# ids: "t" = tpr, "t1" = tpr1, "t1'" = tpr1', "t2" = tpr2, "m" = center,
# "m'" = center', "m''" = center'', "a'" is the node drawn just above a.
_STAGE1 = (
    ["0", "a", "b", "c", "x", "y", "z", "m", "t2", "t1", "t", "1"],
    [
        ("y", "1"), ("x", "1"), ("0", "x"), ("0", "c"), ("c", "t2"),
        ("t2", "t1"), ("t1", "t"), ("z", "t"), ("b", "z"), ("0", "b"),
        ("0", "a"), ("a", "m"), ("m", "t1"), ("a", "y"), ("t", "1"),
        ("b", "m"), ("a", "t2"),
    ],
)

_STAGE2 = (
    ["0", "a", "b", "c", "x", "a'", "y", "z", "m", "m'", "t2", "t1", "t1'", "t", "1"],
    [
        ("y", "1"), ("x", "1"), ("0", "x"), ("0", "c"), ("c", "t2"),
        ("t2", "t1"), ("t1", "t1'"), ("t1'", "t"), ("z", "t"), ("b", "z"),
        ("0", "b"), ("0", "a"), ("a", "m"), ("m", "t1"), ("a'", "y"),
        ("a", "a'"), ("t", "1"), ("b", "m"), ("a", "t2"), ("m", "m'"),
        ("a'", "m'"), ("m'", "t1'"),
    ],
)

_STAGE3 = (
    ["0", "a", "b", "c", "x", "a'", "y", "z", "m", "m''", "m'", "t2", "t1", "t1'", "t", "1"],
    [
        ("y", "1"), ("x", "1"), ("0", "x"), ("0", "c"), ("c", "t2"),
        ("t2", "t1"), ("t1", "t1'"), ("t1'", "t"), ("z", "t"), ("b", "z"),
        ("0", "b"), ("0", "a"), ("a", "m"), ("m", "m''"), ("m''", "t1"),
        ("a'", "y"), ("a", "a'"), ("t", "1"), ("b", "m"), ("a", "t2"),
        ("m''", "m'"), ("a'", "m'"), ("m'", "t1'"),
    ],
)

# Crowned example: three pairwise joins on top, three pairwise meets below.
_CROWNED_W = (
    ["0", "aa'", "bb'", "cc'", "a", "b", "c", "a'", "b'", "c'", "a+a'", "b+b'", "c+c'", "1"],
    [
        ("a+a'", "1"), ("b+b'", "1"), ("c+c'", "1"),
        ("0", "aa'"), ("0", "bb'"), ("0", "cc'"),
        ("c", "a+a'"), ("a'", "a+a'"), ("a", "a+a'"),
        ("a", "b+b'"), ("b'", "b+b'"), ("b", "b+b'"),
        ("b", "c+c'"), ("c'", "c+c'"), ("c", "c+c'"),
        ("aa'", "a"), ("aa'", "a'"),
        ("bb'", "b"), ("bb'", "b'"),
        ("cc'", "c"), ("cc'", "c'"),
    ],
)

_S0 = (
    ["0", "a1", "b1", "F", "b2", "E", "C", "D", "B", "a2", "A", "c", "a3", "b3", "1"],
    [
        ("a3", "1"), ("A", "a3"), ("A", "b3"), ("b3", "1"),
        ("a2", "a3"), ("C", "a2"), ("C", "B"), ("B", "A"),
        ("D", "B"), ("E", "D"), ("E", "C"),
        ("b2", "D"), ("b1", "b2"), ("b1", "F"), ("F", "E"),
        ("0", "b1"), ("0", "a1"), ("a1", "F"),
        ("c", "b3"), ("a1", "c"),
    ],
)

# S1: the circled nodes carry the TikZ node ids A..N and 1, 0.
_S1 = (
    ["0", "a1", "b1", "N", "b2", "M", "K", "L", "J", "a2", "I", "G", "H", "F",
     "b3", "E", "C", "D", "B", "a3", "A", "c", "a4", "b4", "1"],
    [
        ("a4", "1"), ("A", "a4"), ("A", "b4"), ("b4", "1"),
        ("a3", "a4"), ("C", "a3"), ("C", "B"), ("B", "A"),
        ("D", "B"), ("E", "D"), ("E", "C"),
        ("b3", "D"), ("H", "b3"), ("H", "F"), ("F", "E"),
        ("I", "H"), ("I", "G"), ("G", "F"),
        ("a2", "G"), ("K", "a2"), ("K", "J"), ("J", "I"),
        ("L", "J"), ("M", "L"), ("M", "K"),
        ("N", "M"), ("b1", "N"), ("b1", "b2"), ("b2", "L"),
        ("0", "b1"), ("0", "a1"), ("a1", "N"),
        ("c", "b4"), ("a1", "c"),
    ],
)

_CATALOG = {
    "stage1": (_STAGE1, "three-stage doubling figure, left lattice"),
    "stage2": (_STAGE2, "three-stage doubling figure, middle lattice"),
    "stage3": (_STAGE3, "three-stage doubling figure, right lattice"),
    "crowned-w": (_CROWNED_W, "crowned-cycle figure"),
    "s0": (_S0, "snake figure, left lattice"),
    "s1": (_S1, "snake figure, right lattice"),
}

#: Intervals ``(u, v)`` (by element name) whose doubling turns each stage
#: into the next one.
STAGE_INTERVALS = {"stage1": None, "stage2": ("m", "m")}


def catalog_list() -> list:
    return list(_CATALOG)


def catalog(name: str) -> CatalogEntry:
    try:
        (names, covers), provenance = _CATALOG[name]
    except KeyError:
        raise UnknownName(f"unknown catalog entry {name!r}") from None
    return CatalogEntry(name, _named(names, covers), provenance)
