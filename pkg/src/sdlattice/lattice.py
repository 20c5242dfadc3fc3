"""Finite lattices on dense integer ids.

A :class:`FiniteLattice` is built once from its Hasse diagram and keeps
every derived table (order, join, meet, covers) eagerly.  Element sets are
plain ``frozenset`` objects of ids.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    UnknownName,
    CycleInCovers,
    ElementOutOfRange,
    LatticeError,
    NoCanonicalRep,
    NotALattice,
    NotBounded,
    NotIrreducible,
)

ElementSet = frozenset


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _readonly(a):
    a.setflags(write=False)
    return a


class FiniteLattice:
    """A bounded finite lattice with elements ``0..size-1``.

    Instances are immutable; use :func:`from_covers` to build one.

    Attributes:
        size: number of elements.
        covers: sorted tuple of ``(lower, upper)`` cover pairs.
        leq: read-only ``size x size`` boolean matrix.
        join_table, meet_table: read-only ``size x size`` integer matrices.
        names: display names or ``None``.
        bottom, top: ids of the least and greatest element.
    """

    def __init__(self, size, covers, up_masks, join_rows, meet_rows, names=None):
        self.size = size
        self.covers = tuple(sorted(covers))
        self._up = tuple(up_masks)
        down = [0] * size
        for x in range(size):
            for y in _bits(up_masks[x]):
                down[y] |= 1 << x
        self._down = tuple(down)
        self._join = tuple(tuple(r) for r in join_rows)
        self._meet = tuple(tuple(r) for r in meet_rows)
        leq = np.zeros((size, size), dtype=bool)
        for x in range(size):
            for y in _bits(up_masks[x]):
                leq[x, y] = True
        self.leq = _readonly(leq)
        self.join_table = _readonly(np.array(self._join, dtype=np.int64).reshape(size, size))
        self.meet_table = _readonly(np.array(self._meet, dtype=np.int64).reshape(size, size))
        self.names = tuple(names) if names is not None else None
        lower = [[] for _ in range(size)]
        upper = [[] for _ in range(size)]
        for lo, hi in self.covers:
            lower[hi].append(lo)
            upper[lo].append(hi)
        self.lower_covers = tuple(tuple(sorted(c)) for c in lower)
        self.upper_covers = tuple(tuple(sorted(c)) for c in upper)
        self.bottom = next(x for x in range(size) if up_masks[x] == (1 << size) - 1)
        self.top = next(x for x in range(size) if down[x] == (1 << size) - 1)

    def __repr__(self):
        return f"FiniteLattice(size={self.size}, covers={list(self.covers)})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteLattice)
            and self.size == other.size
            and self.covers == other.covers
        )

    def __hash__(self):
        return hash((self.size, self.covers))

    def __len__(self):
        return self.size

    def name(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def index(self, name: str) -> int:
        """Id of the element displayed as ``name``."""
        if self.names is None:
            if str(name).isdigit() and int(name) < self.size:
                return int(name)
        elif name in self.names:
            return self.names.index(name)
        raise UnknownName(f"no element named {name!r}")

    def ids(self, *names: str) -> tuple:
        return tuple(self.index(n) for n in names)

    # scalar order/lattice operations -------------------------------------

    def _check(self, x):
        if not 0 <= x < self.size:
            raise ElementOutOfRange(f"element {x} not in 0..{self.size - 1}")

    def le(self, x: int, y: int) -> bool:
        return bool(self._up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self._up[x] >> y & 1)

    def comparable(self, x: int, y: int) -> bool:
        return bool((self._up[x] >> y | self._up[y] >> x) & 1)

    def join2(self, x: int, y: int) -> int:
        return self._join[x][y]

    def meet2(self, x: int, y: int) -> int:
        return self._meet[x][y]

    def upset(self, x: int) -> int:
        """Bit mask of the principal filter of ``x``."""
        return self._up[x]

    def downset(self, x: int) -> int:
        """Bit mask of the principal ideal of ``x``."""
        return self._down[x]

    def join_all(self, xs: Iterable[int]) -> int:
        r = self.bottom
        for x in xs:
            r = self._join[r][x]
        return r

    def meet_all(self, xs: Iterable[int]) -> int:
        r = self.top
        for x in xs:
            r = self._meet[r][x]
        return r

    def ideal(self, xs: Iterable[int]) -> frozenset:
        """Down-closure of a set of elements."""
        m = 0
        for x in xs:
            m |= self._down[x]
        return frozenset(_bits(m))

    def height(self, x: int) -> int:
        """Length of the longest chain from the bottom to ``x``."""
        return self._heights[x]

    @property
    def _heights(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = [0] * self.size
            for x in self.linear_extension():
                for u in self.upper_covers[x]:
                    h[u] = max(h[u], h[x] + 1)
            self.__dict__["_h"] = h
        return h

    def linear_extension(self) -> list:
        """Elements sorted so that ``x < y`` implies ``x`` comes first."""
        return sorted(range(self.size), key=lambda x: (bin(self._down[x]).count("1"), x))

    def to_dict(self) -> dict:
        d = {"n": self.size, "covers": [list(c) for c in self.covers]}
        if self.names is not None:
            d["names"] = list(self.names)
        return d


def from_covers(n: int, covers: Iterable[Sequence[int]], names: Sequence[str] | None = None) -> FiniteLattice:
    """Build and validate a lattice from its cover pairs ``(lower, upper)``.

    Redundant comparabilities in ``covers`` are accepted; the stored cover
    relation is always the transitive reduction.

    Raises:
        ElementOutOfRange: an endpoint is outside ``0..n-1``.
        CycleInCovers: the pairs do not generate a partial order.
        NotALattice: some pair lacks a least upper or greatest lower bound
            (``NotBounded`` when the pair is two minimal or two maximal
            elements).
    """
    if n < 1:
        raise ValueError("a lattice needs at least one element")
    if names is not None and len(names) != n:
        raise ValueError(f"expected {n} names, got {len(names)}")
    edges = set()
    for pair in covers:
        lo, hi = (int(v) for v in pair)
        for v in (lo, hi):
            if not 0 <= v < n:
                raise ElementOutOfRange(f"element {v} not in 0..{n - 1}")
        if lo == hi:
            raise CycleInCovers(lo)
        edges.add((lo, hi))
    up_masks = _closure(n, edges)
    return _from_up_masks(n, up_masks, names)


def _closure(n, edges):
    succ = [[] for _ in range(n)]
    indeg = [0] * n
    for lo, hi in edges:
        succ[lo].append(hi)
        indeg[hi] += 1
    order = [x for x in range(n) if indeg[x] == 0]
    for x in order:
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                order.append(y)
    if len(order) < n:
        raise CycleInCovers(next(x for x in range(n) if indeg[x] > 0))
    up = [1 << x for x in range(n)]
    for x in reversed(order):
        for y in succ[x]:
            up[x] |= up[y]
    return up


def _cover_pairs(n, up):
    pairs = []
    for x in range(n):
        strict = up[x] & ~(1 << x)
        above = 0
        for y in _bits(strict):
            above |= up[y] & ~(1 << y)
        for y in _bits(strict & ~above):
            pairs.append((x, y))
    return pairs


def _from_up_masks(n, up, names=None):
    down = [0] * n
    for x in range(n):
        for y in _bits(up[x]):
            down[y] |= 1 << x
    by_up = {m: x for x, m in enumerate(up)}
    by_down = {m: x for x, m in enumerate(down)}
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for x in range(n):
        join[x][x] = meet[x][x] = x
        for y in range(x + 1, n):
            j = by_up.get(up[x] & up[y])
            if j is None:
                raise _lattice_failure(n, up, down, x, y, "join")
            m = by_down.get(down[x] & down[y])
            if m is None:
                raise _lattice_failure(n, up, down, x, y, "meet")
            join[x][y] = join[y][x] = j
            meet[x][y] = meet[y][x] = m
    return FiniteLattice(n, _cover_pairs(n, up), up, join, meet, names)


def _lattice_failure(n, up, down, x, y, kind):
    minimal = [v for v in range(n) if down[v] == 1 << v]
    maximal = [v for v in range(n) if up[v] == 1 << v]
    if kind == "join" and len(maximal) > 1 and up[x] & up[y] == 0:
        return NotBounded(x, y, kind)
    if kind == "meet" and len(minimal) > 1 and down[x] & down[y] == 0:
        return NotBounded(x, y, kind)
    return NotALattice(x, y, kind)


# operations on lattices ---------------------------------------------------


def leq(L: FiniteLattice, x: int, y: int) -> bool:
    L._check(x)
    L._check(y)
    return L.le(x, y)


def join(L: FiniteLattice, S: Iterable[int]) -> int:
    """Least upper bound of ``S``; the empty join is the bottom."""
    S = list(S)
    for x in S:
        L._check(x)
    return L.join_all(S)


def meet(L: FiniteLattice, S: Iterable[int]) -> int:
    """Greatest lower bound of ``S``; the empty meet is the top."""
    S = list(S)
    for x in S:
        L._check(x)
    return L.meet_all(S)


def join_irreducibles(L: FiniteLattice) -> frozenset:
    return frozenset(x for x in range(L.size) if len(L.lower_covers[x]) == 1)


def meet_irreducibles(L: FiniteLattice) -> frozenset:
    return frozenset(x for x in range(L.size) if len(L.upper_covers[x]) == 1)


def lower_star(L: FiniteLattice, j: int) -> int:
    """The unique lower cover of a join-irreducible ``j``."""
    L._check(j)
    if len(L.lower_covers[j]) != 1:
        raise NotIrreducible(f"{L.name(j)} is not join-irreducible")
    return L.lower_covers[j][0]


def upper_star(L: FiniteLattice, m: int) -> int:
    """The unique upper cover of a meet-irreducible ``m``."""
    L._check(m)
    if len(L.upper_covers[m]) != 1:
        raise NotIrreducible(f"{L.name(m)} is not meet-irreducible")
    return L.upper_covers[m][0]


def refines(L: FiniteLattice, A: Iterable[int], B: Iterable[int]) -> bool:
    """``A << B``: every member of ``A`` lies below some member of ``B``."""
    mask = 0
    for y in B:
        mask |= L.downset(y)
    return all(mask >> x & 1 for x in A)


def is_antichain(L: FiniteLattice, S: Iterable[int]) -> bool:
    S = list(S)
    return all(not L.comparable(x, y) for x, y in combinations(S, 2))


def irredundant_join_reps(L: FiniteLattice, x: int, candidates: Iterable[int] | None = None):
    """All irredundant sets ``S`` of ``candidates`` with ``join(S) == x``.

    Irredundant means no proper subset has the same join; such sets are
    automatically antichains.  ``candidates`` defaults to the elements
    below ``x``.
    """
    pool = sorted(candidates) if candidates is not None else sorted(_bits(L.downset(x)))
    pool = [p for p in pool if L.le(p, x)]
    reps = []

    def irredundant(S):
        for i in range(len(S)):
            if L.join_all(S[:i] + S[i + 1:]) == L.join_all(S):
                return False
        return True

    # irredundant sets form a down-closed family, so grow them one element at a time
    layer = [()]
    while layer:
        nxt = []
        for S in layer:
            if L.join_all(S) == x:
                reps.append(frozenset(S))
            start = pool.index(S[-1]) + 1 if S else 0
            for p in pool[start:]:
                T = S + (p,)
                if irredundant(T):
                    nxt.append(T)
        layer = nxt
    return reps


def canonical_join_rep(L: FiniteLattice, x: int) -> frozenset:
    """The canonical join representation of ``x``.

    Raises ``NoCanonicalRep`` when no irredundant representation refines
    every other one.
    """
    L._check(x)
    if x == L.bottom:
        return frozenset()
    J = join_irreducibles(L)
    # canonical joinands are join-irreducible, and every representation is
    # refined by one built from join-irreducibles
    reps = irredundant_join_reps(L, x, [j for j in J if L.le(j, x)])
    for S in sorted(reps, key=lambda s: (len(s), sorted(s))):
        if all(refines(L, S, T) for T in reps):
            return S
    raise NoCanonicalRep(x)


def canonical_meet_rep(L: FiniteLattice, x: int) -> frozenset:
    return canonical_join_rep(dual(L), x)


def dual(L: FiniteLattice) -> FiniteLattice:
    """The order dual on the same ids."""
    covers = [(hi, lo) for lo, hi in L.covers]
    return FiniteLattice(
        L.size, covers, L._down, L._meet, L._join, L.names
    )


def sublattice_closure(L: FiniteLattice, S: Iterable[int]) -> frozenset:
    """Smallest subset containing ``S`` closed under binary join and meet."""
    closed = set(S)
    for x in closed:
        L._check(x)
    frontier = list(closed)
    while frontier:
        new = []
        for x in frontier:
            for y in list(closed):
                for z in (L.join2(x, y), L.meet2(x, y)):
                    if z not in closed:
                        closed.add(z)
                        new.append(z)
        frontier = new
    return frozenset(closed)


def induced(L: FiniteLattice, S: Iterable[int]) -> FiniteLattice:
    """The sublattice on ``S`` relabelled ``0..len(S)-1`` in id order.

    ``S`` must be closed under the lattice operations.
    """
    elems = sorted(S)
    pos = {x: i for i, x in enumerate(elems)}
    up = []
    for x in elems:
        m = 0
        for y in _bits(L.upset(x)):
            if y in pos:
                m |= 1 << pos[y]
        up.append(m)
    names = [L.name(x) for x in elems] if L.names else None
    try:
        return _from_up_masks(len(elems), up, names)
    except NotALattice as exc:
        raise LatticeError("subset is not a sublattice") from exc


def element_signature(L: FiniteLattice, x: int) -> tuple:
    return (
        L.height(x),
        L.height(L.top) - _depth(L)[x],
        len(L.lower_covers[x]),
        len(L.upper_covers[x]),
        bin(L.downset(x)).count("1"),
        bin(L.upset(x)).count("1"),
    )


def _depth(L):
    d = L.__dict__.get("_d")
    if d is None:
        d = [0] * L.size
        for x in reversed(L.linear_extension()):
            for lo in L.lower_covers[x]:
                d[lo] = max(d[lo], d[x] + 1)
        L.__dict__["_d"] = d
    return d


def lattice_signature(L: FiniteLattice) -> tuple:
    return (L.size, len(L.covers), tuple(sorted(element_signature(L, x) for x in range(L.size))))


def is_isomorphic(L1: FiniteLattice, L2: FiniteLattice) -> dict | None:
    """An order isomorphism ``L1 -> L2`` as a dict, or ``None``."""
    if lattice_signature(L1) != lattice_signature(L2):
        return None
    sig1 = [element_signature(L1, x) for x in range(L1.size)]
    sig2 = [element_signature(L2, y) for y in range(L2.size)]
    order = L1.linear_extension()
    cands = {x: [y for y in range(L2.size) if sig2[y] == sig1[x]] for x in order}
    mapping: dict = {}
    used = set()

    def extend(i):
        if i == len(order):
            return True
        x = order[i]
        for y in cands[x]:
            if y in used:
                continue
            if all(L1.le(x, u) == L2.le(y, v) and L1.le(u, x) == L2.le(v, y) for u, v in mapping.items()):
                mapping[x] = y
                used.add(y)
                if extend(i + 1):
                    return True
                del mapping[x]
                used.discard(y)
        return False

    return dict(mapping) if extend(0) else None


def relabel(L: FiniteLattice, perm: Sequence[int]) -> FiniteLattice:
    """Copy of ``L`` with element ``x`` renamed ``perm[x]``."""
    names = [None] * L.size
    covers = [(perm[a], perm[b]) for a, b in L.covers]
    if L.names:
        for x in range(L.size):
            names[perm[x]] = L.names[x]
    return from_covers(L.size, covers, names if L.names else None)
