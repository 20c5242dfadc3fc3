"""Semidistributivity, Whitman's condition, kappa and the A/B/C/D relations,
breadth, crowns, dismantlability, planarity and the sparse pattern.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import NotIrreducible, NotSemidistributive, TrivialLattice
from .lattice import (
    FiniteLattice,
    _bits,
    dual,
    join_irreducibles,
    lower_star,
    meet_irreducibles,
    upper_star,
)
from .planarity import is_planar_graph


@dataclass(frozen=True)
class Check:
    """Outcome of a universally quantified check; falsy when it fails."""

    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


def _memo(L, key, compute):
    cache = L.__dict__.setdefault("_memo", {})
    if key not in cache:
        cache[key] = compute()
    return cache[key]


# semidistributivity and (W) -------------------------------------------------


def _sd_violation(join_t, meet_t):
    # a+b = a+c  but  a+(b.c) != a+b
    n = len(join_t)
    for a in range(n):
        row = join_t[a]
        same = row[:, None] == row[None, :]
        bad = same & (row[meet_t] != row[:, None])
        if bad.any():
            b, c = np.argwhere(bad)[0]
            return (a, int(b), int(c))
    return None


def is_sd_join(L: FiniteLattice) -> Check:
    """SD-join: ``a+b = a+c`` implies ``a+b = a+(b*c)``; witness ``(a, b, c)``."""
    def compute():
        w = _sd_violation(L.join_table, L.meet_table)
        return Check(w is None, w)
    return _memo(L, "sd_join", compute)


def is_sd_meet(L: FiniteLattice) -> Check:
    """SD-meet: ``a*b = a*c`` implies ``a*b = a*(b+c)``; witness ``(a, b, c)``."""
    def compute():
        w = _sd_violation(L.meet_table, L.join_table)
        return Check(w is None, w)
    return _memo(L, "sd_meet", compute)


def is_sd(L: FiniteLattice) -> bool:
    return bool(is_sd_join(L)) and bool(is_sd_meet(L))


def whitman_holds(L: FiniteLattice) -> Check:
    """Whitman's condition; the witness is the first failing ``(a, b, c, d)``.

    A failure needs ``a || b`` and ``c < d`` as ids can be assumed, so only
    those quadruples are scanned.
    """
    def compute():
        n = L.size
        leq, J, M = L.leq, L.join_table, L.meet_table
        upper = np.triu(np.ones((n, n), dtype=bool), 1)
        for a in range(n):
            for b in range(a + 1, n):
                if L.comparable(a, b):
                    continue
                m = M[a, b]
                bad = (
                    upper
                    & leq[m][J]
                    & ~leq[m][:, None]
                    & ~leq[m][None, :]
                    & ~leq[a][J]
                    & ~leq[b][J]
                )
                if bad.any():
                    c, d = np.argwhere(bad)[0]
                    return Check(False, (a, b, int(c), int(d)))
        return Check(True)
    return _memo(L, "whitman", compute)


# kappa ------------------------------------------------------------------------


@dataclass(frozen=True)
class KappaMap:
    """``kappa`` on J(L); ``mapping`` holds only the defined values."""

    mapping: dict
    undefined: frozenset
    complete: bool

    def pairs(self):
        return sorted(self.mapping.items())


def kappa(L: FiniteLattice, j: int) -> Optional[int]:
    """Largest ``y`` with ``y * j = j_*``, or ``None`` if there is no largest."""
    js = lower_star(L, j)
    S = [y for y in range(L.size) if L.meet2(y, j) == js]
    top = L.join_all(S)
    return top if L.meet2(top, j) == js else None


def kappa_map(L: FiniteLattice) -> KappaMap:
    def compute():
        mapping, undefined = {}, set()
        for j in sorted(join_irreducibles(L)):
            k = kappa(L, j)
            if k is None:
                undefined.add(j)
            else:
                mapping[j] = k
        M = meet_irreducibles(L)
        complete = (
            not undefined
            and set(mapping.values()) == set(M)
            and len(mapping) == len(M)
        )
        return KappaMap(mapping, frozenset(undefined), complete)
    return _memo(L, "kappa", compute)


def dual_kappa_map(L: FiniteLattice) -> KappaMap:
    """``kappa`` of the dual lattice, a map from M(L) to J(L)."""
    return _memo(L, "dual_kappa", lambda: kappa_map(dual(L)))


def kappa_bijection_iff_sd(L: FiniteLattice) -> bool:
    both = kappa_map(L).complete and dual_kappa_map(L).complete
    return both == is_sd(L)


# A, B, C, D -------------------------------------------------------------------


def _sd_kappa(L):
    km = kappa_map(L)
    if not km.complete or not is_sd(L):
        raise NotSemidistributive("relations A and B need a semidistributive lattice")
    return km.mapping


def _require_ji(L, *xs):
    J = join_irreducibles(L)
    for x in xs:
        if x not in J:
            raise NotIrreducible(f"{L.name(x)} is not join-irreducible")


def relation_A(L: FiniteLattice, a: int, b: int) -> bool:
    """``a A b`` iff ``b < a <= kappa(b)^*``."""
    _require_ji(L, a, b)
    k = _sd_kappa(L)
    return L.lt(b, a) and L.le(a, upper_star(L, k[b]))


def relation_B(L: FiniteLattice, a: int, b: int) -> bool:
    """``a B b`` iff ``b_* <= kappa(a) < kappa(b)``."""
    _require_ji(L, a, b)
    k = _sd_kappa(L)
    return L.le(lower_star(L, b), k[a]) and L.lt(k[a], k[b])


def relation_B_join_form(L: FiniteLattice, a: int, b: int) -> bool:
    """``a B b`` stated with joins: ``a <= a_* + b`` but ``a </= a_* + b_*`` (and ``a != b``)."""
    _require_ji(L, a, b)
    a_, b_ = lower_star(L, a), lower_star(L, b)
    return a != b and L.le(a, L.join2(a_, b)) and not L.le(a, L.join2(a_, b_))


def relation_C(L: FiniteLattice, a: int, b: int) -> bool:
    return relation_A(L, a, b) or relation_B(L, a, b)


def relation_D(L: FiniteLattice, a: int, b: int) -> bool:
    """Join dependency: some ``c`` has ``a <= b + c`` and ``a </= b' + c`` for all ``b' < b``."""
    _require_ji(L, a, b)
    if a == b:
        return False
    below = [x for x in _bits(L.downset(b)) if x != b]
    for c in range(L.size):
        if L.le(a, L.join2(b, c)) and not any(L.le(a, L.join2(x, c)) for x in below):
            return True
    return False


def duality_lemma_check(L: FiniteLattice) -> bool:
    """``a A b`` iff ``kappa(a) B^d kappa(b)`` and ``a B b`` iff ``kappa(a) A^d kappa(b)``."""
    k = _sd_kappa(L)
    D = dual(L)
    J = sorted(join_irreducibles(L))
    for a, b in ((a, b) for a in J for b in J):
        if relation_A(L, a, b) != relation_B(D, k[a], k[b]):
            return False
        if relation_B(L, a, b) != relation_A(D, k[a], k[b]):
            return False
    return True


# C-cycles -----------------------------------------------------------------------


@dataclass(frozen=True)
class CCycle:
    """Join-irreducibles ``p_1 .. p_n``; ``labels[k]`` is the set of relations
    (``"A"``/``"B"``) holding on the step ``p_k -> p_{k+1}``."""

    nodes: tuple
    labels: tuple

    def __len__(self):
        return len(self.nodes)

    def count(self, label):
        return sum(label in s for s in self.labels)


def c_digraph(L: FiniteLattice) -> dict:
    """Edges ``a -> b`` of the C relation with their A/B labels."""
    J = sorted(join_irreducibles(L))
    edges = {}
    for a in J:
        for b in J:
            lab = frozenset(
                name for name, rel in (("A", relation_A), ("B", relation_B)) if rel(L, a, b)
            )
            if lab:
                edges[a, b] = lab
    return edges


def elementary_cycles(nodes, succ, max_len=None) -> list:
    """All elementary cycles, each rotated to start at its smallest node."""
    nodes = sorted(nodes)
    out = []
    for s in nodes:
        path = [s]
        on_path = {s}

        def walk(v):
            for w in succ.get(v, ()):
                if w == s:
                    out.append(tuple(path))
                elif w > s and w not in on_path and (max_len is None or len(path) < max_len):
                    path.append(w)
                    on_path.add(w)
                    walk(w)
                    path.pop()
                    on_path.discard(w)

        walk(s)
    return sorted(out, key=lambda c: (len(c), c))


def find_c_cycles(L: FiniteLattice) -> list:
    """All elementary cycles of the C relation on J(L), canonically rotated."""
    _sd_kappa(L)
    edges = c_digraph(L)
    succ: dict = {}
    for a, b in sorted(edges):
        succ.setdefault(a, []).append(b)
    cycles = []
    for nodes in elementary_cycles(join_irreducibles(L), succ):
        n = len(nodes)
        labels = tuple(edges[nodes[k], nodes[(k + 1) % n]] for k in range(n))
        cycles.append(CCycle(nodes, labels))
    return cycles


# breadth --------------------------------------------------------------------


def irredundant_sets(L: FiniteLattice, max_size=None) -> list:
    """Layers of irredundant subsets: ``layers[k]`` holds those of size ``k``."""
    layers = [[()]]
    while layers[-1] and (max_size is None or len(layers) <= max_size):
        nxt = []
        for S in layers[-1]:
            start = S[-1] + 1 if S else 0
            for p in range(start, L.size):
                T = S + (p,)
                whole = L.join_all(T)
                if all(L.join_all(T[:i] + T[i + 1:]) != whole for i in range(len(T))):
                    nxt.append(T)
        layers.append(nxt)
    return layers[:-1] if not layers[-1] else layers


def breadth(L: FiniteLattice) -> int:
    """Size of the largest irredundant join."""
    if L.size < 2:
        raise TrivialLattice("breadth is undefined for the one-element lattice")
    return _memo(L, "breadth", lambda: len(irredundant_sets(L)) - 1)


def breadth_by_definition(L: FiniteLattice, max_size: int = 16) -> int:
    """Smallest ``N`` such that every join representation of every element
    contains an ``N``-element subset with the same join.

    Runs over all ``2^n`` subsets, so only for ``n <= max_size``.
    """
    n = L.size
    if n < 2:
        raise TrivialLattice("breadth is undefined for the one-element lattice")
    if n > max_size:
        raise ValueError(f"exhaustive breadth limited to {max_size} elements")
    joins = [L.bottom] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        joins[mask] = L.join2(joins[mask ^ low], low.bit_length() - 1)
    # partners[x][s]: elements t with s + t = x
    partners = [[0] * n for _ in range(n)]
    for s in range(n):
        for t in range(n):
            partners[L.join2(s, t)][s] |= 1 << t
    need = 1
    for mask in range(1, 1 << n):
        x = joins[mask]
        if mask >> x & 1:
            continue
        if any(partners[x][s] & mask for s in _bits(mask)):
            need = max(need, 2)
            continue
        elems = list(_bits(mask))
        k = 3
        while not any(L.join_all(T) == x for T in combinations(elems, k)):
            k += 1
        need = max(need, k)
    return need


def meet_breadth(L: FiniteLattice) -> int:
    return breadth(dual(L))


def max_cover_degree(L: FiniteLattice) -> int:
    """Largest number of lower or upper covers of a single element."""
    return max(max(len(c) for c in L.lower_covers), max(len(c) for c in L.upper_covers))


def max_upper_covers(L: FiniteLattice) -> int:
    return max(len(c) for c in L.upper_covers)


# crowns, dismantlability, planarity ----------------------------------------


def is_crown(L: FiniteLattice, xs) -> bool:
    """``xs = x_1 .. x_2n`` (``n >= 3``) induce a crown with ``x_odd < x_even``."""
    m = len(xs)
    if m < 6 or m % 2 or len(set(xs)) != m:
        return False
    for i in range(m):
        for j in range(i + 1, m):
            adjacent = j == i + 1 or (i == 0 and j == m - 1)
            lo, hi = (xs[i], xs[j]) if i % 2 == 0 else (xs[j], xs[i])
            if adjacent:
                if not L.lt(lo, hi):
                    return False
            elif L.comparable(xs[i], xs[j]):
                return False
    return True


def _crown_of_length(L, m):
    # x_1 is the smallest id of the crown; path alternates up/down steps
    n = L.size
    path: list = []

    def extend():
        k = len(path)
        last = path[-1]
        if k == m:
            return L.lt(path[0], last)
        for y in range(path[0] + 1, n):
            if y in path:
                continue
            if k % 2 == 1:
                if not L.lt(last, y):
                    continue
            elif not L.lt(y, last):
                continue
            ok = True
            for i in range(k - 1):
                if L.comparable(y, path[i]) and not (k == m - 1 and i == 0):
                    ok = False
                    break
            if not ok:
                continue
            if k == m - 1 and not L.lt(path[0], y):
                continue
            path.append(y)
            if extend():
                return True
            path.pop()
        return False

    for x in range(n):
        path[:] = [x]
        if extend():
            return tuple(path)
    return None


def find_crown(L: FiniteLattice, order: Optional[int] = None) -> Optional[tuple]:
    """A crown of the given order (``2n``, ``n >= 3``), or of any order.

    Returns the ids ``x_1 .. x_2n`` or ``None``.  With ``order=None`` the
    smallest crown is reported.
    """
    if order is not None:
        if order < 6 or order % 2:
            raise ValueError("crown order must be even and at least 6")
        return _crown_of_length(L, order)
    for m in range(6, L.size + 1, 2):
        found = _crown_of_length(L, m)
        if found:
            return found
    return None


def is_dismantlable(L: FiniteLattice) -> Check:
    """Greedy removal of doubly irreducible elements (lowest id first).

    The witness is the removal order ``a_n, ..., a_2``; the lattice is
    dismantlable when a single element remains.
    """
    alive = (1 << L.size) - 1
    removed = []
    while bin(alive).count("1") > 1:
        for x in _bits(alive):
            strict_up = L.upset(x) & alive & ~(1 << x)
            strict_down = L.downset(x) & alive & ~(1 << x)
            if _cover_count(L, strict_up, alive, up=True) <= 1 and _cover_count(
                L, strict_down, alive, up=False
            ) <= 1:
                alive &= ~(1 << x)
                removed.append(x)
                break
        else:
            return Check(False, tuple(removed))
    return Check(True, tuple(removed))


def _cover_count(L, strict, alive, up):
    # minimal (resp. maximal) elements of `strict` within the alive set
    count = 0
    for y in _bits(strict):
        cone = (L.downset(y) if up else L.upset(y)) & strict & ~(1 << y)
        if not cone:
            count += 1
            if count > 1:
                break
    return count


def diagram_graph_edges(L: FiniteLattice) -> list:
    """Hasse diagram edges plus the bottom-top edge."""
    edges = set(L.covers)
    if L.size > 1:
        edges.add((L.bottom, L.top))
    return sorted(edges)


def is_planar(L: FiniteLattice) -> bool:
    """Lattice planarity: the diagram plus a bottom-top edge is a planar graph."""
    return _memo(L, "planar", lambda: is_planar_graph(diagram_graph_edges(L)))


# sparse pattern ---------------------------------------------------------------


@dataclass(frozen=True)
class SparseWitness:
    a: int
    b: int
    c: int
    d: int
    a1: int
    b1: int
    c1: int
    d1: int

    def ids(self):
        return (self.a, self.b, self.c, self.d, self.a1, self.b1, self.c1, self.d1)


def check_sparse_pattern(L: FiniteLattice) -> Optional[SparseWitness]:
    """First ``(a, b, c, d, a', b', c', d')`` in id order such that the top
    covers ``a != b``, ``c != d`` cover the bottom, ``c+d < ab``, ``a'``/``b'``
    are lower covers of ``a``/``b`` other than ``ab``, ``c'``/``d'`` are upper
    covers of ``c``/``d`` other than ``c+d``, and either all four primed
    elements differ or exactly three do with ``a' != b'`` and ``c' != d'``.
    """
    tops = L.lower_covers[L.top]
    atoms = L.upper_covers[L.bottom]
    for a, b in combinations(tops, 2):
        ab = L.meet2(a, b)
        for c, d in combinations(atoms, 2):
            cd = L.join2(c, d)
            if not L.lt(cd, ab):
                continue
            for a1 in (x for x in L.lower_covers[a] if x != ab):
                for b1 in (x for x in L.lower_covers[b] if x != ab):
                    for c1 in (x for x in L.upper_covers[c] if x != cd):
                        for d1 in (x for x in L.upper_covers[d] if x != cd):
                            k = len({a1, b1, c1, d1})
                            if k == 4 or (k == 3 and a1 != b1 and c1 != d1):
                                return SparseWitness(a, b, c, d, a1, b1, c1, d1)
    return None


@dataclass
class AnalysisReport:
    sd_join: bool
    sd_meet: bool
    whitman: bool
    kappa: list
    breadth: Optional[int]
    max_cover_degree: int
    crown: Optional[list]
    dismantlable: bool
    planar: bool
    c_cycles: list
    sparse_witness: Optional[list]
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "sd_join": self.sd_join,
            "sd_meet": self.sd_meet,
            "whitman": self.whitman,
            "kappa": self.kappa,
            "breadth": self.breadth,
            "max_cover_degree": self.max_cover_degree,
            "crown": self.crown,
            "dismantlable": self.dismantlable,
            "planar": self.planar,
            "c_cycles": self.c_cycles,
            "sparse_witness": self.sparse_witness,
        }


def analyze(L: FiniteLattice) -> AnalysisReport:
    """Run every structural check on ``L``."""
    sdj, sdm, w = is_sd_join(L), is_sd_meet(L), whitman_holds(L)
    sd = sdj.holds and sdm.holds
    cycles = []
    if sd:
        cycles = [
            {"nodes": list(c.nodes), "labels": ["".join(sorted(s)) for s in c.labels]}
            for c in find_c_cycles(L)
        ]
    crown = find_crown(L)
    sparse = check_sparse_pattern(L)
    return AnalysisReport(
        sd_join=sdj.holds,
        sd_meet=sdm.holds,
        whitman=w.holds,
        kappa=[list(p) for p in kappa_map(L).pairs()],
        breadth=breadth(L) if L.size > 1 else None,
        max_cover_degree=max_cover_degree(L) if L.size > 1 else 0,
        crown=list(crown) if crown else None,
        dismantlable=is_dismantlable(L).holds,
        planar=is_planar(L),
        c_cycles=cycles,
        sparse_witness=list(sparse.ids()) if sparse else None,
        witnesses={
            "sd_join": sdj.witness,
            "sd_meet": sdm.witness,
            "whitman": w.witness,
        },
    )
