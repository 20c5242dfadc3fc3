"""Minimal pairs, special join covers and cycles of minimal pairs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .analysis import (
    Check,
    _sd_kappa,
    breadth,
    is_crown,
    is_sd,
    relation_A,
    relation_B,
)
from .errors import CycleTooShort, EmptyCover, RelationDoesNotHold
from .lattice import (
    FiniteLattice,
    _bits,
    canonical_join_rep,
    join_irreducibles,
    lower_star,
    refines,
)


def _maximal(L, S):
    return frozenset(x for x in S if not any(L.lt(x, y) for y in S))


def is_minimal_pair(L: FiniteLattice, a: int, B) -> Check:
    """Whether ``<a; B>`` is a (join) minimal pair.

    Any ``B'`` refining into ``B`` lies inside the ideal generated by ``B``,
    so a cover ``B'`` missing ``y`` exists iff ``a`` is below the join of
    that ideal with ``y`` removed.  The witness is the antichain of
    maximal elements of such a ``B'``; it is ``None`` when ``a`` is not
    below the join of ``B`` at all.
    """
    B = frozenset(B)
    if not B:
        raise EmptyCover("a minimal pair needs a nonempty cover")
    if not L.le(a, L.join_all(B)):
        return Check(False, None)
    ideal = L.ideal(B)
    for y in sorted(B):
        rest = ideal - {y}
        if L.le(a, L.join_all(rest)):
            return Check(False, tuple(sorted(_maximal(L, rest))))
    return Check(True)


def is_minimal_pair_bruteforce(L: FiniteLattice, a: int, B, max_size: int = 14) -> bool:
    """Minimal-pair test straight from the definition: every ``B'`` with
    ``a <= join(B')`` and ``B' << B`` contains ``B``."""
    if L.size > max_size:
        raise ValueError(f"brute force limited to {max_size} elements")
    B = frozenset(B)
    if not L.le(a, L.join_all(B)):
        return False
    universe = list(range(L.size))
    for mask in range(1 << L.size):
        Bp = [universe[i] for i in _bits(mask)]
        if L.le(a, L.join_all(Bp)) and refines(L, Bp, B) and not B <= set(Bp):
            return False
    return True


def special_join_cover(L: FiniteLattice, p: int, q: int, form: str, refine: bool = True) -> frozenset:
    """Join cover of ``p`` attached to ``p A q`` or ``p B q``.

    Form ``"A"`` starts from ``{q}`` plus the canonical joinands of
    ``kappa(q)``; form ``"B"`` from ``{q}`` plus the canonical joinands of
    ``p_*``.  That union is a join cover of ``p`` but need not be minimal
    (the B-form often is not).  With ``refine`` the result is the union
    itself when minimal, otherwise the smallest minimal join cover of
    ``p`` that contains ``q`` and refines into the union (ties broken by
    sorted ids).
    """
    if form == "A":
        if not relation_A(L, p, q):
            raise RelationDoesNotHold(f"not {L.name(p)} A {L.name(q)}")
        rest = canonical_join_rep(L, _sd_kappa(L)[q])
    elif form == "B":
        if not relation_B(L, p, q):
            raise RelationDoesNotHold(f"not {L.name(p)} B {L.name(q)}")
        rest = canonical_join_rep(L, lower_star(L, p))
    else:
        raise ValueError("form must be 'A' or 'B'")
    cover = frozenset({q}) | rest
    if not refine or is_minimal_pair(L, p, cover):
        return cover
    return _minimal_cover_through(L, p, q, cover)


def _minimal_cover_through(L, p, q, cover):
    pool = sorted((join_irreducibles(L) & L.ideal(cover)) - {q})
    for k in range(1, len(pool) + 1):
        for rest in combinations(pool, k):
            B = frozenset(rest) | {q}
            if L.le(p, L.join_all(B)) and is_minimal_pair(L, p, B):
                return B
    raise RelationDoesNotHold(f"no minimal join cover of {L.name(p)} through {L.name(q)}")


@dataclass(frozen=True)
class MPCycle:
    """Minimal pairs ``<p_k; J_k>`` with ``p_{k+1}`` in ``J_k`` (cyclically)."""

    pairs: tuple
    forms: tuple
    fruitful_count: int

    def __len__(self):
        return len(self.pairs)

    @property
    def points(self):
        return tuple(p for p, _ in self.pairs)

    def to_dict(self, crowned: bool = False) -> dict:
        return {
            "pairs": [{"p": p, "J": sorted(J)} for p, J in self.pairs],
            "forms": list(self.forms),
            "fruitful_count": self.fruitful_count,
            "crowned": crowned,
        }


def fruitful_count(L: FiniteLattice, pairs) -> int:
    """Number of ``k`` with ``{p_k} << J_{k+1}``."""
    n = len(pairs)
    return sum(refines(L, [pairs[k][0]], pairs[(k + 1) % n][1]) for k in range(n))


def make_cycle(L: FiniteLattice, pairs, forms=None) -> MPCycle:
    """Validate and wrap a cycle given as ``[(p, J), ...]``."""
    pairs = tuple((p, frozenset(J)) for p, J in pairs)
    n = len(pairs)
    for k, (p, J) in enumerate(pairs):
        if pairs[(k + 1) % n][0] not in J:
            raise ValueError(f"p_{k + 2} is not in J_{k + 1}")
        if not is_minimal_pair(L, p, J):
            raise ValueError(f"<{L.name(p)}; {sorted(J)}> is not a minimal pair")
    forms = tuple(forms) if forms is not None else (None,) * n
    return MPCycle(pairs, forms, fruitful_count(L, pairs))


def minimal_pairs(L: FiniteLattice, max_cover: Optional[int] = None) -> list:
    """Nontrivial minimal pairs ``<p; B>`` with ``B`` an antichain of
    join-irreducibles, ``2 <= |B| <= max_cover`` (default: the breadth)."""
    J = sorted(join_irreducibles(L))
    if max_cover is None:
        max_cover = breadth(L) if L.size > 1 else 1
    out = []
    for k in range(2, max_cover + 1):
        for B in combinations(J, k):
            if any(L.comparable(x, y) for x, y in combinations(B, 2)):
                continue
            top = L.join_all(B)
            for p in J:
                if L.le(p, top) and is_minimal_pair(L, p, B):
                    out.append((p, frozenset(B)))
    return sorted(out, key=lambda pb: (pb[0], sorted(pb[1])))


def special_pairs(L: FiniteLattice) -> list:
    """``(p, J, q, form)`` for every ``p A q`` / ``p B q`` in an SD lattice."""
    if not is_sd(L):
        return []
    J = sorted(join_irreducibles(L))
    out = []
    for p in J:
        for q in J:
            for form, rel in (("A", relation_A), ("B", relation_B)):
                if rel(L, p, q):
                    out.append((p, special_join_cover(L, p, q, form), q, form))
    return out


def find_mp_cycles(L: FiniteLattice, max_n: Optional[int] = None, special_only: bool = False) -> list:
    """Cycles of minimal pairs with pairwise distinct points.

    Join covers come from the special covers (SD lattices only) and, unless
    ``special_only``, from :func:`minimal_pairs`.  A step taken along a
    special cover ``(p, J, q, form)`` with ``p_{k+1} = q`` carries ``form``.
    Each cycle is rotated to start at its smallest point.
    """
    if max_n is None:
        max_n = max(2, len(join_irreducibles(L)))
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    cands: dict = {}
    for p, J, q, form in special_pairs(L):
        cands.setdefault(p, []).append((J, q, form))
    if not special_only:
        for p, B in minimal_pairs(L):
            cands.setdefault(p, []).append((B, None, None))
    found: dict = {}
    for s in sorted(cands):
        path: list = []
        points = set()

        def walk(p):
            for J, q, form in cands.get(p, ()):
                nexts = [q] if q is not None else sorted(J)
                for nxt in nexts:
                    path.append((p, J, form if q is not None else None))
                    if nxt == s and len(path) >= 2:
                        _record(L, found, path)
                    elif nxt > s and nxt not in points and len(path) < max_n:
                        points.add(nxt)
                        walk(nxt)
                        points.discard(nxt)
                    path.pop()

        points.add(s)
        walk(s)
    return sorted(found.values(), key=lambda c: (len(c), [(p, sorted(J)) for p, J in c.pairs], [f or "" for f in c.forms]))


def _record(L, found, path):
    pairs = tuple((p, J) for p, J, _ in path)
    forms = tuple(f for _, _, f in path)
    old = found.get(pairs)
    if old is not None:
        forms = tuple(f or g for f, g in zip(forms, old.forms))
    found[pairs] = MPCycle(pairs, forms, fruitful_count(L, pairs))


def check_fruitful_condition(cycle: MPCycle) -> bool:
    """``fruitful_count <= n/2``."""
    n = len(cycle)
    if n < 3:
        raise CycleTooShort("the count condition needs n >= 3")
    return 2 * cycle.fruitful_count <= n


def crowned_crown(L: FiniteLattice, cycle: MPCycle) -> Optional[tuple]:
    """``(x_1, join A_1, ..., x_n, join A_n)`` if those elements form a crown."""
    xs = []
    for p, A in cycle.pairs:
        xs += [p, L.join_all(A)]
    return tuple(xs) if is_crown(L, xs) else None


def is_crowned_cycle(L: FiniteLattice, cycle: MPCycle) -> bool:
    """The joins ``join A_i`` form an antichain, and ``{x_i}`` does not
    refine into ``A_j`` whenever ``j != i`` and ``x_i`` is not in ``A_j``."""
    n = len(cycle)
    if n < 3:
        raise CycleTooShort("crowned cycles need n >= 3")
    joins = [L.join_all(A) for _, A in cycle.pairs]
    if len(set(joins)) < n or any(L.comparable(u, v) for u, v in combinations(joins, 2)):
        return False
    for i, (x, _) in enumerate(cycle.pairs):
        for j, (_, A) in enumerate(cycle.pairs):
            if j != i and x not in A and refines(L, [x], A):
                return False
    return True


def find_crowned_cycles(L: FiniteLattice, max_n: Optional[int] = None) -> list:
    return [
        c for c in find_mp_cycles(L, max_n)
        if len(c) >= 3 and is_crowned_cycle(L, c)
    ]
