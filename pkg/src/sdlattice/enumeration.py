"""Exhaustive enumeration of small lattices up to isomorphism.

Every lattice on ``n >= 2`` elements is a poset on ``n - 2`` "middle"
elements with a bottom and a top adjoined, so both search methods below
range over partial orders on the middle elements and keep those whose
completion is a lattice.  The two methods visit posets in different
orders and with different labelings; they serve as cross-checks of each
other.
"""

from __future__ import annotations

from itertools import combinations

from .errors import NotALattice, SizeTooLarge
from .lattice import (
    FiniteLattice,
    _bits,
    _from_up_masks,
    element_signature,
    is_isomorphic,
    lattice_signature,
    relabel,
)

MAX_SIZE = 8

#: Number of unlabeled lattices on n elements, n = 0..8 (standard table,
#: used only in tests as a sanity check of the enumerators).
KNOWN_COUNTS = (0, 1, 1, 1, 2, 5, 15, 53, 222)


def _natural_posets(m):
    """Posets on ``0..m-1`` where ``i < j`` in the order implies ``i < j`` as ints.

    Yields up-set masks.  Every unlabeled poset has such a labeling.
    """

    def rec(k, up):
        # elements are placed from the top id down
        if k < 0:
            yield list(up)
            return
        above = list(range(k + 1, m))
        # choose which later elements are above k; the up-set must be up-closed
        for r in range(len(above) + 1):
            for chosen in combinations(above, r):
                mask = 1 << k
                for c in chosen:
                    mask |= up[c]
                # up-closure of the chosen set must equal the chosen set
                if mask != (1 << k) | sum(1 << c for c in chosen):
                    continue
                up[k] = mask
                yield from rec(k - 1, up)
        up[k] = 0

    yield from rec(m - 1, [0] * m)


def _labeled_posets(m):
    """All partial orders on ``0..m-1`` (every labeling), built one element at a time.

    Yields up-set masks.
    """

    def rec(k, up, down):
        if k == m:
            yield list(up)
            return
        downsets = _closed_subsets(k, down)
        upsets = _closed_subsets(k, up)
        for D in downsets:
            for U in upsets:
                if D & U:
                    continue
                # every element of D must already lie below every element of U
                if any(up[d] & U != U for d in _bits(D)):
                    continue
                nu = list(up)
                nd = list(down)
                for d in _bits(D):
                    nu[d] |= 1 << k
                for u in _bits(U):
                    nd[u] |= 1 << k
                nu.append(U | 1 << k)
                nd.append(D | 1 << k)
                yield from rec(k + 1, nu, nd)

    yield from rec(0, [], [])


def _closed_subsets(k, cone):
    """Subsets ``S`` of ``0..k-1`` with ``cone[x] subset S`` for all ``x`` in ``S``."""
    out = []
    for mask in range(1 << k):
        if all(cone[x] & mask == cone[x] for x in _bits(mask)):
            out.append(mask)
    return out


def _complete(m, middle_up):
    """Adjoin bottom (id 0) and top (id m+1) to a middle poset; None if not a lattice."""
    n = m + 2
    top = 1 << (n - 1)
    up = [(1 << n) - 1]
    for x in range(m):
        up.append((middle_up[x] << 1) | top)
    up.append(top)
    try:
        return _from_up_masks(n, up)
    except NotALattice:
        return None


def _is_lattice_fast(m, middle_up):
    # a bounded poset is a lattice iff every pair has a least upper bound
    ups = [middle_up[x] for x in range(m)]
    by_up = set(ups)
    for x, y in combinations(range(m), 2):
        common = ups[x] & ups[y]
        if common and common not in by_up:
            return False
    return True


def _canonical_relabel(L: FiniteLattice) -> FiniteLattice:
    order = sorted(range(L.size), key=lambda x: (element_signature(L, x), x))
    perm = [0] * L.size
    for new, old in enumerate(order):
        perm[old] = new
    return relabel(L, perm)


def enumerate_lattices(n: int, method: str = "natural") -> list:
    """All lattices with ``n`` elements up to isomorphism.

    ``method`` selects the poset search: ``"natural"`` ranges over
    naturally labeled posets, ``"labeled"`` over every labeled poset.
    Output is sorted by cover list.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_SIZE:
        raise SizeTooLarge(f"enumeration is limited to {MAX_SIZE} elements")
    if n == 1:
        return [_from_up_masks(1, [1])]
    m = n - 2
    source = {"natural": _natural_posets, "labeled": _labeled_posets}[method](m)
    buckets: dict = {}
    found = []
    for middle_up in source:
        if not _is_lattice_fast(m, middle_up):
            continue
        L = _complete(m, middle_up)
        sig = lattice_signature(L)
        bucket = buckets.setdefault(sig, [])
        if any(is_isomorphic(L, R) is not None for R in bucket):
            continue
        bucket.append(L)
        found.append(_canonical_relabel(L))
    return sorted(found, key=lambda L: L.covers)


def count_lattices(n: int, method: str = "natural") -> int:
    return len(enumerate_lattices(n, method))
