"""Exhaustive checks of the structural lemmas over all small lattices."""

from __future__ import annotations

from dataclasses import dataclass, field

from .analysis import (
    breadth,
    breadth_by_definition,
    duality_lemma_check,
    find_c_cycles,
    find_crown,
    is_dismantlable,
    is_sd,
    is_sd_meet,
    kappa_map,
    dual_kappa_map,
    max_cover_degree,
    max_upper_covers,
    whitman_holds,
)
from .enumeration import count_lattices, enumerate_lattices
from .minimal_pairs import find_mp_cycles


@dataclass
class LemmaResult:
    name: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def add(self, ok: bool, L) -> None:
        self.checked += 1
        if not ok:
            self.counterexamples.append(L.to_dict())

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "checked": self.checked,
            "counterexamples": self.counterexamples,
        }


def _bijective(km, n_ji):
    return km.complete and len(set(km.mapping.values())) == len(km.mapping) == n_ji


def check_kappa_sd(L) -> bool:
    """kappa and its dual are complete bijections exactly when ``L`` is SD."""
    km, dk = kappa_map(L), dual_kappa_map(L)
    both = _bijective(km, len(km.mapping) + len(km.undefined)) and _bijective(
        dk, len(dk.mapping) + len(dk.undefined)
    )
    return both == is_sd(L)


def check_crown6_breadth(L) -> bool:
    """breadth <= 2 iff no crown on six elements."""
    return (L.size < 2 or breadth(L) <= 2) == (find_crown(L, 6) is None)


def check_dismantlable_crown_free(L) -> bool:
    """dismantlable iff crown-free."""
    return bool(is_dismantlable(L)) == (find_crown(L) is None)


def check_sd_dismantlable_breadth(L) -> bool:
    """For SD lattices: dismantlable iff breadth <= 2 (vacuous otherwise)."""
    if not is_sd(L):
        return True
    return bool(is_dismantlable(L)) == (L.size < 2 or breadth(L) <= 2)


def check_breadth_upper_covers(L) -> bool:
    """For SD-meet lattices: breadth equals the largest number of upper covers.

    Breadth comes from the direct definition up to 16 elements.
    """
    if L.size < 2 or not is_sd_meet(L):
        return True
    return _breadth(L) == max_upper_covers(L)


def check_sd_breadth_cover_degree(L) -> bool:
    """For SD lattices: breadth equals the max cover degree (either direction)."""
    if L.size < 2 or not is_sd(L):
        return True
    return _breadth(L) == max_cover_degree(L)


def _breadth(L):
    return breadth_by_definition(L) if L.size <= 16 else breadth(L)


def check_duality(L) -> bool:
    return not is_sd(L) or duality_lemma_check(L)


def check_no_short_cycles(L) -> bool:
    """SD: no C-cycle of length 2; SD plus (W): no C-cycle and no special cycle."""
    if not is_sd(L):
        return True
    cycles = find_c_cycles(L)
    if any(len(c.nodes) == 2 for c in cycles):
        return False
    if whitman_holds(L):
        return not cycles and not find_mp_cycles(L, special_only=True)
    return True


LEMMAS = {
    "kappa-sd": check_kappa_sd,
    "crown6-breadth": check_crown6_breadth,
    "dismantlable-crown-free": check_dismantlable_crown_free,
    "sd-dismantlable-breadth": check_sd_dismantlable_breadth,
    "breadth-upper-covers": check_breadth_upper_covers,
    "sd-breadth-cover-degree": check_sd_breadth_cover_degree,
    "duality": check_duality,
    "no-short-cycles": check_no_short_cycles,
}


def run_lemmas(max_size: int = 7, names=None, extra=()) -> dict:
    """Run the named checks on every lattice with ``2..max_size`` elements
    and on the lattices in ``extra``."""
    names = list(names or LEMMAS)
    results = {k: LemmaResult(k) for k in names}
    lattices = [L for n in range(2, max_size + 1) for L in enumerate_lattices(n)]
    lattices += list(extra)
    for L in lattices:
        for k in names:
            results[k].add(LEMMAS[k](L), L)
    return results


def enumeration_agrees(max_size: int = 7) -> bool:
    """Both enumeration methods find the same number of lattices."""
    return all(
        count_lattices(n, "natural") == count_lattices(n, "labeled")
        for n in range(1, max_size + 1)
    )
