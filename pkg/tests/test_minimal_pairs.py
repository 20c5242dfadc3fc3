import pytest

import oracles
from sdlattice.analysis import find_c_cycles, is_crown, is_sd, whitman_holds
from sdlattice.constructions import boolean, catalog, chain, pentagon, snake
from sdlattice.enumeration import enumerate_lattices
from sdlattice.errors import CycleTooShort, EmptyCover, RelationDoesNotHold
from sdlattice.lattice import from_covers, join_irreducibles, refines
from sdlattice.minimal_pairs import (
    MPCycle,
    check_fruitful_condition,
    crowned_crown,
    find_crowned_cycles,
    find_mp_cycles,
    is_crowned_cycle,
    is_minimal_pair,
    is_minimal_pair_bruteforce,
    make_cycle,
    minimal_pairs,
    special_join_cover,
    special_pairs,
)


def square():
    return from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)], ["0", "a", "b", "1"])


def named_cycle(L, steps):
    return make_cycle(L, [(L.index(p), L.ids(*J)) for p, J in steps])


def test_minimal_pair_examples():
    assert is_minimal_pair(square(), 3, {1, 2})
    for j in join_irreducibles(pentagon()):
        assert is_minimal_pair(pentagon(), j, {j})
    S1 = catalog("stage1").lattice
    assert is_minimal_pair(S1, S1.index("a"), S1.ids("b", "c"))
    with pytest.raises(EmptyCover):
        is_minimal_pair(square(), 3, set())


def test_minimal_pair_witness():
    B = boolean(3)
    r = is_minimal_pair(B, 3, {3, 4})
    assert not r
    assert B.le(3, B.join_all(r.witness)) and refines(B, r.witness, {3, 4})
    assert is_minimal_pair(B, 3, {4}).witness is None


SMALL = [L for n in range(3, 7) for L in enumerate_lattices(n)]


@pytest.mark.parametrize("L", SMALL, ids=lambda L: str(L.covers))
def test_exact_criterion_matches_definition(L):
    for a in range(L.size):
        for mask in range(1, 1 << L.size):
            B = {x for x in range(L.size) if mask >> x & 1}
            if len(B) > 3:
                continue
            assert bool(is_minimal_pair(L, a, B)) == oracles.is_minimal_pair(L, a, B)


def test_bruteforce_helper_agrees_on_stage1():
    L = catalog("stage1").lattice
    for p, B in minimal_pairs(L)[:40]:
        assert is_minimal_pair_bruteforce(L, p, B)
    with pytest.raises(ValueError):
        is_minimal_pair_bruteforce(snake(0), 0, {1})


def test_special_covers_pentagon():
    N = pentagon()
    # kappa(1) = 3, so the A-form cover of 2 through 1 is {1, 3}
    assert special_join_cover(N, 2, 1, "A") == {1, 3}
    assert special_join_cover(N, 2, 1, "A", refine=False) == {1, 3}
    with pytest.raises(RelationDoesNotHold):
        special_join_cover(N, 1, 2, "A")


def test_special_cover_of_atom_b_form():
    for p, J, q, form in special_pairs(snake(0)):
        L = snake(0)
        if form == "B" and L.lower_covers[p] == (L.bottom,):
            assert special_join_cover(L, p, q, "B", refine=False) == {q}


def test_special_covers_are_minimal_on_snakes():
    for L in (snake(0), snake(1)):
        sp = special_pairs(L)
        assert sp
        for p, J, q, form in sp:
            assert q in J and is_minimal_pair(L, p, J)


def test_b_form_union_can_be_redundant():
    L = snake(0)
    loose = [
        (p, q) for p, J, q, form in special_pairs(L)
        if form == "B" and not is_minimal_pair(L, p, special_join_cover(L, p, q, "B", refine=False))
    ]
    assert loose


def test_special_covers_minimal_exhaustive():
    for n in range(3, 8):
        for L in enumerate_lattices(n):
            if is_sd(L):
                for p, J, q, form in special_pairs(L):
                    assert is_minimal_pair(L, p, J)


def test_no_cycles_in_chains():
    assert find_mp_cycles(chain(5)) == []
    assert minimal_pairs(chain(5)) == []


def test_s_lattices_have_no_special_cycles():
    for n in range(3, 8):
        for L in enumerate_lattices(n):
            if is_sd(L) and whitman_holds(L):
                assert find_mp_cycles(L, special_only=True) == []
                assert find_c_cycles(L) == []


def test_fruitful_condition():
    stub = lambda n, k: MPCycle(tuple((i, frozenset({i})) for i in range(n)), (None,) * n, k)
    assert check_fruitful_condition(stub(4, 2))
    assert check_fruitful_condition(stub(3, 0))
    assert not check_fruitful_condition(stub(3, 2))
    with pytest.raises(CycleTooShort):
        check_fruitful_condition(stub(2, 0))


@pytest.mark.parametrize("name", ["stage1", "stage2", "stage3"])
def test_stage_refinement_facts(name):
    L = catalog(name).lattice
    f = lambda p, B: refines(L, [L.index(p)], L.ids(*B))
    assert f("a", "yc") and f("b", "za") and not f("c", "xb")


def test_stage1_figure_cycle():
    L = catalog("stage1").lattice
    cyc = named_cycle(L, [("a", "xb"), ("b", "yc"), ("c", "za")])
    assert cyc.fruitful_count == 2
    assert not check_fruitful_condition(cyc)
    assert not is_crowned_cycle(L, cyc)
    assert any(c.pairs == cyc.pairs for c in find_mp_cycles(L))


def test_stage3_cycle_is_not_crowned():
    L = catalog("stage3").lattice
    cyc = named_cycle(L, [("a", "bx"), ("b", ["a'", "c"]), ("c", "az")])
    assert cyc.fruitful_count == 2
    assert not is_crowned_cycle(L, cyc)


def test_crowned_w_cycle():
    L = catalog("crowned-w").lattice
    cyc = named_cycle(L, [("a", ["b'", "b"]), ("b", ["c'", "c"]), ("c", ["a'", "a"])])
    assert is_crowned_cycle(L, cyc)
    assert cyc.fruitful_count == 0
    crown = crowned_crown(L, cyc)
    assert crown is not None and is_crown(L, crown)
    found = find_crowned_cycles(L)
    assert any(set(c.pairs) == set(cyc.pairs) for c in found)


def test_crowned_properties():
    for name in ("crowned-w", "stage1", "stage3"):
        L = catalog(name).lattice
        for c in find_crowned_cycles(L):
            assert c.fruitful_count == 0
            assert crowned_crown(L, c) is not None
    with pytest.raises(CycleTooShort):
        is_crowned_cycle(square(), MPCycle(((1, frozenset({1})),), (None,), 0))


def test_cycles_are_valid_and_rotated():
    L = catalog("stage1").lattice
    for c in find_mp_cycles(L):
        assert c.points[0] == min(c.points)
        assert len(set(c.points)) == len(c)
        made = make_cycle(L, c.pairs, c.forms)
        assert made.fruitful_count == c.fruitful_count


def test_serialization():
    L = catalog("crowned-w").lattice
    d = find_crowned_cycles(L)[0].to_dict(crowned=True)
    assert set(d) == {"pairs", "forms", "fruitful_count", "crowned"}
    assert d["crowned"] and d["fruitful_count"] == 0
    assert all(set(p) == {"p", "J"} for p in d["pairs"])
