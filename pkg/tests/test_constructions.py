import pytest

from sdlattice.analysis import is_sd, whitman_holds
from sdlattice.constructions import (
    STAGE_INTERVALS,
    boolean,
    catalog,
    catalog_list,
    chain,
    crown_poset,
    day_double,
    diamond_m3,
    pentagon,
    product,
    snake,
)
from sdlattice.errors import NotALattice, NotAnInterval, OrderTooSmall, UnknownName
from sdlattice.lattice import from_covers, is_isomorphic


def test_basic_families():
    assert chain(4).covers == ((0, 1), (1, 2), (2, 3))
    assert boolean(3).size == 8
    assert is_isomorphic(boolean(3), product(product(chain(2), chain(2)), chain(2)))
    assert pentagon().size == 5 and is_sd(pentagon()) and whitman_holds(pentagon())
    assert not is_sd(diamond_m3())


def test_product_order():
    P = product(chain(2), chain(3))
    assert P.size == 6
    assert P.le(0 * 3 + 1, 1 * 3 + 2)
    assert not P.comparable(0 * 3 + 2, 1 * 3 + 0)


def test_crown_poset():
    P = crown_poset(3)
    assert P.size == 6 and len(P.covers) == 6
    with pytest.raises(NotALattice):
        from_covers(P.size, P.covers)
    with pytest.raises(OrderTooSmall):
        crown_poset(2)


def test_crown_embeds_in_cube():
    B = boolean(3)
    # lower x_{2j+1} -> atom, upper x_{2j+2} -> coatom above atoms j and j+1
    atoms = [1, 2, 4]
    emb = {}
    for j in range(3):
        emb[2 * j] = atoms[j]
        emb[2 * j + 1] = atoms[j] | atoms[(j + 1) % 3]
    P = crown_poset(3)
    below = {(lo, hi) for lo, hi in P.covers}
    for x in range(6):
        for y in range(6):
            if x != y:
                assert B.lt(emb[x], emb[y]) == ((x, y) in below)


def test_day_double():
    C3 = chain(3)
    assert is_isomorphic(day_double(C3, 1, 1), chain(4))
    N = pentagon()
    assert is_isomorphic(day_double(N, N.bottom, N.top), product(N, chain(2)))
    with pytest.raises(NotAnInterval):
        day_double(N, 3, 2)
    D = day_double(diamond_m3(), 1, 1)
    assert D.size == 6 and D.name(D.size - 1) != ""


def test_stage2_to_stage3_by_doubling():
    s2 = catalog("stage2").lattice
    u, v = (s2.index(x) for x in STAGE_INTERVALS["stage2"])
    assert is_isomorphic(day_double(s2, u, v), catalog("stage3").lattice)


@pytest.mark.parametrize("n", range(5))
def test_snake_size(n):
    assert snake(n).size == 10 * n + 15


def test_snakes_match_figures():
    assert is_isomorphic(snake(0), catalog("s0").lattice)
    assert is_isomorphic(snake(1), catalog("s1").lattice)


def test_snake_s0_labels_match_figure():
    # the generic builder names the labelled nodes like the figure
    S, F = snake(0), catalog("s0").lattice
    for name in ["0", "1", "a1", "b1", "a2", "b2", "a3", "b3", "c"]:
        x, y = S.index(name), F.index(name)
        assert S.height(x) == F.height(y)


def test_catalog():
    assert {"stage1", "stage2", "stage3", "crowned-w", "s0", "s1"} <= set(catalog_list())
    assert catalog("crowned-w").lattice.size == 14
    assert whitman_holds(catalog("stage3").lattice)
    with pytest.raises(UnknownName):
        catalog("nope")
