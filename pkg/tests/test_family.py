import pytest

from lidcolor.closed_form import FamilySpec
from lidcolor.constructions import NoDecompositionError
from lidcolor.constructions.family import (
    PATTERNS,
    check_base_ties,
    construct_family,
    copy_factor,
    mine_base_tiles,
    mine_periodic_pattern,
    spec_graph,
    tensor_copy_factor,
    tensor_even_cycle_coloring,
    tile_compose,
)
from lidcolor.graph import InvalidParameterError, cartesian_product, cycle_graph, tensor_product
from lidcolor.verify import lid_report


@pytest.fixture(scope="module")
def base():
    return mine_base_tiles()


def test_base_tiles(base):
    assert sorted(base) == ["T44", "T45", "T54", "T55"]
    assert check_base_ties(base) == []
    for name, tile in base.items():
        r, c = int(name[1]), int(name[2])
        assert (tile.rows, tile.cols) == (r, c)
        assert 3 <= tile.colors <= 4
        g, _ = cartesian_product(cycle_graph(r), cycle_graph(c))
        assert lid_report(g, tile.coloring()).is_lid


def test_ties_detect_a_broken_tile(base):
    from dataclasses import replace

    broken = dict(base, T45=replace(base["T45"], cells=tuple(r[::-1] for r in base["T45"].cells)))
    assert check_base_ties(broken)


@pytest.mark.parametrize("m, n", [(13, 17), (12, 12), (13, 13), (17, 21), (9, 4)])
def test_tile_compose(base, m, n):
    c = tile_compose(m, n, base)
    g, _ = cartesian_product(cycle_graph(m), cycle_graph(n))
    rep = lid_report(g, c)
    assert rep.is_lid and rep.colors_used == 4


def test_tile_compose_plans(base):
    tile_compose(13, 13, base, row_plan=[4, 4, 5], col_plan=[4, 4, 5])
    with pytest.raises(InvalidParameterError):
        tile_compose(13, 13, base, row_plan=[5, 4, 4])
    with pytest.raises(InvalidParameterError):
        tile_compose(13, 13, base, row_plan=[4, 4, 4])
    for bad in (7, 11):
        with pytest.raises(NoDecompositionError):
            tile_compose(bad, 13, base)
    with pytest.raises(InvalidParameterError):
        tile_compose(3, 13, base)


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec("cart-cycle-path", 4, 2),
        FamilySpec("cart-cycle-path", 6, 5),
        FamilySpec("cart-cycle-path", 8, 8),
        FamilySpec("cart-cycle-path", 5, 2),
        FamilySpec("cart-cycle-path", 7, 4),
        FamilySpec("cart-cycle-path", 9, 6),
        FamilySpec("tensor-cycle-path", 3, 3),
        FamilySpec("tensor-cycle-path", 5, 7),
        FamilySpec("tensor-cycle-path", 8, 5),
    ],
)
def test_mined_patterns(spec):
    pattern = mine_periodic_pattern(spec)
    c = pattern.render(spec.m, spec.n)
    rep = lid_report(spec_graph(spec), c)
    assert rep.is_lid and rep.colors_used == spec.value()


def test_pattern_lookup_by_name():
    p = mine_periodic_pattern("cp-even")
    assert p.tile.rows == 2 and p.supports(10, 7) and not p.supports(9, 7)
    with pytest.raises(InvalidParameterError):
        mine_periodic_pattern("nope")
    with pytest.raises(InvalidParameterError):
        mine_periodic_pattern("cp-even", k=4)
    with pytest.raises(InvalidParameterError):
        mine_periodic_pattern("cp-odd").tile


@pytest.mark.parametrize("name", sorted(PATTERNS))
def test_every_pattern_holds_on_a_range(name):
    p = mine_periodic_pattern(name)
    for m in range(2, 21):
        for n in range(2, 21):
            if p.supports(m, n):
                p.render(m, n)  # raises unless lid with exactly k colors


@pytest.mark.parametrize("m, n", [(9, 3), (9, 9), (11, 5)])
def test_tensor_copy_factor(m, n):
    g, _ = tensor_product(cycle_graph(m), cycle_graph(n))
    rep = lid_report(g, tensor_copy_factor(m, n))
    assert rep.is_lid and rep.colors_used == 4


@pytest.mark.parametrize("m, n", [(7, 3), (9, 4), (10, 3)])
def test_tensor_copy_factor_domain(m, n):
    with pytest.raises(InvalidParameterError):
        tensor_copy_factor(m, n)


@pytest.mark.parametrize("m, n", [(6, 3), (6, 9), (10, 10), (14, 7), (4, 5), (6, 6)])
def test_tensor_even_cycle_coloring(m, n):
    g, _ = tensor_product(cycle_graph(m), cycle_graph(n))
    rep = lid_report(g, tensor_even_cycle_coloring(m, n))
    assert rep.is_lid and rep.colors_used == 3


def test_copy_factor_layout():
    from lidcolor.verify import Coloring

    assert copy_factor(2, 3, Coloring((1, 2)), 0).colors == (1, 1, 1, 2, 2, 2)
    assert copy_factor(2, 3, Coloring((1, 2, 3)), 1).colors == (1, 2, 3, 1, 2, 3)


@pytest.mark.parametrize(
    "spec, value",
    [
        (FamilySpec("cart-cycle-cycle", 13, 17), 4),
        (FamilySpec("tensor-cycle-cycle", 3, 3), 5),
        (FamilySpec("cart-cycle-path", 3, 4), 5),
        (FamilySpec("cart-cycle-cycle", 17, 7), 4),
        (FamilySpec("cart-cycle-cycle", 6, 11), 4),
        (FamilySpec("tensor-cycle-cycle", 5, 10), 3),
        (FamilySpec("tensor-cycle-cycle", 3, 11), 4),
        (FamilySpec("tensor-path-path", 2, 2), 2),
        (FamilySpec("cycle", 7), 5),
    ],
)
def test_construct_family(spec, value):
    c = construct_family(spec)
    rep = lid_report(spec_graph(spec), c)
    assert rep.is_lid and rep.colors_used == value == spec.value()
