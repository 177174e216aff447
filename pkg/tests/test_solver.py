import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lidcolor.graph import (
    Graph,
    InvalidParameterError,
    cartesian_product,
    cycle_graph,
    is_bipartite,
    path_graph,
    tensor_product,
)
from lidcolor.solver import (
    ResourceLimitError,
    certify_no_lid_coloring,
    chi_exact,
    chi_lid_exact,
    find_lid_coloring,
    find_proper_coloring,
    solve_variables,
)
from lidcolor.verify import Coloring, is_proper, lid_report

from .strategies import connected_graphs, graphs


def test_c8_has_3_lid_coloring():
    c = find_lid_coloring(cycle_graph(8), 3)
    assert c is not None and lid_report(cycle_graph(8), c).is_lid


def test_c5_has_no_4_lid_coloring():
    assert find_lid_coloring(cycle_graph(5), 4) is None


def test_p2_two_colors():
    assert find_lid_coloring(path_graph(2), 2) == Coloring((1, 2))


def test_constraints_are_respected():
    c = find_lid_coloring(cycle_graph(8), 3, constraints={0: 3, 1: 2})
    assert c[0] == 3 and c[1] == 2
    # in every 3-lid-coloring of C8 opposite vertices agree
    assert find_lid_coloring(cycle_graph(8), 3, constraints={0: 1, 4: 2}) is None
    assert find_lid_coloring(path_graph(2), 2, constraints={0: 1, 1: 1}) is None
    assert find_lid_coloring(path_graph(2), 2, constraints={0: 5}) is None
    with pytest.raises(InvalidParameterError):
        find_lid_coloring(path_graph(2), 2, constraints={7: 1})


@pytest.mark.parametrize(
    "graph, value",
    [
        (tensor_product(cycle_graph(3), cycle_graph(3))[0], 5),
        (cartesian_product(cycle_graph(3), path_graph(2))[0], 5),
        (path_graph(4), 4),
        (path_graph(1), 1),
    ],
)
def test_chi_lid_exact_examples(graph, value):
    res = chi_lid_exact(graph)
    assert res.value == value and res.exhausted_below
    rep = lid_report(graph, res.certificate)
    assert rep.is_lid and rep.colors_used == value


@pytest.mark.parametrize(
    "graph, value",
    [(cycle_graph(5), 3), (cycle_graph(6), 2), (cartesian_product(cycle_graph(3), cycle_graph(5))[0], 3)],
)
def test_chi_exact_examples(graph, value):
    res = chi_exact(graph)
    assert res.value == value
    assert is_proper(graph, res.certificate) and res.certificate.color_count == value


@pytest.mark.parametrize(
    "graph, k, expected",
    [
        (tensor_product(cycle_graph(3), cycle_graph(5))[0], 4, True),
        (cycle_graph(4), 2, True),
        (path_graph(2), 2, False),
    ],
)
def test_certify_no_lid_coloring(graph, k, expected):
    assert certify_no_lid_coloring(graph, k) is expected


def test_components_are_combined_by_max():
    g = cycle_graph(5).disjoint_union(path_graph(3))
    res = chi_lid_exact(g)
    assert res.value == 5
    assert lid_report(g, res.certificate).is_lid


def test_budget_is_a_hard_error():
    with pytest.raises(ResourceLimitError):
        chi_lid_exact(tensor_product(cycle_graph(3), cycle_graph(5))[0], budget=50)


def test_max_k_cap():
    with pytest.raises(ResourceLimitError):
        chi_lid_exact(cycle_graph(5), max_k=4)


def test_bad_inputs():
    with pytest.raises(InvalidParameterError):
        chi_lid_exact(Graph(0, []))
    with pytest.raises(InvalidParameterError):
        find_lid_coloring(path_graph(3), 0)


def test_tied_variables_share_a_color():
    # C6 with opposite vertices tied: a coloring of C6 that is 3-periodic
    colors, _ = solve_variables(cycle_graph(6), 3, var_of=[0, 1, 2, 0, 1, 2], lid=False)
    assert colors is not None and len(colors) == 3
    # tying adjacent vertices is infeasible
    colors, _ = solve_variables(cycle_graph(4), 3, var_of=[0, 0, 1, 2], lid=False)
    assert colors is None


def test_parallel_mode_agrees():
    g = cartesian_product(cycle_graph(5), path_graph(3))[0]
    serial = chi_lid_exact(g)
    par = chi_lid_exact(g, jobs=2)
    assert par.value == serial.value == 4
    assert lid_report(g, par.certificate).is_lid
    again = chi_lid_exact(g, jobs=2)
    assert again.certificate == par.certificate


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_deterministic(g):
    assert chi_lid_exact(g).certificate == chi_lid_exact(g).certificate


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_proper_coloring_agrees_with_networkx_bound(g):
    res = chi_exact(g)
    x = nx.Graph()
    x.add_nodes_from(range(g.n))
    x.add_edges_from(g.edges)
    greedy = max(nx.greedy_color(x).values(), default=0) + 1
    assert res.value <= greedy
    if res.value > 1:
        assert find_proper_coloring(g, res.value - 1) is None


def test_lid_at_most_3_means_triangle_or_bipartite():
    # every connected graph on at most 7 vertices
    checked = 0
    for x in nx.graph_atlas_g()[1:]:
        if not nx.is_connected(x):
            continue
        g = Graph(x.number_of_nodes(), x.edges())
        checked += 1
        if find_lid_coloring(g, 3) is not None:
            triangle = g.n == 3 and g.m == 3
            assert triangle or is_bipartite(g), g.edges
    assert checked == 996


def test_bipartite_graphs_need_at_most_4():
    rng = random.Random(7)
    for _ in range(40):
        a, b = rng.randint(1, 6), rng.randint(1, 6)
        edges = [(u, a + v) for u in range(a) for v in range(b) if rng.random() < 0.4]
        g = Graph(a + b, edges)
        assert chi_lid_exact(g).value <= 4


@settings(max_examples=30, deadline=None)
@given(connected_graphs(min_n=2, max_n=7), st.integers(1, 5))
def test_find_agrees_with_exact(g, k):
    value = chi_lid_exact(g).value
    assert (find_lid_coloring(g, k) is not None) == (k >= value)
