from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from sizeramsey.detect import (EnumerationOverflow, copy_masks, enumerate_copies, exact_length_path, find_target,
                               independence_number, is_copy, maximum_independent_set, vertex_connectivity,
                               witness_edges)
from sizeramsey.graph import Color, Coloring, Graph, GraphError, TargetPattern, bits

from conftest import brute_alpha, brute_has, graphs, pattern_edge_sets, patterns


@settings(max_examples=300)
@given(graphs(max_order=8), patterns)
def test_find_target_matches_brute_force(g, pattern):
    hit = find_target(g, pattern)
    assert (hit is not None) == brute_has(g, pattern)
    if hit is not None:
        assert is_copy(g, pattern, hit)


@settings(max_examples=30)
@given(graphs(min_order=9, max_order=10), st.sampled_from([TargetPattern.cycle(5), TargetPattern.path(5),
                                                           TargetPattern.biclique(2, 2)]))
def test_find_target_ten_vertices(g, pattern):
    assert (find_target(g, pattern) is not None) == brute_has(g, pattern)


@settings(max_examples=200)
@given(graphs(max_order=7), patterns)
def test_copy_masks_match_brute_force(g, pattern):
    idx = g.edge_index
    expected = sorted(sum(1 << idx[e] for e in c) for c in pattern_edge_sets(g, pattern))
    assert copy_masks(g, pattern) == expected
    assert enumerate_copies(g, pattern) == sorted(tuple(bits(m)) for m in expected)


def test_copy_counts_in_complete_graphs():
    # K_n has n!/(2k(n-k)!) cycles of length k and n!/(2(n-k)!) paths on k vertices
    assert len(copy_masks(Graph.complete(6), TargetPattern.cycle(4))) == 45
    assert len(copy_masks(Graph.complete(6), TargetPattern.path(3))) == 60
    assert len(copy_masks(Graph.complete(5), TargetPattern.biclique(2, 2))) == 15


def test_copy_cap():
    with pytest.raises(EnumerationOverflow):
        copy_masks(Graph.complete(8), TargetPattern.cycle(5), cap=10)


def test_colored_detection():
    g = Graph.complete(4)
    col = Coloring.from_red_edges(g, [(0, 1), (1, 2), (2, 3), (0, 3)])
    hit = find_target(g, TargetPattern.cycle(4), col, Color.RED)
    assert hit is not None and is_copy(g, TargetPattern.cycle(4), hit, col, Color.RED)
    assert find_target(g, TargetPattern.cycle(3), col, Color.RED) is None
    assert find_target(g, TargetPattern.path(2), col, Color.BLUE) is not None


def test_biclique_witness_order():
    g = Graph.complete_bipartite(2, 3)
    hit = find_target(g, TargetPattern.biclique(2, 3))
    assert set(hit[:2]) == {0, 1} and set(hit[2:]) == {2, 3, 4}
    assert len(witness_edges(TargetPattern.biclique(2, 3), hit)) == 6


def _brute_path(g, x, y, length):
    others = [v for v in range(g.order) if v not in (x, y)]
    for mid in permutations(others, length - 1):
        seq = (x, *mid, y)
        if all(g.has_edge(a, b) for a, b in zip(seq, seq[1:])):
            return True
    return False


@settings(max_examples=200)
@given(graphs(min_order=2, max_order=8), st.data())
def test_exact_length_path_matches_brute_force(g, data):
    x, y = data.draw(st.lists(st.integers(0, g.order - 1), min_size=2, max_size=2, unique=True))
    length = data.draw(st.integers(1, g.order - 1))
    p = exact_length_path(g, x, y, length)
    assert (p is not None) == _brute_path(g, x, y, length)
    if p is not None:
        assert p[0] == x and p[-1] == y and len(p) == length + 1 == len(set(p))
        assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


@given(st.integers(2, 6), st.integers(2, 6), st.data())
def test_bipartite_parity(a, b, data):
    g = Graph.complete_bipartite(a, b)
    x = data.draw(st.integers(0, a - 1))
    length = data.draw(st.integers(1, a + b - 1))
    # same side needs even length, across needs odd
    if length % 2:
        assert exact_length_path(g, x, (x + 1) % a, length) is None
    assert (exact_length_path(g, x, a, length) is None) == (length % 2 == 0 or length > 2 * min(a, b) - 1)


def test_exact_length_path_errors():
    with pytest.raises(GraphError):
        exact_length_path(Graph.path(3), 0, 0, 1)
    with pytest.raises(GraphError):
        exact_length_path(Graph.path(3), 0, 2, 3)


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edge_list)
    return h


@settings(max_examples=200)
@given(graphs(min_order=2, max_order=9))
def test_connectivity_matches_networkx(g):
    assert vertex_connectivity(g) == nx.node_connectivity(_nx(g))


@pytest.mark.parametrize("g,kappa", [(Graph.complete(5), 4), (Graph.cycle(7), 2), (Graph.petersen(), 3),
                                     (Graph.complete_bipartite(3, 5), 3), (Graph.path(4), 1)])
def test_connectivity_known(g, kappa):
    assert vertex_connectivity(g) == kappa


@settings(max_examples=200)
@given(graphs(max_order=11))
def test_independence_matches_brute_force(g):
    s = maximum_independent_set(g)
    assert len(s) == independence_number(g) == brute_alpha(g)
    assert all(not g.has_edge(u, v) for u, v in combinations(s, 2))


def test_independence_known():
    assert independence_number(Graph.petersen()) == 4
    assert independence_number(Graph.cycle(9)) == 4
    assert independence_number(Graph.complete(6)) == 1
    assert independence_number(Graph.empty(0)) == 0


def test_independence_within():
    g = Graph.path(5)
    assert maximum_independent_set(g, within=0b01110) == [1, 3]
