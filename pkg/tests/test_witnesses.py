import json
from itertools import combinations

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from sizeramsey.constructions import gnp
from sizeramsey.graph import Color, Coloring, Graph, GraphError, TargetPattern, bfs_distances
from sizeramsey.witnesses import (WitnessColoring, distance3_independent_set, low_degree_witness, red_star_forest,
                                  sparse_decomposition, verify_witness, witness_from_json)

from conftest import graphs


def test_min_degree_witness_on_c7():
    g = Graph.cycle(7)
    w = low_degree_witness(g, 6, 2)
    assert verify_witness(g, w).passed
    assert w.avoided_red == TargetPattern.cycle(4) and w.avoided_blue == TargetPattern.cycle(6)


def test_min_degree_witness_on_padded_star_uses_virtual_edges():
    g = Graph.star(6)
    w = low_degree_witness(g, 6, 2)
    assert verify_witness(g, w).passed
    assert w.provenance["virtual_edges"]


def test_min_degree_witness_rejects_dense_graph():
    with pytest.raises(GraphError):
        low_degree_witness(Graph.complete(7), 6, 2)
    with pytest.raises(GraphError):
        low_degree_witness(Graph.cycle(8), 6, 2)


@settings(max_examples=150)
@given(st.integers(2, 3), st.data())
def test_min_degree_witness_soundness(d, data):
    n = data.draw(st.integers(max(3, 2 * d), 8))
    g = data.draw(graphs(min_order=n + d - 1, max_order=n + d - 1))
    if g.min_degree() > d:
        with pytest.raises(GraphError):
            low_degree_witness(g, n, d)
        return
    assert verify_witness(g, low_degree_witness(g, n, d)).passed


def _pairwise_far(h, s):
    return all(bfs_distances(h, u)[v] in (-1,) or bfs_distances(h, u)[v] > 2 for u, v in combinations(s, 2))


def test_distance3_examples():
    assert len(distance3_independent_set(Graph.path(10), range(10), "exact")) == 4
    assert len(distance3_independent_set(Graph.complete(5), range(5), "exact")) == 1
    assert distance3_independent_set(Graph.empty(6), range(6)) == list(range(6))
    with pytest.raises(GraphError):
        distance3_independent_set(Graph.empty(30), range(30), "exact")


@settings(max_examples=150)
@given(graphs(max_order=10))
def test_distance3_exact_is_maximum(g):
    exact = distance3_independent_set(g, range(g.order), "exact")
    greedy = distance3_independent_set(g, range(g.order), "greedy")
    assert _pairwise_far(g, exact) and _pairwise_far(g, greedy)
    best = 0
    for r in range(g.order, 0, -1):
        if any(_pairwise_far(g, c) for c in combinations(range(g.order), r)):
            best = r
            break
    assert len(exact) == best >= len(greedy)
    # greedy is maximal
    for v in range(g.order):
        if v not in greedy:
            assert not _pairwise_far(g, greedy + [v])


def test_decomposition_on_p10():
    g = Graph.path(10)
    trace, w = sparse_decomposition(g, 1, 10)
    assert w is not None and trace.halt == "witness" and trace.t == 0
    assert len(trace.steps[0].S) == 4
    assert verify_witness(g, w).passed and red_star_forest(w)


def test_decomposition_on_k10_has_no_witness():
    trace, w = sparse_decomposition(Graph.complete(10), 1, 10)
    assert w is None and trace.halt == "empty-neighbourhood"
    assert trace.s_param == 18 and len(trace.G0) == 10


def test_decomposition_edgeless():
    trace, w = sparse_decomposition(Graph.empty(10), 1, 10)
    assert w is not None and len(trace.steps[0].S) == 10 and verify_witness(Graph.empty(10), w).passed


def test_decomposition_order_check():
    with pytest.raises(GraphError):
        sparse_decomposition(Graph.path(9), 1, 10)


@settings(max_examples=150)
@given(st.integers(5, 18), st.integers(1, 3), st.integers(0, 10**6))
def test_decomposition_soundness_and_trace(order, b, seed):
    n = order - b + 1
    g = gnp(order, 2.2 / order, seed)
    trace, w = sparse_decomposition(g, b, n)
    xs = trace.x_sizes()
    assert xs == sorted(xs)
    removed = set()
    for st_ in trace.steps:
        keep = [v for v in range(order) if v not in removed]
        hj = Graph.from_edges(order, [(u, v) for u, v in g.edge_list if u in keep and v in keep])
        assert set(st_.S) <= set(trace.G0) - removed and _pairwise_far(hj, st_.S)
        assert st_.X_size == len(removed) <= trace.x_bound(st_.j)
        removed |= set(st_.neighborhood)
    assert trace.t <= trace.s_param
    for st_ in trace.steps[:-1] if w is not None else trace.steps:
        assert len(st_.neighborhood) <= (st_.X_size + b) * trace.s_param
    if w is not None:
        assert verify_witness(g, w).passed and red_star_forest(w)


def test_verify_witness_failures():
    k6 = Graph.complete(6)
    w = WitnessColoring(Coloring.from_red_edges(k6, k6.edge_list), TargetPattern.cycle(4), TargetPattern.cycle(4))
    chk = verify_witness(k6, w)
    assert not chk.passed and chk.color is Color.RED and len(chk.copy) == 4
    c7 = Graph.cycle(7)
    w = WitnessColoring(Coloring.from_red_edges(c7, []), TargetPattern.cycle(4), TargetPattern.cycle(7))
    chk = verify_witness(c7, w)
    assert not chk.passed and chk.color is Color.BLUE
    with pytest.raises(GraphError):
        verify_witness(Graph.cycle(8), w)


def test_witness_json_roundtrip():
    g = Graph.cycle(7)
    w = low_degree_witness(g, 6, 2)
    g2, w2 = witness_from_json(json.loads(json.dumps(w.to_json())))
    assert g2 == g and w2.coloring.red == w.coloring.red and verify_witness(g2, w2).passed
