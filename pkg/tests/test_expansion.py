import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from sizeramsey.expansion import (PairContext, expanding_tree, is_good_pair, is_regular_pair, scaled_density)
from sizeramsey.graph import Graph, GraphError

from conftest import graphs


def _kab_minus_matching(a):
    return Graph.from_edges(2 * a, [(i, a + j) for i in range(a) for j in range(a) if i != j])


def test_density_examples():
    assert scaled_density(PairContext(Graph.complete_bipartite(4, 6), range(4), range(4, 10), 0.5)) == 2
    assert scaled_density(PairContext(Graph.empty(6), [0, 1], [2, 3], 0.3)) == 0
    assert scaled_density(PairContext(Graph.cycle(6), [0, 2, 4], [1, 3, 5])) == Fraction(2, 3)


def test_context_validation():
    with pytest.raises(GraphError):
        PairContext(Graph.cycle(6), [0, 1], [1, 2])
    with pytest.raises(GraphError):
        PairContext(Graph.cycle(6), [0], [9])
    with pytest.raises(GraphError):
        PairContext(Graph.cycle(6), [0], [1], 0)


def test_regularity_examples():
    k88 = Graph.complete_bipartite(8, 8)
    assert is_regular_pair(PairContext(k88, range(8), range(8, 16)), 0.1).regular
    v = is_regular_pair(PairContext(_kab_minus_matching(8), range(8), range(8, 16)), 0.01)
    assert v.regular is False and v.deviation == Fraction(7, 8)
    assert is_regular_pair(PairContext(Graph.empty(16), range(8), range(8, 16)), 0.5).regular


def _brute_deviation(ctx, eps):
    base = scaled_density(ctx)
    worst = Fraction(0)
    m1 = max(1, math.ceil(Fraction(eps) * len(ctx.v1)))
    m2 = max(1, math.ceil(Fraction(eps) * len(ctx.v2)))
    for k1 in range(m1, len(ctx.v1) + 1):
        for u1 in combinations(ctx.v1, k1):
            for k2 in range(m2, len(ctx.v2) + 1):
                for u2 in combinations(ctx.v2, k2):
                    worst = max(worst, abs(base - scaled_density(ctx, u1, u2)))
    return worst


@settings(max_examples=60)
@given(graphs(min_order=2, max_order=8), st.sampled_from(["0.1", "0.3", "0.5"]), st.sampled_from(["1", "1/2"]))
def test_regularity_exact_matches_brute_force(g, eps, p):
    half = g.order // 2
    ctx = PairContext(g, range(half), range(half, g.order), Fraction(p))
    v = is_regular_pair(ctx, Fraction(eps))
    worst = _brute_deviation(ctx, Fraction(eps))
    assert v.deviation == worst and v.regular == (worst <= Fraction(eps))
    if v.witness:
        assert abs(scaled_density(ctx) - scaled_density(ctx, *v.witness)) == worst


@settings(max_examples=40)
@given(graphs(min_order=4, max_order=10), st.integers(0, 1000))
def test_sampled_mode_never_false_alarms(g, seed):
    half = g.order // 2
    ctx = PairContext(g, range(half), range(half, g.order))
    exact = is_regular_pair(ctx, "0.2")
    sampled = is_regular_pair(ctx, "0.2", mode="sampled", trials=50, seed=seed)
    assert sampled.deviation <= exact.deviation
    if sampled.regular is False:
        assert exact.regular is False
    else:
        assert sampled.regular is None


def test_regularity_cap():
    with pytest.raises(GraphError):
        is_regular_pair(PairContext(Graph.empty(34), range(17), range(17, 34)), 0.1)


def test_good_pair_examples():
    assert is_good_pair(PairContext(Graph.complete_bipartite(8, 8), range(8), range(8, 16)), "0.05").good
    match = Graph.from_edges(16, [(i, i + 8) for i in range(8)])
    v = is_good_pair(PairContext(match, range(8), range(8, 16)), "0.05")
    assert not v.good and len(v.witness) == 1 and v.neighbourhood == 1


@settings(max_examples=60)
@given(graphs(min_order=2, max_order=10), st.sampled_from(["0.05", "0.2", "0.4"]))
def test_good_pair_matches_brute_force(g, eps):
    half = g.order // 2
    ctx = PairContext(g, range(half), range(half, g.order))
    eps = Fraction(eps)
    ok = True
    for side, other in ((ctx.v1, ctx.v2), (ctx.v2, ctx.v1)):
        for r in range(1, len(side) + 1):
            for w in combinations(side, r):
                nb = {u for x in w for u in g.neighbors(x) if u in other}
                if len(nb) < min(9 * r, (1 - 2 * eps) * len(other)):
                    ok = False
    assert is_good_pair(ctx, eps).good == ok


def test_expanding_tree_examples():
    k88 = Graph.complete_bipartite(8, 8)
    t = expanding_tree(k88, 0, 2, 2)
    assert [len(l) for l in t.levels] == [1, 2, 4]
    assert expanding_tree(Graph.path(10), 0, 2, 2) is None
    assert [len(l) for l in expanding_tree(Graph.petersen(), 0, 3, 1).levels] == [1, 3]


def test_expanding_tree_sides():
    k88 = Graph.complete_bipartite(8, 8)
    ctx = PairContext(k88, range(8), range(8, 16))
    t = expanding_tree(k88, 0, 2, 2, ctx)
    assert all(v >= 8 for v in t.levels[1]) and all(v < 8 for v in t.levels[2])
    for v, p in t.parent.items():
        assert k88.has_edge(v, p)
    with pytest.raises(GraphError):
        expanding_tree(k88, 0, Fraction(1, 2), 2)
