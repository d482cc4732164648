"""Shared strategies and brute-force oracles."""
from __future__ import annotations

from itertools import combinations, permutations

import hypothesis.strategies as st
import pytest
from hypothesis import settings

from sizeramsey.graph import Color, Coloring, Graph, PatternKind, TargetPattern

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@st.composite
def graphs(draw, min_order=0, max_order=8, p=None):
    n = draw(st.integers(min_order, max_order))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


patterns = st.one_of(
    st.builds(TargetPattern.cycle, st.integers(3, 6)),
    st.builds(TargetPattern.path, st.integers(1, 5)),
    st.builds(TargetPattern.biclique, st.integers(1, 2), st.integers(1, 3)),
)


def pattern_edge_sets(g: Graph, pattern: TargetPattern) -> set[frozenset]:
    """All copies of ``pattern`` in ``g`` as sets of edges, by trying every vertex tuple."""
    out = set()
    if pattern.kind is PatternKind.BICLIQUE:
        a, b = pattern.a, pattern.b
        for left in combinations(range(g.order), a):
            rest = [v for v in range(g.order) if v not in left]
            for right in combinations(rest, b):
                if all(g.has_edge(u, v) for u in left for v in right):
                    out.add(frozenset((min(u, v), max(u, v)) for u in left for v in right))
        return out
    k = pattern.k
    for tup in permutations(range(g.order), k):
        pairs = list(zip(tup, tup[1:]))
        if pattern.kind is PatternKind.CYCLE:
            pairs.append((tup[-1], tup[0]))
        if all(g.has_edge(u, v) for u, v in pairs):
            out.add(frozenset((min(u, v), max(u, v)) for u, v in pairs))
    return out


def brute_has(g: Graph, pattern: TargetPattern) -> bool:
    if pattern.kind is PatternKind.PATH and pattern.k == 1:
        return g.order >= 1
    return bool(pattern_edge_sets(g, pattern))


def brute_alpha(g: Graph) -> int:
    best = 0
    for r in range(g.order + 1):
        for s in combinations(range(g.order), r):
            if all(not g.has_edge(u, v) for u, v in combinations(s, 2)):
                best = r
                break
        else:
            break
    return best


def brute_arrows(g: Graph, red: TargetPattern, blue: TargetPattern, frozen: Coloring | None = None) -> bool:
    """Independent oracle: try every completion, test copies by edge-set inclusion."""
    frozen = frozen or Coloring.uncolored(g)
    idx = g.edge_index
    red_copies = [sum(1 << idx[e] for e in c) for c in pattern_edge_sets(g, red)]
    blue_copies = [sum(1 << idx[e] for e in c) for c in pattern_edge_sets(g, blue)]
    if red.kind is PatternKind.PATH and red.k == 1 or blue.kind is PatternKind.PATH and blue.k == 1:
        return g.order >= 1
    free = [e for e in range(g.size) if frozen.state(e) is Color.UNCOLORED]
    for assign in range(1 << len(free)):
        r = frozen.red
        for i, e in enumerate(free):
            if assign >> i & 1:
                r |= 1 << e
        b = g.size and ((1 << g.size) - 1) & ~r
        if not any(c & r == c for c in red_copies) and not any(c & b == c for c in blue_copies):
            return False
    return True


@pytest.fixture
def k3():
    return Graph.complete(3)
