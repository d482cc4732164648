"""Exact checkers for scaled density, (p, eps)-regular pairs, good pairs and expanding trees.

All verdicts use ``Fraction`` arithmetic; floats appear only in reports.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .constructions import as_fraction
from .graph import Graph, GraphError, bits, to_mask
from .rng import SplitMix64

REGULAR_EXACT_CAP = 16
GOOD_EXACT_CAP = 20


@dataclass(frozen=True)
class PairContext:
    graph: Graph
    v1: tuple[int, ...]
    v2: tuple[int, ...]
    p: Fraction = Fraction(1)

    def __init__(self, graph: Graph, v1: Sequence[int], v2: Sequence[int], p=1):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "v1", tuple(sorted(set(v1))))
        object.__setattr__(self, "v2", tuple(sorted(set(v2))))
        object.__setattr__(self, "p", as_fraction(p))
        if set(self.v1) & set(self.v2):
            raise GraphError("the two sides must be disjoint")
        if self.p <= 0:
            raise GraphError("p must be positive")
        for v in self.v1 + self.v2:
            if not 0 <= v < graph.order:
                raise GraphError(f"vertex {v} out of range")

    def side(self, i: int) -> tuple[int, ...]:
        return self.v1 if i == 1 else self.v2


def cross_edges(g: Graph, a: int, b: int) -> int:
    """Edges between vertex masks ``a`` and ``b`` (assumed disjoint)."""
    return sum((g.rows[u] & b).bit_count() for u in bits(a))


def scaled_density(ctx: PairContext, u1=None, u2=None) -> Fraction:
    """e(U1, U2) / (p |U1| |U2|), by default on the full sides."""
    u1 = ctx.v1 if u1 is None else u1
    u2 = ctx.v2 if u2 is None else u2
    if not u1 or not u2:
        raise GraphError("scaled density needs two nonempty sides")
    e = cross_edges(ctx.graph, to_mask(u1), to_mask(u2))
    return Fraction(e) / (ctx.p * len(u1) * len(u2))


@dataclass
class RegularityVerdict:
    regular: Optional[bool]   # None: sampled mode found nothing (not a proof)
    deviation: Fraction       # largest |d(V1,V2) - d(U1,U2)| seen
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]]
    mode: str


def is_regular_pair(ctx: PairContext, eps, mode: str = "exact", trials: int = 1000,
                    seed: int = 0) -> RegularityVerdict:
    """Check ``|d_p(V1,V2) - d_p(U1,U2)| <= eps`` for all ``U_i`` with ``|U_i| >= eps |V_i|``.

    ``exact`` scans every ``U1``; for each size of ``U2`` the extreme densities
    come from the vertices of ``V2`` with the most or fewest neighbours in ``U1``.
    ``sampled`` only ever reports a violation or ``regular=None``.
    """
    eps = as_fraction(eps)
    v1, v2 = ctx.v1, ctx.v2
    if not v1 or not v2:
        raise GraphError("empty side")
    base = scaled_density(ctx)
    min1 = max(1, math.ceil(eps * len(v1)))
    min2 = max(1, math.ceil(eps * len(v2)))
    rows = ctx.graph.rows
    best_dev = Fraction(0)
    best_pair = None

    if mode == "sampled":
        rng = SplitMix64(seed)
        for _ in range(trials):
            k1 = min1 + rng.below(len(v1) - min1 + 1)
            k2 = min2 + rng.below(len(v2) - min2 + 1)
            u1 = tuple(sorted(rng.sample(v1, k1)))
            u2 = tuple(sorted(rng.sample(v2, k2)))
            dev = abs(base - scaled_density(ctx, u1, u2))
            if dev > best_dev:
                best_dev, best_pair = dev, (u1, u2)
        if best_dev > eps:
            return RegularityVerdict(False, best_dev, best_pair, "sampled")
        return RegularityVerdict(None, best_dev, None, "sampled")
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if len(v1) > REGULAR_EXACT_CAP or len(v2) > REGULAR_EXACT_CAP:
        raise GraphError(f"exact regularity check is capped at {REGULAR_EXACT_CAP} vertices per side")

    # compare p * deviation = |e k1 k2 - T n1 n2| / (n1 n2 k1 k2) in integers
    n1, n2 = len(v1), len(v2)
    e = cross_edges(ctx.graph, to_mask(v1), to_mask(v2))
    best_num, best_den = 0, 1
    for k1 in range(min1, n1 + 1):
        for u1 in combinations(v1, k1):
            m1 = to_mask(u1)
            degs = sorted(((rows[w] & m1).bit_count(), w) for w in v2)
            low = high = 0
            for k2 in range(1, n2 + 1):
                low += degs[k2 - 1][0]
                high += degs[-k2][0]
                if k2 < min2:
                    continue
                den = n1 * n2 * k1 * k2
                for total, lo_side in ((low, True), (high, False)):
                    num = abs(e * k1 * k2 - total * n1 * n2)
                    if num * best_den > best_num * den:
                        best_num, best_den = num, den
                        pick = degs[:k2] if lo_side else degs[-k2:]
                        best_pair = (u1, tuple(sorted(w for _, w in pick)))
    best_dev = Fraction(best_num, best_den) / ctx.p
    ok = best_dev <= eps
    return RegularityVerdict(ok, best_dev, None if ok else best_pair, "exact")


@dataclass
class GoodPairVerdict:
    good: bool
    side: Optional[int] = None
    witness: Optional[tuple[int, ...]] = None
    neighbourhood: int = 0


def is_good_pair(ctx: PairContext, eps) -> GoodPairVerdict:
    """Every nonempty ``W`` in either side sees ``min(9|W|, (1-2eps)|other side|)`` across."""
    eps = as_fraction(eps)
    for cap_side in (ctx.v1, ctx.v2):
        if len(cap_side) > GOOD_EXACT_CAP:
            raise GraphError(f"good-pair check is capped at {GOOD_EXACT_CAP} vertices per side")
    rows = ctx.graph.rows
    for i in (1, 2):
        side = ctx.side(i)
        other = to_mask(ctx.side(3 - i))
        ceiling = (1 - 2 * eps) * len(ctx.side(3 - i))
        nb = [rows[v] & other for v in side]
        k = len(side)
        need = [math.ceil(min(Fraction(9 * w), ceiling)) for w in range(k + 1)]
        # depth-first over subsets with a running neighbourhood union
        stack = [(0, 0, 0, ())]
        while stack:
            start, size, union, members = stack.pop()
            for idx in range(start, k):
                u = union | nb[idx]
                w = members + (side[idx],)
                if u.bit_count() < need[size + 1]:
                    return GoodPairVerdict(False, i, w, u.bit_count())
                stack.append((idx + 1, size + 1, u, w))
    return GoodPairVerdict(True)


@dataclass
class ExpandingTree:
    levels: list[list[int]]
    parent: dict[int, int]

    @property
    def vertices(self) -> list[int]:
        return [v for lvl in self.levels for v in lvl]


def expanding_tree(g: Graph, root: int, alpha, height: int,
                   side_constraint: PairContext | None = None) -> Optional[ExpandingTree]:
    """Greedy tree whose level ``i`` has exactly ``ceil(alpha |level i-1|)`` vertices.

    Parents in each level are served in id order and take their lowest-id fresh
    neighbours. With a ``side_constraint`` the levels alternate between its two
    sides, starting from the side containing ``root``.
    """
    alpha = as_fraction(alpha)
    if alpha < 1 or height < 1:
        raise GraphError("need alpha >= 1 and height >= 1")
    sides = None
    if side_constraint is not None:
        m1, m2 = to_mask(side_constraint.v1), to_mask(side_constraint.v2)
        if m1 >> root & 1:
            sides = (m1, m2)
        elif m2 >> root & 1:
            sides = (m2, m1)
        else:
            raise GraphError("root is on neither side")
    levels = [[root]]
    parent: dict[int, int] = {}
    used = 1 << root
    for i in range(1, height + 1):
        want = math.ceil(alpha * len(levels[-1]))
        allowed = g.all_vertices if sides is None else sides[i % 2]
        level: list[int] = []
        for p in levels[-1]:
            for v in bits(g.rows[p] & allowed & ~used):
                if len(level) == want:
                    break
                level.append(v)
                parent[v] = p
                used |= 1 << v
            if len(level) == want:
                break
        if len(level) < want:
            return None
        levels.append(sorted(level))
    return ExpandingTree(levels, parent)
