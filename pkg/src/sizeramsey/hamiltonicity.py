"""Hamilton cycles through prescribed paths, the kappa >= alpha + m criterion,
and the constructive long blue cycle in an (n, s, t)-system."""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .constructions import NstSystem
from .detect import find_target, independence_number, vertex_connectivity
from .graph import Color, Coloring, Graph, GraphError, TargetPattern, bits, reach, to_mask

HAMILTON_CAP = 64


@dataclass
class CriterionVerdict:
    holds: bool
    kappa: int
    alpha: int
    m: int


def che_ht_check(g: Graph, m: int = 0) -> CriterionVerdict:
    """Whether kappa(g) >= alpha(g) + m (m = 0 is the Chvatal-Erdos condition)."""
    kappa = vertex_connectivity(g)
    alpha = independence_number(g)
    return CriterionVerdict(kappa >= alpha + m, kappa, alpha, m)


@dataclass(frozen=True)
class PathSystem:
    paths: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, paths: Sequence[Sequence[int]]) -> "PathSystem":
        return cls(tuple(tuple(p) for p in paths))

    @property
    def edge_count(self) -> int:
        return sum(len(p) - 1 for p in self.paths)

    def edges(self) -> list[tuple[int, int]]:
        return [(min(a, b), max(a, b)) for p in self.paths for a, b in zip(p, p[1:])]

    def validate(self, g: Graph) -> None:
        seen = set()
        for p in self.paths:
            if not p:
                raise GraphError("empty path in path system")
            for v in p:
                if not 0 <= v < g.order:
                    raise GraphError(f"vertex {v} out of range")
                if v in seen:
                    raise GraphError(f"paths are not vertex-disjoint at {v}")
                seen.add(v)
            for a, b in zip(p, p[1:]):
                if not g.has_edge(a, b):
                    raise GraphError(f"({a}, {b}) is not an edge of the host")


def hamilton_cycle_through_paths(g: Graph, ps: PathSystem | Sequence[Sequence[int]] = (),
                                 cap: int = HAMILTON_CAP) -> Optional[tuple[int, ...]]:
    """A Hamilton cycle of ``g`` traversing every path of ``ps`` contiguously, or ``None``.

    Each nontrivial path is handled as a super-edge: arriving at one end forces
    the walk through to the other end, and path interiors are never entered from
    outside.
    """
    if not isinstance(ps, PathSystem):
        ps = PathSystem.of(ps)
    n = g.order
    if n > cap:
        raise GraphError(f"Hamilton search is capped at {cap} vertices (got {n})")
    ps.validate(g)
    if n < 3:
        return None
    paths = [p for p in ps.paths if len(p) > 1]
    other_end: dict[int, tuple[int, ...]] = {}
    interior = 0
    for p in paths:
        other_end[p[0]] = p
        other_end[p[-1]] = tuple(reversed(p))
        interior |= to_mask(p[1:-1])
    if len(paths) == 1 and len(paths[0]) == n:
        p = paths[0]
        return p if g.has_edge(p[0], p[-1]) else None

    rows = g.rows
    # an edge between two ends of the same path would close it early
    same_path = {}
    for p in paths:
        same_path[p[0]] = p[-1]
        same_path[p[-1]] = p[0]

    start_seq = paths[0] if paths else (0,)
    start = start_seq[0]
    order: list[int] = list(start_seq)
    visited = to_mask(order)
    full = g.all_vertices

    def feasible(cur: int, visited: int) -> bool:
        rest = full & ~visited
        if not rest:
            return True
        # the unvisited part plus both ends of the partial path must stay connected
        if reach(g, cur, rest | 1 << cur) & rest != rest:
            return False
        if not rows[start] & rest:
            return False
        # each unvisited non-interior vertex needs two usable neighbours
        usable = rest | 1 << cur | 1 << start
        for v in bits(rest & ~interior):
            need = 1 if v in other_end else 2
            if (rows[v] & usable).bit_count() < need:
                return False
        return True

    def dfs(cur: int, visited: int) -> bool:
        if visited == full:
            return bool(rows[cur] >> start & 1) and same_path.get(cur) != start
        if not feasible(cur, visited):
            return False
        cands = rows[cur] & ~visited & ~interior
        rest = full & ~visited
        ranked = sorted(bits(cands), key=lambda v: ((rows[v] & rest).bit_count(), v))
        for v in ranked:
            if v in other_end:
                seg = other_end[v]
                order.extend(seg)
                if dfs(seg[-1], visited | to_mask(seg)):
                    return True
                del order[len(order) - len(seg):]
            else:
                order.append(v)
                if dfs(v, visited | 1 << v):
                    return True
                order.pop()
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * n + 200))
    try:
        found = dfs(order[-1], visited)
    finally:
        sys.setrecursionlimit(limit)
    return tuple(order) if found else None


def cycle_contains_edges(cycle: Sequence[int], edges) -> bool:
    k = len(cycle)
    cyc = {(min(cycle[i], cycle[(i + 1) % k]), max(cycle[i], cycle[(i + 1) % k])) for i in range(k)}
    return all((min(a, b), max(a, b)) in cyc for a, b in edges)


def is_hamilton_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    return (len(cycle) == g.order >= 3 and len(set(cycle)) == g.order
            and all(g.has_edge(cycle[i], cycle[(i + 1) % g.order]) for i in range(g.order)))


# -- long blue cycles in (n, s, t)-systems --------------------------------------------------

class ClaimViolation(AssertionError):
    """A step that must hold above the t >= 10d + 4s threshold failed."""


@dataclass
class Extraction:
    """Outcome of the extractor: a blue cycle, a red ``C_2d`` certificate, or neither."""

    blue_cycle: Optional[tuple[int, ...]] = None
    red_cycle: Optional[tuple[int, ...]] = None
    details: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.blue_cycle is not None


def _blue_cycle_ok(col: Coloring, cycle: Sequence[int]) -> bool:
    g = col.graph
    k = len(cycle)
    if len(set(cycle)) != k or k < 3:
        return False
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        if not g.has_edge(a, b) or col.state(g.edge_id(a, b)) is not Color.BLUE:
            return False
    return True


def extract_blue_cycle(system: NstSystem, total: Coloring, d: int) -> Extraction:
    """Follow the constructive argument for a blue cycle on ``n - d + 1`` vertices.

    ``total`` must color every edge and keep the satellite paths blue. If it has a
    red ``C_2d`` that cycle is returned instead. Below ``t >= 10d + 4s`` the
    extractor still runs and reports failure rather than raising.
    """
    g = system.graph
    if not total.graph.same_as(g):
        raise GraphError("coloring is over a different graph")
    if not total.is_total():
        raise GraphError("coloring is not total")
    if not total.extends(system.frozen):
        raise GraphError("coloring recolors a frozen satellite edge")
    if d < 2:
        raise GraphError("d must be at least 2")
    red_c = find_target(g, TargetPattern.cycle(2 * d), total, Color.RED)
    if red_c is not None:
        return Extraction(red_cycle=red_c, details={"reason": "red C_2d"})

    n, s = system.n, system.s
    above = system.meets_threshold(d)
    blue = total.color_graph(Color.BLUE)
    K = to_mask(system.clique)
    blue_k = [(blue.rows[v] & K).bit_count() for v in range(n)]
    X = sorted(sorted(range(n), key=lambda v: (blue_k[v], v))[:d - 1])
    x_mask = to_mask(X)
    details: dict = {"X": X, "threshold_met": above}

    if above:
        low = [v for v in range(n) if not x_mask >> v & 1 and blue_k[v] < 4 * d + 2 * s]
        if low:
            raise ClaimViolation(f"vertices {low} have fewer than 4d+2s blue clique neighbours")

    trimmed = []
    for p in system.paths:
        lo, hi = 0, len(p) - 1
        while lo <= hi and x_mask >> p[lo] & 1:
            lo += 1
        while hi >= lo and x_mask >> p[hi] & 1:
            hi -= 1
        trimmed.append(p[lo:hi + 1])
    on_paths = to_mask(v for p in trimmed for v in p)
    d_prime = (x_mask & on_paths).bit_count()
    X_prime = [v for v in system.clique if not x_mask >> v & 1][:d_prime]
    h_mask = K & ~x_mask & ~to_mask(X_prime)
    details.update(trimmed=[list(p) for p in trimmed], d_prime=d_prime, X_prime=X_prime)

    used = 0
    azure: list[tuple[int, int, tuple[int, ...]]] = []
    for p in trimmed:
        if not p:
            continue
        x, y = p[0], p[-1]
        opts_a = blue.rows[x] & h_mask & ~used
        if not opts_a:
            details["reason"] = f"no free blue attachment for {x}"
            return Extraction(details=details)
        a = (opts_a & -opts_a).bit_length() - 1
        used |= 1 << a
        opts_b = blue.rows[y] & h_mask & ~used
        if not opts_b:
            details["reason"] = f"no free blue attachment for {y}"
            return Extraction(details=details)
        b = (opts_b & -opts_b).bit_length() - 1
        used |= 1 << b
        azure.append((a, b, tuple(p)))
    details["attachments"] = [[a, b] for a, b, _ in azure]

    # H' on the vertices of H, relabelled 0..|H|-1, with the azure matching added
    h_vertices = list(bits(h_mask))
    pos = {v: i for i, v in enumerate(h_vertices)}
    edges = {(pos[u], pos[v]) for u in h_vertices for v in bits(blue.rows[u] & h_mask) if u < v}
    forced = []
    for a, b, _ in azure:
        e = (min(pos[a], pos[b]), max(pos[a], pos[b]))
        edges.add(e)
        forced.append(e)
    h_prime = Graph.from_edges(len(h_vertices), sorted(edges))
    if len(h_vertices) < 3:
        details["reason"] = "H has fewer than 3 vertices"
        return Extraction(details=details)
    ham = hamilton_cycle_through_paths(h_prime, [list(e) for e in forced], cap=max(HAMILTON_CAP, len(h_vertices)))
    if ham is None:
        details["reason"] = "no Hamilton cycle through the azure edges"
        return Extraction(details=details)

    splice = {}
    for a, b, p in azure:
        splice[(a, b)] = p
        splice[(b, a)] = tuple(reversed(p))
    cyc = [h_vertices[i] for i in ham]
    out: list[int] = []
    k = len(cyc)
    for i in range(k):
        u, v = cyc[i], cyc[(i + 1) % k]
        out.append(u)
        if (u, v) in splice:
            out.extend(splice[(u, v)])
    cycle = tuple(out)
    if len(cycle) != n - d + 1 or not _blue_cycle_ok(total, cycle):
        raise AssertionError(f"spliced cycle failed verification (length {len(cycle)}, want {n - d + 1})")
    return Extraction(blue_cycle=cycle, details=details)
