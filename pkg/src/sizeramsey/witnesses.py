"""Adversarial colorings for lower bounds, and a checker for claimed witness colorings."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .codecs import encode_graph6
from .detect import find_target, maximum_independent_set
from .graph import Color, Coloring, Graph, GraphError, TargetPattern, bits, to_mask

EXACT_SCOPE_CAP = 24


@dataclass
class WitnessColoring:
    coloring: Coloring
    avoided_red: TargetPattern
    avoided_blue: TargetPattern
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "graph6": encode_graph6(self.coloring.graph).decode(),
            "red_edges": [list(e) for e in self.coloring.edges_of(Color.RED)],
            "avoided": {"red": str(self.avoided_red), "blue": str(self.avoided_blue)},
            "provenance": self.provenance,
        }


def witness_from_json(data: dict) -> tuple[Graph, WitnessColoring]:
    from .codecs import decode_graph6

    g = decode_graph6(data["graph6"])
    col = Coloring.from_red_edges(g, [tuple(e) for e in data["red_edges"]])
    w = WitnessColoring(col, TargetPattern.parse(data["avoided"]["red"]),
                        TargetPattern.parse(data["avoided"]["blue"]), data.get("provenance", {}))
    return g, w


@dataclass
class WitnessCheck:
    passed: bool
    color: Optional[Color] = None
    copy: Optional[tuple[int, ...]] = None


def verify_witness(g: Graph, w: WitnessColoring) -> WitnessCheck:
    """Pass iff there is no red ``avoided_red`` and no blue ``avoided_blue``."""
    col = w.coloring
    if not col.graph.same_as(g):
        raise GraphError("witness coloring is over a different graph")
    if not col.is_total():
        raise GraphError("witness coloring is not total")
    hit = find_target(g, w.avoided_red, col, Color.RED)
    if hit is not None:
        return WitnessCheck(False, Color.RED, hit)
    hit = find_target(g, w.avoided_blue, col, Color.BLUE)
    if hit is not None:
        return WitnessCheck(False, Color.BLUE, hit)
    return WitnessCheck(True)


# -- minimum degree witness -------------------------------------------------------------

def low_degree_witness(g: Graph, n: int, d: int) -> WitnessColoring:
    """Coloring of a graph on ``n + d - 1`` vertices with a vertex of degree <= d.

    With ``v`` of minimum degree and neighbours ``w_1..w_d``: every edge touching
    ``w_1..w_{d-1}`` and the edge ``v w_d`` are red, the rest blue. If ``v`` has
    fewer than ``d`` neighbours, the lowest-id non-neighbours are added virtually
    (they would be red) and dropped again; they are listed in the provenance.
    """
    if d < 2:
        raise GraphError("d must be at least 2")
    if g.order != n + d - 1:
        raise GraphError(f"graph has {g.order} vertices, expected n + d - 1 = {n + d - 1}")
    degs = g.degrees()
    v = min(range(g.order), key=lambda u: (degs[u], u))
    if degs[v] > d:
        raise GraphError(f"minimum degree {degs[v]} exceeds d = {d}; no witness of this kind")
    nbrs = g.neighbors(v)
    added = []
    for u in range(g.order):
        if len(nbrs) + len(added) >= d:
            break
        if u != v and not g.has_edge(u, v):
            added.append(u)
    ws = nbrs + added
    hubs = to_mask(ws[:d - 1])
    last = ws[d - 1]
    red = 0
    for i, (a, b) in enumerate(g.edge_list):
        if hubs >> a & 1 or hubs >> b & 1 or {a, b} == {v, last}:
            red |= 1 << i
    col = Coloring(g, red, ((1 << g.size) - 1) & ~red)
    return WitnessColoring(
        col, TargetPattern.cycle(2 * d), TargetPattern.cycle(n),
        {"rule": "min-degree", "v": v, "w": ws, "virtual_edges": [[v, u] for u in added]},
    )


# -- distance-3 sets ----------------------------------------------------------------------

def _conflicts(h: Graph, scope: int) -> list[int]:
    """Rows of the 'distance <= 2 in h' relation restricted to scope."""
    rows = h.rows
    out = [0] * h.order
    for u in bits(scope):
        ball = rows[u]
        for w in bits(rows[u]):
            ball |= rows[w]
        out[u] = ball & scope & ~(1 << u)
    return out


def distance3_independent_set(h: Graph, scope, mode: str = "greedy") -> list[int]:
    """Vertices of ``scope`` pairwise more than 2 apart in ``h``.

    ``exact`` gives a maximum set (scope of at most 24 vertices); ``greedy`` a
    maximal one, lowest degree first with ties by id.
    """
    scope = scope if isinstance(scope, int) else to_mask(scope)
    if scope & ~h.all_vertices:
        raise GraphError("scope not inside the graph")
    conf = _conflicts(h, scope)
    if mode == "exact":
        if scope.bit_count() > EXACT_SCOPE_CAP:
            raise GraphError(f"exact mode is capped at {EXACT_SCOPE_CAP} scope vertices")
        cg = Graph(h.order, tuple(conf))
        return maximum_independent_set(cg, within=scope)
    if mode != "greedy":
        raise ValueError(f"unknown mode {mode!r}")
    chosen = []
    blocked = 0
    for u in sorted(bits(scope), key=lambda x: (h.degree(x), x)):
        if not blocked >> u & 1:
            chosen.append(u)
            blocked |= conf[u] | 1 << u
    return sorted(chosen)


# -- the sparse decomposition ---------------------------------------------------------------

@dataclass
class DecompositionStep:
    j: int
    S: list[int]              # S_{j+1}, chosen inside G_j
    X_size: int               # |X_j|
    neighborhood: list[int]   # N_{H_j}(S_{j+1})
    exact: bool               # S chosen as a maximum (not just maximal) set


@dataclass
class DecompositionTrace:
    s_param: Fraction
    b: int
    n: int
    G0: list[int]
    steps: list[DecompositionStep] = field(default_factory=list)
    halt: str = ""
    t: int = 0

    def x_sizes(self) -> list[int]:
        return [st.X_size for st in self.steps]

    def x_bound(self, j: int) -> Fraction:
        """((s+1)^j - 1) b: the growth bound for |X_j| while no witness appears."""
        return ((self.s_param + 1) ** j - 1) * self.b


def sparse_decomposition(h: Graph, b: int, n: int, mode: str = "auto"
                         ) -> tuple[DecompositionTrace, Optional[WitnessColoring]]:
    """Peel low-degree vertices looking for a coloring with no red P_4 and no blue P_n.

    ``H_0 = h``; ``G_0`` holds the vertices of degree at most ``s = 4|E|/|V|``.
    Step j picks ``S_{j+1}`` in ``G_j``, pairwise more than 2 apart in ``H_j``. If
    ``|S_{j+1}| > |X_j| + b`` the edges of ``H_j`` at ``S_{j+1}`` go red and the
    rest blue, which is returned as a witness. Otherwise the neighbourhood of
    ``S_{j+1}`` in ``H_j`` joins ``X`` and is deleted from ``H`` and ``G``; the run
    stops when that neighbourhood is empty.
    """
    if b < 1:
        raise GraphError("b must be positive")
    if h.order != n + b - 1:
        raise GraphError(f"graph has {h.order} vertices, expected n + b - 1 = {n + b - 1}")
    if h.order == 0:
        raise GraphError("empty graph")
    s = Fraction(4 * h.size, h.order)
    degs = h.degrees()
    g_alive = to_mask(u for u in range(h.order) if degs[u] <= s)
    h_alive = h.all_vertices
    x_mask = 0
    trace = DecompositionTrace(s, b, n, list(bits(g_alive)))
    j = 0
    while True:
        hj = Graph(h.order, tuple(r & h_alive if h_alive >> u & 1 else 0 for u, r in enumerate(h.rows)))
        exact = mode == "exact" or (mode == "auto" and g_alive.bit_count() <= EXACT_SCOPE_CAP)
        S = distance3_independent_set(hj, g_alive, "exact" if exact else "greedy")
        s_mask = to_mask(S)
        nbhd = 0
        for u in S:
            nbhd |= hj.rows[u]
        step = DecompositionStep(j, S, x_mask.bit_count(), list(bits(nbhd)), exact)
        trace.steps.append(step)
        if len(S) > x_mask.bit_count() + b:
            red = 0
            for i, (a, c) in enumerate(h.edge_list):
                if (s_mask >> a & 1 and h_alive >> c & 1) or (s_mask >> c & 1 and h_alive >> a & 1):
                    red |= 1 << i
            col = Coloring(h, red, ((1 << h.size) - 1) & ~red)
            trace.halt = "witness"
            trace.t = j
            w = WitnessColoring(col, TargetPattern.path(4), TargetPattern.path(n),
                                {"rule": "sparse-decomposition", "j": j, "S": S, "X_size": step.X_size})
            return trace, w
        if not nbhd:
            trace.halt = "empty-neighbourhood"
            trace.t = j
            return trace, None
        x_mask |= nbhd
        h_alive &= ~nbhd
        g_alive &= ~nbhd
        j += 1


def red_star_forest(w: WitnessColoring) -> bool:
    """Structural check: the red graph is a vertex-disjoint union of stars."""
    red = w.coloring.color_graph(Color.RED)
    seen = 0
    for u in range(red.order):
        if seen >> u & 1 or red.degree(u) == 0:
            continue
        comp = 1 << u
        frontier = comp
        while frontier:
            nxt = 0
            for x in bits(frontier):
                nxt |= red.rows[x]
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        seen |= comp
        members = list(bits(comp))
        edges = sum(red.degree(x) for x in members) // 2
        if edges != len(members) - 1:
            return False
        if len(members) > 2 and not any(red.degree(x) == len(members) - 1 for x in members):
            return False
    return True
