"""Graph constructions for upper bounds and closed-form bound predictors."""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .detect import find_target
from .graph import MAX_ORDER, Coloring, Graph, GraphError, TargetPattern, induced_subgraph, to_mask
from .rng import SplitMix64


class Replacement(enum.Enum):
    CLIQUE = "clique"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class BlowupSpec:
    base: Graph
    part_sizes: tuple[int, ...]
    replacement: Replacement = Replacement.CLIQUE

    def __post_init__(self):
        if len(self.part_sizes) != self.base.order:
            raise GraphError("need one part size per base vertex")
        if any(s < 1 for s in self.part_sizes):
            raise GraphError("part sizes must be positive")


@dataclass
class ConstructionReport:
    construction: str
    params: dict
    vertices: int
    edges: int
    predicted_edges: int
    bound: float
    bound_name: str
    strict: bool
    satisfied: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)


def as_fraction(x) -> Fraction:
    """Exact value of a user number; floats go through their shortest repr (0.1 -> 1/10)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


# -- exact log comparisons -------------------------------------------------------------

def floor_log2(x: Fraction) -> int:
    """Largest integer k with 2^k <= x (x > 0)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of a non-positive number")
    k = x.numerator.bit_length() - x.denominator.bit_length()
    while Fraction(2) ** k > x:
        k -= 1
    while Fraction(2) ** (k + 1) <= x:
        k += 1
    return k


def le_times_log2(value: int | Fraction, coef: int | Fraction, ratio: Fraction) -> bool:
    """Exactly decide ``value <= coef * log2(ratio)`` for rationals with coef > 0, ratio >= 1."""
    value, coef, ratio = Fraction(value), Fraction(coef), Fraction(ratio)
    approx = float(coef) * math.log2(ratio)
    if abs(float(value) - approx) > 1e-9 * max(1.0, abs(approx)):
        return float(value) <= approx
    # value/coef = p/q  ->  2^(p/q) <= ratio  <=>  2^p <= ratio^q
    t = value / coef
    if t <= 0:
        return True
    p, q = t.numerator, t.denominator
    r = ratio ** q
    return Fraction(2) ** p <= r


# -- blow-ups ------------------------------------------------------------------------------

def blow_up(spec: BlowupSpec) -> tuple[Graph, list[range]]:
    """Replace base vertex i by a block of ``part_sizes[i]`` consecutive new vertices.

    Blocks are cliques or independent sets; base edges become complete bipartite graphs.
    """
    total = sum(spec.part_sizes)
    if total > MAX_ORDER:
        raise GraphError(f"blow-up has {total} vertices, above the cap {MAX_ORDER}")
    parts = []
    start = 0
    for s in spec.part_sizes:
        parts.append(range(start, start + s))
        start += s
    masks = [to_mask(p) for p in parts]
    rows = [0] * total
    clique = spec.replacement is Replacement.CLIQUE
    for i, part in enumerate(parts):
        outside = 0
        for j in spec.base.neighbors(i):
            outside |= masks[j]
        for u in part:
            rows[u] = outside | (masks[i] & ~(1 << u) if clique else 0)
    return Graph._trusted(total, tuple(rows)), parts


def blow_up_edge_count(spec: BlowupSpec) -> int:
    sizes = spec.part_sizes
    inner = sum(s * (s - 1) // 2 for s in sizes) if spec.replacement is Replacement.CLIQUE else 0
    return inner + sum(sizes[u] * sizes[v] for u, v in spec.base.edge_list)


def _cycle_blowup_sizes(n: int, d: int, eta: Fraction) -> tuple[int, list[int], int, int]:
    s = math.floor(eta * n / (4 * d))
    if s < 2:
        raise GraphError(f"s = floor(eta*n/4d) = {s} < 2: the base cycle C_2s would not be simple")
    total = n + 2 * s * d
    lo = math.ceil(d / eta)
    hi = math.floor(12 * d / eta)
    q, r = divmod(total, 2 * s)
    sizes = [q + 1] * r + [q] * (2 * s - r)
    if min(sizes) < lo or max(sizes) > hi:
        raise GraphError(f"no part sizes in [{lo}, {hi}] sum to {total} over {2 * s} parts")
    return s, sizes, lo, hi


def cycle_blowup(n: int, d: int, eta) -> tuple[Graph, ConstructionReport]:
    """Clique blow-up of ``C_2s`` with ``s = floor(eta n / 4d)`` and ``n + 2sd`` vertices."""
    eta = as_fraction(eta)
    if d < 2 or not 0 < eta <= 1:
        raise GraphError("need d >= 2 and 0 < eta <= 1")
    if n < 8 * d / eta:
        raise GraphError(f"need n >= 8d/eta = {float(8 * d / eta):g}")
    s, sizes, lo, hi = _cycle_blowup_sizes(n, d, eta)
    spec = BlowupSpec(Graph.cycle(2 * s), tuple(sizes))
    g, parts = blow_up(spec)
    bound = 20 * d * n / eta
    vertex_ok = g.order <= (1 + eta) * n
    report = ConstructionReport(
        construction="cycle_blowup",
        params={"n": n, "d": d, "eta": str(eta)},
        vertices=g.order,
        edges=g.size,
        predicted_edges=blow_up_edge_count(spec),
        bound=float(bound),
        bound_name="20dn/eta",
        strict=True,
        satisfied=vertex_ok and g.size < bound,
        extra={"s": s, "part_sizes": sizes, "size_interval": [lo, hi],
               "vertex_bound": float((1 + eta) * n), "vertex_bound_ok": vertex_ok},
    )
    return g, report


# -- closure of a binary tree and U(n, d) -------------------------------------------------

def tree_closure(N: int) -> tuple[Graph, list[int]]:
    """Closure of the binary tree ``T_N`` and its leaves.

    Vertices are heap positions (root 0, children ``2i+1``, ``2i+2``), so the
    deepest level keeps its leftmost positions. Each vertex is joined to all of
    its descendants. Leaves are the vertices of degree 1 in ``T_N`` itself.
    """
    if N < 1:
        raise GraphError("N must be positive")
    edges = []
    for v in range(1, N):
        a = v
        while a:
            a = (a - 1) // 2
            edges.append((a, v))
    g = Graph.from_edges(N, edges)
    tree_deg = [0] * N
    for v in range(1, N):
        tree_deg[v] += 1
        tree_deg[(v - 1) // 2] += 1
    leaves = [v for v in range(N) if tree_deg[v] == 1]
    return g, leaves


def tree_height(N: int) -> int:
    return N.bit_length() - 1


def u_graph_parts(n: int, d: int) -> list[int]:
    if d < 2 or n < 14 * d:
        raise GraphError("need n >= 14d >= 28")
    N = (n + d - 1) // (14 * d)
    sizes = [14 * d] * N
    sizes[-1] = (n + d - 1) - 14 * d * (N - 1)
    return sizes


def u_graph(n: int, d: int) -> tuple[Graph, ConstructionReport]:
    """Blow-up of the tree closure by ``14d``-cliques on exactly ``n + d - 1`` vertices.

    The one resized part is the last heap position, the deepest rightmost leaf.
    """
    sizes = u_graph_parts(n, d)
    base, _ = tree_closure(len(sizes))
    spec = BlowupSpec(base, tuple(sizes))
    g, parts = blow_up(spec)
    coef = 20 * d * n
    report = ConstructionReport(
        construction="u_graph",
        params={"n": n, "d": d},
        vertices=g.order,
        edges=g.size,
        predicted_edges=blow_up_edge_count(spec),
        bound=coef * math.log2(n / d),
        bound_name="20dn*log2(n/d)",
        strict=False,
        satisfied=le_times_log2(g.size, coef, Fraction(n, d)),
        extra={"N": len(sizes), "part_sizes": sizes, "is_complete": g.size == g.order * (g.order - 1) // 2},
    )
    return g, report


# -- (n, s, t)-systems --------------------------------------------------------------------

@dataclass(frozen=True)
class NstSystem:
    """Central clique ``0..t-1`` plus blue satellite paths, every satellite joined to the clique."""

    graph: Graph
    frozen: Coloring
    clique: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.graph.order

    @property
    def s(self) -> int:
        return len(self.paths)

    @property
    def t(self) -> int:
        return len(self.clique)

    def meets_threshold(self, d: int) -> bool:
        return self.t >= 10 * d + 4 * self.s

    def to_json(self) -> dict:
        return {"n": self.n, "s": self.s, "t": self.t, "path_orders": [len(p) for p in self.paths]}


def nst_system(n: int, s: int, t: int, path_orders: Sequence[int]) -> NstSystem:
    path_orders = list(path_orders)
    if len(path_orders) != s:
        raise GraphError(f"expected {s} path orders, got {len(path_orders)}")
    if any(k < 1 for k in path_orders):
        raise GraphError("satellite paths need at least one vertex")
    if t < 0 or n != t + sum(path_orders):
        raise GraphError(f"n = {n} but t + sum(path orders) = {t + sum(path_orders)}")
    edges = [(u, v) for u in range(t) for v in range(u + 1, t)]
    paths = []
    blue_edges = []
    v = t
    for k in path_orders:
        p = tuple(range(v, v + k))
        paths.append(p)
        blue_edges += list(zip(p, p[1:]))
        for x in p:
            edges += [(c, x) for c in range(t)]
        v += k
    g = Graph.from_edges(n, edges + blue_edges)
    frozen = Coloring.from_edge_colors(g, blue_edges=blue_edges)
    return NstSystem(g, frozen, tuple(range(t)), tuple(paths))


def nst_from_json(data: dict) -> NstSystem:
    orders = data["path_orders"]
    return nst_system(data["n"], data.get("s", len(orders)), data["t"], orders)


# -- ring of gadgets ------------------------------------------------------------------------

def ring_glue(gadget: Graph, r: int) -> tuple[Graph, list[range]]:
    """Place ``2r`` sets W_1..W_2r in a ring and embed a gadget copy on each consecutive pair.

    ``|W_odd| = ceil(N/2)``, ``|W_even| = floor(N/2)``. Copies sit on (W_i, W_{i+1})
    for i < 2r and on (W_2r, W_1); gadget vertices in id order fill the first set
    of the pair in ascending order, then the second.
    """
    N = gadget.order
    if r < 2 or N < 2:
        raise GraphError("need r >= 2 and a gadget with at least 2 vertices")
    sizes = [(N + 1) // 2 if i % 2 == 0 else N // 2 for i in range(2 * r)]
    sets = []
    start = 0
    for s in sizes:
        sets.append(range(start, start + s))
        start += s
    edges = set()
    for i in range(2 * r):
        j = (i + 1) % (2 * r)
        emb = list(sets[i]) + list(sets[j])
        for u, v in gadget.edge_list:
            a, b = emb[u], emb[v]
            edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(start, sorted(edges)), sets


# -- random graph plus clique ----------------------------------------------------------------

def gnp(N: int, p, seed: int) -> Graph:
    """G(N, p): one draw per pair in lexicographic order from ``SplitMix64(seed)``."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise GraphError("p must lie in [0, 1]")
    rng = SplitMix64(seed)
    edges = [(u, v) for u in range(N) for v in range(u + 1, N) if rng.random() < p]
    return Graph.from_edges(N, edges)


def random_plus_clique(N: int, p, clique_size: int, seed: int) -> Graph:
    """G(N, p) on ``0..N-1`` joined completely to a new clique on ``N..N+clique_size-1``."""
    if N + clique_size > MAX_ORDER:
        raise GraphError("graph exceeds the vertex cap")
    base = gnp(N, p, seed)
    total = N + clique_size
    edges = list(base.edge_list)
    for c in range(N, total):
        edges += [(u, c) for u in range(c)]
    return Graph.from_edges(total, edges)


def sampled_cycle_density_check(g: Graph, subset_size: int, cycle_len: int, trials: int, seed: int,
                                subsets: list | None = None) -> float:
    """Fraction of sampled vertex subsets whose induced subgraph holds a ``cycle_len``-cycle.

    A diagnostic only. Pass ``subsets`` to record the samples drawn.
    """
    if subset_size > g.order:
        raise GraphError("subset larger than the graph")
    if trials <= 0:
        return 0.0
    rng = SplitMix64(seed)
    pattern = TargetPattern.cycle(cycle_len)
    hits = 0
    for _ in range(trials):
        chosen = sorted(rng.sample(range(g.order), subset_size))
        if subsets is not None:
            subsets.append(chosen)
        sub, _ = induced_subgraph(g, chosen)
        if find_target(sub, pattern) is not None:
            hits += 1
    return hits / trials


# -- bound tables ---------------------------------------------------------------------------

@dataclass
class IntervalReport:
    n: int
    d: int
    lower: float
    upper: float
    certified: bool


def interval_bounds(n: int, d: int) -> tuple[float, float]:
    """Float values of the lower and upper estimates for the restricted size Ramsey number."""
    L = math.log2(n / d)
    lower = n * max((d + 1) / 2, L / (8 * math.log2(L)))
    return lower, 20 * d * n * L


def certify_interval(n: int, d: int) -> bool:
    """Rational proof that lower <= upper, using integer floors/ceilings of the logs.

    Needs ``n >= 64d`` so that log2(n/d) >= 6 and log2 log2(n/d) >= 2.
    """
    ratio = Fraction(n, d)
    L_lo = floor_log2(ratio)            # <= log2(n/d)
    L_hi = L_lo + 1                      # > log2(n/d)
    if L_lo < 2:
        return False
    LL_lo = floor_log2(Fraction(L_lo))   # <= log2 log2(n/d)
    upper_lo = 20 * d * n * L_lo
    lower_hi = n * max(Fraction(d + 1, 2), Fraction(L_hi, 8 * LL_lo))
    return lower_hi <= upper_lo


def bound_table(kind: str, grid: Iterable[dict]) -> list:
    """Evaluate a construction (or the interval check) over a parameter grid."""
    out = []
    for params in grid:
        if kind == "u_graph":
            out.append(u_graph(params["n"], params["d"])[1])
        elif kind == "cycle_blowup":
            out.append(cycle_blowup(params["n"], params["d"], params["eta"])[1])
        elif kind == "interval":
            n, d = params["n"], params["d"]
            if n < 64 * d:
                raise GraphError("interval check needs n >= 64d")
            lo, hi = interval_bounds(n, d)
            out.append(IntervalReport(n, d, lo, hi, certify_interval(n, d)))
        else:
            raise GraphError(f"unknown bound table kind {kind!r}")
    return out
