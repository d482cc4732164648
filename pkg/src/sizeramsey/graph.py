"""Dense simple graphs over bitset rows, edge colorings and target patterns.

Vertices are ``0..order-1``. Row ``u`` of the adjacency is a Python int whose
bit ``v`` is set iff ``{u, v}`` is an edge. Edge ids are positions in the
canonical ``edge_list`` (pairs ``(u, v)`` with ``u < v``, sorted).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

MAX_ORDER = 4096


class GraphError(ValueError):
    """Malformed graph input or a request outside the supported range."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, eq=False)
class Graph:
    order: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.order <= MAX_ORDER:
            raise GraphError(f"order {self.order} outside 0..{MAX_ORDER}")
        if len(self.rows) != self.order:
            raise GraphError("row count does not match order")
        full = (1 << self.order) - 1
        for u, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {u} references a vertex out of range")
            if row >> u & 1:
                raise GraphError(f"self-loop at {u}")
            for v in bits(row):
                if not self.rows[v] >> u & 1:
                    raise GraphError(f"asymmetric adjacency at {u},{v}")

    # -- construction -------------------------------------------------------
    @classmethod
    def _trusted(cls, order: int, rows: tuple[int, ...]) -> "Graph":
        """Skip validation for rows that are symmetric and loop-free by construction."""
        g = object.__new__(cls)
        object.__setattr__(g, "order", order)
        object.__setattr__(g, "rows", rows)
        return g

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if not 0 <= order <= MAX_ORDER:
            raise GraphError(f"order {order} outside 0..{MAX_ORDER}")
        rows = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise GraphError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << u) for u in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.complete_bipartite(1, leaves)

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    # -- derived data -------------------------------------------------------
    @cached_property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.order) for v in bits(self.rows[u] >> (u + 1) << (u + 1)))

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edge_list)}

    @cached_property
    def size(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    @property
    def all_vertices(self) -> int:
        return (1 << self.order) - 1

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.order else 0

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edge_id(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        try:
            return self.edge_index[(u, v)]
        except KeyError:
            raise GraphError(f"({u}, {v}) is not an edge") from None

    def neighbors(self, u: int) -> list[int]:
        return list(bits(self.rows[u]))

    def edge_subgraph(self, edge_mask: int) -> "Graph":
        """Spanning subgraph keeping the edges whose ids are set in ``edge_mask``."""
        el = self.edge_list
        return Graph.from_edges(self.order, (el[i] for i in bits(edge_mask)))

    def add_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        return Graph.from_edges(self.order, list(self.edge_list) + [tuple(e) for e in edges])

    def complement(self) -> "Graph":
        full = self.all_vertices
        return Graph(self.order, tuple(full & ~r & ~(1 << u) for u, r in enumerate(self.rows)))

    def is_connected(self) -> bool:
        if self.order <= 1:
            return True
        return reach(self, 0, self.all_vertices) == self.all_vertices

    def same_as(self, other: "Graph") -> bool:
        return self.order == other.order and self.rows == other.rows

    def __eq__(self, other):
        return isinstance(other, Graph) and self.same_as(other)

    def __hash__(self):
        return hash((self.order, self.rows))

    def __repr__(self):
        return f"Graph(order={self.order}, size={self.size})"


def reach(g: Graph, src: int, allowed: int) -> int:
    """Vertex mask reachable from ``src`` inside ``allowed`` (src included)."""
    seen = 1 << src
    frontier = seen
    rows = g.rows
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= rows[u]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def bfs_distances(g: Graph, src: int, allowed: int | None = None) -> list[int]:
    """Hop distances from ``src`` (``-1`` when unreachable) within ``allowed``."""
    if allowed is None:
        allowed = g.all_vertices
    dist = [-1] * g.order
    dist[src] = 0
    seen = 1 << src
    frontier = seen
    level = 0
    rows = g.rows
    while frontier:
        level += 1
        nxt = 0
        for u in bits(frontier):
            nxt |= rows[u]
        nxt &= allowed & ~seen
        for v in bits(nxt):
            dist[v] = level
        seen |= nxt
        frontier = nxt
    return dist


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on ``vertices``, relabelled ``0..k-1`` in ascending id order.

    Returns the graph and the map from new ids to original ids.
    """
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.order:
            raise GraphError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u in keep for v in bits(g.rows[u]) if v > u and v in pos]
    return Graph.from_edges(len(keep), edges), tuple(keep)


# -- target patterns ----------------------------------------------------------

class PatternKind(enum.Enum):
    CYCLE = "cycle"
    PATH = "path"
    BICLIQUE = "biclique"


@dataclass(frozen=True)
class TargetPattern:
    """A cycle on exactly ``k`` vertices, a path on ``k`` vertices or ``K_{a,b}``."""

    kind: PatternKind
    k: int = 0
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.kind is PatternKind.CYCLE and self.k < 3:
            raise GraphError("cycle length must be at least 3")
        if self.kind is PatternKind.PATH and self.k < 1:
            raise GraphError("path order must be at least 1")
        if self.kind is PatternKind.BICLIQUE and (self.a < 1 or self.b < 1):
            raise GraphError("biclique sides must be positive")

    @classmethod
    def cycle(cls, k: int) -> "TargetPattern":
        return cls(PatternKind.CYCLE, k=k)

    @classmethod
    def path(cls, k: int) -> "TargetPattern":
        return cls(PatternKind.PATH, k=k)

    @classmethod
    def biclique(cls, a: int, b: int) -> "TargetPattern":
        return cls(PatternKind.BICLIQUE, a=a, b=b)

    @classmethod
    def parse(cls, text: str) -> "TargetPattern":
        """Parse ``cycle:6``, ``path:4`` or ``biclique:2,3``."""
        try:
            kind, _, arg = text.partition(":")
            kind = PatternKind(kind.strip().lower())
            if kind is PatternKind.BICLIQUE:
                a, b = (int(x) for x in arg.split(","))
                return cls.biclique(a, b)
            return cls(kind, k=int(arg))
        except ValueError as exc:
            raise GraphError(f"cannot parse pattern {text!r}: {exc}") from None

    @property
    def vertex_count(self) -> int:
        return self.a + self.b if self.kind is PatternKind.BICLIQUE else self.k

    @property
    def edge_count(self) -> int:
        if self.kind is PatternKind.CYCLE:
            return self.k
        if self.kind is PatternKind.PATH:
            return self.k - 1
        return self.a * self.b

    def __str__(self):
        if self.kind is PatternKind.BICLIQUE:
            return f"biclique:{self.a},{self.b}"
        return f"{self.kind.value}:{self.k}"


# -- colorings ------------------------------------------------------------------

class Color(enum.IntEnum):
    UNCOLORED = 0
    RED = 1
    BLUE = 2

    def other(self) -> "Color":
        if self is Color.RED:
            return Color.BLUE
        if self is Color.BLUE:
            return Color.RED
        raise ValueError("uncolored has no opposite")


@dataclass(frozen=True)
class Coloring:
    """Partial red/blue coloring of ``graph``'s edges, stored as two edge-id masks."""

    graph: Graph
    red: int = 0
    blue: int = 0

    def __post_init__(self):
        if self.red & self.blue:
            raise GraphError("an edge cannot be both red and blue")
        if (self.red | self.blue) >> self.graph.size:
            raise GraphError("coloring references edge ids outside the graph")

    @classmethod
    def uncolored(cls, g: Graph) -> "Coloring":
        return cls(g)

    @classmethod
    def from_red_edges(cls, g: Graph, red_edges: Iterable[Sequence[int]]) -> "Coloring":
        """Total coloring: the listed edges red, every other edge blue."""
        red = 0
        for u, v in red_edges:
            red |= 1 << g.edge_id(u, v)
        return cls(g, red, ((1 << g.size) - 1) & ~red)

    @classmethod
    def from_edge_colors(cls, g: Graph, red_edges=(), blue_edges=()) -> "Coloring":
        red = to_mask(g.edge_id(u, v) for u, v in red_edges)
        blue = to_mask(g.edge_id(u, v) for u, v in blue_edges)
        return cls(g, red, blue)

    @property
    def full_mask(self) -> int:
        return (1 << self.graph.size) - 1

    @property
    def uncolored_mask(self) -> int:
        return self.full_mask & ~(self.red | self.blue)

    def is_total(self) -> bool:
        return self.uncolored_mask == 0

    def state(self, edge: int) -> Color:
        if self.red >> edge & 1:
            return Color.RED
        if self.blue >> edge & 1:
            return Color.BLUE
        return Color.UNCOLORED

    def mask(self, color: Color) -> int:
        return self.red if color is Color.RED else self.blue

    def color_graph(self, color: Color) -> Graph:
        return self.graph.edge_subgraph(self.mask(color))

    def edges_of(self, color: Color) -> list[tuple[int, int]]:
        el = self.graph.edge_list
        return [el[i] for i in bits(self.mask(color))]

    def extends(self, other: "Coloring") -> bool:
        """True iff every edge colored in ``other`` has the same color here."""
        return (other.red & ~self.red) == 0 and (other.blue & ~self.blue) == 0

    def with_edges(self, color: Color, edge_mask: int) -> "Coloring":
        if color is Color.RED:
            return Coloring(self.graph, self.red | edge_mask, self.blue & ~edge_mask)
        return Coloring(self.graph, self.red & ~edge_mask, self.blue | edge_mask)

    def swapped(self) -> "Coloring":
        return Coloring(self.graph, self.blue, self.red)

    def states(self) -> list[Color]:
        return [self.state(i) for i in range(self.graph.size)]
