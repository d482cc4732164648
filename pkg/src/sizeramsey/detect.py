"""Exact structural detectors: target copies, exact-length paths, kappa and alpha."""
from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Optional

from .graph import Color, Coloring, Graph, GraphError, PatternKind, TargetPattern, bits, bfs_distances, reach

INDEPENDENCE_CAP = 64


class EnumerationOverflow(RuntimeError):
    """More copies than the cap allows; use the search engine instead of a CNF."""


def _host(g: Graph, coloring: Optional[Coloring], color: Optional[Color]) -> Graph:
    if coloring is None:
        return g
    if coloring.graph is not g and not coloring.graph.same_as(g):
        raise GraphError("coloring belongs to a different graph")
    return coloring.color_graph(color)


def _core(rows, k: int, alive: int) -> int:
    """Peel vertices with fewer than ``k`` neighbours inside ``alive``."""
    changed = True
    while changed:
        changed = False
        for u in bits(alive):
            if (rows[u] & alive).bit_count() < k:
                alive &= ~(1 << u)
                changed = True
    return alive


def find_target(g: Graph, pattern: TargetPattern, coloring: Coloring | None = None,
                color: Color | None = None) -> Optional[tuple[int, ...]]:
    """Return one copy of ``pattern`` as a vertex sequence, or ``None``.

    With ``coloring`` and ``color`` only edges of that color are usable. Cycles
    and paths come back in traversal order; a biclique ``K_{a,b}`` comes back as
    its ``a``-side followed by its ``b``-side.
    """
    h = _host(g, coloring, color)
    if pattern.vertex_count > h.order:
        return None
    if pattern.kind is PatternKind.CYCLE:
        return _find_cycle(h, pattern.k)
    if pattern.kind is PatternKind.PATH:
        return _find_path(h, pattern.k)
    return _find_biclique(h, pattern.a, pattern.b)


def _degree_order(h: Graph, alive: int) -> list[int]:
    return sorted(bits(alive), key=lambda u: ((h.rows[u] & alive).bit_count(), u))


def _find_cycle(h: Graph, k: int) -> Optional[tuple[int, ...]]:
    rows = h.rows
    alive = _core(rows, 2, h.all_vertices)
    for s in _degree_order(h, alive):
        if (reach(h, s, alive)).bit_count() >= k:
            found = _cycle_from(rows, s, k, alive, h)
            if found is not None:
                return found
        alive &= ~(1 << s)
        alive = _core(rows, 2, alive)
    return None


def _cycle_from(rows, s: int, k: int, alive: int, h: Graph) -> Optional[tuple[int, ...]]:
    dist = bfs_distances(h, s, alive)
    path = [s]
    allowed = alive & ~(1 << s)

    def dfs(u: int, visited: int) -> bool:
        length = len(path)
        if length == k:
            return bool(rows[u] >> s & 1)
        need = k - length + 1  # edges still to walk, closing edge included
        for v in bits(rows[u] & allowed & ~visited):
            dv = dist[v]
            if dv < 0 or dv > need - 1:
                continue
            path.append(v)
            if dfs(v, visited | 1 << v):
                return True
            path.pop()
        return False

    return tuple(path) if dfs(s, 1 << s) else None


def _find_path(h: Graph, k: int) -> Optional[tuple[int, ...]]:
    if k == 1:
        return (0,) if h.order else None
    rows = h.rows
    alive = h.all_vertices
    for s in _degree_order(h, alive):
        comp = reach(h, s, h.all_vertices)
        if comp.bit_count() < k:
            continue
        path = [s]
        if _extend_path(rows, h, path, 1 << s, k, comp):
            return tuple(path)
    return None


def _extend_path(rows, h: Graph, path: list, visited: int, k: int, allowed: int) -> bool:
    if len(path) == k:
        return True
    u = path[-1]
    need = k - len(path)
    if need >= 3:
        room = reach(h, u, allowed & ~visited | 1 << u).bit_count() - 1
        if room < need:
            return False
    for v in bits(rows[u] & allowed & ~visited):
        path.append(v)
        if _extend_path(rows, h, path, visited | 1 << v, k, allowed):
            return True
        path.pop()
    return False


def _find_biclique(h: Graph, a: int, b: int) -> Optional[tuple[int, ...]]:
    swapped = a > b
    if swapped:
        a, b = b, a
    rows = h.rows
    cand = 0
    for u in range(h.order):
        if rows[u].bit_count() >= b:
            cand |= 1 << u
    chosen: list[int] = []

    def grow(start_mask: int, common: int) -> Optional[int]:
        if len(chosen) == a:
            return common
        for u in bits(start_mask):
            c = common & rows[u]
            if c.bit_count() >= b:
                chosen.append(u)
                res = grow(start_mask >> (u + 1) << (u + 1), c)
                if res is not None:
                    return res
                chosen.pop()
        return None

    common = grow(cand, h.all_vertices)
    if common is None:
        return None
    side_b = list(bits(common))[:b]
    if swapped:
        return tuple(side_b) + tuple(chosen)
    return tuple(chosen) + tuple(side_b)


def witness_edges(pattern: TargetPattern, witness: tuple[int, ...]) -> list[tuple[int, int]]:
    """Edges (as sorted pairs) of the copy described by ``witness``."""
    if pattern.kind is PatternKind.CYCLE:
        pairs = [(witness[i], witness[(i + 1) % len(witness)]) for i in range(len(witness))]
    elif pattern.kind is PatternKind.PATH:
        pairs = list(zip(witness, witness[1:]))
    else:
        side_a, side_b = witness[:pattern.a], witness[pattern.a:]
        pairs = [(u, v) for u in side_a for v in side_b]
    return sorted((min(p), max(p)) for p in pairs)


def is_copy(g: Graph, pattern: TargetPattern, witness, coloring: Coloring | None = None,
            color: Color | None = None) -> bool:
    """Check directly that ``witness`` spells a copy of ``pattern`` in the given color."""
    h = _host(g, coloring, color)
    if len(witness) != pattern.vertex_count or len(set(witness)) != len(witness):
        return False
    if any(not 0 <= v < h.order for v in witness):
        return False
    return all(h.has_edge(u, v) for u, v in witness_edges(pattern, tuple(witness)))


# -- enumeration ----------------------------------------------------------------

def copy_masks(g: Graph, pattern: TargetPattern, cap: int = 10**7) -> list[int]:
    """All copies of ``pattern`` in ``g`` as edge-id bitmasks, sorted ascending.

    Copies are identified by edge set. Raises ``EnumerationOverflow`` past ``cap``.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    if pattern.vertex_count > g.order:
        return []
    eid = g.edge_index
    emask = {}
    for (u, v), i in eid.items():
        emask[(u, v)] = emask[(v, u)] = 1 << i
    found: set[int] = set()

    def add(mask: int):
        found.add(mask)
        if len(found) > cap:
            raise EnumerationOverflow(f"more than {cap} copies of {pattern}")

    rows = g.rows
    if pattern.kind is PatternKind.CYCLE:
        k = pattern.k
        for s in range(g.order):
            allowed = g.all_vertices >> (s + 1) << (s + 1)
            dist = bfs_distances(g, s, allowed | 1 << s)
            path = [s]

            def dfs(u, visited, mask):
                if len(path) == k:
                    if rows[u] >> s & 1 and path[1] < path[-1]:
                        add(mask | emask[(u, s)])
                    return
                need = k - len(path)
                for v in bits(rows[u] & allowed & ~visited):
                    if 0 <= dist[v] <= need:
                        path.append(v)
                        dfs(v, visited | 1 << v, mask | emask[(u, v)])
                        path.pop()

            dfs(s, 1 << s, 0)
    elif pattern.kind is PatternKind.PATH:
        k = pattern.k
        if k == 1:
            add(0)
        else:
            path = []

            def walk(u, visited, mask):
                if len(path) == k:
                    if path[0] < path[-1]:
                        add(mask)
                    return
                for v in bits(rows[u] & ~visited):
                    path.append(v)
                    walk(v, visited | 1 << v, mask | emask[(u, v)])
                    path.pop()

            for s in range(g.order):
                path.append(s)
                walk(s, 1 << s, 0)
                path.pop()
    else:
        a, b = sorted((pattern.a, pattern.b))
        for side_a in combinations(range(g.order), a):
            common = g.all_vertices
            for u in side_a:
                common &= rows[u]
            if common.bit_count() < b:
                continue
            for side_b in combinations(list(bits(common)), b):
                mask = 0
                for u in side_a:
                    for v in side_b:
                        mask |= emask[(u, v)]
                add(mask)
    return sorted(found)


def enumerate_copies(g: Graph, pattern: TargetPattern, cap: int = 10**7) -> list[tuple[int, ...]]:
    """Every distinct copy of ``pattern`` as a sorted tuple of edge ids, in sorted order."""
    return sorted(tuple(bits(m)) for m in copy_masks(g, pattern, cap))


# -- exact-length paths ---------------------------------------------------------------

def _bipartition(g: Graph) -> Optional[list[int]]:
    side = [-1] * g.order
    for s in range(g.order):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in bits(g.rows[u]):
                if side[v] < 0:
                    side[v] = side[u] ^ 1
                    queue.append(v)
                elif side[v] == side[u]:
                    return None
    return side


def exact_length_path(g: Graph, x: int, y: int, length: int) -> Optional[tuple[int, ...]]:
    """A simple ``x``-``y`` path with exactly ``length`` edges, or ``None``."""
    if x == y:
        raise GraphError("endpoints must differ")
    if not 1 <= length < max(g.order, 2):
        raise GraphError(f"length {length} outside 1..order-1")
    side = _bipartition(g)
    if side is not None and (side[x] ^ side[y]) != length % 2:
        return None
    dist = bfs_distances(g, y)
    if dist[x] < 0 or dist[x] > length:
        return None
    rows = g.rows
    path = [x]

    def dfs(u: int, visited: int) -> bool:
        left = length - (len(path) - 1)
        if u == y:
            return left == 0
        if left >= 3:
            room = reach(g, u, g.all_vertices & ~visited | 1 << u)
            if not room >> y & 1 or room.bit_count() - 1 < left:
                return False
        for v in bits(rows[u] & ~visited):
            if dist[v] > left - 1 or (v == y and left != 1):
                continue
            path.append(v)
            if dfs(v, visited | 1 << v):
                return True
            path.pop()
        return False

    return tuple(path) if dfs(x, 1 << x) else None


# -- connectivity and independence --------------------------------------------------

def _local_connectivity(g: Graph, s: int, t: int, limit: int) -> int:
    """Max number of internally disjoint s-t paths (s, t non-adjacent), stopping at ``limit``."""
    n = g.order
    # split vertex v into v_in = 2v, v_out = 2v+1; unit capacity on v_in -> v_out
    cap: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a, b, c):
        if (a, b) not in cap:
            adj[a].append(b)
            adj[b].append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    big = n + 1
    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edge_list:
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)
    src, dst = 2 * s + 1, 2 * t
    flow = 0
    while flow < limit:
        parent = {src: src}
        queue = deque([src])
        while queue and dst not in parent:
            a = queue.popleft()
            for b in adj[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if dst not in parent:
            break
        b = dst
        while b != src:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity; ``order - 1`` for complete graphs."""
    n = g.order
    if n < 2:
        raise GraphError("connectivity needs at least 2 vertices")
    if g.size == n * (n - 1) // 2:
        return n - 1
    if not g.is_connected():
        return 0
    best = g.min_degree()
    for u in range(n):
        for v in range(u + 1, n):
            if not g.has_edge(u, v):
                best = min(best, _local_connectivity(g, u, v, best))
                if best == 0:
                    return 0
    return best


def independence_number(g: Graph, cap: int = INDEPENDENCE_CAP) -> int:
    """Exact independence number by branch and bound (at most ``cap`` vertices)."""
    if g.order > cap:
        raise GraphError(f"independence number capped at {cap} vertices (got {g.order})")
    return len(maximum_independent_set(g))


def maximum_independent_set(g: Graph, within: int | None = None) -> list[int]:
    rows = g.rows
    best: list[int] = []
    chosen: list[int] = []

    def bound(p: int) -> int:
        # an independent set holds at most one end of each edge of a greedy matching
        count = 0
        rest = p
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            rest ^= low
            nb = rows[u] & rest
            if nb:
                nb &= -nb
                rest ^= nb
            count += 1
        return count

    def search(p: int):
        nonlocal best
        if not p:
            if len(chosen) > len(best):
                best = chosen.copy()
            return
        if len(chosen) + bound(p) <= len(best):
            return
        # take a vertex of degree <= 1 greedily; it is always safe
        pick = -1
        maxd, maxv = -1, -1
        for u in bits(p):
            d = (rows[u] & p).bit_count()
            if d <= 1:
                pick = u
                break
            if d > maxd:
                maxd, maxv = d, u
        if pick >= 0:
            chosen.append(pick)
            search(p & ~rows[pick] & ~(1 << pick))
            chosen.pop()
            return
        w = maxv
        chosen.append(w)
        search(p & ~rows[w] & ~(1 << w))
        chosen.pop()
        search(p & ~(1 << w))

    search(g.all_vertices if within is None else within)
    return sorted(best)
