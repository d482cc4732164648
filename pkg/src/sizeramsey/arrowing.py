"""Exact decision of G -> (H1, H2) by propagation search, DIMACS export and small Ramsey numbers."""
from __future__ import annotations

import hashlib
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .codecs import encode_graph6
from .detect import EnumerationOverflow, copy_masks, find_target
from .graph import Color, Coloring, Graph, GraphError, TargetPattern, bits
from .sat import parse_dimacs, solve_cnf

log = logging.getLogger(__name__)

DEFAULT_COPY_CAP = 10**7
RAW_SEARCH_EDGE_CAP = 64


class BudgetExhausted(RuntimeError):
    """Search gave up before reaching a verdict."""


class FrozenContradiction(GraphError):
    """A total coloring disagrees with the instance's pre-colored edges."""


@dataclass(frozen=True)
class ArrowingInstance:
    graph: Graph
    red_target: TargetPattern
    blue_target: TargetPattern
    frozen: Optional[Coloring] = None

    def __post_init__(self):
        if self.frozen is None:
            object.__setattr__(self, "frozen", Coloring.uncolored(self.graph))
        elif not self.frozen.graph.same_as(self.graph):
            raise GraphError("frozen coloring belongs to a different graph")

    def swapped(self) -> "ArrowingInstance":
        return ArrowingInstance(self.graph, self.blue_target, self.red_target, self.frozen.swapped())

    def instance_hash(self) -> str:
        f = self.frozen
        text = f"{encode_graph6(self.graph).decode()}|{self.red_target}|{self.blue_target}|{f.red:x}|{f.blue:x}"
        return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class SearchStats:
    nodes: int = 0
    propagations: int = 0
    copies: int = 0


@dataclass
class ArrowingResult:
    arrows: bool
    coloring: Optional[Coloring]
    stats: SearchStats = field(default_factory=SearchStats)
    method: str = "search"

    @property
    def verdict(self) -> str:
        return "arrows" if self.arrows else "good-coloring"


@dataclass(frozen=True)
class Budget:
    """Limits for ``arrows_check``; ``None`` means unlimited."""

    max_nodes: Optional[int] = None
    copy_cap: int = DEFAULT_COPY_CAP
    raw_edge_cap: int = RAW_SEARCH_EDGE_CAP


# -- propagation search ---------------------------------------------------------------

class _Engine:
    """DFS over uncolored edges with forcing: a target copy missing one edge forces it."""

    def __init__(self, m: int, red_copies: list[int], blue_copies: list[int], max_nodes):
        self.m = m
        self.copies = (red_copies, blue_copies)
        # occurrence lists per edge, per color
        occ_r = [[] for _ in range(m)]
        occ_b = [[] for _ in range(m)]
        for c in red_copies:
            for e in bits(c):
                occ_r[e].append(c)
        for c in blue_copies:
            for e in bits(c):
                occ_b[e].append(c)
        self.occ = (occ_r, occ_b)
        self.max_nodes = max_nodes
        self.stats = SearchStats(copies=len(red_copies) + len(blue_copies))

    def propagate(self, red: int, blue: int, queue: list[tuple[int, int]]):
        """Apply assignments in ``queue`` (edge, 0=red/1=blue) with forcing.

        Returns the new ``(red, blue)`` or ``None`` on a monochromatic copy.
        """
        occ_r, occ_b = self.occ
        while queue:
            e, col = queue.pop()
            bit = 1 << e
            if col == 0:
                if blue & bit:
                    return None
                if red & bit:
                    continue
                red |= bit
                for c in occ_r[e]:
                    if c & blue:
                        continue
                    rest = c & ~red
                    if not rest:
                        return None
                    if rest & (rest - 1) == 0:
                        self.stats.propagations += 1
                        queue.append((rest.bit_length() - 1, 1))
            else:
                if red & bit:
                    return None
                if blue & bit:
                    continue
                blue |= bit
                for c in occ_b[e]:
                    if c & red:
                        continue
                    rest = c & ~blue
                    if not rest:
                        return None
                    if rest & (rest - 1) == 0:
                        self.stats.propagations += 1
                        queue.append((rest.bit_length() - 1, 0))
        return red, blue

    def initial(self, red: int, blue: int):
        """Check frozen edges and run forcing from scratch."""
        for c in self.copies[0]:
            if c & ~red == 0:
                return None
        for c in self.copies[1]:
            if c & ~blue == 0:
                return None
        queue = []
        for c in self.copies[0]:
            if not c & blue:
                rest = c & ~red
                if rest & (rest - 1) == 0:
                    queue.append((rest.bit_length() - 1, 1))
        for c in self.copies[1]:
            if not c & red:
                rest = c & ~blue
                if rest & (rest - 1) == 0:
                    queue.append((rest.bit_length() - 1, 0))
        return self.propagate(red, blue, queue)

    def pick(self, red: int, blue: int) -> int:
        """Uncolored edge lying in the most nearly complete live copies."""
        free = ((1 << self.m) - 1) & ~(red | blue)
        score = {}
        for cs, own, opp in ((self.copies[0], red, blue), (self.copies[1], blue, red)):
            for c in cs:
                if c & opp:
                    continue
                rest = c & ~own
                w = 1 << (12 - min(12, rest.bit_count()))
                for e in bits(rest):
                    score[e] = score.get(e, 0) + w
        if not score:
            return (free & -free).bit_length() - 1
        return max(score, key=lambda e: (score[e], -e))

    def search(self, red: int, blue: int):
        """Return a good total ``(red, blue)`` extending the state, or ``None``."""
        self.stats.nodes += 1
        if self.max_nodes is not None and self.stats.nodes > self.max_nodes:
            raise BudgetExhausted(f"node budget {self.max_nodes} exhausted")
        free = ((1 << self.m) - 1) & ~(red | blue)
        if not free:
            return red, blue
        e = self.pick(red, blue)
        for col in (0, 1):
            state = self.propagate(red, blue, [(e, col)])
            if state is not None:
                found = self.search(*state)
                if found is not None:
                    return found
        return None


def _lazy_search(inst: ArrowingInstance, max_nodes, stats: SearchStats):
    """Exact search without copy lists: detect monochromatic targets after each assignment."""
    g = inst.graph
    free = list(bits(inst.frozen.uncolored_mask))

    def bad(red: int, blue: int) -> bool:
        col = Coloring(g, red, blue)
        return (find_target(g, inst.red_target, col, Color.RED) is not None
                or find_target(g, inst.blue_target, col, Color.BLUE) is not None)

    def rec(i: int, red: int, blue: int):
        stats.nodes += 1
        if max_nodes is not None and stats.nodes > max_nodes:
            raise BudgetExhausted(f"node budget {max_nodes} exhausted")
        if bad(red, blue):
            return None
        if i == len(free):
            return red, blue
        bit = 1 << free[i]
        return rec(i + 1, red | bit, blue) or rec(i + 1, red, blue | bit)

    return rec(0, inst.frozen.red, inst.frozen.blue)


def _engine_for(inst: ArrowingInstance, budget: Budget) -> _Engine:
    red_copies = copy_masks(inst.graph, inst.red_target, budget.copy_cap)
    blue_copies = copy_masks(inst.graph, inst.blue_target, budget.copy_cap)
    return _Engine(inst.graph.size, red_copies, blue_copies, budget.max_nodes)


def _run_branch(args):
    inst, budget, red, blue = args
    eng = _engine_for(inst, budget)
    found = eng.search(red, blue)
    return found, eng.stats


def arrows_check(inst: ArrowingInstance, budget: Budget | None = None, threads: int = 1) -> ArrowingResult:
    """Decide whether every extension of ``inst.frozen`` contains red H1 or blue H2.

    Returns ``arrows=True`` or a good coloring (no red H1, no blue H2). Copy lists
    larger than ``budget.copy_cap`` switch to a slower lazy detector.
    """
    budget = budget or Budget()
    f = inst.frozen
    try:
        eng = _engine_for(inst, budget)
    except EnumerationOverflow:
        m = f.uncolored_mask.bit_count()
        if m > budget.raw_edge_cap:
            raise BudgetExhausted(f"{m} uncolored edges exceed the raw-search cap {budget.raw_edge_cap}")
        log.info("copy list overflow; falling back to lazy detection")
        stats = SearchStats()
        found = _lazy_search(inst, budget.max_nodes, stats)
        return _result(inst, found, stats, "lazy-search")

    start = eng.initial(f.red, f.blue)
    if start is None:
        return _result(inst, None, eng.stats, "search")
    if threads <= 1 or not (((1 << eng.m) - 1) & ~(start[0] | start[1])):
        found = eng.search(*start)
        return _result(inst, found, eng.stats, "search")

    # split on the first branching edge; red branch has priority for determinism
    e = eng.pick(*start)
    branches = []
    for col in (0, 1):
        st = eng.propagate(start[0], start[1], [(e, col)])
        if st is not None:
            branches.append((inst, budget, st[0], st[1]))
    stats = eng.stats
    found = None
    with ProcessPoolExecutor(max_workers=min(threads, max(1, len(branches)))) as pool:
        results = list(pool.map(_run_branch, branches))
    for res, st in results:
        stats.nodes += st.nodes
        stats.propagations += st.propagations
        if found is None and res is not None:
            found = res
    return _result(inst, found, stats, "search")


def _result(inst, found, stats, method) -> ArrowingResult:
    if found is None:
        return ArrowingResult(True, None, stats, method)
    coloring = Coloring(inst.graph, found[0], found[1])
    verdict = verify_coloring(inst, coloring)
    if verdict is not None:
        raise AssertionError(f"engine produced a bad coloring: {verdict}")
    return ArrowingResult(False, coloring, stats, method)


def verify_coloring(inst: ArrowingInstance, total: Coloring):
    """``None`` if ``total`` is good, else ``(color, copy)`` for a monochromatic target copy."""
    if not total.graph.same_as(inst.graph):
        raise GraphError("coloring domain does not match the instance graph")
    if not total.is_total():
        raise GraphError("coloring is not total")
    if not total.extends(inst.frozen):
        raise FrozenContradiction("total coloring contradicts the frozen edges")
    w = find_target(inst.graph, inst.red_target, total, Color.RED)
    if w is not None:
        return Color.RED, w
    w = find_target(inst.graph, inst.blue_target, total, Color.BLUE)
    if w is not None:
        return Color.BLUE, w
    return None


def brute_force_arrows(inst: ArrowingInstance) -> bool:
    """Reference oracle: try all 2^m extensions of the frozen coloring."""
    f = inst.frozen
    free = list(bits(f.uncolored_mask))
    g = inst.graph
    for assign in range(1 << len(free)):
        red, blue = f.red, f.blue
        for i, e in enumerate(free):
            if assign >> i & 1:
                red |= 1 << e
            else:
                blue |= 1 << e
        col = Coloring(g, red, blue)
        if (find_target(g, inst.red_target, col, Color.RED) is None
                and find_target(g, inst.blue_target, col, Color.BLUE) is None):
            return False
    return True


# -- Ramsey numbers -------------------------------------------------------------------

@dataclass
class RamseyResult:
    value: int
    good_coloring: Optional[Coloring]  # on K_{value-1}
    stats: list[SearchStats]


class NotFound(RuntimeError):
    pass


def ramsey_number(red: TargetPattern, blue: TargetPattern, m_max: int, budget: Budget | None = None,
                  threads: int = 1, method: str = "search") -> RamseyResult:
    """Least ``m <= m_max`` with ``K_m -> (red, blue)``, plus a good coloring of ``K_{m-1}``."""
    start = max(red.vertex_count, blue.vertex_count) - 1
    if start > m_max:
        raise GraphError("targets do not fit in m_max vertices")
    prev = None
    all_stats = []
    for m in range(max(start, 1), m_max + 1):
        inst = ArrowingInstance(Graph.complete(m), red, blue)
        if method == "cnf":
            res = arrows_via_cnf(inst, budget)
        else:
            res = arrows_check(inst, budget, threads)
        all_stats.append(res.stats)
        log.info("K_%d: %s (%d nodes)", m, res.verdict, res.stats.nodes)
        if res.arrows:
            return RamseyResult(m, prev, all_stats)
        prev = res.coloring
    raise NotFound(f"no arrowing complete graph up to {m_max} vertices")


# -- DIMACS -----------------------------------------------------------------------------

@dataclass
class CnfExport:
    text: bytes
    variables: list[int]  # DIMACS variable i+1 -> edge id
    clauses: list[list[int]]


def export_dimacs(inst: ArrowingInstance, cap: int = DEFAULT_COPY_CAP) -> CnfExport:
    """CNF whose models are exactly the good colorings; variable true = edge red.

    One variable per uncolored edge, in edge-id order. Each red-target copy gets
    a clause "some edge of it is blue", each blue-target copy "some edge is red";
    frozen edges are substituted, so a fully frozen monochromatic copy yields the
    empty clause.
    """
    f = inst.frozen
    free = list(bits(f.uncolored_mask))
    var = {e: i + 1 for i, e in enumerate(free)}
    clauses: list[list[int]] = []
    for copies, own, opp, sign in (
        (copy_masks(inst.graph, inst.red_target, cap), f.red, f.blue, -1),
        (copy_masks(inst.graph, inst.blue_target, cap), f.blue, f.red, 1),
    ):
        for c in copies:
            if c & opp:
                continue
            clauses.append([sign * var[e] for e in bits(c & ~own)])
    lines = [f"p cnf {len(free)} {len(clauses)}"]
    lines += [" ".join(map(str, cl + [0])) for cl in clauses]
    text = ("\n".join(lines) + "\n").encode()
    return CnfExport(text, free, clauses)


def coloring_from_model(inst: ArrowingInstance, export: CnfExport, model: dict[int, bool]) -> Coloring:
    red, blue = inst.frozen.red, inst.frozen.blue
    for i, e in enumerate(export.variables):
        if model.get(i + 1, False):
            red |= 1 << e
        else:
            blue |= 1 << e
    return Coloring(inst.graph, red, blue)


def arrows_via_cnf(inst: ArrowingInstance, budget: Budget | None = None, solver: str = "dpll") -> ArrowingResult:
    """Decide arrowing through the DIMACS encoding and a SAT solver."""
    budget = budget or Budget()
    export = export_dimacs(inst, budget.copy_cap)
    nvars, clauses = parse_dimacs(export.text)
    model = solve_cnf(nvars, clauses, solver=solver)
    stats = SearchStats(copies=len(export.clauses))
    if model is None:
        return ArrowingResult(True, None, stats, "cnf")
    col = coloring_from_model(inst, export, model)
    if verify_coloring(inst, col) is not None:
        raise AssertionError("SAT model does not decode to a good coloring")
    return ArrowingResult(False, col, stats, "cnf")
