"""DIMACS parsing and a minimal DPLL solver with unit propagation.

The DPLL here exists for cross-checking the search engine on small instances.
Large instances should go to an external solver; ``solve_cnf(..., solver="pysat")``
uses the optional ``python-sat`` package when installed.
"""
from __future__ import annotations

import sys
from typing import Optional


class DimacsError(ValueError):
    pass


def _int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise DimacsError(f"not an integer: {tok!r}") from None


def parse_dimacs(data: bytes | str) -> tuple[int, list[list[int]]]:
    if isinstance(data, bytes):
        data = data.decode()
    nvars = nclauses = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for line in data.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"bad problem line: {line!r}")
            nvars, nclauses = _int(parts[2]), _int(parts[3])
            continue
        for tok in line.split():
            lit = _int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        raise DimacsError("last clause not terminated by 0")
    if nvars is None:
        raise DimacsError("missing problem line")
    if len(clauses) != nclauses:
        raise DimacsError(f"header announces {nclauses} clauses, found {len(clauses)}")
    for cl in clauses:
        for lit in cl:
            if abs(lit) > nvars:
                raise DimacsError(f"literal {lit} exceeds declared variable count")
    return nvars, clauses


def dpll(nvars: int, clauses: list[list[int]]) -> Optional[dict[int, bool]]:
    """Return a satisfying assignment (every variable set) or ``None`` if UNSAT."""
    if any(not cl for cl in clauses):
        return None
    occurs: dict[int, list[int]] = {}
    for i, cl in enumerate(clauses):
        for lit in cl:
            occurs.setdefault(lit, []).append(i)
    value: dict[int, bool] = {}
    trail: list[int] = []

    def lit_value(lit: int) -> Optional[bool]:
        v = value.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def assign(lit: int) -> bool:
        """Set ``lit`` true and propagate units; False on conflict."""
        queue = [lit]
        while queue:
            lit = queue.pop()
            cur = lit_value(lit)
            if cur is True:
                continue
            if cur is False:
                return False
            value[abs(lit)] = lit > 0
            trail.append(abs(lit))
            for ci in occurs.get(-lit, ()):
                unassigned = None
                count = 0
                sat = False
                for other in clauses[ci]:
                    ov = lit_value(other)
                    if ov is True:
                        sat = True
                        break
                    if ov is None:
                        count += 1
                        unassigned = other
                if sat:
                    continue
                if count == 0:
                    return False
                if count == 1:
                    queue.append(unassigned)
        return True

    def undo(mark: int):
        while len(trail) > mark:
            del value[trail.pop()]

    def choose() -> Optional[int]:
        best, best_len = None, None
        for cl in clauses:
            free = []
            for lit in cl:
                lv = lit_value(lit)
                if lv is True:
                    free = None
                    break
                if lv is None:
                    free.append(lit)
            if free and (best_len is None or len(free) < best_len):
                best, best_len = free[0], len(free)
        return best

    def solve() -> bool:
        lit = choose()
        if lit is None:
            return True
        mark = len(trail)
        for cand in (lit, -lit):
            if assign(cand) and solve():
                return True
            undo(mark)
        return False

    for cl in clauses:
        if len(cl) == 1 and not assign(cl[0]):
            return None
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * nvars + 100))
    try:
        if not solve():
            return None
    finally:
        sys.setrecursionlimit(limit)
    return {v: value.get(v, False) for v in range(1, nvars + 1)}


def solve_cnf(nvars: int, clauses: list[list[int]], solver: str = "dpll") -> Optional[dict[int, bool]]:
    if solver == "dpll":
        return dpll(nvars, clauses)
    if solver == "pysat":
        try:
            from pysat.solvers import Solver
        except ImportError as exc:
            raise RuntimeError("python-sat is not installed; use solver='dpll' or install the 'sat' extra") from exc
        if any(not cl for cl in clauses):
            return None
        with Solver(name="cadical153", bootstrap_with=clauses) as s:
            if not s.solve():
                return None
            model = set(s.get_model() or [])
        return {v: v in model for v in range(1, nvars + 1)}
    raise ValueError(f"unknown solver {solver!r}")
