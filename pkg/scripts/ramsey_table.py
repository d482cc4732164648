"""Tabulate small cycle Ramsey numbers r(C_n, C_2d) next to n + d - 1.

    python scripts/ramsey_table.py --n 4 5 6 7 --d 2
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from sizeramsey.arrowing import Budget, ramsey_number
from sizeramsey.graph import TargetPattern


@dataclass
class TableConfig:
    n_values: list[int] = field(default_factory=lambda: [4, 5, 6, 7])
    d: int = 2
    m_max: int = 12
    threads: int = 1
    max_nodes: int | None = None
    method: str = "search"


def run(cfg: TableConfig) -> list[dict]:
    rows = []
    for n in cfg.n_values:
        red, blue = TargetPattern.cycle(n), TargetPattern.cycle(2 * cfg.d)
        t0 = time.perf_counter()
        res = ramsey_number(red, blue, cfg.m_max, Budget(max_nodes=cfg.max_nodes), cfg.threads, cfg.method)
        rows.append({
            "n": n, "d": cfg.d, "value": res.value,
            "formula": n + cfg.d - 1 if n >= 3 * cfg.d else None,
            "nodes": sum(s.nodes for s in res.stats),
            "seconds": round(time.perf_counter() - t0, 3),
        })
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[4, 5, 6, 7])
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--max", type=int, default=12)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--method", choices=["search", "cnf"], default="search")
    ap.add_argument("--json", help="write rows here")
    a = ap.parse_args()
    cfg = TableConfig(a.n, a.d, a.max, a.threads, method=a.method)
    rows = run(cfg)
    print(f"{'n':>3} {'d':>2} {'r(Cn,C2d)':>10} {'n+d-1':>6} {'nodes':>8} {'sec':>8}")
    for r in rows:
        formula = "-" if r["formula"] is None else r["formula"]
        print(f"{r['n']:>3} {r['d']:>2} {r['value']:>10} {formula:>6} {r['nodes']:>8} {r['seconds']:>8}")
    if a.json:
        with open(a.json, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
