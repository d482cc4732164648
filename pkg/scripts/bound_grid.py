"""Edge counts of the u_graph and cycle_blowup constructions against their upper bounds.

    python scripts/bound_grid.py --d 2 3 4 5 --n-max 2000 --csv grid.csv
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field

from sizeramsey.constructions import cycle_blowup, u_graph


@dataclass
class GridConfig:
    d_values: list[int] = field(default_factory=lambda: [2, 3, 4, 5])
    n_max: int = 2000
    etas: list[str] = field(default_factory=lambda: ["0.25", "0.5", "1"])
    blowup_n: list[int] = field(default_factory=lambda: [64, 128, 256, 512])


def rows(cfg: GridConfig):
    for d in cfg.d_values:
        for n in range(14 * d, cfg.n_max + 1, 14 * d):
            g, rep = u_graph(n, d)
            yield {"kind": "u_graph", "n": n, "d": d, "eta": "", "vertices": g.order, "edges": g.size,
                   "bound": round(rep.bound, 1), "ratio": round(g.size / rep.bound, 4), "ok": rep.satisfied}
    for eta in cfg.etas:
        for n in cfg.blowup_n:
            g, rep = cycle_blowup(n, 2, eta)
            yield {"kind": "cycle_blowup", "n": n, "d": 2, "eta": eta, "vertices": g.order, "edges": g.size,
                   "bound": round(rep.bound, 1), "ratio": round(g.size / rep.bound, 4), "ok": rep.satisfied}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, nargs="+", default=[2, 3, 4, 5])
    ap.add_argument("--n-max", type=int, default=2000)
    ap.add_argument("--csv", help="output path (default: stdout)")
    a = ap.parse_args()
    cfg = GridConfig(a.d, a.n_max)
    out = open(a.csv, "w", newline="") if a.csv else sys.stdout
    writer = csv.DictWriter(out, fieldnames=["kind", "n", "d", "eta", "vertices", "edges", "bound", "ratio", "ok"])
    writer.writeheader()
    bad = 0
    for r in rows(cfg):
        writer.writerow(r)
        bad += not r["ok"]
    if a.csv:
        out.close()
    print(f"violations: {bad}", file=sys.stderr)
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
