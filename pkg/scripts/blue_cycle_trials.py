"""Run the long-blue-cycle extractor on seeded C_2d-free red colorings of the central clique.

    python scripts/blue_cycle_trials.py --n 33 --t 28 --paths 5 --d 2 --trials 100
"""
from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from sizeramsey.constructions import nst_system
from sizeramsey.graph import Coloring, Graph, bfs_distances
from sizeramsey.hamiltonicity import ClaimViolation, extract_blue_cycle
from sizeramsey.rng import SplitMix64


@dataclass
class TrialConfig:
    n: int = 33
    t: int = 28
    paths: list[int] = field(default_factory=lambda: [5])
    d: int = 2
    trials: int = 100
    seed: int = 0


def sparse_red(clique, d: int, rng: SplitMix64) -> list[tuple[int, int]]:
    """Random red graph on the clique with girth > 2d (so no red C_2d)."""
    pairs = list(combinations(clique, 2))
    rng.shuffle(pairs)
    g = Graph.empty(max(clique) + 1)
    red = []
    for u, v in pairs:
        dist = bfs_distances(g, u)[v]
        if dist == -1 or dist >= 2 * d:
            g = g.add_edges([(u, v)])
            red.append((u, v))
    return red


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=33)
    ap.add_argument("--t", type=int, default=28)
    ap.add_argument("--paths", type=int, nargs="*", default=[5])
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    cfg = TrialConfig(a.n, a.t, a.paths, a.d, a.trials, a.seed)
    sysm = nst_system(cfg.n, len(cfg.paths), cfg.t, cfg.paths)
    print(f"system n={sysm.n} s={sysm.s} t={sysm.t}; threshold t >= 10d+4s: {sysm.meets_threshold(cfg.d)}")
    outcomes = Counter()
    for i in range(cfg.trials):
        rng = SplitMix64(cfg.seed + i)
        col = Coloring.from_red_edges(sysm.graph, sparse_red(list(sysm.clique), cfg.d, rng))
        try:
            ex = extract_blue_cycle(sysm, col, cfg.d)
        except ClaimViolation as exc:
            outcomes["claim violated"] += 1
            print(f"trial {i}: {exc}")
            continue
        if ex.found:
            outcomes[f"blue cycle on {len(ex.blue_cycle)} vertices"] += 1
        else:
            outcomes[ex.details.get("reason", "red C_2d")] += 1
    for k, v in sorted(outcomes.items()):
        print(f"{v:>5}  {k}")


if __name__ == "__main__":
    main()
