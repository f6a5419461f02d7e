"""Compare the BFS orbit with the pattern enumeration and the greedy descent.

Reports, per (r, m): how many pattern slopes are still missing from BFS as
the word length grows, and whether the descent recognises every BFS point.
Lengths 10 and 12 take a couple of minutes.
"""

import argparse
from dataclasses import dataclass

from heckoid import HeckoidIndex, OrbitBudget, is_in_orbit, orbit_bfs, orbit_enumerate_pattern

CASES = [("1/3", 4), ("2/3", 4), ("1/3", 3), ("2/5", 4)]


@dataclass(frozen=True)
class Config:
    t_max: int = 2
    c_bound: int = 3
    max_den: int = 500
    lengths: tuple = (6, 8, 10, 12)


def main(cfg: Config) -> None:
    for r, m in CASES:
        idx = HeckoidIndex(m)
        pattern = [s for s in orbit_enumerate_pattern(r, idx, cfg.t_max, cfg.c_bound) if s.den <= cfg.max_den]
        row = []
        for L in cfg.lengths:
            bfs = orbit_bfs(r, idx, L, 10**12)
            row.append(f"L={L}: {sum(s not in bfs for s in pattern)} missing")
        print(f"r={r} m={m}: {len(pattern)} pattern slopes; " + ", ".join(row))
        bfs = orbit_bfs(r, idx, 6, 10**9)
        missed = [s for s in bfs if not is_in_orbit(s, r, idx, OrbitBudget.of(8)).member]
        print(f"    descent misses {len(missed)} of {len(bfs)} BFS points at length 6")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t-max", type=int, default=2)
    ap.add_argument("--c-bound", type=int, default=3)
    a = ap.parse_args()
    main(Config(a.t_max, a.c_bound))
