"""Divisibility and elliptic-order sweep over several (r, m, k).

For every k coprime to m, checks the orbit points of small denominator at
the Heckoid roots, and prints the worst residual per case.  With
``--unlifted`` the odd-m roots use the plain target 2cos(2 pi k/m)
instead, which shows why the lift matters.
"""

import argparse
from dataclasses import dataclass
from math import gcd

import numpy as np

from heckoid import HeckoidIndex, divisibility_check, elliptic_order_check, heckoid_trace_target, trace_poly
from heckoid.acceptance import orbit_sample
from heckoid.reps import pm_identity_residual, word_matrix
from heckoid.words import slope_word


@dataclass(frozen=True)
class Config:
    slopes: tuple = ("1/3", "2/5", "3/7", "2/9")
    ms: tuple = (3, 4, 5, 6)
    sample: int = 5


def unlifted_worst(r, idx, k, sample):
    coeffs = [complex(c) for c in reversed(trace_poly(slope_word(r)).coeffs)]
    coeffs[-1] -= heckoid_trace_target(idx, k)
    return max(pm_identity_residual(word_matrix(slope_word(s), y))[0] for y in np.roots(coeffs) for s in sample)


def main(cfg: Config, unlifted: bool) -> None:
    for r in cfg.slopes:
        for m in cfg.ms:
            idx = HeckoidIndex(m)
            for k in (k for k in range(1, m // 2 + 1) if gcd(k, m) == 1):
                sample = orbit_sample(r, idx, cfg.sample)
                if unlifted:
                    print(f"r={r} m={m} k={k}: unlifted worst {unlifted_worst(r, idx, k, sample):.2e}")
                    continue
                worst = max(divisibility_check(s, r, idx, k=k).max_residual() for s in sample)
                ell = elliptic_order_check(r, idx, k)
                print(f"r={r} m={m} k={k}: divisibility worst {worst:.2e}, elliptic {ell.verdict}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--unlifted", action="store_true")
    main(Config(), ap.parse_args().unlifted)
