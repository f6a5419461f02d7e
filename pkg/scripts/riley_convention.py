"""Which pattern exponent reproduces Riley's family beta*/alpha*?

For each (alpha, beta, d, m) the family slope is compared with the pattern
value for c_1 = eps * alpha**x, x in {d - 2, d}, eps in {+1, -1}.
"""

import argparse
from dataclasses import dataclass
from math import gcd

from heckoid import HeckoidIndex, OrbitBudget, PatternParams, Slope, is_in_orbit, riley_family
from heckoid.slopes import DomainError


@dataclass(frozen=True)
class Config:
    max_alpha: int = 7
    max_d: int = 4
    ms: tuple = (3, 4, 5)


def main(cfg: Config) -> None:
    rows = 0
    hits = {"d-2": 0, "d": 0}
    for alpha in range(2, cfg.max_alpha + 1):
        for beta in range(1, alpha):
            if gcd(alpha, beta) != 1:
                continue
            r = Slope(alpha - beta, alpha)
            for d in range(2, cfg.max_d + 1):
                for m in cfg.ms:
                    try:
                        s = riley_family(alpha, beta, d, m, 1)
                    except DomainError:
                        continue
                    idx = HeckoidIndex(m)
                    rows += 1
                    for name, x in (("d-2", d - 2), ("d", d)):
                        vals = {PatternParams(0, (1,), (e * alpha**x,)).evaluate(r, idx) for e in (1, -1)}
                        hits[name] += s in vals
    print(f"{rows} family members; pattern matches by exponent: {hits}")

    # members with e > 1 leave the pattern family
    for e in (1, 5, 7):
        s = riley_family(3, 1, 2, 4, e)
        mem = is_in_orbit(s, "2/3", HeckoidIndex(4), OrbitBudget.of(6))
        print(f"e={e}: {s} {mem.verdict}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-alpha", type=int, default=7)
    ap.add_argument("--max-d", type=int, default=4)
    a = ap.parse_args()
    main(Config(a.max_alpha, a.max_d))
