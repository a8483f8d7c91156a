"""Build and verify orbit certificates over seeded random pairs.

Prints one line per regime with counts, worst measured norms against the
certified limits, and wall time.  Exit status 1 if any certificate fails.

    python scripts/certificate_sweep.py --pairs 500 --n 120 --seed 0
"""

import argparse
import math
import random
import sys
import time
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from l0l1.construction import build_orbit_operator, orbit_limits
from l0l1.majorization import orbit_constant
from l0l1.operators import l0_expansion_bound, l1_operator_norm
from l0l1.verification import DominatedPairGenerator, passed, random_dominated_pair, verify_certificate


@dataclass
class SweepConfig:
    pairs: int = 300
    n: int = 100
    seed: int = 0


def regime(c: Fraction) -> str:
    return "C > 1" if c > 1 else f"C <= 1, m = {math.floor(1 / c)}"


def sweep(cfg: SweepConfig) -> int:
    rng = random.Random(cfg.seed)
    stats = defaultdict(lambda: {"count": 0, "failed": 0, "l1_ratio": Fraction(0), "l0_ratio": Fraction(0)})
    start = time.perf_counter()
    for _ in range(cfg.pairs):
        a, b = random_dominated_pair(DominatedPairGenerator(seed=rng.randrange(2**32), n=cfg.n))
        a = a.scale(Fraction(rng.randint(1, 40), rng.randint(1, 20)))
        _, c = orbit_constant(a, b, Fraction(1, 32))
        cert = build_orbit_operator(a, b, c)
        l1_limit, l0_limit = orbit_limits(c)
        s = stats[regime(c)]
        s["count"] += 1
        s["failed"] += not passed(verify_certificate(cert, a, b))
        s["l1_ratio"] = max(s["l1_ratio"], l1_operator_norm(cert.operator) / l1_limit)
        s["l0_ratio"] = max(s["l0_ratio"], Fraction(l0_expansion_bound(cert.operator), l0_limit))
    elapsed = time.perf_counter() - start

    failed = 0
    for name in sorted(stats):
        s = stats[name]
        failed += s["failed"]
        print(
            f"{name:<16} pairs={s['count']:<5} failed={s['failed']:<3} "
            f"worst l1/limit={float(s['l1_ratio']):.3f} worst l0/limit={float(s['l0_ratio']):.3f}"
        )
    print(f"{cfg.pairs} pairs in {elapsed:.1f} s")
    return 1 if failed else 0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=SweepConfig.pairs)
    parser.add_argument("--n", type=int, default=SweepConfig.n)
    parser.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = parser.parse_args()
    return sweep(SweepConfig(args.pairs, args.n, args.seed))


if __name__ == "__main__":
    sys.exit(main())
