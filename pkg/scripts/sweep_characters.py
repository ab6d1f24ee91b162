"""Sweep random depth-zero characters over the preset covers and tabulate the comparison verdicts."""

import argparse
import collections
import random
import time

from genuine_hecke.presets import CONFIGS, random_character
from genuine_hecke.shimura import ShimuraComparison


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20, help="characters per preset")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for key, cfg in CONFIGS.items():
        rng = random.Random(f"{args.seed}:{key}")
        t0 = time.perf_counter()
        verdicts = collections.Counter()
        upsilon_ok = 0
        index = collections.Counter()
        for _ in range(args.count):
            comp = ShimuraComparison(random_character(cfg, rng))
            upsilon_ok += comp.upsilon_check(seed=args.seed, trials=20)["verdict"]
            rep = comp.fullness_and_torsion()
            verdicts[rep["verdict"]] += 1
            index[rep["cover_index"]] += 1
        print(f"{key:4s} n={cfg.n} q={cfg.field.q}: Upsilon {upsilon_ok}/{args.count}, "
              f"full algebras {dict(sorted(verdicts.items()))}, [W_chi : W_chi,ex] {dict(sorted(index.items()))} "
              f"({time.perf_counter() - t0:.2f} s)")


if __name__ == "__main__":
    main()
