"""Swap-test accuracy: exact value vs classical sum, and 3-sigma coverage of sampling.

    python scripts/swap_test_sweep.py --pairs 50 --shots 1024,16384
"""

import argparse
import csv
import sys

from qdcprep.experiments import SwapSweepConfig, swap_test_sweep


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default="2,4,8")
    p.add_argument("--pairs", type=int, default=SwapSweepConfig.pairs)
    p.add_argument("--shots", default="1024,16384")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--real", action="store_true", help="real instead of complex random inputs")
    args = p.parse_args(argv)
    cfg = SwapSweepConfig(sizes=tuple(int(s) for s in args.sizes.split(",")), pairs=args.pairs,
                          shots=tuple(int(s) for s in args.shots.split(",")), seed=args.seed,
                          complex_inputs=not args.real)
    rows = swap_test_sweep(cfg)
    writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


if __name__ == "__main__":
    main()
