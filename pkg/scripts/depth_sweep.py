"""Depth/width table for the loaders over a range of sizes (synthesis only).

    python scripts/depth_sweep.py --sizes 4,8,16,32,64 --out depth.csv
"""

import argparse
import csv
import sys

from qdcprep.experiments import DepthSweepConfig, depth_sweep


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default=",".join(map(str, DepthSweepConfig.sizes)))
    p.add_argument("--methods", default=",".join(DepthSweepConfig.methods))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cnot-max-size", type=int, default=DepthSweepConfig.cnot_max_size)
    p.add_argument("--no-timing", action="store_true")
    p.add_argument("--out", "-o")
    args = p.parse_args(argv)
    cfg = DepthSweepConfig(sizes=tuple(int(s) for s in args.sizes.split(",")),
                           methods=tuple(args.methods.split(",")), seed=args.seed,
                           cnot_max_size=args.cnot_max_size, timing=not args.no_timing)
    rows = depth_sweep(cfg)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
