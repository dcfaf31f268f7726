"""Imaginary-amplitude size and strategy-manifold rank across gamma.

Writes one CSV row per gamma: the largest |Im A| over Haar-random pairs,
and the Jacobian rank at several random points (min/max over points).

    python scripts/gamma_scan.py --count 33 --samples 2000 --points 10 --out scan.csv
"""

import argparse
import csv
import sys

import numpy as np

from ewlgame import analysis


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=17)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--points", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rng = np.random.default_rng([args.seed, 2])
    points = [analysis.random_point(rng) for _ in range(args.points)]
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["gamma", "max_imag", "rank_min", "rank_max", "samples"])
    for gamma in np.linspace(0, np.pi / 2, args.count):
        ranks = [analysis.strategy_manifold_rank(gamma, p) for p in points]
        imag = analysis.max_imag_over_samples(gamma, args.samples, args.seed)
        writer.writerow([repr(float(gamma)), f"{imag:.6e}", min(ranks), max(ranks), args.samples])
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
