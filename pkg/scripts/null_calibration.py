#!/usr/bin/env python3
"""Null distribution of the z statistic: mean, variance, KS distance.

Draws independent (x, y) pairs, computes the z statistic for each, and
compares the empirical distribution to the standard normal.  Useful for
choosing a slice size: the approximation degrades as c/n grows.
"""

import argparse

import numpy as np
from scipy.stats import kstest

from sitscreen import PairedSample, SliceConfig, VarianceCalibration, sliced_estimate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1024)
    parser.add_argument("--slice-sizes", nargs="+", type=int,
                        default=[2, 8, 32, 128])
    parser.add_argument("--reps", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=4)
    args = parser.parse_args()

    cal = VarianceCalibration.fixed()
    print(f"n={args.n}, reps={args.reps}")
    print(f"{'c':>5} {'mean(z)':>9} {'var(z)':>8} {'KS':>7}")
    for c in args.slice_sizes:
        rng = np.random.default_rng(args.seed)
        z = np.empty(args.reps)
        for i in range(args.reps):
            x = rng.standard_normal(args.n)
            y = rng.standard_normal(args.n)
            z[i] = sliced_estimate(
                PairedSample(x, y), SliceConfig(c=c, tie_seed=i), calibration=cal
            ).z
        ks = kstest(z, "norm").statistic
        print(f"{c:>5} {z.mean():>9.4f} {z.var():>8.4f} {ks:>7.4f}")


if __name__ == "__main__":
    main()
