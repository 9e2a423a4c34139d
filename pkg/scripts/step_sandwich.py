"""Compare the quadrature of (pi - eta)/r over [c_k, c_{k+1}] with its two-sided bound
on a random staircase, and show the partial integrals of the log staircases."""
import argparse
import math
import warnings

import numpy as np

from koenigs_shift import criteria as cr
from koenigs_shift import domains as dm
from koenigs_shift.quadrature import piecewise_simpson


def random_staircase(rng, steps):
    a = np.concatenate([[0.0], np.cumsum(rng.uniform(0.3, 2.0, steps))])
    b = a[1:] / np.minimum.accumulate(1 / rng.uniform(2.0, 6.0, steps))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", dm.StepShapeWarning)
        return dm.StepDomain(tuple(a), tuple(b))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--steps", type=int, default=6)
    args = parser.parse_args()
    s = random_staircase(np.random.default_rng(args.seed), args.steps)
    c, d = dm.cd_sequences(s)
    print(f"{'k':>3} {'lower':>12} {'integral':>12} {'upper':>12}  conditions")
    for k in range(1, s.steps):
        value, _ = piecewise_simpson(lambda r: (math.pi - dm.eta_step_closed_form(s, r)) / r,
                                     [c[k - 1], d[k - 1], c[k]], tol=1e-12)
        lo, hi = cr.step_integral_sandwich(s, k)
        print(f"{k:>3} {lo:12.6g} {value:12.6g} {hi:12.6g}  {cr.sandwich_conditions_hold(s, k)}")

    k = np.arange(1, 3001)
    print("\npartial integrals for a_k = k, b_k = k log(k+1)^q")
    for q in (1, 2):
        stairs = dm.StepDomain(tuple(np.r_[0, k]), tuple(k * np.log(k + 1) ** q))
        parts = [cr.karamanlis_integral(stairs, 1, r).partial_integral for r in (20, 1e2, 1e3, 1e4)]
        print(f"  q={q}: " + "  ".join(f"{p:.6f}" for p in parts))


if __name__ == "__main__":
    main()
