"""Classify the domains y > -x |log x|^(1+eps) and print every sub-verdict."""
import argparse
import time

from koenigs_shift import criteria as cr
from koenigs_shift import domains as dm


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--eps", type=float, nargs="+", default=[0.0, 0.25, 0.5, 1.0])
    args = parser.parse_args()
    for eps in args.eps:
        start = time.perf_counter()
        verdict = cr.classify_shift(dm.GraphDomain(dm.XLogEps(eps)))
        took = time.perf_counter() - start
        print(f"eps={eps:<5g} {verdict.decision.value:<14} ({took:.2f}s)")
        for e in verdict.evidence:
            if e.criterion.startswith("inner_tangent"):
                print(f"    {e.criterion:<24} radius {e.partial_value:.4g}: {e.note}")
                continue
            flag = "certified" if e.certified else "advisory"
            print(f"    {e.criterion:<24} {e.verdict.value:<11} {flag:<10} {e.note}")


if __name__ == "__main__":
    main()
