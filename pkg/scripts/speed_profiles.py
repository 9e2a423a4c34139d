"""Write orthogonal/tangential speed profiles of the three model semigroups as CSV.

One file per model under --out, columns t, vO - log(t)/2, vT - log(t)/2, v.
Bounded columns indicate finite shift.
"""
import argparse
import csv
import math
from pathlib import Path

import numpy as np

from koenigs_shift import models as md

MODELS = {
    "halfplane": md.HalfPlaneTranslation(),
    "sector": md.VerticalSectorModel(1, math.pi / 6),
    "slitplane": md.SlitPlaneModel(),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("speed_profiles"))
    parser.add_argument("--t-max", type=float, default=1e6)
    parser.add_argument("--num", type=int, default=200)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    grid = np.geomspace(1, args.t_max, args.num)
    for name, m in MODELS.items():
        path = args.out / f"{name}.csv"
        with path.open("w", newline="") as fh:
            out = csv.writer(fh, lineterminator="\n")
            out.writerow(["t", "vO_excess", "vT_excess", "v"])
            for t in grid:
                s = md.speeds(m, t)
                half = 0.5 * math.log(t)
                out.writerow([f"{t:.17g}", f"{s.v_orth - half:.17g}", f"{s.v_tang - half:.17g}",
                              f"{s.v:.17g}"])
        print(f"{name:<10} speed gap {md.speed_gap(m, grid):10.4f}  -> {path}")


if __name__ == "__main__":
    main()
