#!/usr/bin/env python3
"""Generate the dispersion-scan CSVs behind the band-structure figures.

Writes, under --out-dir:
  band1d_theta0_m*.csv       conventional 1+1-D bands for several masses
  band1d_family_m0.02.csv    the theta = 3pi/8 family walk
  compare1d_*.csv            the family/conventional pair used by the
                             compare-1d plot (mass 0.02)
  slice3d_weyl{p,m}.csv      diagonal slices of both Weyl walks at an
                             extended theta, showing the doublers at +-q
  surface3d_theta*.csv       full 3-D Dirac scans (coarse grid)
"""

import argparse
import os

import numpy as np

from diracwalk import scan, serialize
from diracwalk.params import Walk1DParams, Walk3DParams


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="figures-data")
    ap.add_argument("--n1d", type=int, default=1024)
    ap.add_argument("--n3d", type=int, default=32)
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)

    for mu in (0.0, 0.02, 0.2):
        rep = scan.scan_1d(Walk1DParams(0.0, mu), args.n1d)
        serialize.write_scan_csv(rep, f"{args.out_dir}/band1d_theta0_m{mu}.csv")

    family = Walk1DParams(3 * np.pi / 8, 0.02)
    rep = scan.scan_1d(family, args.n1d)
    serialize.write_scan_csv(rep, f"{args.out_dir}/band1d_family_m0.02.csv")
    serialize.write_scan_csv(rep, f"{args.out_dir}/compare1d_family.csv")
    rep = scan.scan_1d(Walk1DParams(0.0, 0.02), args.n1d)
    serialize.write_scan_csv(rep, f"{args.out_dir}/compare1d_conventional.csv")

    extended = Walk3DParams(2 * np.pi / 3, extended_theta=True)
    for walk, tag in ((scan.WALK_WEYL_PLUS, "weylp"), (scan.WALK_WEYL_MINUS, "weylm")):
        rep = scan.scan_3d_slice(extended, args.n1d, walk=walk)
        serialize.write_scan_csv(rep, f"{args.out_dir}/slice3d_{tag}.csv")

    for theta in (0.0, 1.4):
        rep = scan.scan_3d(Walk3DParams(theta, 0.05), args.n3d)
        serialize.write_scan_csv(rep, f"{args.out_dir}/surface3d_theta{theta}.csv")
        print(f"theta={theta}: max |E dt| = {rep.max_abs_energy:.6f}, rhs = {rep.bound_rhs:.6f}")

    print(f"wrote scan data to {args.out_dir}/")


if __name__ == "__main__":
    main()
