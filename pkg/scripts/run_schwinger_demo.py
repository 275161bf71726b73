#!/usr/bin/env python3
"""Small Schwinger-QCA run: invariance audit plus a charged-string trajectory.

The gauge and Gauss commutators should sit at rounding level regardless of
coupling or truncation mode; the edge-weight column shows how strongly the
link truncation is being exercised.
"""

import argparse

import numpy as np

from diracwalk import serialize
from diracwalk.params import Walk1DParams
from diracwalk.schwinger import SchwingerQCA


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sites", type=int, default=4)
    ap.add_argument("--cutoff", type=int, default=1)
    ap.add_argument("--theta", type=float, default=0.4)
    ap.add_argument("--mass-dt", type=float, default=0.1)
    ap.add_argument("--coupling-dt", type=float, default=0.3)
    ap.add_argument("--steps", type=int, default=20)
    ap.add_argument("--truncation", default="clip", choices=["clip", "cyclic"])
    ap.add_argument("--csv", default="schwinger_trajectory.csv")
    args = ap.parse_args()

    model = SchwingerQCA(
        Walk1DParams(args.theta, args.mass_dt), args.sites, args.cutoff,
        coupling_dt=args.coupling_dt, truncation=args.truncation,
    )
    rng = np.random.default_rng(0)
    alphas = [rng.uniform(0, 2 * np.pi, args.sites) for _ in range(5)]
    defects = model.invariance_defects(alphas)
    print("invariance defects:", {k: f"{v:.2e}" for k, v in defects.items()})

    traj = model.run(model.charged_string_state(args.sites // 2), args.steps)
    serialize.write_trajectory_csv(
        traj.columns, traj.rows, args.csv,
        meta={"sites": args.sites, "cutoff": args.cutoff, "theta": args.theta,
              "mass_dt": args.mass_dt, "coupling_dt": args.coupling_dt,
              "truncation": args.truncation},
    )
    drift = max(r[traj.columns.index("max_J_drift")] for r in traj.rows)
    edge = max(r[-1] for r in traj.rows)
    print(f"max <J_n> drift over {args.steps} steps: {drift:.2e}")
    print(f"max edge weight (truncation exercise): {edge:.3f}")
    print(f"trajectory written to {args.csv}")


if __name__ == "__main__":
    main()
