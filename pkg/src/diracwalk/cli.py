"""Command-line front end.

Subcommands: dispersion, doublers, bound-check, evolve, qca-free,
qca-schwinger, phase-bound-test.  Exit codes: 0 success, 2 invalid
configuration (with an error JSON on stdout), 3 resource limit.

Configuration precedence is flags > config file > defaults.  The config
file is flat `key = value` text, keys named like the long flags with
underscores (e.g. `mass_dt = 0.02`).  Outputs carry no timestamps and all
floats are printed at 17 significant digits, so identical invocations
produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import lattice, scan, serialize, walk3d
from .fock import FreeQCA
from .params import Walk1DParams, Walk3DParams
from .schwinger import CLIP, CYCLIC, ResourceLimitError, SchwingerQCA
from .serialize import fmt17


def _read_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line {raw!r} is not key=value")
            key, val = line.split("=", 1)
            out[key.strip().replace("-", "_")] = val.strip()
    return out


def _merge(args: argparse.Namespace, spec: dict[str, tuple]) -> dict:
    """Apply flags > config file > defaults for the declared options."""
    cfg = _read_config(args.config) if getattr(args, "config", None) else {}
    out = {}
    for key, (typ, default) in spec.items():
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            out[key] = flag_val
        elif key in cfg:
            raw = cfg[key]
            out[key] = (raw.lower() in ("1", "true", "yes")) if typ is bool else typ(raw)
        else:
            out[key] = default
    return out


def _params(dim: int, theta: float, mass_dt: float):
    extended = abs(theta) >= np.pi / 2
    if dim == 1:
        return Walk1DParams(theta, mass_dt, extended_theta=extended)
    return Walk3DParams(theta, mass_dt, extended_theta=extended)


def cmd_dispersion(args) -> int:
    opts = _merge(args, {
        "dim": (int, 1), "theta": (float, 0.0), "mass_dt": (float, 0.0),
        "n": (int, 512), "walk": (str, scan.WALK_DIRAC), "slice_diagonal": (bool, False),
        "csv": (str, None), "json_out": (str, None),
    })
    params = _params(opts["dim"], opts["theta"], opts["mass_dt"])
    if opts["dim"] == 1:
        report = scan.scan_1d(params, opts["n"])
    elif opts["slice_diagonal"]:
        report = scan.scan_3d_slice(params, opts["n"], walk=opts["walk"])
    else:
        report = scan.scan_3d(params, opts["n"], walk=opts["walk"])
    if opts["csv"]:
        serialize.write_scan_csv(report, opts["csv"])
    if opts["json_out"]:
        serialize.write_json(serialize.scan_report_json(report), opts["json_out"])
    print(f"max |E dt| = {fmt17(report.max_abs_energy)}")
    print(f"bound rhs  = {fmt17(report.bound_rhs)}")
    return 0


def cmd_doublers(args) -> int:
    opts = _merge(args, {
        "walk": (str, scan.WALK_WEYL_PLUS), "theta": (float, 0.0), "mass_dt": (float, 0.0),
        "n": (int, 48), "eps_e": (float, 1e-3), "exclude_radius": (float, 0.2),
        "json_out": (str, None),
    })
    if opts["walk"] == scan.WALK_CONVENTIONAL_WEYL and opts["theta"] != 0.0:
        raise ValueError("the conventional walk is the theta = 0 member")
    params = _params(3, opts["theta"], opts["mass_dt"])
    report = scan.scan_3d(params, opts["n"], walk=opts["walk"], offset=True)
    search = scan.find_special_points(
        report, params, eps_e=opts["eps_e"], exclude_radius=opts["exclude_radius"]
    )
    doc = serialize.scan_report_json(report, search)
    if opts["json_out"]:
        serialize.write_json(doc, opts["json_out"])
    print(f"doublers: {len(search.doublers)}  pseudo-doublers: {len(search.pseudo_doublers)}")
    for r in search.doublers:
        print("  doubler at (" + ", ".join(fmt17(x) for x in r.momentum) + ")")
    for r in search.pseudo_doublers:
        print("  pseudo-doubler at (" + ", ".join(fmt17(x) for x in r.momentum) + ")")
    return 0


def cmd_bound_check(args) -> int:
    opts = _merge(args, {
        "dim": (int, 3), "theta": (float, 0.0), "mass_dt": (float, 0.0),
        "n": (int, 64), "json_out": (str, None),
    })
    params = _params(opts["dim"], opts["theta"], opts["mass_dt"])
    cert = scan.bound_certificate(params, opts["n"])
    if opts["json_out"]:
        serialize.write_json(
            serialize.bound_certificate_json(cert, opts["theta"], opts["mass_dt"], opts["dim"]),
            opts["json_out"],
        )
    print(f"holds = {cert.holds}")
    print(f"max |E dt| = {fmt17(cert.max_abs_energy)}  rhs = {fmt17(cert.rhs)}")
    return 0


def cmd_evolve(args) -> int:
    opts = _merge(args, {
        "dim": (int, 1), "theta": (float, 0.0), "mass_dt": (float, 0.0),
        "sites": (int, 128), "steps": (int, 200), "p0": (float, 0.3),
        "width": (float, 6.0), "csv": (str, None), "snapshot_csv": (str, None),
    })
    params = _params(opts["dim"], opts["theta"], opts["mass_dt"])
    if opts["dim"] == 1:
        state = lattice.LatticeState.gaussian_1d(opts["sites"], opts["sites"] // 2, opts["p0"], opts["width"])
    else:
        state = lattice.LatticeState.delta(3, opts["sites"], (opts["sites"] // 2,) * 3, 0)
    cols, rows = lattice.occupation_series(params, state, opts["steps"])
    meta = {"dim": opts["dim"], "theta": opts["theta"], "mass_dt": opts["mass_dt"],
            "sites": opts["sites"], "steps": opts["steps"]}
    if opts["csv"]:
        serialize.write_trajectory_csv(cols, rows, opts["csv"], meta=meta)
    if opts["snapshot_csv"]:
        final = lattice.evolve(params, state, opts["steps"])
        scols, srows = lattice.snapshot_columns_rows(final)
        serialize.write_trajectory_csv(scols, srows, opts["snapshot_csv"], meta=meta)
    norms = [r[1] for r in rows]
    print(f"norm drift = {fmt17(max(abs(x - 1.0) for x in norms))}")
    return 0


def cmd_qca_free(args) -> int:
    opts = _merge(args, {
        "sites": (int, 4), "theta": (float, 0.0), "mass_dt": (float, 0.0),
        "steps": (int, 0), "csv": (str, None), "json_out": (str, None),
    })
    if opts["sites"] > 6:
        raise ResourceLimitError("free-QCA diagnostics support at most 6 sites")
    params = Walk1DParams(opts["theta"], opts["mass_dt"])
    qca = FreeQCA(params, opts["sites"])
    sector_defect = float(np.abs(qca.single_particle_sector() - qca.walk_matrix()).max())
    conj_defect = qca.conjugation_defect() if opts["sites"] <= 4 else None
    if opts["steps"] > 0 and opts["csv"]:
        _write_qca_free_trajectory(qca, opts)
    doc = {
        "kind": "qca_free",
        "sites": opts["sites"], "theta": opts["theta"], "mass_dt": opts["mass_dt"],
        "single_particle_defect": sector_defect,
        "conjugation_defect": conj_defect,
    }
    if opts["json_out"]:
        serialize.write_json(doc, opts["json_out"])
    print(f"single-particle sector defect = {fmt17(sector_defect)}")
    if conj_defect is not None:
        print(f"field conjugation defect      = {fmt17(conj_defect)}")
    return 0


def _write_qca_free_trajectory(qca: FreeQCA, opts: dict) -> None:
    """Evolve one fermion at the middle site, recording site occupations."""
    u = qca.step_blocked()
    occ = qca.fock.occupations().astype(float)
    number = qca.fock.number().astype(float)
    vec = np.zeros(qca.fock.dim, dtype=complex)
    vec[1 << qca.fock.mode(opts["sites"] // 2, 0)] = 1.0
    cols = ["step", "norm", "total_number"] + [f"occ_site{n}" for n in range(opts["sites"])]
    rows = []
    for t in range(opts["steps"] + 1):
        w = np.abs(vec) ** 2
        per_mode = w @ occ
        per_site = per_mode[0::2] + per_mode[1::2]
        rows.append([float(t), float(np.linalg.norm(vec)), float(w @ number)]
                    + [float(x) for x in per_site])
        if t < opts["steps"]:
            vec = u.apply(vec)
    serialize.write_trajectory_csv(
        cols, rows, opts["csv"],
        meta={"sites": opts["sites"], "theta": opts["theta"], "mass_dt": opts["mass_dt"]},
    )


def cmd_qca_schwinger(args) -> int:
    opts = _merge(args, {
        "sites": (int, 4), "cutoff": (int, 1), "theta": (float, 0.0),
        "mass_dt": (float, 0.0), "coupling_dt": (float, 0.0), "steps": (int, 20),
        "truncation": (str, CLIP), "seed": (int, 0),
        "csv": (str, None), "json_out": (str, None),
    })
    if opts["truncation"] not in (CLIP, CYCLIC):
        raise ValueError("truncation must be clip or cyclic")
    params = Walk1DParams(opts["theta"], opts["mass_dt"])
    model = SchwingerQCA(params, opts["sites"], opts["cutoff"], opts["coupling_dt"],
                         truncation=opts["truncation"])
    rng = np.random.default_rng(opts["seed"])
    alphas = [rng.uniform(0.0, 2.0 * np.pi, size=opts["sites"]) for _ in range(5)]
    defects = model.invariance_defects(alphas)
    traj = model.run(model.charged_string_state(opts["sites"] // 2), opts["steps"])
    jd = traj.columns.index("max_J_drift")
    drift = max(row[jd] for row in traj.rows)
    if opts["csv"]:
        serialize.write_trajectory_csv(
            traj.columns, traj.rows, opts["csv"],
            meta={"sites": opts["sites"], "cutoff": opts["cutoff"], "theta": opts["theta"],
                  "mass_dt": opts["mass_dt"], "coupling_dt": opts["coupling_dt"],
                  "truncation": opts["truncation"]},
        )
    doc = {"kind": "qca_schwinger", "sites": opts["sites"], "cutoff": opts["cutoff"],
           "theta": opts["theta"], "mass_dt": opts["mass_dt"],
           "coupling_dt": opts["coupling_dt"], "truncation": opts["truncation"],
           "defects": defects, "max_gauss_drift": drift}
    if opts["json_out"]:
        serialize.write_json(doc, opts["json_out"])
    print(f"gauge commutator defect = {fmt17(defects['gauge'])}")
    print(f"gauss commutator defect = {fmt17(defects['gauss'])}")
    print(f"max <J_n> drift         = {fmt17(drift)}")
    return 0


def cmd_phase_bound(args) -> int:
    opts = _merge(args, {
        "dim": (int, 2), "trials": (int, 10000), "seed": (int, 0), "json_out": (str, None),
    })
    res = scan.product_phase_bound_test(opts["dim"], opts["trials"], opts["seed"])
    if opts["json_out"]:
        serialize.write_json(serialize.phase_bound_json(res), opts["json_out"])
    print(f"worst margin = {fmt17(res.worst_margin)} (trial {res.worst_trial})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diracwalk", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, handler, flags):
        p = sub.add_parser(name)
        p.add_argument("--config", type=str, default=None)
        for flag, typ in flags.items():
            arg = "--" + flag.replace("_", "-")
            if typ is bool:
                p.add_argument(arg, dest=flag, action="store_const", const=True, default=None)
            else:
                p.add_argument(arg, dest=flag, type=typ, default=None)
        p.set_defaults(handler=handler)

    add("dispersion", cmd_dispersion,
        {"dim": int, "theta": float, "mass_dt": float, "n": int, "walk": str,
         "slice_diagonal": bool, "csv": str, "json_out": str})
    add("doublers", cmd_doublers,
        {"walk": str, "theta": float, "mass_dt": float, "n": int, "eps_e": float,
         "exclude_radius": float, "json_out": str})
    add("bound-check", cmd_bound_check,
        {"dim": int, "theta": float, "mass_dt": float, "n": int, "json_out": str})
    add("evolve", cmd_evolve,
        {"dim": int, "theta": float, "mass_dt": float, "sites": int, "steps": int,
         "p0": float, "width": float, "csv": str, "snapshot_csv": str})
    add("qca-free", cmd_qca_free,
        {"sites": int, "theta": float, "mass_dt": float, "steps": int,
         "csv": str, "json_out": str})
    add("qca-schwinger", cmd_qca_schwinger,
        {"sites": int, "cutoff": int, "theta": float, "mass_dt": float,
         "coupling_dt": float, "steps": int, "truncation": str, "seed": int,
         "csv": str, "json_out": str})
    add("phase-bound-test", cmd_phase_bound,
        {"dim": int, "trials": int, "seed": int, "json_out": str})
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.handler(args)
    except ResourceLimitError as exc:
        print(json.dumps({"kind": "error", "error": "resource-limit", "message": str(exc)}))
        return 3
    except (ValueError, OSError) as exc:
        print(json.dumps({"kind": "error", "error": "invalid-config", "message": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
