"""Fixed-format CSV/JSON emission for scan reports and trajectories.

All floats are serialized with 17 significant digits ('%.17g', '.' decimal),
enough to round-trip IEEE doubles, so identical runs produce byte-identical
files.  CSVs carry their scan metadata as leading '# key=value' comment
lines; JSON documents validate against the schemas under schema/.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .scan import BoundCertificate, PhaseBoundResult, ScanReport, SpecialPointSearch


def fmt17(x: float) -> str:
    return format(float(x), ".17g")


_MARK = "\x00"


def _tag_floats(obj: Any) -> Any:
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        return _MARK + fmt17(float(obj)) + _MARK
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return _tag_floats(obj.tolist())
    if isinstance(obj, dict):
        return {k: _tag_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_tag_floats(v) for v in obj]
    return obj


def dumps17(obj: Any) -> str:
    """json.dumps with every float rendered at 17 significant digits."""
    s = json.dumps(_tag_floats(obj), indent=2, sort_keys=True)
    return s.replace('"\\u0000', "").replace('\\u0000"', "") + "\n"


def scan_metadata(report: ScanReport) -> dict[str, Any]:
    return {
        "dim": report.dim,
        "walk": report.walk,
        "theta": report.theta,
        "mass_dt": report.mass_dt,
        "n": report.n,
        "slice_diagonal": report.slice_diagonal,
        "bands": int(report.energies.shape[1]),
        "max_abs_energy": report.max_abs_energy,
        "bound_rhs": report.bound_rhs,
    }


def write_scan_csv(report: ScanReport, path: str) -> None:
    """One row per momentum: p components, then the sorted energies."""
    bands = report.energies.shape[1]
    momenta = report.momenta if report.dim == 3 else report.momenta[:, None]
    pcols = ["p_dx"] if report.dim == 1 else ["px_dx", "py_dx", "pz_dx"]
    ecols = [f"e{i+1}_dt" for i in range(bands)]
    lines = [f"# {k}={_meta_str(v)}" for k, v in scan_metadata(report).items()]
    lines.append(",".join(pcols + ecols))
    for row_p, row_e in zip(momenta, report.energies):
        lines.append(",".join(fmt17(x) for x in list(row_p) + list(row_e)))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _meta_str(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt17(v)
    return str(v)


def read_scan_csv(path: str) -> tuple[dict[str, str], list[str], np.ndarray]:
    """(metadata, column names, data matrix) from a scan CSV."""
    meta: dict[str, str] = {}
    rows = []
    header: list[str] = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                meta[key.strip()] = val.strip()
            elif not header:
                header = line.split(",")
            else:
                rows.append([float(x) for x in line.split(",")])
    return meta, header, np.array(rows)


def scan_report_json(report: ScanReport, search: SpecialPointSearch | None = None) -> dict:
    doc: dict[str, Any] = {
        "kind": "scan_report",
        "metadata": scan_metadata(report),
        "argmax_momentum": np.atleast_1d(report.argmax_momentum).tolist(),
        "eps_low": report.eps_low,
        "eps_high": report.eps_high,
        "n_low_points": int(len(report.low_points)),
        "n_high_points": int(len(report.high_points)),
    }
    if search is not None:
        doc["special_points"] = special_points_json(search)["special_points"]
    return doc


def special_points_json(search: SpecialPointSearch) -> dict:
    return {
        "kind": "special_points",
        "eps_e": search.eps_e,
        "exclude_radius": search.exclude_radius,
        "special_points": {
            "doublers": [
                {"momentum": r.momentum.tolist(), "abs_energy": r.abs_energy}
                for r in search.doublers
            ],
            "pseudo_doublers": [
                {"momentum": r.momentum.tolist(), "pi_minus_abs_energy": r.abs_energy}
                for r in search.pseudo_doublers
            ],
        },
    }


def bound_certificate_json(cert: BoundCertificate, theta: float, mass_dt: float, dim: int) -> dict:
    return {
        "kind": "bound_certificate",
        "dim": dim,
        "theta": theta,
        "mass_dt": mass_dt,
        "holds": cert.holds,
        "max_abs_energy": cert.max_abs_energy,
        "rhs": cert.rhs,
        "argmax_momentum": np.atleast_1d(cert.argmax_momentum).tolist(),
        "per_axis_max_phase": cert.per_axis_max_phase,
        "per_axis_rhs": cert.per_axis_rhs,
    }


def phase_bound_json(res: PhaseBoundResult) -> dict:
    return {
        "kind": "phase_bound",
        "dim": res.dim,
        "trials": res.trials,
        "seed": res.seed,
        "worst_margin": res.worst_margin,
        "worst_trial": res.worst_trial,
    }


def write_json(doc: dict, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps17(doc))


def write_trajectory_csv(columns: list[str], rows: list[list[float]], path: str, meta: dict | None = None) -> None:
    lines = [f"# {k}={_meta_str(v)}" for k, v in (meta or {}).items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(fmt17(x) for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
