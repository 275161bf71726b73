"""Acceptance suite: one test per machine-checked claim, each printing a
pass/fail line with the measured value next to its pinned tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see every line.
"""

import time

import numpy as np
import pytest

from diracwalk import lattice, scan, spinalg as sa, walk1d, walk3d
from diracwalk.fock import FreeQCA
from diracwalk.params import Walk1DParams, Walk3DParams
from diracwalk.schwinger import CLIP, SchwingerQCA


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_family_unitarity():
    t0 = time.monotonic()
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(1000):
        th = rng.uniform(-np.pi / 2 * 0.999, np.pi / 2 * 0.999)
        p = rng.uniform(-np.pi, np.pi)
        t = walk1d.transfer_closed_form(Walk1DParams(th), p)
        worst = max(worst, sa.unitarity_defect(t))
        params3 = Walk3DParams(th)
        for ax in "xyz":
            worst = max(worst, sa.unitarity_defect(walk3d.kj_batch(params3, ax, p)))
    dt = time.monotonic() - t0
    _report(
        "unitarity (1000 draws, 1-D and per-axis 3-D)",
        worst < 1e-12 and dt < 1.0,
        f"worst defect {worst:.2e} < 1e-12, runtime {dt:.2f}s < 1s",
    )


def test_theta_zero_reduction():
    g = walk1d.gamma_coeffs(Walk1DParams(0.0))
    exact = (
        np.abs(g.gamma_plus - np.diag([1.0, 0.0])).max()
        + np.abs(g.gamma_minus - np.diag([0.0, 1.0])).max()
        + np.abs(g.gamma_zero).max()
    )
    rng = np.random.default_rng(7)
    worst = 0.0
    for p in rng.uniform(-np.pi, np.pi, 200):
        d = np.abs(walk1d.transfer_op(Walk1DParams(0.0), p) - sa.exp_neg_i(sa.SIGMA_Z, p)).max()
        worst = max(worst, d)
    _report(
        "theta=0 reduction to the conventional walk",
        exact == 0.0 and worst < 1e-14,
        f"projector defect {exact:.1e} (exact), transfer defect {worst:.2e} < 1e-14",
    )


def test_closed_form_equivalence():
    rng = np.random.default_rng(23)
    worst = 0.0
    for _ in range(10_000):
        th = rng.uniform(-np.pi / 2 * 0.999, np.pi / 2 * 0.999)
        p = rng.uniform(-np.pi, np.pi)
        params = Walk1DParams(th)
        d = np.abs(walk1d.transfer_op(params, p) - walk1d.transfer_closed_form(params, p)).max()
        worst = max(worst, d)
    _report("closed form vs product form (1e4 points)", worst < 1e-12, f"worst {worst:.2e} < 1e-12")


def test_pseudo_doubler_identities():
    rng = np.random.default_rng(29)
    params = Walk1DParams(0.0, 0.11)
    worst1d = 0.0
    for eta in rng.uniform(-0.3, 0.3, 100):
        lhs = walk1d.walk_op(params, sa.wrap_phase(np.pi + eta))
        worst1d = max(worst1d, np.abs(lhs + walk1d.walk_op(params, eta)).max())
    params3 = Walk3DParams(0.0)
    worst3d = 0.0
    pi_points = [p for p in walk3d.conventional_special_points() if abs(p.sign_relation) == 1
                 and p.kind in (walk3d.DOUBLER, walk3d.PSEUDO_DOUBLER)]
    for pt in pi_points:
        mom = np.array(pt.momentum)
        for _ in range(100 // len(pi_points) + 1):
            eta = rng.uniform(-0.3, 0.3, 3)
            lhs = walk3d.weyl_op(params3, +1, mom + eta)
            rhs = pt.sign_relation * walk3d.weyl_op(params3, +1, eta)
            worst3d = max(worst3d, np.abs(lhs - rhs).max())
    _report(
        "pseudo-doubler identities (1-D U(pi+eta)=-U(eta); 3-D pi-point catalogue)",
        worst1d < 1e-10 and worst3d < 1e-10,
        f"worst 1-D {worst1d:.2e}, worst 3-D {worst3d:.2e} < 1e-10",
    )


def test_continuum_order():
    # mass_dt scales with p along the sweep (the paper's joint limit); cells
    # where the walk equals exp(-iH_eff) identically report as exact
    lines = []
    ok = True
    for dim in (1, 3):
        for th in (0.0, 0.4, 1.0):
            for mu in (0.0, 0.02):
                res = scan.continuum_order(dim, th, mu)
                if res.exact:
                    lines.append(f"dim{dim} th={th} m={mu}: exact")
                else:
                    lines.append(f"dim{dim} th={th} m={mu}: slope {res.slope:.3f}")
                    ok = ok and abs(res.slope - 2.0) <= 0.1
    _report("continuum order 2.0 +- 0.1 (joint-scaling limit)", ok, "; ".join(lines))


def test_doubler_point_and_expansion():
    worst_id = 0.0
    worst_ratio = 0.0
    for th in np.linspace(-1.35, 1.35, 20):
        q, _ = walk3d.doubler_point(th)
        params = Walk3DParams(th)
        k = walk3d.weyl_op(params, +1, q * np.ones(3))
        worst_id = max(worst_id, np.abs(k - sa.ID2).max())
        d2 = walk3d.doubler_expansion_check(params, +1, np.array([1e-2, -0.7e-2, 0.5e-2]))
        d3 = walk3d.doubler_expansion_check(params, +1, np.array([1e-3, -0.7e-3, 0.5e-3]))
        worst_ratio = max(worst_ratio, abs(d2 / d3 / 100.0 - 1.0))
    _report(
        "family doubler K+(q(theta)(1,1,1)) = I and O(eta^2) expansion (20 thetas)",
        worst_id < 1e-10 and worst_ratio < 0.2,
        f"worst |K+(q)-I| {worst_id:.2e} < 1e-10; defect-ratio deviation {worst_ratio:.2f}",
    )


def test_sigma_prime_algebra():
    worst_sq = 0.0
    consts = []
    for th in np.linspace(-1.35, 1.35, 20):
        sp = walk3d.sigma_prime(th)
        for m in sp:
            worst_sq = max(worst_sq, np.abs(m @ m - sa.ID2).max())
        consts.append(walk3d.sigma_prime_structure_constant(th))
    consts = np.array(consts)
    spread = consts.max() - consts.min()
    _report(
        "sigma-prime algebra: squares = I, structure constant recorded",
        worst_sq < 1e-10 and spread < 1e-10,
        f"worst (s')^2 defect {worst_sq:.2e} < 1e-10; measured constant {consts[0]:+.12f} "
        f"(spread {spread:.2e}) -- [s'_i, s'_j] = -2 i eps_ijk s'_k",
    )


def test_energy_bounds():
    worst_1d = -np.inf
    for th in (0.2, 0.6, 1.0, 1.4):
        for mu in (0.0, 0.05):
            rep = scan.scan_1d(Walk1DParams(th, mu), 512)
            worst_1d = max(worst_1d, rep.max_abs_energy - rep.bound_rhs)
    t0 = time.monotonic()
    worst_3d = -np.inf
    for th in (0.2, 0.6, 1.0, 1.4):
        for mu in (0.0, 0.05):
            rep = scan.scan_3d(Walk3DParams(th, mu), 64, walk=scan.WALK_DIRAC)
            worst_3d = max(worst_3d, rep.max_abs_energy - rep.bound_rhs)
    dt = time.monotonic() - t0
    _report(
        "energy bounds (1-D 512-grid, 3-D 64^3 grid; theta in {0.2,0.6,1.0,1.4})",
        worst_1d <= 1e-10 and worst_3d <= 1e-10 and dt < 30.0,
        f"worst 1-D excess {worst_1d:.2e}, worst 3-D excess {worst_3d:.2e} <= 1e-10; "
        f"3-D runtime {dt:.1f}s < 30s",
    )


def test_no_pseudo_doublers_small_bound():
    params1 = Walk1DParams(1.4, 0.05)
    rep1 = scan.scan_1d(params1, 512)
    srch1 = scan.find_special_points(rep1, params1)
    params3 = Walk3DParams(1.4, 0.05)
    rep3 = scan.scan_3d(params3, 24, walk=scan.WALK_DIRAC, offset=True)
    srch3 = scan.find_special_points(rep3, params3)
    rhs = 3 * (np.pi - 2 * 1.4) + 0.05
    _report(
        "no pseudo-doublers when bound rhs < pi/2 (theta=1.4, mass 0.05)",
        rhs < np.pi / 2 and srch1.pseudo_doublers == [] and srch3.pseudo_doublers == [],
        f"rhs {rhs:.3f} < pi/2; pseudo lists empty (1-D: {len(srch1.pseudo_doublers)}, "
        f"3-D: {len(srch3.pseudo_doublers)})",
    )


def test_continuum_point_classification():
    n = 100_000
    pts0 = walk1d.continuum_points(Walk1DParams(0.0), n, 1e-3)
    ok = len(pts0) == 2 and abs(pts0[0]) < 1e-9 and abs(pts0[1] - np.pi) < 1e-9
    details = [f"theta=0 -> {np.round(pts0, 9).tolist()}"]
    for th in (0.1, 0.8):
        pts = walk1d.continuum_points(Walk1DParams(th), n, 1e-3)
        ok = ok and len(pts) == 1 and abs(pts[0]) < 1e-9
        details.append(f"theta={th} -> {np.round(pts, 9).tolist()}")
    _report("continuum-point classification (1e5-point grid)", ok, "; ".join(details))


def test_product_phase_bound():
    details = []
    ok = True
    for dim in (2, 4):
        res = scan.product_phase_bound_test(dim, 10_000, rng_seed=2024 + dim)
        ok = ok and res.worst_margin >= -1e-10
        details.append(f"dim {dim}: worst margin {res.worst_margin:.3e}")
    _report("product-of-unitaries phase bound (1e4 trials, dims 2 and 4)", ok, "; ".join(details))


def test_momentum_position_equivalence():
    params = Walk1DParams(0.4, 0.1)
    st = lattice.LatticeState.delta(1, 64, 10, 0)
    a = lattice.evolve(params, st, 10)
    b = lattice.evolve(params, st, 10, momentum_space=True)
    d64 = float(np.abs(a.amplitudes - b.amplitudes).max())
    params4 = Walk1DParams(0.7, 0.2)
    mats = []
    for stepper in (lattice.step_position, lattice.step_momentum):
        m = np.zeros((8, 8), dtype=complex)
        for site in range(4):
            for spin in range(2):
                out = stepper(params4, lattice.LatticeState.delta(1, 4, site, spin))
                m[:, 2 * site + spin] = out.amplitudes.reshape(-1)
        mats.append(m)
    d4 = float(np.abs(mats[0] - mats[1]).max())
    _report(
        "momentum/position equivalence",
        d64 < 1e-10 and d4 < 1e-12,
        f"N=64 10-step defect {d64:.2e} < 1e-10; N=4 exhaustive defect {d4:.2e} < 1e-12",
    )


def test_qca_single_particle_equivalence():
    t0 = time.monotonic()
    worst = 0.0
    for sites in (4, 6):
        for th in (0.0, 0.4, 1.0):
            for mu in (0.0, 0.1):
                qca = FreeQCA(Walk1DParams(th, mu), sites)
                d = np.abs(qca.single_particle_sector() - qca.walk_matrix()).max()
                worst = max(worst, float(d))
    dt = time.monotonic() - t0
    _report(
        "QCA single-particle sector equals the walk matrix (N in {4,6})",
        worst < 1e-10 and dt < 60.0,
        f"worst defect {worst:.2e} < 1e-10; runtime {dt:.1f}s < 60s",
    )


def test_schwinger_invariances():
    t0 = time.monotonic()
    model = SchwingerQCA(Walk1DParams(0.4, 0.1), 4, 1, coupling_dt=0.3, truncation=CLIP)
    rng = np.random.default_rng(55)
    alphas = [rng.uniform(0.0, 2.0 * np.pi, 4) for _ in range(20)]
    defects = model.invariance_defects(alphas)
    traj = model.run(model.charged_string_state(2), 20)
    jd = traj.columns.index("max_J_drift")
    j2d = traj.columns.index("max_J2_drift")
    drift = max(max(row[jd], row[j2d]) for row in traj.rows)
    dt = time.monotonic() - t0
    _report(
        "Schwinger invariances (N=4, L=1)",
        defects["gauge"] < 1e-10 and defects["gauss"] < 1e-10 and drift < 1e-9 and dt < 120.0,
        f"gauge {defects['gauge']:.2e}, gauss {defects['gauss']:.2e} < 1e-10; "
        f"20-step <J_n>/<J_n^2> drift {drift:.2e} < 1e-9; runtime {dt:.1f}s < 120s",
    )
