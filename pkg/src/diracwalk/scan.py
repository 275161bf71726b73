"""Brillouin-zone dispersion scans, special-point searches, and bounds.

Scans are vectorized over the momentum grid: Weyl blocks use the exact
SU(2) eigenphase formula, the 4x4 Dirac walk uses batched LAPACK
eigenvalues.  Reports are plain dataclasses; serialization lives in
`serialize`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .params import Walk1DParams, Walk3DParams
from . import walk1d, walk3d
from .spinalg import eigenphases_batch, eigenphases_su2_batch, frob

WALK_DIRAC = "dirac"
WALK_WEYL_PLUS = "weyl+"
WALK_WEYL_MINUS = "weyl-"
WALK_CONVENTIONAL_WEYL = "conventional-weyl"  # dirac/weyl at theta=0 share K_j

REFINE_TOL = 1e-8


@dataclass
class ScanReport:
    dim: int
    walk: str
    theta: float
    mass_dt: float
    n: int
    slice_diagonal: bool
    momenta: np.ndarray  # (M,) for dim 1, (M, 3) for dim 3
    energies: np.ndarray  # (M, bands), each row sorted ascending
    max_abs_energy: float
    argmax_momentum: np.ndarray
    bound_rhs: float
    eps_low: float
    eps_high: float
    low_points: np.ndarray = field(default_factory=lambda: np.empty((0,)))
    high_points: np.ndarray = field(default_factory=lambda: np.empty((0,)))


def _grid(n: int) -> np.ndarray:
    return -np.pi + 2.0 * np.pi * np.arange(n) / n


def _finish(report: ScanReport) -> ScanReport:
    absmax = np.abs(report.energies).max(axis=1)
    absmin = np.abs(report.energies).min(axis=1)
    i = int(np.argmax(absmax))
    report.max_abs_energy = float(absmax[i])
    report.argmax_momentum = np.atleast_1d(report.momenta[i])
    report.low_points = np.atleast_1d(report.momenta[absmin < report.eps_low])
    report.high_points = np.atleast_1d(report.momenta[np.pi - absmax < report.eps_high])
    return report


def scan_1d(params: Walk1DParams, n: int, eps_low: float = 1e-3, eps_high: float = 1e-3) -> ScanReport:
    """Dispersion of the 1+1-D walk on the n-point grid p = -pi + 2pi k/n."""
    if n < 16:
        raise ValueError("n must be >= 16")
    p = _grid(n)
    u = walk1d.walk_op_batch(params, p)
    energies = eigenphases_su2_batch(u)
    report = ScanReport(
        dim=1, walk=WALK_DIRAC, theta=params.theta, mass_dt=params.mass_dt, n=n,
        slice_diagonal=False, momenta=p, energies=energies,
        max_abs_energy=0.0, argmax_momentum=np.zeros(1),
        bound_rhs=float((np.pi - 2.0 * params.theta) + params.mass_dt),
        eps_low=eps_low, eps_high=eps_high,
    )
    return _finish(report)


def _weyl_grid_ops(params: Walk3DParams, p: np.ndarray, sign: int) -> np.ndarray:
    """K^sign over a momentum array of shape (..., 3)."""
    return walk3d.weyl_op(params, sign, p)


def scan_3d(
    params: Walk3DParams,
    n: int,
    walk: str = WALK_DIRAC,
    eps_low: float = 1e-3,
    eps_high: float = 1e-3,
    offset: bool = False,
) -> ScanReport:
    """Dispersion over the n^3 grid; `offset` shifts by half a spacing.

    The offset grid is used for special-point searches so that known special
    points never sit exactly on a node.
    """
    if n < 16:
        raise ValueError("n must be >= 16")
    axis = _grid(n) + (np.pi / n if offset else 0.0)
    px, py, pz = np.meshgrid(axis, axis, axis, indexing="ij")
    momenta = np.stack([px.ravel(), py.ravel(), pz.ravel()], axis=-1)
    energies = _energies_at(params, momenta, walk)
    report = ScanReport(
        dim=3, walk=walk, theta=params.theta, mass_dt=params.mass_dt, n=n,
        slice_diagonal=False, momenta=momenta, energies=energies,
        max_abs_energy=0.0, argmax_momentum=np.zeros(3),
        bound_rhs=float(3.0 * (np.pi - 2.0 * params.theta) + params.mass_dt),
        eps_low=eps_low, eps_high=eps_high,
    )
    return _finish(report)


def scan_3d_slice(
    params: Walk3DParams,
    n: int,
    walk: str = WALK_WEYL_PLUS,
    eps_low: float = 1e-3,
    eps_high: float = 1e-3,
) -> ScanReport:
    """1-D diagonal slice p_x = p_y = p_z = p (the paper's figure cut)."""
    if n < 16:
        raise ValueError("n must be >= 16")
    p = _grid(n)
    momenta = np.stack([p, p, p], axis=-1)
    energies = _energies_at(params, momenta, walk)
    report = ScanReport(
        dim=3, walk=walk, theta=params.theta, mass_dt=params.mass_dt, n=n,
        slice_diagonal=True, momenta=momenta, energies=energies,
        max_abs_energy=0.0, argmax_momentum=np.zeros(3),
        bound_rhs=float(3.0 * (np.pi - 2.0 * params.theta) + params.mass_dt),
        eps_low=eps_low, eps_high=eps_high,
    )
    return _finish(report)


def _energies_at(params: Walk3DParams, momenta: np.ndarray, walk: str) -> np.ndarray:
    """Sorted eigenphases at each momentum row for the requested walk."""
    momenta = np.atleast_2d(np.asarray(momenta, dtype=float))
    if walk == WALK_DIRAC:
        u = walk3d.dirac_op(params, momenta)
        return eigenphases_batch(u)
    sign = +1 if walk in (WALK_WEYL_PLUS, WALK_CONVENTIONAL_WEYL) else -1
    k = _weyl_grid_ops(params, momenta, sign)
    return eigenphases_su2_batch(k)


@dataclass
class RefinedPoint:
    momentum: np.ndarray
    abs_energy: float  # min |E| for doublers, pi - max |E| for pseudo-doublers


@dataclass
class SpecialPointSearch:
    doublers: list[RefinedPoint]
    pseudo_doublers: list[RefinedPoint]
    eps_e: float
    exclude_radius: float


def _torus_dist(a: np.ndarray, b: np.ndarray) -> float:
    d = np.mod(np.asarray(a) - np.asarray(b) + np.pi, 2.0 * np.pi) - np.pi
    return float(np.linalg.norm(d))


def _wrap_bz(p: np.ndarray) -> np.ndarray:
    out = np.mod(np.asarray(p, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    # refined points straddling the branch edge present canonically as +pi
    return np.where(out < -np.pi + 1e-9, out + 2.0 * np.pi, out)


def find_special_points(
    report: ScanReport,
    params: Walk1DParams | Walk3DParams,
    eps_e: float = 1e-3,
    exclude_radius: float = 0.2,
) -> SpecialPointSearch:
    """Locate doublers (|E| -> 0 away from p=0) and pseudo-doublers (|E| -> pi).

    Grid points below a grid-scaled capture threshold seed a Nelder-Mead
    refinement of |E| (resp. pi - |E|) to 1e-8; only refined minima passing
    eps_e are kept, deduplicated on the BZ torus.  The ball of radius
    `exclude_radius` around p = 0 masks the physical Dirac cone.
    """
    momenta = np.atleast_2d(report.momenta if report.dim == 3 else report.momenta[:, None])
    absmin = np.abs(report.energies).min(axis=1)
    absmax = np.abs(report.energies).max(axis=1)
    ndim = momenta.shape[1]
    spacing = 2.0 * np.pi / report.n
    capture = eps_e + ndim * spacing  # |dE/dp_j| <= 1 per axis

    def f_low(p):
        return float(np.abs(_energies_at_dim(params, p, report)).min())

    def f_high(p):
        return float(np.pi - np.abs(_energies_at_dim(params, p, report)).max())

    doublers = _refine_candidates(
        momenta[absmin < capture], f_low, eps_e, spacing, exclude_radius
    )
    pseudo = _refine_candidates(
        momenta[(np.pi - absmax) < capture], f_high, eps_e, spacing, 0.0
    )
    return SpecialPointSearch(doublers, pseudo, eps_e, exclude_radius)


def _energies_at_dim(params, p: np.ndarray, report: ScanReport) -> np.ndarray:
    if report.dim == 1:
        u = walk1d.walk_op_batch(params, float(p[0]))
        return eigenphases_su2_batch(u[None, :, :])[0]
    return _energies_at(params, np.asarray(p)[None, :], report.walk)[0]


MAX_REFINEMENTS = 128


def _near_any(c: np.ndarray, pts: np.ndarray, radius: float) -> bool:
    if len(pts) == 0:
        return False
    d = np.mod(pts - c + np.pi, 2.0 * np.pi) - np.pi
    return bool((np.linalg.norm(d, axis=1) < radius).any())


def _refine_candidates(cands, f, eps_e, spacing, exclude_radius) -> list[RefinedPoint]:
    if len(cands) == 0:
        return []
    ndim = cands.shape[1]
    zero = np.zeros(ndim)
    # best candidates first, so each basin is refined once and its
    # remaining grid neighbours are skipped
    cands = np.asarray(sorted(cands, key=f))
    skip_radius = 3.0 * spacing
    found: list[RefinedPoint] = []
    seen = np.empty((0, ndim))  # refined basins (and their seeds), kept or not
    refinements = 0
    for c in cands:
        if exclude_radius > 0 and _torus_dist(c, zero) < exclude_radius:
            continue
        if _near_any(c, seen, skip_radius):
            continue
        if refinements >= MAX_REFINEMENTS:
            break
        refinements += 1
        # fatol sits at the arccos noise floor (|E| ~ sqrt(eps) near a zero);
        # xatol 1e-9 still pins the momentum to the spec'd 1e-8 in |E|
        res = minimize(
            f, c, method="Nelder-Mead",
            options=dict(xatol=1e-9, fatol=1e-7, maxiter=600),
        )
        p = _wrap_bz(res.x)
        seen = np.vstack([seen, p[None, :], c[None, :]])
        if res.fun >= eps_e:
            continue
        if exclude_radius > 0 and _torus_dist(p, zero) < exclude_radius:
            continue
        if any(_torus_dist(p, q.momentum) < skip_radius for q in found):
            continue
        found.append(RefinedPoint(p, float(res.fun)))
    found.sort(key=lambda r: tuple(r.momentum))
    return found


@dataclass
class BoundCertificate:
    holds: bool
    max_abs_energy: float
    rhs: float
    argmax_momentum: np.ndarray
    per_axis_max_phase: dict[str, float]
    per_axis_rhs: float


def bound_certificate(params: Walk3DParams | Walk1DParams, n: int = 64) -> BoundCertificate:
    """Check max |E dt| <= d(pi - 2 theta) + mass_dt, plus per-axis phases.

    Per axis, the K_j eigenphase magnitude must stay below pi - 2 theta
    (the Appendix-style cos(lambda) >= -cos(2 theta) argument); combining
    the three axes and the mass via the product phase bound gives the rhs.
    """
    slack = 1e-10
    p = _grid(max(n, 512))
    if isinstance(params, Walk1DParams):
        rep = scan_1d(params, max(n, 512))
        tr = walk1d.transfer_closed_form(params, p)
        lam = np.abs(eigenphases_su2_batch(tr)).max()
        per_axis = {"p": float(lam)}
    else:
        rep = scan_3d(params, n)
        per_axis = {}
        for axis in walk3d.AXES:
            k = walk3d.kj_batch(params, axis, p)
            per_axis[axis] = float(np.abs(eigenphases_su2_batch(k)).max())
    per_axis_rhs = float(np.pi - 2.0 * params.theta)
    holds = rep.max_abs_energy <= rep.bound_rhs + slack and all(
        v <= per_axis_rhs + slack for v in per_axis.values()
    )
    return BoundCertificate(
        holds=bool(holds),
        max_abs_energy=rep.max_abs_energy,
        rhs=rep.bound_rhs,
        argmax_momentum=rep.argmax_momentum,
        per_axis_max_phase=per_axis,
        per_axis_rhs=per_axis_rhs,
    )


@dataclass
class PhaseBoundResult:
    dim: int
    trials: int
    seed: int
    worst_margin: float
    worst_trial: int


def _haar_basis(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def _random_phase_unitary(rng: np.random.Generator, dim: int, radius: float) -> np.ndarray:
    """exp(iH) with H eigenvalues uniform in [-radius, radius], Haar frame."""
    w = rng.uniform(-radius, radius, size=dim)
    v = _haar_basis(rng, dim)
    return (v * np.exp(1j * w)) @ v.conj().T


def product_phase_bound_test(dim: int, trials: int, rng_seed: int = 0) -> PhaseBoundResult:
    """Every eigenphase of UV obeys |gamma_k| <= lambda + eta.

    U = exp(iH), V = exp(iG) with phase radii lambda, eta drawn uniformly on
    the triangle lambda + eta <= pi; the returned worst margin
    min(lambda + eta - max_k |gamma_k|) must be >= -1e-10.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(rng_seed)
    worst = np.inf
    worst_trial = -1
    for t in range(trials):
        while True:
            lam, eta = rng.uniform(0.0, np.pi, size=2)
            if lam + eta <= np.pi:
                break
        u = _random_phase_unitary(rng, dim, lam)
        v = _random_phase_unitary(rng, dim, eta)
        gammas = np.angle(np.linalg.eigvals(u @ v))
        margin = (lam + eta) - np.abs(gammas).max()
        if margin < worst:
            worst, worst_trial = margin, t
    return PhaseBoundResult(dim, trials, rng_seed, float(worst), worst_trial)


@dataclass
class ContinuumOrderResult:
    slope: float | None
    exact: bool
    p: np.ndarray
    defect: np.ndarray


EXACT_FLOOR = 1e-12
# generic direction so no BCH commutator accidentally cancels
_RAY = np.array([0.36, 0.48, 0.8])


def continuum_order(
    dim: int,
    theta: float,
    mass_dt: float,
    scale_mass: bool = True,
    p_lo: float = 1e-4,
    p_hi: float = 1e-2,
    npts: int = 9,
) -> ContinuumOrderResult:
    """Fitted log-log slope of ||U(p) - exp(-i H_eff)|| as p -> 0.

    With `scale_mass`, mass_dt is taken proportional to p along the sweep
    (quoted at the window top), matching the paper's joint continuum limit
    in which the remainder is second order; with a fixed mass the
    non-commuting mass term contributes a first-order Duhamel cross term.
    Walks that match exp(-i H_eff) exactly (conventional massless 1+1-D)
    report exact=True instead of a slope.
    """
    ps = np.geomspace(p_lo, p_hi, npts)
    ds = np.empty(npts)
    for i, p in enumerate(ps):
        mu = mass_dt * (p / p_hi) if scale_mass else mass_dt
        if dim == 1:
            params = Walk1DParams(theta, mu)
            u = walk1d.walk_op(params, p)
            h = np.cos(theta) * p * walk1d.SIGMA_Z + mu * walk1d.SIGMA_X
            w, v = np.linalg.eigh(h)
            target = (v * np.exp(-1j * w)) @ v.conj().T
        else:
            params = Walk3DParams(theta, mu)
            u = walk3d.dirac_op(params, p * _RAY)
            h = walk3d.effective_hamiltonian_3d(params, p * _RAY)
            w, v = np.linalg.eigh(h)
            target = (v * np.exp(-1j * w)) @ v.conj().T
        ds[i] = frob(u - target)
    if ds.max() < EXACT_FLOOR:
        return ContinuumOrderResult(None, True, ps, ds)
    slope = float(np.polyfit(np.log(ps), np.log(ds), 1)[0])
    return ContinuumOrderResult(slope, False, ps, ds)
