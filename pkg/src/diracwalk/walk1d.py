"""The theta-parametrized 1+1-D Dirac walk in momentum space.

The one-step transport comes from two projector pairs,

    gamma_+ = Pi_a Pi_b,  gamma_- = Pi_abar Pi_bbar,  gamma_0 = I - gamma_+ - gamma_-

with Pi_a, Pi_b the up-projectors of sigma_theta and sigma_{-theta}.  In
momentum space T(p) = exp(-i p sigma_theta / 2) exp(-i p sigma_{-theta} / 2)
and the full step is U(p) = T(p) exp(-i mass_dt sigma_x).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import Walk1DParams
from .spinalg import (
    ID2,
    SIGMA_X,
    SIGMA_Z,
    exp_neg_i,
    frob,
    projector_up,
    rotated_pauli_1d,
)


@dataclass(frozen=True)
class GammaTriple:
    gamma_plus: np.ndarray
    gamma_zero: np.ndarray
    gamma_minus: np.ndarray


def projectors(params: Walk1DParams) -> tuple[np.ndarray, np.ndarray]:
    """(Pi_a, Pi_b): up-projectors of sigma_theta and sigma_{-theta}."""
    pa = projector_up(rotated_pauli_1d(params.theta))
    pb = projector_up(rotated_pauli_1d(-params.theta))
    return pa, pb


def gamma_coeffs(params: Walk1DParams) -> GammaTriple:
    pa, pb = projectors(params)
    gp = pa @ pb
    gm = (ID2 - pa) @ (ID2 - pb)
    return GammaTriple(gp, ID2 - gp - gm, gm)


def mass_unitary(params: Walk1DParams) -> np.ndarray:
    """W = exp(-i mass_dt sigma_x)."""
    return exp_neg_i(SIGMA_X, params.mass_dt)


def transfer_op(params: Walk1DParams, p_dx: float) -> np.ndarray:
    """T(p) as the product of the two half-momentum exponentials."""
    return exp_neg_i(rotated_pauli_1d(params.theta), p_dx / 2.0) @ exp_neg_i(
        rotated_pauli_1d(-params.theta), p_dx / 2.0
    )


def transfer_closed_form(params: Walk1DParams, p_dx) -> np.ndarray:
    """Closed form of T(p); broadcasts over an array of momenta.

    T(p) = cos^2(p/2) - i sin(p) cos(theta) sigma_z - exp(-2i theta sigma_x) sin^2(p/2)
    """
    p = np.asarray(p_dx, dtype=float)
    th = params.theta
    rot = np.cos(2 * th) * ID2 - 1j * np.sin(2 * th) * SIGMA_X  # exp(-2i theta sigma_x)
    c2 = np.cos(p / 2.0) ** 2
    s2 = np.sin(p / 2.0) ** 2
    out = (
        c2[..., None, None] * ID2
        - 1j * (np.sin(p) * np.cos(th))[..., None, None] * SIGMA_Z
        - s2[..., None, None] * rot
    )
    return out if p.shape else out.reshape(2, 2)


def walk_op(params: Walk1DParams, p_dx: float) -> np.ndarray:
    """U(p) = T(p) exp(-i mass_dt sigma_x)."""
    return transfer_op(params, p_dx) @ mass_unitary(params)


def walk_op_custom_mass(params: Walk1DParams, p_dx: float, mass_h: np.ndarray) -> np.ndarray:
    """U(p) = T(p) exp(-i H_mass) for an arbitrary Hermitian mass term.

    The Dirac limit needs the mass direction orthogonal to z on the Bloch
    sphere (the sigma_x choice of `walk_op`); other choices are accepted
    here but sit outside the energy-bound guarantees.
    """
    return transfer_op(params, p_dx) @ exp_neg_i(mass_h)


def walk_op_batch(params: Walk1DParams, p_dx: np.ndarray) -> np.ndarray:
    """U(p) over an array of momenta, via the closed form of T(p)."""
    return transfer_closed_form(params, p_dx) @ mass_unitary(params)


def effective_hamiltonian_1d(params: Walk1DParams) -> tuple[np.ndarray, np.ndarray]:
    """(coefficient of p_dx, constant): H_eff dt = cos(theta) p_dx sigma_z + mass_dt sigma_x."""
    return np.cos(params.theta) * SIGMA_Z, params.mass_dt * SIGMA_X


def effective_step_1d(params: Walk1DParams, p_dx: float) -> np.ndarray:
    """exp(-i H_eff dt) at momentum p_dx."""
    coeff, const = effective_hamiltonian_1d(params)
    return exp_neg_i(p_dx * coeff + const)


def _continuum_defect(params: Walk1DParams, p_dx: float) -> float:
    t = transfer_op(params, p_dx)
    return min(frob(t - ID2), frob(t + ID2))


def _golden_min(f, a: float, b: float, xtol: float) -> float:
    """Golden-section minimizer on [a, b] to bracket width xtol."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (a + b) / 2.0


REFINE_XTOL = 1e-10


def continuum_points(params: Walk1DParams, grid_size: int = 1024, tol: float = 1e-3) -> list[float]:
    """Momenta where T(p) = +-I, i.e. points admitting a continuum limit.

    Scans a uniform grid, captures candidates at a grid-scaled threshold
    (|dT/dp| <= sqrt(2), so true zeros can sit sqrt(2)*spacing/2 above zero
    at the nearest grid point), refines each candidate by golden-section to
    1e-10 in p, and keeps refined points whose defect beats `tol`.
    Results are deduplicated on the BZ circle (p and p+2pi identified).
    """
    if grid_size < 16:
        raise ValueError("grid_size must be >= 16")
    if tol <= 0:
        raise ValueError("tol must be positive")
    spacing = 2.0 * np.pi / grid_size
    capture = tol + np.sqrt(2.0) * spacing  # safety factor 2 on the slope bound
    grid = -np.pi + spacing * np.arange(grid_size)
    t = transfer_closed_form(params, grid)
    defects = np.minimum(
        np.sqrt(np.sum(np.abs(t - ID2) ** 2, axis=(1, 2))),
        np.sqrt(np.sum(np.abs(t + ID2) ** 2, axis=(1, 2))),
    )
    # each zero produces one contiguous run of captured grid indices (the
    # ring may wrap at +-pi); refine once per run over its full bracket
    idx = np.nonzero(defects < capture)[0]
    if len(idx) == 0:
        return []
    breaks = np.nonzero(np.diff(idx) > 1)[0]
    clusters = np.split(idx, breaks + 1)
    if len(clusters) > 1 and clusters[0][0] == 0 and clusters[-1][-1] == grid_size - 1:
        clusters[0] = np.concatenate([clusters[-1] - grid_size, clusters[0]])
        clusters.pop()
    found: list[float] = []
    for cluster in clusters:
        a = -np.pi + spacing * (cluster[0] - 1)
        b = -np.pi + spacing * (cluster[-1] + 1)
        p = _golden_min(lambda x: _continuum_defect(params, x), a, b, REFINE_XTOL)
        if _continuum_defect(params, p) >= tol:
            continue
        p = float(np.mod(p + np.pi, 2.0 * np.pi) - np.pi)
        if p <= -np.pi + 1e-9:
            p += 2.0 * np.pi
        if all(abs(np.mod(p - q + np.pi, 2.0 * np.pi) - np.pi) > 1e-6 for q in found):
            found.append(p)
    return sorted(found)
