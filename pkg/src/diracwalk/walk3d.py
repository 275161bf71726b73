"""3+1-D Weyl and Dirac walks of the family, and their special points.

K_j(p) is the axis-j analogue of the 1+1-D transport; the Weyl walks are the
ordered products K+ = K_z K_y K_x and K- = K_z^dag K_y^dag K_x^dag (rightmost
factor acts first), and the Dirac walk is U(p) = exp(-i mass_dt beta) *
blockdiag(K+, K-).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .params import Walk3DParams
from .spinalg import (
    BETA,
    ID2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    exp_neg_i,
    frob,
    pauli,
    rotated_pauli_3d,
)

AXES = ("x", "y", "z")
# mixing partner of the rotated Pauli, also the axis appearing in the
# exp(-2i theta sigma) term of the K_j closed form
_CLOSED_FORM_AXIS = {"x": "y", "y": "z", "z": "x"}


def kj_op(params: Walk3DParams, axis: str, p_dx: float) -> np.ndarray:
    """K_j(p) = exp(-i p sigma_theta^j / 2) exp(-i p sigma_{-theta}^j / 2)."""
    return exp_neg_i(rotated_pauli_3d(axis, params.theta), p_dx / 2.0) @ exp_neg_i(
        rotated_pauli_3d(axis, -params.theta), p_dx / 2.0
    )


def kj_batch(params: Walk3DParams, axis: str, p_dx) -> np.ndarray:
    """K_j(p) over an array of momenta, via the closed form.

    K_j(p) = cos^2(p/2) - i sin(p) cos(theta) sigma_j
             - exp(-2i theta sigma_w(j)) sin^2(p/2),   w: x->y, y->z, z->x.
    """
    p = np.asarray(p_dx, dtype=float)
    th = params.theta
    sj = pauli(axis)
    sw = pauli(_CLOSED_FORM_AXIS[axis])
    rot = np.cos(2 * th) * ID2 - 1j * np.sin(2 * th) * sw
    out = (
        (np.cos(p / 2.0) ** 2)[..., None, None] * ID2
        - 1j * (np.sin(p) * np.cos(th))[..., None, None] * sj
        - (np.sin(p / 2.0) ** 2)[..., None, None] * rot
    )
    return out if p.shape else out.reshape(2, 2)


def weyl_op(params: Walk3DParams, sign: int, p: np.ndarray) -> np.ndarray:
    """K+(p) or K-(p) for sign = +1 / -1, with K-(p) = K+(-p) exactly.

    K- is the momentum-reversed walk (each axis factor with its shifts
    swapped), which at theta = 0 coincides with the adjoint-factor product
    K_z^dag K_y^dag K_x^dag.  For theta != 0 the literal adjoint product
    differs at second order and loses the doubler at -q, so the
    momentum-reversed form is the one carrying the advertised opposite-
    chirality physics.
    """
    p = np.asarray(p, dtype=float)
    if sign <= 0:
        p = -p
    kx = kj_batch(params, "x", p[..., 0])
    ky = kj_batch(params, "y", p[..., 1])
    kz = kj_batch(params, "z", p[..., 2])
    return kz @ ky @ kx


def mass_unitary_3d(params: Walk3DParams) -> np.ndarray:
    """W = exp(-i mass_dt beta) = cos(mass_dt) I4 - i sin(mass_dt) beta."""
    return np.cos(params.mass_dt) * np.eye(4, dtype=complex) - 1j * np.sin(params.mass_dt) * BETA


def dirac_op(params: Walk3DParams, p: np.ndarray) -> np.ndarray:
    """4x4 Dirac step U(p) = W * blockdiag(K+(p), K-(p)); broadcasts over p."""
    p = np.asarray(p, dtype=float)
    kp = weyl_op(params, +1, p)
    km = weyl_op(params, -1, p)
    shape = p.shape[:-1] + (4, 4)
    v = np.zeros(shape, dtype=complex)
    v[..., :2, :2] = kp
    v[..., 2:, 2:] = km
    return mass_unitary_3d(params) @ v


def effective_hamiltonian_3d(params: Walk3DParams, p: np.ndarray) -> np.ndarray:
    """H_eff dt = cos(theta) (p.sigma (+) -p.sigma) + mass_dt beta."""
    p = np.asarray(p, dtype=float)
    ps = p[0] * SIGMA_X + p[1] * SIGMA_Y + p[2] * SIGMA_Z
    h = np.zeros((4, 4), dtype=complex)
    h[:2, :2] = np.cos(params.theta) * ps
    h[2:, 2:] = -np.cos(params.theta) * ps
    return h + params.mass_dt * BETA


def doubler_point(theta: float) -> tuple[float, bool]:
    """q with tan(q/2) = 1/(cos theta + sin theta); unique in (-pi, pi].

    Returns (q_dx, at_edge); at_edge flags the theta = -pi/4 coordinate
    singularity where the right side diverges and the limit q = pi applies.
    """
    denom = np.cos(theta) + np.sin(theta)
    if abs(denom) < 1e-14:
        return np.pi, True
    return float(2.0 * np.arctan(1.0 / denom)), False


def kj_at_doubler_closed_form(theta: float, axis: str = "z") -> np.ndarray:
    """K_j(q(theta)) in closed form.

    K_z(q) = (s(s+c) - i c(s+c) sigma_z + i s c sigma_x) / (1 + c s), with the
    extra-Pauli axis cycling z->x, y->z, x->y like the K_j closed form.
    """
    c, s = np.cos(theta), np.sin(theta)
    extra = {"z": SIGMA_X, "y": SIGMA_Z, "x": SIGMA_Y}[axis]
    return (s * (s + c) * ID2 - 1j * c * (s + c) * pauli(axis) + 1j * s * c * extra) / (1.0 + c * s)


def sigma_prime(theta: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The Pauli-like triple governing the family doubler's expansion.

    sigma'_x = (K_x(q)^dag sigma_theta^x K_x(q) + sigma_{-theta}^x) / (2 cos theta)
    and cyclic partners; each is Hermitian with square I.  The 1/2 comes from
    the half-momentum derivative of K_j (the closed-form expansion
    K+(q+eta) = I - i cos(theta) eta.sigma' + O(eta^2) fixes it).
    """
    if abs(np.cos(theta)) < 1e-12:
        raise ValueError("sigma_prime undefined at cos(theta) = 0")
    q, _ = doubler_point(theta)
    params = Walk3DParams(theta, 0.0, extended_theta=abs(theta) >= np.pi / 2)
    kx = kj_op(params, "x", q)
    kz = kj_op(params, "z", q)
    norm = 2.0 * np.cos(theta)
    spx = (kx.conj().T @ rotated_pauli_3d("x", theta) @ kx + rotated_pauli_3d("x", -theta)) / norm
    spy = (
        kz @ rotated_pauli_3d("y", theta) @ kz.conj().T
        + kx.conj().T @ rotated_pauli_3d("y", -theta) @ kx
    ) / norm
    spz = (rotated_pauli_3d("z", theta) + kz @ rotated_pauli_3d("z", -theta) @ kz.conj().T) / norm
    return spx, spy, spz


def sigma_prime_structure_constant(theta: float) -> float:
    """f in [sigma'_i, sigma'_j] = f * i * eps_ijk sigma'_k, measured.

    The paper quotes f = 1; direct evaluation gives f = -2 (a conjugate
    representation: at theta = 0, sigma' = (sx, -sy, sz)).
    """
    spx, spy, spz = sigma_prime(theta)
    comm = spx @ spy - spy @ spx
    return float(np.real(np.trace(comm @ spz.conj().T) / (1j * np.trace(spz @ spz.conj().T))))


def doubler_expansion_check(params: Walk3DParams, sign: int, eta: np.ndarray) -> float:
    """|| K^sign(sign*q + eta) - (I - sign * i cos(theta) eta.sigma') ||_F."""
    eta = np.asarray(eta, dtype=float)
    q, _ = doubler_point(params.theta)
    spx, spy, spz = sigma_prime(params.theta)
    k = weyl_op(params, sign, sign * q * np.ones(3) + eta)
    lin = ID2 - sign * 1j * np.cos(params.theta) * (eta[0] * spx + eta[1] * spy + eta[2] * spz)
    return frob(k - lin)


DOUBLER = "doubler"
PSEUDO_DOUBLER = "pseudo-doubler"
OC_DOUBLER = "opposite-chirality-doubler"
OC_PSEUDO_DOUBLER = "opposite-chirality-pseudo-doubler"
NO_CONTINUUM = "no-continuum-limit"


@dataclass(frozen=True)
class SpecialPoint:
    momentum: tuple[float, float, float]
    kind: str
    sign_relation: int  # +1: K(P+eta) = K(eta), -1: K(P+eta) = -K(eta)


def conventional_special_points(massive: bool = False) -> list[SpecialPoint]:
    """The theta = 0 catalogue, canonicalized on the BZ torus (pi, not -pi).

    K_j(pi + eta) = -K_j(eta) gives sign (-1)^(# pi components):
    two-pi points are doublers, one- and three-pi points pseudo-doublers.
    At the half-pi corners K(s pi/2) = (s_x s_y s_z) I exactly, so the
    sign product classifies doubler vs pseudo-doubler (opposite chirality,
    expansion in sigma'' = (-sx, sy, -sz)); with mass these corners have no
    continuum limit and are flagged as such.
    """
    pts: list[SpecialPoint] = []
    pi = np.pi
    for axes in ((pi, pi, 0.0), (pi, 0.0, pi), (0.0, pi, pi)):
        pts.append(SpecialPoint(axes, DOUBLER, +1))
    pts.append(SpecialPoint((pi, pi, pi), PSEUDO_DOUBLER, -1))
    for axes in ((pi, 0.0, 0.0), (0.0, pi, 0.0), (0.0, 0.0, pi)):
        pts.append(SpecialPoint(axes, PSEUDO_DOUBLER, -1))
    for signs in product((1, -1), repeat=3):
        prod_sign = signs[0] * signs[1] * signs[2]
        mom = tuple(s * pi / 2 for s in signs)
        if massive:
            kind = NO_CONTINUUM
        else:
            kind = OC_DOUBLER if prod_sign > 0 else OC_PSEUDO_DOUBLER
        pts.append(SpecialPoint(mom, kind, prod_sign))
    return pts
