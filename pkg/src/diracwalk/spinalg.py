"""Exact small-matrix complex linear algebra for the walk's internal space.

Everything here works on dense 2x2 or 4x4 complex numpy arrays.  All
quantities are dimensionless: momenta enter as p*dx in (-pi, pi], energies
come out as E*dt in (-pi, pi] (branch cut at -pi, with the tie mapped to
+pi), masses as m*c^2*dt.
"""

from __future__ import annotations

import numpy as np

UNITARY_TOL = 1e-12
HERMITIAN_TOL = 1e-12
EIG_TOL = 1e-10

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
ID2 = np.eye(2, dtype=complex)
ID4 = np.eye(4, dtype=complex)

# beta = offdiag(I, I) couples the two Weyl blocks of the 3+1-D Dirac walk
BETA = np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]]).astype(complex)

_PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}
# axis cycled into the rotated Pauli's second term: sigma_theta^j mixes j
# with _CYCLE[j] (x->z means sigma_theta^x = cos t sx - sin t sz, etc.)
_MIX = {"x": "z", "y": "x", "z": "y"}


def pauli(axis: str) -> np.ndarray:
    """Standard Pauli matrix in the {(1,0), (0,1)} basis."""
    return _PAULI[axis].copy()


def frob(a: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a))


def unitarity_defect(u: np.ndarray) -> float:
    return frob(u.conj().T @ u - np.eye(u.shape[0]))


def hermiticity_defect(h: np.ndarray) -> float:
    return frob(h - h.conj().T)


def assert_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> None:
    d = unitarity_defect(u)
    if d > tol:
        raise ValueError(f"matrix is not unitary (defect {d:.3e} > {tol:.1e})")


def assert_hermitian(h: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    d = hermiticity_defect(h)
    if d > tol:
        raise ValueError(f"matrix is not Hermitian (defect {d:.3e} > {tol:.1e})")


def rotated_pauli_1d(theta: float) -> np.ndarray:
    """sigma_theta = cos(theta) sigma_z - sin(theta) sigma_y.

    Equals R sigma_z R^dag with R = exp(-i theta sigma_x / 2); Hermitian,
    traceless, eigenvalues exactly +-1.
    """
    return np.cos(theta) * SIGMA_Z - np.sin(theta) * SIGMA_Y


def rotated_pauli_3d(axis: str, theta: float) -> np.ndarray:
    """Axis-cycled rotated Pauli: cos(theta) sigma_j - sin(theta) sigma_mix(j).

    The mixing partner cycles x->z, y->x, z->y, so the z case coincides with
    the 1+1-D rotated Pauli.
    """
    return np.cos(theta) * _PAULI[axis] - np.sin(theta) * _PAULI[_MIX[axis]]


def projector_up(op: np.ndarray, tol: float = EIG_TOL) -> np.ndarray:
    """Rank-1 projector onto the +1 eigenspace of a 2x2 +-1-spectrum Hermitian.

    For such operators the spectral identity gives P = (I + op)/2 directly;
    the eigenvalues are validated first.
    """
    assert_hermitian(op)
    w = np.linalg.eigvalsh(op)
    if abs(w[0] + 1.0) > tol or abs(w[1] - 1.0) > tol:
        raise ValueError(f"operator spectrum {w} is not {{-1, +1}}")
    return (np.eye(2, dtype=complex) + op) / 2.0


def exp_neg_i(h: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """exp(-i * scale * h) for Hermitian h, by exact eigendecomposition.

    dim <= 4 here, so eigendecomposition is exact to rounding and avoids any
    series-truncation tolerance.
    """
    assert_hermitian(h)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * scale * w)) @ v.conj().T


def wrap_phase(phi: np.ndarray | float) -> np.ndarray | float:
    """Map phases into (-pi, pi]; values at the branch edge go to +pi."""
    out = np.mod(np.asarray(phi, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    out = np.where(out == -np.pi, np.pi, out)
    if np.isscalar(phi):
        return float(out)
    return out


def eigenphases(u: np.ndarray, tol: float = EIG_TOL) -> np.ndarray:
    """Phases E*dt with eigenvalue exp(-i E dt), each in (-pi, pi], ascending.

    An eigenvalue numerically at exp(-+ i pi) maps to +pi (half-open branch).
    Rejects non-unitary input.
    """
    d = unitarity_defect(u)
    if d > tol:
        raise ValueError(f"eigenphases requires a unitary matrix (defect {d:.3e})")
    lam = np.linalg.eigvals(u)
    phases = -np.angle(lam)  # in [-pi, pi)
    phases[phases == -np.pi] = np.pi
    return np.sort(phases)


def eigenphases_su2_batch(u: np.ndarray) -> np.ndarray:
    """Eigenphases of a batch (..., 2, 2) of det-1 unitaries, analytically.

    det U = 1 forces U = cos(l) I - i sin(l) n.sigma with spectrum
    {exp(-il), exp(+il)}; l = atan2(|sin l|, cos l) stays fully precise at
    the band edges where arccos alone would lose half the digits.
    Returns (..., 2) phases sorted ascending.
    """
    c = np.trace(u, axis1=-2, axis2=-1).real / 2.0
    traceless = u - c[..., None, None] * ID2
    s = np.sqrt(np.sum(np.abs(traceless) ** 2, axis=(-2, -1)) / 2.0)
    lam = np.arctan2(s, c)
    return np.stack([-lam, lam], axis=-1)


def eigenphases_batch(u: np.ndarray) -> np.ndarray:
    """Eigenphases of a batch (..., d, d) of unitaries via LAPACK, sorted."""
    lam = np.linalg.eigvals(u)
    phases = -np.angle(lam)
    phases = np.where(phases == -np.pi, np.pi, phases)
    return np.sort(phases, axis=-1)
