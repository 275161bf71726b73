import numpy as np
import pytest

from diracwalk.fock import FockSpace, FreeQCA, momentum_generators
from diracwalk.lattice import full_step_matrix_1d
from diracwalk.params import Walk1DParams
from diracwalk.walk1d import gamma_coeffs


def test_car_relations():
    fs = FockSpace(3)
    eye = np.eye(fs.dim)
    for j in (0, 2, 5):
        cj = fs.annihilator(j).toarray()
        assert np.abs(cj @ cj).max() == 0.0  # nilpotent
        assert np.abs(cj @ cj.conj().T + cj.conj().T @ cj - eye).max() < 1e-12
    for j, k in ((0, 1), (0, 3), (2, 5)):
        cj, ck = fs.annihilator(j).toarray(), fs.annihilator(k).toarray()
        assert np.abs(cj @ ck + ck @ cj).max() < 1e-12
        assert np.abs(cj @ ck.conj().T + ck.conj().T @ cj).max() < 1e-12


def test_momentum_generators_hermitian_and_local_sum():
    params = Walk1DParams(0.6, 0.1)
    ha, hb = momentum_generators(params, 6)
    assert np.abs(ha - ha.conj().T).max() < 1e-12
    assert np.abs(hb - hb.conj().T).max() < 1e-12
    # their exponentials compose to the (local, unitary) walk transport
    from diracwalk.fock import expm_hermitian

    t = expm_hermitian(ha) @ expm_hermitian(hb)
    g = gamma_coeffs(params)
    s = np.roll(np.eye(6), 1, axis=0)
    expected = (
        np.kron(s, g.gamma_plus) + np.kron(np.eye(6), g.gamma_zero) + np.kron(s.T, g.gamma_minus)
    )
    assert np.abs(t - expected).max() < 1e-12


@pytest.mark.parametrize("theta", [0.0, 0.4, 1.0])
@pytest.mark.parametrize("mass_dt", [0.0, 0.1])
def test_single_particle_sector_equals_walk(theta, mass_dt):
    qca = FreeQCA(Walk1DParams(theta, mass_dt), 4)
    defect = np.abs(qca.single_particle_sector() - qca.walk_matrix()).max()
    assert defect < 1e-10


def test_single_particle_sector_n6():
    qca = FreeQCA(Walk1DParams(1.0, 0.1), 6)
    defect = np.abs(qca.single_particle_sector() - full_step_matrix_1d(Walk1DParams(1.0, 0.1), 6)).max()
    assert defect < 1e-10


def test_conjugation_relation():
    # T psi_n T^dag = gamma_+^dag psi_{n+1} + gamma_0^dag psi_n + gamma_-^dag psi_{n-1},
    # the daggered-coefficient form of the transport relation; at theta = 0
    # the gammas are Hermitian and this is the conventional relation verbatim
    for theta in (0.0, 0.5):
        qca = FreeQCA(Walk1DParams(theta, 0.0), 4)
        assert qca.conjugation_defect() < 1e-10


def test_conjugation_undaggered_fails_off_conventional():
    # the undaggered coefficients belong to the theta -> -theta walk
    qca = FreeQCA(Walk1DParams(0.5, 0.0), 4)
    t = qca.transport_full()
    g = gamma_coeffs(Walk1DParams(0.5))
    n, a = 1, 0
    lhs = t @ qca.fock._ann(qca.fock.mode(n, a)).toarray() @ t.conj().T
    rhs = sum(
        g.gamma_plus[a, b] * qca.fock._ann(qca.fock.mode(n + 1, b)).toarray()
        + g.gamma_zero[a, b] * qca.fock._ann(qca.fock.mode(n, b)).toarray()
        + g.gamma_minus[a, b] * qca.fock._ann(qca.fock.mode(n - 1, b)).toarray()
        for b in range(2)
    )
    assert np.abs(lhs - rhs).max() > 0.1


def test_vacuum_invariant_and_number_conserved():
    qca = FreeQCA(Walk1DParams(0.0, 0.0), 4)
    u = qca.step_blocked()
    vac = np.zeros(qca.fock.dim, dtype=complex)
    vac[0] = 1.0
    out = u.apply(vac)
    assert abs(out[0] - 1.0) < 1e-12  # exactly invariant, phase included
    for k, (idx, mat) in u.blocks.items():
        assert np.abs(mat @ mat.conj().T - np.eye(len(idx))).max() < 1e-12


def test_two_particle_antisymmetry_consistency():
    # acting with the step on c_j^dag c_k^dag |vac> matches the antisymmetrized
    # product of single-particle columns
    params = Walk1DParams(0.7, 0.1)
    qca = FreeQCA(params, 3)
    u1 = qca.single_particle_sector()
    full = qca.step_blocked().full()
    j, k = 0, 3
    state = np.zeros(qca.fock.dim, dtype=complex)
    cj = qca.fock._ann(j).conj().T
    ck = qca.fock._ann(k).conj().T
    state = (cj @ (ck @ np.eye(qca.fock.dim, 1, dtype=complex).ravel()))
    out = full @ state
    expected = np.zeros_like(out)
    for a in range(6):
        for b in range(6):
            amp = u1[a, j] * u1[b, k]
            if abs(amp) < 1e-16 or a == b:
                continue
            ca = qca.fock._ann(a).conj().T
            cb = qca.fock._ann(b).conj().T
            vac = np.eye(qca.fock.dim, 1, dtype=complex).ravel()
            expected += amp * (ca @ (cb @ vac))
    assert np.abs(out - expected).max() < 1e-10
