import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracwalk import spinalg as sa
from diracwalk import walk3d as w3
from diracwalk.params import Walk3DParams

thetas = st.floats(-1.5, 1.5, allow_nan=False)
momenta = st.floats(-np.pi * 0.999, np.pi, allow_nan=False)
vec3 = st.tuples(momenta, momenta, momenta).map(np.array)


def test_kj_theta_zero():
    p = 0.61
    for ax in "xyz":
        k = w3.kj_op(Walk3DParams(0.0), ax, p)
        assert np.abs(k - sa.exp_neg_i(sa.pauli(ax), p)).max() < 1e-14
    assert np.abs(w3.kj_op(Walk3DParams(0.4), "y", 0.0) - sa.ID2).max() < 1e-14


@given(thetas, momenta)
@settings(max_examples=80, deadline=None)
def test_kj_real_part_identity(theta, p):
    # Re(eigenvalue of K_j) = cos^2(p/2) - sin^2(p/2) cos(2 theta)
    r = np.cos(p / 2) ** 2 - np.sin(p / 2) ** 2 * np.cos(2 * theta)
    for ax in "xyz":
        k = w3.kj_op(Walk3DParams(theta), ax, p)
        lam = np.linalg.eigvals(k)
        assert np.abs(lam.real - r).max() < 1e-12


@given(thetas, momenta)
@settings(max_examples=60, deadline=None)
def test_kj_batch_matches_product(theta, p):
    params = Walk3DParams(theta)
    for ax in "xyz":
        assert np.abs(w3.kj_batch(params, ax, p) - w3.kj_op(params, ax, p)).max() < 1e-12


@given(thetas, vec3)
@settings(max_examples=60, deadline=None)
def test_weyl_minus_is_plus_at_negated_momentum(theta, p):
    params = Walk3DParams(theta)
    km = w3.weyl_op(params, -1, p)
    kp = w3.weyl_op(params, +1, -p)
    assert np.abs(km - kp).max() < 1e-12


def test_weyl_unitarity_random():
    rng = np.random.default_rng(3)
    for _ in range(200):
        params = Walk3DParams(rng.uniform(-1.5, 1.5))
        p = rng.uniform(-np.pi, np.pi, 3)
        assert sa.unitarity_defect(w3.weyl_op(params, +1, p)) < 1e-12


def test_dirac_op_examples():
    assert np.abs(w3.dirac_op(Walk3DParams(0.0), np.zeros(3)) - np.eye(4)).max() < 1e-14
    mu = 0.21
    ph = sa.eigenphases(w3.dirac_op(Walk3DParams(0.3, mu), np.zeros(3)))
    assert np.allclose(ph, [-mu, -mu, mu, mu], atol=1e-12)


@given(thetas, vec3, st.floats(0.0, 1.0))
@settings(max_examples=40, deadline=None)
def test_dirac_phases_in_pairs(theta, p, mu):
    ph = sa.eigenphases(w3.dirac_op(Walk3DParams(theta, mu), p))
    folded = np.sort(np.abs(ph))
    assert abs(folded[0] - folded[1]) < 1e-10 and abs(folded[2] - folded[3]) < 1e-10
    assert abs(ph.sum()) < 1e-9 or abs(abs(ph).max() - np.pi) < 1e-9


def test_doubler_point_values():
    q, edge = w3.doubler_point(0.0)
    assert abs(q - np.pi / 2) < 1e-14 and not edge
    q, _ = w3.doubler_point(np.pi / 4)
    assert abs(q - 2 * np.arctan(1 / np.sqrt(2))) < 1e-14
    q, edge = w3.doubler_point(-np.pi / 4)
    assert q == np.pi and edge


def test_doubler_point_identity():
    for theta in np.linspace(-1.4, 1.4, 20):
        q, _ = w3.doubler_point(theta)
        params = Walk3DParams(theta)
        kp = w3.weyl_op(params, +1, q * np.ones(3))
        assert np.abs(kp - sa.ID2).max() < 1e-10


@given(thetas)
@settings(max_examples=60, deadline=None)
def test_kj_at_doubler_closed_form(theta):
    q, _ = w3.doubler_point(theta)
    params = Walk3DParams(theta)
    for ax in "xyz":
        cf = w3.kj_at_doubler_closed_form(theta, ax)
        assert np.abs(cf - w3.kj_op(params, ax, q)).max() < 1e-12
        assert sa.unitarity_defect(cf) < 1e-12


def test_kz_at_doubler_theta_zero():
    assert np.abs(w3.kj_at_doubler_closed_form(0.0, "z") + 1j * sa.SIGMA_Z).max() < 1e-14


def test_sigma_prime_algebra():
    consts = []
    for theta in np.linspace(-1.2, 1.2, 20):
        sp = w3.sigma_prime(theta)
        for m in sp:
            assert np.abs(m - m.conj().T).max() < 1e-12
            assert np.abs(m @ m - sa.ID2).max() < 1e-10
        # pairwise anticommutation (Clifford algebra)
        for i in range(3):
            for j in range(i + 1, 3):
                assert np.abs(sp[i] @ sp[j] + sp[j] @ sp[i]).max() < 1e-10
        consts.append(w3.sigma_prime_structure_constant(theta))
    consts = np.array(consts)
    # measured structure constant: [s'_i, s'_j] = -2 i eps_ijk s'_k,
    # consistent across theta (a conjugate Pauli representation)
    assert np.abs(consts + 2.0).max() < 1e-10


def test_sigma_prime_theta_zero_is_conjugate_rep():
    spx, spy, spz = w3.sigma_prime(0.0)
    assert np.abs(spx - sa.SIGMA_X).max() < 1e-12
    assert np.abs(spy + sa.SIGMA_Y).max() < 1e-12
    assert np.abs(spz - sa.SIGMA_Z).max() < 1e-12


def test_doubler_expansion_second_order():
    params = Walk3DParams(0.8)
    d1 = w3.doubler_expansion_check(params, +1, np.array([1e-2, 0.0, 0.0]))
    d2 = w3.doubler_expansion_check(params, +1, np.array([1e-3, 0.0, 0.0]))
    assert d1 / d2 == pytest.approx(100.0, rel=0.15)
    assert w3.doubler_expansion_check(params, +1, np.zeros(3)) < 1e-12
    d1m = w3.doubler_expansion_check(params, -1, np.array([1e-2, 0.0, 0.0]))
    d2m = w3.doubler_expansion_check(params, -1, np.array([1e-3, 0.0, 0.0]))
    assert d1m / d2m == pytest.approx(100.0, rel=0.15)


def test_conventional_catalogue_sign_relations():
    params = Walk3DParams(0.0)
    rng = np.random.default_rng(11)
    for pt in w3.conventional_special_points():
        mom = np.array(pt.momentum)
        for _ in range(5):
            eta = rng.uniform(-0.05, 0.05, 3)
            lhs = w3.weyl_op(params, +1, mom + eta)
            rhs = pt.sign_relation * w3.weyl_op(params, +1, eta)
            if pt.kind in (w3.DOUBLER, w3.PSEUDO_DOUBLER):
                assert np.abs(lhs - rhs).max() < 1e-10
            else:
                # half-pi corners: exact only at eta = 0, first order in eta
                assert np.abs(lhs - rhs).max() < 0.3
        if pt.kind in (w3.OC_DOUBLER, w3.OC_PSEUDO_DOUBLER):
            k0 = w3.weyl_op(params, +1, mom)
            assert np.abs(k0 - pt.sign_relation * sa.ID2).max() < 1e-12


def test_catalogue_counts_and_massive_flag():
    pts = w3.conventional_special_points()
    kinds = [p.kind for p in pts]
    assert kinds.count(w3.DOUBLER) == 3
    assert kinds.count(w3.PSEUDO_DOUBLER) == 4
    assert kinds.count(w3.OC_DOUBLER) == 4
    assert kinds.count(w3.OC_PSEUDO_DOUBLER) == 4
    massive = w3.conventional_special_points(massive=True)
    assert [p.kind for p in massive].count(w3.NO_CONTINUUM) == 8
    for pt in pts:
        if pt.kind in (w3.DOUBLER, w3.OC_DOUBLER):
            assert pt.sign_relation == +1
        elif pt.kind in (w3.PSEUDO_DOUBLER, w3.OC_PSEUDO_DOUBLER):
            assert pt.sign_relation == -1


def test_half_pi_sigma_double_prime_expansion():
    # K(s pi/2 + eta) = (s_x s_y s_z)(I + i eta . sigma'' ) + O(eta^2)
    params = Walk3DParams(0.0)
    spp = [-sa.SIGMA_X, sa.SIGMA_Y, -sa.SIGMA_Z]
    for signs in [(1, 1, 1), (-1, -1, -1), (-1, 1, 1), (1, -1, 1)]:
        mom = np.array(signs) * np.pi / 2
        prod = signs[0] * signs[1] * signs[2]
        eta = np.array([2e-4, -1e-4, 1.5e-4])
        lhs = w3.weyl_op(params, +1, mom + eta)
        rhs = prod * (sa.ID2 + 1j * sum(eta[i] * spp[i] for i in range(3)))
        assert np.abs(lhs - rhs).max() < 1e-7


def test_effective_hamiltonian_second_order():
    params = Walk3DParams(0.7, 0.02)
    ray = np.array([0.36, 0.48, 0.8])
    defects = []
    for scale in (1e-2, 1e-3):
        u = w3.dirac_op(params, scale * ray)
        h = w3.effective_hamiltonian_3d(params, scale * ray)
        w, v = np.linalg.eigh(h)
        defects.append(np.linalg.norm(u - (v * np.exp(-1j * w)) @ v.conj().T))
    # the mass term is held fixed here, so the remainder is first order in p
    # with an O(p^2) part; the pure-momentum BCH piece dominates at 1e-2
    assert defects[0] / defects[1] > 9.0
