import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import sqrtm

from wyskew import matcore as mc
from wyskew.errors import DimensionMismatch, NotHermitian, NotPositiveSemidefinite
from wyskew.matcore import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z

from conftest import random_matrix

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=8)


def test_arithmetic_basics():
    assert mc.trace(np.eye(2)) == 2 + 0j
    a = random_matrix(np.random.default_rng(0), 3)
    np.testing.assert_array_equal(mc.adjoint(mc.adjoint(a)), a)
    np.testing.assert_array_equal(mc.matmul(PAULI_X, PAULI_X), np.eye(2))
    np.testing.assert_array_equal(mc.add(a, a), 2 * a)
    np.testing.assert_array_equal(mc.sub(a, a), 0 * a)
    np.testing.assert_array_equal(mc.scale(a, 2j), 2j * a)


@pytest.mark.parametrize("func", [mc.add, mc.sub, mc.matmul, mc.commutator, mc.anticommutator, mc.hs_inner])
def test_dimension_mismatch(func):
    with pytest.raises(DimensionMismatch):
        func(np.eye(2), np.eye(3))


def test_commutator_pauli_algebra():
    np.testing.assert_allclose(mc.commutator(PAULI_X, PAULI_Y), 2j * PAULI_Z)
    np.testing.assert_allclose(mc.commutator(PAULI_X, PAULI_Z), -2j * PAULI_Y)
    a = random_matrix(np.random.default_rng(1), 4)
    np.testing.assert_allclose(mc.commutator(a, np.eye(4)), 0)


def test_anticommutator_pauli_algebra():
    np.testing.assert_allclose(mc.anticommutator(PAULI_X, PAULI_Y), 0)
    np.testing.assert_allclose(mc.anticommutator(PAULI_Z, PAULI_Z), 2 * PAULI_I)
    a = random_matrix(np.random.default_rng(2), 3)
    np.testing.assert_allclose(mc.anticommutator(a, np.eye(3)), 2 * a)


def test_hs_inner_and_norm():
    assert mc.hs_inner(PAULI_X, PAULI_X) == 2
    assert mc.hs_inner(PAULI_X, PAULI_Y) == 0
    assert mc.frobenius_norm(np.eye(2)) == pytest.approx(math.sqrt(2))
    assert mc.frobenius_norm(np.zeros((3, 3))) == 0
    assert mc.frobenius_norm(PAULI_X) == pytest.approx(math.sqrt(2))
    a = random_matrix(np.random.default_rng(3), 5)
    assert abs(mc.hs_inner(a, a).imag) < 1e-12
    assert mc.hs_inner(a, a).real == pytest.approx(mc.frobenius_norm(a) ** 2)


def test_hermitian_eig_examples():
    w, v = mc.hermitian_eig(np.diag([3.0, 1.0]))
    np.testing.assert_allclose(w, [1, 3])
    np.testing.assert_allclose(np.abs(v), [[0, 1], [1, 0]])

    w, v = mc.hermitian_eig(PAULI_X)
    np.testing.assert_allclose(w, [-1, 1])
    # eigenvectors (1, -1)/sqrt2 and (1, 1)/sqrt2 up to phase
    assert abs(np.vdot(v[:, 0], [1, -1])) / math.sqrt(2) == pytest.approx(1)
    assert abs(np.vdot(v[:, 1], [1, 1])) / math.sqrt(2) == pytest.approx(1)


def test_hermitian_eig_qubit_spectrum_against_characteristic_polynomial():
    rng = np.random.default_rng(4)
    for _ in range(20):
        r = rng.standard_normal(3)
        r *= rng.uniform() / np.linalg.norm(r)
        rho = 0.5 * (np.eye(2) + r[0] * PAULI_X + r[1] * PAULI_Y + r[2] * PAULI_Z)
        n = np.linalg.norm(r)
        # lambda^2 - tr(rho) lambda + det(rho)
        roots = np.sort(np.roots([1, -np.trace(rho).real, np.linalg.det(rho).real]).real)
        w, _ = mc.hermitian_eig(rho)
        np.testing.assert_allclose(w, [(1 - n) / 2, (1 + n) / 2], atol=1e-12)
        np.testing.assert_allclose(w, roots, atol=1e-8)


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        mc.hermitian_eig(np.array([[0, 1], [0, 0]]))


@given(seeds, dims)
@settings(max_examples=50, deadline=None)
def test_eig_decomposition_invariants(seed, d):
    a = random_matrix(np.random.default_rng(seed), d)
    h = a + a.conj().T
    w, v = mc.hermitian_eig(h)
    assert np.all(np.diff(w) >= 0)
    assert mc.frobenius_norm(v.conj().T @ v - np.eye(d)) <= 1e-10
    assert mc.frobenius_norm((v * w) @ v.conj().T - h) <= 1e-10 * max(1, mc.frobenius_norm(h))


def test_psd_sqrt_examples():
    np.testing.assert_allclose(mc.psd_sqrt(np.eye(3)), np.eye(3))
    np.testing.assert_allclose(mc.psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))


def test_psd_sqrt_qubit_closed_form():
    r = np.array([0.3, -0.2, 0.5])
    n = np.linalg.norm(r)
    lp, lm = (1 + n) / 2, (1 - n) / 2
    a, b = (math.sqrt(lp) + math.sqrt(lm)) / 2, (math.sqrt(lp) - math.sqrt(lm)) / 2
    rhat = r / n
    expected = a * np.eye(2) + b * (rhat[0] * PAULI_X + rhat[1] * PAULI_Y + rhat[2] * PAULI_Z)
    rho = 0.5 * (np.eye(2) + r[0] * PAULI_X + r[1] * PAULI_Y + r[2] * PAULI_Z)
    s = mc.psd_sqrt(rho)
    np.testing.assert_allclose(s, expected, atol=1e-14)
    np.testing.assert_allclose(s @ s, rho, atol=1e-14)


def test_psd_sqrt_matches_scipy():
    rng = np.random.default_rng(5)
    for d in (2, 3, 5, 8):
        g = random_matrix(rng, d)
        m = g @ g.conj().T
        np.testing.assert_allclose(mc.psd_sqrt(m), sqrtm(m), atol=1e-10)


def test_psd_sqrt_of_projector_is_exact():
    # rank-1 input: rounding-level eigenvalues must not leak sqrt(eps) into the root
    v = np.array([1, 1j, -1]) / math.sqrt(3)
    p = np.outer(v, v.conj())
    np.testing.assert_allclose(mc.psd_sqrt(p), p, atol=1e-14)


def test_psd_sqrt_clamps_tiny_negative_and_rejects_indefinite():
    s = mc.psd_sqrt(np.diag([1.0, -5e-11]))
    np.testing.assert_allclose(s, np.diag([1.0, 0.0]))
    with pytest.raises(NotPositiveSemidefinite):
        mc.psd_sqrt(np.diag([1.0, -1e-6]))


def test_psd_sqrt_broadcasts_over_stacks():
    m = np.stack([np.diag([4.0, 1.0]), np.diag([9.0, 16.0])])
    np.testing.assert_allclose(mc.psd_sqrt(m), np.stack([np.diag([2.0, 1.0]), np.diag([3.0, 4.0])]))


def test_tensor_product():
    np.testing.assert_array_equal(mc.tensor_product(np.eye(2), np.eye(2)), np.eye(4))
    np.testing.assert_array_equal(mc.tensor_product(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 4, 6, 8]))
    rng = np.random.default_rng(6)
    a, b = random_matrix(rng, 2), random_matrix(rng, 3)
    assert mc.trace(mc.tensor_product(a, b)) == pytest.approx(mc.trace(a) * mc.trace(b))


@given(seeds, dims)
@settings(max_examples=50, deadline=None)
def test_psd_sqrt_reconstructs_square_of_hermitian(seed, d):
    a = random_matrix(np.random.default_rng(seed), d)
    h = a + a.conj().T
    hh = h @ h
    s = mc.psd_sqrt(hh)
    assert mc.frobenius_norm(s @ s - hh) <= 1e-9 * max(1, mc.frobenius_norm(hh))


@given(seeds, dims)
@settings(max_examples=50, deadline=None)
def test_cauchy_schwarz(seed, d):
    rng = np.random.default_rng(seed)
    a, b = random_matrix(rng, d), random_matrix(rng, d)
    lhs = abs(mc.hs_inner(a, b)) ** 2
    assert lhs <= mc.hs_inner(a, a).real * mc.hs_inner(b, b).real * (1 + 1e-12)
    assert mc.hs_inner(a, b) == pytest.approx(np.conj(mc.hs_inner(b, a)))


@given(seeds, dims)
@settings(max_examples=50, deadline=None)
def test_frobenius_unitary_invariance(seed, d):
    rng = np.random.default_rng(seed)
    u = np.linalg.qr(random_matrix(rng, d))[0]
    v = np.linalg.qr(random_matrix(rng, d))[0]
    a = random_matrix(rng, d)
    assert abs(mc.frobenius_norm(u @ a @ v) - mc.frobenius_norm(a)) <= 1e-10 * max(1, mc.frobenius_norm(a))


@given(seeds, dims)
@settings(max_examples=50, deadline=None)
def test_commutator_plus_anticommutator(seed, d):
    rng = np.random.default_rng(seed)
    a, b = random_matrix(rng, d), random_matrix(rng, d)
    np.testing.assert_allclose(mc.commutator(a, b) + mc.anticommutator(a, b), 2 * a @ b, atol=1e-12)
