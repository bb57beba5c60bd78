import numpy as np
import pytest

from centropy import linalg
from centropy.errors import NoConvergence, NotHermitian
from centropy.orbit import haar_unitaries, rotation_00_11
from centropy.states import I2, I4, SIGMA_Z, bell_state, from_matrix

from conftest import random_hermitian, random_states


def test_eigh_identity():
    w, v = linalg.eigh(I4)
    np.testing.assert_allclose(w, [1, 1, 1, 1], atol=1e-14)
    np.testing.assert_allclose(v.conj().T @ v, I4, atol=1e-12)


def test_eigh_diagonal_ascending():
    w, _ = linalg.eigh(np.diag([0.75, 0, 0, 0.25]))
    np.testing.assert_allclose(w, [0, 0, 0.25, 0.75], atol=1e-15)


def test_eigh_reconstruction_and_orthonormality(rng):
    h = random_hermitian(rng, 100)
    w, v = linalg.eigh(h)
    assert np.all(np.diff(w, axis=1) >= 0)
    recon = (v * w[:, None, :]) @ np.swapaxes(v.conj(), -1, -2)
    assert np.max(np.abs(recon - h)) <= 1e-10
    gram = np.swapaxes(v.conj(), -1, -2) @ v
    assert np.max(np.abs(gram - I4)) <= 1e-10
    residual = h @ v - v * w[:, None, :]
    assert np.max(np.abs(residual)) <= 1e-10


def test_eigh_matches_lapack(rng):
    h = random_hermitian(rng, 200)
    np.testing.assert_allclose(linalg.eigvalsh(h), np.linalg.eigvalsh(h), atol=1e-12)


def test_eigh_trace_invariant(rng):
    h = random_hermitian(rng, 50)
    w = linalg.eigvalsh(h)
    np.testing.assert_allclose(w.sum(axis=1), np.trace(h, axis1=1, axis2=2).real, atol=1e-10)


def test_eigh_2x2_and_3x3(rng):
    for dim in (2, 3):
        h = random_hermitian(rng, 20, dim)
        np.testing.assert_allclose(linalg.eigvalsh(h), np.linalg.eigvalsh(h), atol=1e-12)


def test_eigh_rejects_non_hermitian():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 1.0
    with pytest.raises(NotHermitian):
        linalg.eigh(m)


def test_eigh_sweep_budget(rng):
    with pytest.raises(NoConvergence):
        linalg.eigh(random_hermitian(rng, 1)[0], max_sweeps=1)


def test_kron_basics():
    np.testing.assert_array_equal(linalg.kron(I2, I2), I4)
    np.testing.assert_array_equal(linalg.kron(SIGMA_Z, I2), np.diag([1, 1, -1, -1]))


def test_kron_mixed_product(rng):
    a, b, c, d = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(4))
    lhs = linalg.kron(a, b) @ linalg.kron(c, d)
    assert np.max(np.abs(lhs - linalg.kron(a @ c, b @ d))) <= 1e-12


def test_partial_trace_bell():
    rho = bell_state().mat
    for side in "AB":
        np.testing.assert_allclose(linalg.partial_trace(rho, side), I2 / 2, atol=1e-15)


def test_partial_trace_product(rng):
    a = random_states(rng, 1)[0].marginal("A")
    b = random_states(rng, 1)[0].marginal("B")
    rho = linalg.kron(a, b)
    np.testing.assert_allclose(linalg.partial_trace(rho, "B"), a, atol=1e-15)
    np.testing.assert_allclose(linalg.partial_trace(rho, "A"), b, atol=1e-15)


def test_partial_trace_of_kron_general(rng):
    for _ in range(20):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        out = linalg.partial_trace(linalg.kron(a, b), "A")
        assert np.max(np.abs(out - b * np.trace(a))) <= 1e-12


def test_partial_trace_index_sum_oracle():
    # 1/2|00><00| + 1/4|00><11| + 1/4|11><00| + 1/2|11><11|
    m = np.zeros((4, 4))
    m[0, 0] = m[3, 3] = 0.5
    m[0, 3] = m[3, 0] = 0.25
    expected = np.zeros((2, 2))
    for a in range(2):
        for a2 in range(2):
            expected[a, a2] = sum(m[2 * a + b, 2 * a2 + b] for b in range(2))
    np.testing.assert_allclose(linalg.partial_trace(m, "B"), expected)
    np.testing.assert_allclose(expected, np.diag([0.5, 0.5]))


def test_partial_transpose_properties(rng):
    d = np.diag([0.1, 0.2, 0.3, 0.4])
    np.testing.assert_array_equal(linalg.partial_transpose(d, "A"), d)
    for rho in random_states(rng, 10):
        for side in "AB":
            pt = linalg.partial_transpose(rho.mat, side)
            np.testing.assert_array_equal(linalg.partial_transpose(pt, side), rho.mat)
            assert np.trace(pt) == np.trace(rho.mat)
            np.testing.assert_array_equal(pt, pt.conj().T)
        # PT_A and PT_B differ by a full transpose
        np.testing.assert_array_equal(
            linalg.partial_transpose(rho.mat, "A"), linalg.partial_transpose(rho.mat, "B").T
        )


def test_partial_transpose_bell_min_eigenvalue():
    pt = linalg.partial_transpose(bell_state().mat, "B")
    assert linalg.eigvalsh(pt)[0] == pytest.approx(-0.5, abs=1e-14)


def test_frobenius_norm(rng):
    assert linalg.frobenius_norm(np.zeros((4, 4))) == 0
    assert linalg.frobenius_norm(I4) == pytest.approx(2.0)
    us = haar_unitaries(rng, 20)
    for rho, u in zip(random_states(rng, 20), us):
        purity = np.real(np.trace(rho.mat @ rho.mat))
        assert abs(linalg.frobenius_norm(rho.mat - I4 / 4) - np.sqrt(purity - 0.25)) <= 1e-12
        m = rho.mat
        assert abs(linalg.frobenius_norm(u @ m @ u.conj().T) - linalg.frobenius_norm(m)) <= 1e-10


def test_is_unitary():
    assert linalg.is_unitary(I4)
    assert linalg.is_unitary(rotation_00_11().mat)
    assert not linalg.is_unitary(2 * I4)


def test_rotation_matches_printed_matrix():
    r = np.sqrt(2)
    printed = np.array([[1, 0, 0, 1], [0, r, 0, 0], [0, 0, r, 0], [-1, 0, 0, 1]]) / r
    np.testing.assert_allclose(rotation_00_11().mat, printed, atol=1e-15)
    assert linalg.is_unitary(printed)


def test_funm_log_matches_eigen_route(rng):
    rho = random_states(rng, 1)[0]
    logm = linalg.funm_hermitian(rho.mat, np.log2)
    w, v = np.linalg.eigh(rho.mat)
    expected = v @ np.diag(np.log2(w)) @ v.conj().T
    np.testing.assert_allclose(logm, expected, atol=1e-9)


def test_state_validation_uses_kernel():
    with pytest.raises(NotHermitian):
        from_matrix(np.triu(np.ones((4, 4))) / 4)
