import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliffordtopo.linalg import ConvergenceFailure, NotHermitian, eig_hermitian, eigh_batched


def random_hermitian(rng, n, scale=1.0):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (a + a.conj().T) / 2


@given(st.integers(1, 8), st.integers(0, 2 ** 32 - 1), st.sampled_from([1e-6, 1.0, 1e6]))
@settings(max_examples=60, deadline=None)
def test_reconstruction_and_orthonormality(n, seed, scale):
    h = random_hermitian(np.random.default_rng(seed), n, scale)
    dec = eig_hermitian(h)
    assert np.linalg.norm(dec.reconstruct() - h) <= 1e-10 * np.linalg.norm(h)
    v = dec.eigenvectors
    assert np.allclose(v.conj().T @ v, np.eye(n), atol=1e-12)
    assert np.all(np.diff(dec.eigenvalues) >= 0)


@given(st.integers(1, 12), st.integers(0, 2 ** 32 - 1))
@settings(max_examples=30, deadline=None)
def test_eigenvalues_match_lapack(n, seed):
    h = random_hermitian(np.random.default_rng(seed), n)
    ours = eig_hermitian(h).eigenvalues
    assert np.allclose(ours, np.linalg.eigvalsh(h), atol=1e-10 * max(1, np.abs(h).max()))


def test_degenerate_spectrum():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    h = q @ np.diag([1, 1, 1, -2, -2, 5]) @ q.conj().T
    dec = eig_hermitian(h)
    assert np.allclose(dec.eigenvalues, [-2, -2, 1, 1, 1, 5], atol=1e-12)
    assert np.allclose(dec.reconstruct(), h, atol=1e-12)


def test_batch_matches_single():
    rng = np.random.default_rng(7)
    hs = np.array([random_hermitian(rng, 4) for _ in range(50)]).reshape(5, 10, 4, 4)
    values, vectors = eigh_batched(hs)
    assert values.shape == (5, 10, 4) and vectors.shape == (5, 10, 4, 4)
    single = eig_hermitian(hs[2, 3])
    assert np.allclose(values[2, 3], single.eigenvalues, atol=1e-12)


def test_largest_allowed_size():
    h = random_hermitian(np.random.default_rng(1), 64)
    dec = eig_hermitian(h)
    assert np.linalg.norm(dec.reconstruct() - h) <= 1e-10 * np.linalg.norm(h)


def test_diagonal_and_zero_input():
    dec = eig_hermitian(np.diag([3.0, -1.0, 2.0]))
    assert np.array_equal(dec.eigenvalues, [-1.0, 2.0, 3.0])
    assert np.array_equal(eig_hermitian(np.zeros((3, 3))).eigenvalues, np.zeros(3))


def test_rejects_bad_input():
    with pytest.raises(NotHermitian):
        eig_hermitian(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        eig_hermitian(np.zeros((65, 65)))
    with pytest.raises(ValueError):
        eig_hermitian(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eig_hermitian(np.zeros((2, 2, 2)))
    assert issubclass(ConvergenceFailure, RuntimeError)
