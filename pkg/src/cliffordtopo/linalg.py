"""Cyclic complex Jacobi eigensolver for small Hermitian matrices.

Each rotation removes the phase of ``a_pq`` with a diagonal unitary and then
applies the real symmetric Jacobi rotation to the ``(p, q)`` plane.  Pairs are
visited in a fixed row-cyclic order, so results are deterministic.  All
routines accept a stack of matrices and rotate the whole stack at once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["NotHermitian", "ConvergenceFailure", "EigDecomposition", "eig_hermitian", "eigh_batched"]

MAX_SIZE = 64
OFF_TOL = 1e-12
HERMITIAN_TOL = 1e-10
MAX_SWEEPS = 60


class NotHermitian(ValueError):
    pass


class ConvergenceFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class EigDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues[..., None, :]) @ v.conj().swapaxes(-1, -2)


def _check(h: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim < 2 or h.shape[-1] != h.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {h.shape}")
    n = h.shape[-1]
    if n > MAX_SIZE:
        raise ValueError(f"matrix size {n} exceeds {MAX_SIZE}")
    dev = np.abs(h - h.conj().swapaxes(-1, -2))
    scale = max(1.0, float(np.abs(h).max(initial=0.0)))
    if dev.size and dev.max() > HERMITIAN_TOL * scale:
        raise NotHermitian(f"max |H - H^dagger| = {dev.max():.3e}")
    return (h + h.conj().swapaxes(-1, -2)) / 2


def _off_norm(a: np.ndarray) -> np.ndarray:
    off = ~np.eye(a.shape[-1], dtype=bool)
    return np.sqrt(np.sum(np.abs(a[..., off]) ** 2, axis=-1))


def eigh_batched(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a stack of Hermitian matrices.

    Parameters
    ----------
    h : array, shape (..., n, n)

    Returns
    -------
    values : array, shape (..., n)
    vectors : array, shape (..., n, n)
        Columns are orthonormal eigenvectors.
    """
    h = _check(h)
    batch_shape = h.shape[:-2]
    n = h.shape[-1]
    a = h.reshape((-1, n, n)).copy()
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    fro = np.sqrt(np.sum(np.abs(a) ** 2, axis=(-1, -2)))
    target = OFF_TOL * np.maximum(fro, np.finfo(float).tiny)
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    for _ in range(MAX_SWEEPS):
        active = _off_norm(a) > target
        if not active.any():
            break
        idx = np.nonzero(active)[0]
        sub, vs = a[idx], v[idx]
        for p, q in pairs:
            _rotate(sub, vs, p, q)
        a[idx], v[idx] = sub, vs
    else:
        raise ConvergenceFailure(f"no convergence after {MAX_SWEEPS} sweeps")
    values = np.einsum("...ii->...i", a).real
    order = np.argsort(values, axis=-1, kind="stable")
    values = np.take_along_axis(values, order, axis=-1)
    v = np.take_along_axis(v, order[:, None, :], axis=-1)
    return values.reshape(batch_shape + (n,)), v.reshape(batch_shape + (n, n))


def _rotate(a, v, p, q):
    apq = a[:, p, q]
    mag = np.abs(apq)
    live = mag > 0
    safe = np.where(live, mag, 1.0)
    phase = np.where(live, apq / safe, 1.0)  # e^{i theta}
    tau = (a[:, q, q].real - a[:, p, p].real) / (2 * safe)
    tau = np.clip(tau, -1e150, 1e150)
    t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1 + tau * tau))
    t = np.where(live, t, 0.0)
    c = 1 / np.sqrt(1 + t * t)
    s = t * c
    ph = phase.conj()  # e^{-i theta}
    c_, s_, ph_ = c[:, None], s[:, None], ph[:, None]
    # columns: A J
    cp, cq = a[:, :, p].copy(), a[:, :, q]
    a[:, :, p] = c_ * cp - s_ * ph_ * cq
    a[:, :, q] = s_ * cp + c_ * ph_ * cq
    # rows: J^dagger A
    rp, rq = a[:, p, :].copy(), a[:, q, :]
    a[:, p, :] = c_ * rp - s_ * ph_.conj() * rq
    a[:, q, :] = s_ * rp + c_ * ph_.conj() * rq
    a[:, p, q] = 0
    a[:, q, p] = 0
    vp, vq = v[:, :, p].copy(), v[:, :, q]
    v[:, :, p] = c_ * vp - s_ * ph_ * vq
    v[:, :, q] = s_ * vp + c_ * ph_ * vq


def eig_hermitian(h: np.ndarray) -> EigDecomposition:
    """Eigendecomposition of one Hermitian matrix of size at most 64.

    Raises
    ------
    NotHermitian
        If ``H`` deviates from its adjoint by more than ``1e-10`` (relative
        to its largest entry when that exceeds one).
    """
    h = np.asarray(h)
    if h.ndim != 2:
        raise ValueError("expected a single matrix; use eigh_batched for stacks")
    values, vectors = eigh_batched(h)
    return EigDecomposition(values, vectors)
