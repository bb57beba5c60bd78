"""Dense complex matrix kernel for 2x2 / 4x4 work.

The eigensolver is a cyclic Jacobi method for complex Hermitian matrices.  It
is vectorised over a leading batch axis so that Monte Carlo code can
diagonalise hundreds of thousands of 4x4 states at once; every other routine
here also accepts stacked input of shape ``(..., n, n)``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-9
MAX_SWEEPS = 50
OFFDIAG_TOL = 1e-14


class EigenSystem(NamedTuple):
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray  # columns, same order


def hermitian_defect(m: np.ndarray) -> np.ndarray:
    """Largest entrywise ``|M - M^dagger|`` (per matrix for stacked input)."""
    m = np.asarray(m)
    return np.max(np.abs(m - np.swapaxes(m.conj(), -1, -2)), axis=(-2, -1))


def _jacobi(a: np.ndarray, max_sweeps: int, tol: float, vectors: bool):
    # a: (B, n, n) complex Hermitian, modified in place
    batch, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy() if vectors else None
    scale = np.maximum(np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2))), 1.0)
    iu = np.triu_indices(n, 1)

    for sweep in range(max_sweeps + 1):
        off = np.max(np.abs(a[:, iu[0], iu[1]]), axis=1) if n > 1 else np.zeros(batch)
        if np.all(off <= tol * scale):
            break
        if sweep == max_sweeps:
            raise NoConvergence(f"Jacobi iteration exceeded {max_sweeps} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                mag = np.abs(apq)
                # entries this small are already converged; rotating them risks overflow
                live = mag > 1e-20 * scale
                safe = np.where(live, mag, 1.0)
                phase = np.where(live, apq / safe, 1.0)
                tau = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
                sgn = np.where(tau >= 0.0, 1.0, -1.0)
                t = np.where(live, sgn / (np.abs(tau) + np.hypot(1.0, tau)), 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # 2x2 block of the rotation: [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                vpp, vpq = c, s
                vqp, vqq = -s * phase.conj(), c * phase.conj()

                col_p = a[:, :, p].copy()
                col_q = a[:, :, q]
                a[:, :, p] = col_p * vpp[:, None] + col_q * vqp[:, None]
                a[:, :, q] = col_p * vpq[:, None] + col_q * vqq[:, None]
                row_p = a[:, p, :].copy()
                row_q = a[:, q, :]
                a[:, p, :] = row_p * vpp[:, None] + row_q * vqp.conj()[:, None]
                a[:, q, :] = row_p * vpq[:, None] + row_q * vqq.conj()[:, None]
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
                a[:, p, p] = a[:, p, p].real
                a[:, q, q] = a[:, q, q].real

                if vectors:
                    vp = v[:, :, p].copy()
                    vq = v[:, :, q]
                    v[:, :, p] = vp * vpp[:, None] + vq * vqp[:, None]
                    v[:, :, q] = vp * vpq[:, None] + vq * vqq[:, None]

    w = np.real(np.diagonal(a, axis1=1, axis2=2)).copy()
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    if vectors:
        v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, v


def _prepare(m, hermitian_tol):
    m = np.asarray(m, dtype=complex)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise ValueError(f"expected square matrix, got shape {m.shape}")
    defect = hermitian_defect(m)
    if np.any(defect > hermitian_tol):
        raise NotHermitian(f"max |M - M^dagger| = {np.max(defect):.3e} exceeds {hermitian_tol:g}")
    sym = 0.5 * (m + np.swapaxes(m.conj(), -1, -2))
    return sym.reshape((-1,) + m.shape[-2:]).copy(), m.shape[:-2]


def eigh(
    m: np.ndarray,
    hermitian_tol: float = HERMITIAN_TOL,
    max_sweeps: int = MAX_SWEEPS,
    tol: float = OFFDIAG_TOL,
) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix (or stack of them).

    The input is symmetrised as ``(M + M^dagger)/2`` before rotation, which
    absorbs roundoff in near-Hermitian input.

    Parameters
    ----------
    m : array_like, shape (..., n, n)
    hermitian_tol : float
        Maximum tolerated entrywise ``|M - M^dagger|``.
    max_sweeps : int
        Sweep budget for the cyclic Jacobi iteration.
    tol : float
        Convergence threshold on the largest off-diagonal modulus, relative to
        ``max(1, ||M||_F)``.

    Returns
    -------
    EigenSystem
        Ascending eigenvalues and the matching orthonormal eigenvector columns.

    Raises
    ------
    NotHermitian
        If the Hermiticity pre-check fails.
    NoConvergence
        If the sweep budget is exhausted.
    """
    a, lead = _prepare(m, hermitian_tol)
    w, v = _jacobi(a, max_sweeps, tol, vectors=True)
    n = a.shape[-1]
    return EigenSystem(w.reshape(lead + (n,)), v.reshape(lead + (n, n)))


def eigvalsh(m: np.ndarray, hermitian_tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Ascending eigenvalues only; skips eigenvector accumulation."""
    a, lead = _prepare(m, hermitian_tol)
    w, _ = _jacobi(a, MAX_SWEEPS, OFFDIAG_TOL, vectors=False)
    return w.reshape(lead + (a.shape[-1],))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, ``(A x B)[i*rB + k, j*cB + l] = A[i, j] B[k, l]``."""
    return np.kron(np.asarray(a), np.asarray(b))


def _check_side(side: str) -> str:
    side = side.upper()
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return side


def partial_trace(rho: np.ndarray, side: str) -> np.ndarray:
    """Trace out subsystem ``side`` of a two-qubit operator.

    ``side="B"`` returns ``rho_A`` and ``side="A"`` returns ``rho_B``.
    Accepts stacked input ``(..., 4, 4)``.
    """
    side = _check_side(side)
    rho = np.asarray(rho)
    t = rho.reshape(rho.shape[:-2] + (2, 2, 2, 2))  # a, b, a', b'
    if side == "B":
        return np.einsum("...ajbj->...ab", t)
    return np.einsum("...iaib->...ab", t)


def partial_transpose(rho: np.ndarray, side: str) -> np.ndarray:
    """Transpose the indices of subsystem ``side``; an exact entry permutation."""
    side = _check_side(side)
    rho = np.asarray(rho)
    t = rho.reshape(rho.shape[:-2] + (2, 2, 2, 2))
    if side == "A":
        t = np.swapaxes(t, -4, -2)
    else:
        t = np.swapaxes(t, -3, -1)
    return t.reshape(rho.shape).copy()


def frobenius_norm(m: np.ndarray) -> np.ndarray | float:
    """``sqrt(Tr(M^dagger M))`` over the last two axes."""
    out = np.sqrt(np.sum(np.abs(np.asarray(m)) ** 2, axis=(-2, -1)))
    return float(out) if np.ndim(out) == 0 else out


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected square matrix, got shape {u.shape}")
    gram = u.conj().T @ u
    return bool(np.max(np.abs(gram - np.eye(u.shape[0]))) <= tol)


def funm_hermitian(m: np.ndarray, func) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its eigenbasis."""
    w, v = eigh(m)
    return (v * func(w)[..., None, :]) @ np.swapaxes(v.conj(), -1, -2)
