"""Global unitaries acting on two-qubit states.

The conditional entropy ``S(rho) - S(rho_A)`` can be pushed down by a global
unitary only as far as ``S(rho) - 1``: the marginal entropy of a qubit never
exceeds one bit, and any Bell-diagonal state has maximally mixed marginals.
:func:`bell_diagonalizing_unitary` builds the unitary that reaches that bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .classes import CLASS_TOL
from .entropy import von_neumann
from .errors import NotUnitary
from .rng import complex_ginibre
from .states import DensityMatrix, bell_basis, from_matrix, matrix_to_json_text

UNITARY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Unitary:
    mat: np.ndarray

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"global unitary must be 4x4, got {m.shape}")
        if not linalg.is_unitary(m, UNITARY_TOL):
            err = np.max(np.abs(m.conj().T @ m - np.eye(4)))
            raise NotUnitary(f"max |U^dagger U - I| = {err:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dagger(self) -> "Unitary":
        return Unitary(self.mat.conj().T)

    def to_json(self) -> str:
        return '{"matrix":' + matrix_to_json_text(self.mat) + "}"


def haar_unitaries(rng: np.random.Generator, n: int, dim: int = 4) -> np.ndarray:
    """``n`` Haar-distributed unitaries, shape ``(n, dim, dim)``.

    QR of a complex Ginibre matrix, with the phases of ``diag(R)`` moved onto
    ``Q`` so that the distribution is exactly Haar.
    """
    z = complex_ginibre(rng, (n, dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[:, None, :]


def haar_unitary(rng: np.random.Generator) -> Unitary:
    return Unitary(haar_unitaries(rng, 1)[0])


def apply(u: Unitary, rho: DensityMatrix) -> DensityMatrix:
    """``U rho U^dagger``."""
    return from_matrix(u.mat @ rho.mat @ u.mat.conj().T, rho.psd_tol)


def conjugate_batch(us: np.ndarray, m: np.ndarray) -> np.ndarray:
    """``U_k M U_k^dagger`` for a stack of unitaries (no validation)."""
    return us @ m @ np.swapaxes(us.conj(), -1, -2)


def rotation_00_11(angle: float = np.pi / 4) -> Unitary:
    """Real rotation in the ``{|00>, |11>}`` plane; identity on ``|01>, |10>``.

    At the default angle this is ``(1/sqrt 2)[[1,0,0,1],[0,sqrt2,0,0],[0,0,sqrt2,0],[-1,0,0,1]]``.
    """
    c, s = np.cos(angle), np.sin(angle)
    m = np.eye(4, dtype=complex)
    m[0, 0], m[0, 3], m[3, 0], m[3, 3] = c, s, -s, c
    return Unitary(m)


def _phase_fixed(vec: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    # rotate so the first non-negligible component is real positive
    idx = int(np.argmax(np.abs(vec) > tol))
    z = vec[idx]
    return vec * (abs(z) / z) if abs(z) > 0 else vec


def ordered_eigenbasis(rho: DensityMatrix, decimals: int = 12):
    """Eigenpairs in descending eigenvalue order with a reproducible tie-break.

    Equal eigenvalues (to ``decimals`` places) are ordered lexicographically
    by the phase-fixed eigenvector components ``(re, im)``.
    """
    w, v = linalg.eigh(rho.mat, hermitian_tol=rho.psd_tol)
    vecs = [_phase_fixed(v[:, k]) for k in range(4)]

    def key(k):
        comps = tuple(x for z in np.round(vecs[k], decimals) for x in (z.real, z.imag))
        return (-round(float(w[k]), decimals),) + comps

    order = sorted(range(4), key=key)
    return w[order], np.column_stack([vecs[k] for k in order])


def bell_diagonalizing_unitary(rho: DensityMatrix) -> Unitary:
    """Unitary sending the k-th largest eigenvector of ``rho`` to the k-th Bell vector.

    The image ``U rho U^dagger`` is diagonal in the Bell basis, so both of its
    marginals are ``I/2``.
    """
    _, e = ordered_eigenbasis(rho)
    return Unitary(bell_basis() @ e.conj().T)


@dataclass(frozen=True)
class OrbitReport:
    S_total: float
    min_cond_entropy: float
    achieving_unitary: Unitary
    negativity_reachable: bool

    def to_json(self) -> str:
        return (
            "{"
            f'"S_total":{self.S_total!r},'
            f'"min_cond_entropy":{self.min_cond_entropy!r},'
            f'"negativity_reachable":{str(self.negativity_reachable).lower()},'
            f'"achieving_unitary":{self.achieving_unitary.to_json()}'
            "}"
        )


def min_conditional_entropy(rho: DensityMatrix, class_tol: float = CLASS_TOL) -> OrbitReport:
    """Minimum of ``S(U rho U^dagger) - S((U rho U^dagger)_A)`` over all global ``U``.

    Evaluated in closed form as ``S(rho) - 1``; the achieving unitary is the
    Bell diagonaliser.
    """
    s = von_neumann(rho)
    return OrbitReport(
        S_total=s,
        min_cond_entropy=s - 1.0,
        achieving_unitary=bell_diagonalizing_unitary(rho),
        negativity_reachable=s < 1.0 - class_tol,
    )


def negating_unitary(rho: DensityMatrix, class_tol: float = CLASS_TOL) -> Unitary | None:
    """A unitary that makes the conditional entropy negative, or ``None`` if none exists."""
    if von_neumann(rho) >= 1.0 - class_tol:
        return None
    return bell_diagonalizing_unitary(rho)
