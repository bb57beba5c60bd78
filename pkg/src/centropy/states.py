"""Validated two-qubit states, Bloch decomposition and named state families.

Basis order is ``|00>, |01>, |10>, |11>`` everywhere (subsystem A is the
left/most-significant qubit).  The Bell basis order is fixed as
``Phi+, Psi+, Psi-, Phi-``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .errors import NotHermitian, NotPSD, NotUnitTrace, OutOfRange

PSD_TOL = 1e-9
TRACE_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

_PAULI_A = np.array([linalg.kron(s, I2) for s in PAULIS])
_PAULI_B = np.array([linalg.kron(I2, s) for s in PAULIS])
_PAULI_AB = np.array([[linalg.kron(si, sj) for sj in PAULIS] for si in PAULIS])


def clip_spectrum(eigenvalues: np.ndarray, psd_tol: float = PSD_TOL) -> np.ndarray:
    """Zero out eigenvalues in ``[-psd_tol, 0)`` and renormalise to unit sum.

    Works along the last axis, so stacks of spectra are fine.
    """
    w = np.clip(np.asarray(eigenvalues, dtype=float), 0.0, None)
    return w / np.sum(w, axis=-1, keepdims=True)


@dataclass(frozen=True)
class Spectrum:
    """Four eigenvalues of a state, stored descending."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (4,):
            raise ValueError(f"a two-qubit spectrum has 4 entries, got {vals.shape}")
        if abs(vals.sum() - 1.0) > TRACE_TOL:
            raise NotUnitTrace(f"spectrum sums to {vals.sum():.17g}")
        if np.any(vals < -PSD_TOL) or np.any(vals > 1.0 + PSD_TOL):
            raise NotPSD(f"spectrum entries outside [0, 1]: {vals}")
        object.__setattr__(self, "values", tuple(float(x) for x in np.sort(vals)[::-1]))

    @classmethod
    def normalized(cls, values) -> "Spectrum":
        """Rescale to unit sum first; for eigenvalues quoted to a few digits."""
        vals = np.asarray(values, dtype=float)
        return cls(tuple(vals / vals.sum()))

    def as_array(self) -> np.ndarray:
        return np.array(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k):
        return self.values[k]


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated 4x4 two-qubit density matrix.

    Build instances with :func:`from_matrix` (or one of the family
    constructors); the raw constructor does not validate.
    """

    mat: np.ndarray
    psd_tol: float = PSD_TOL

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        """Ascending raw eigenvalues (not clipped)."""
        return linalg.eigvalsh(self.mat, hermitian_tol=self.psd_tol)

    @cached_property
    def spectrum(self) -> Spectrum:
        return Spectrum(tuple(clip_spectrum(self.eigenvalues)))

    def marginal(self, keep: str) -> np.ndarray:
        """Reduced state of subsystem ``keep`` ("A" or "B")."""
        keep = keep.upper()
        return linalg.partial_trace(self.mat, "B" if keep == "A" else "A")

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(spectrum={np.round(self.spectrum.as_array(), 6).tolist()})"


def from_matrix(m, psd_tol: float = PSD_TOL) -> DensityMatrix:
    """Validate ``m`` as a two-qubit density matrix.

    Raises
    ------
    NotHermitian, NotUnitTrace, NotPSD
    """
    m = np.array(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"two-qubit state must be 4x4, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("state contains non-finite entries")
    defect = float(linalg.hermitian_defect(m))
    if defect > psd_tol:
        raise NotHermitian(f"max |rho - rho^dagger| = {defect:.3e} exceeds {psd_tol:g}")
    m = 0.5 * (m + m.conj().T)
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotUnitTrace(f"trace is {tr:.17g}, expected 1")
    m.setflags(write=False)
    rho = DensityMatrix(m, psd_tol)
    lam_min = float(rho.eigenvalues[0])
    if lam_min < -psd_tol:
        raise NotPSD(f"minimum eigenvalue {lam_min:.6g} below -{psd_tol:g}")
    return rho


def _pure(vec) -> DensityMatrix:
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return from_matrix(np.outer(v, v.conj()))


def pure_state(vec) -> DensityMatrix:
    """Projector onto the (normalised) 4-vector ``vec``."""
    return _pure(vec)


def maximally_mixed() -> DensityMatrix:
    return from_matrix(I4 / 4)


def bell_basis() -> np.ndarray:
    """Bell vectors as columns, in the order Phi+, Psi+, Psi-, Phi-."""
    r = 1 / np.sqrt(2)
    return np.array(
        [
            [r, 0, 0, r],  # Phi+
            [0, r, r, 0],  # Psi+
            [0, r, -r, 0],  # Psi-
            [r, 0, 0, -r],  # Phi-
        ],
        dtype=complex,
    ).T


def bell_state(index: int = 0) -> DensityMatrix:
    return _pure(bell_basis()[:, index])


@dataclass(frozen=True)
class BlochForm:
    r: np.ndarray
    s: np.ndarray
    T: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float).reshape(3))
        object.__setattr__(self, "s", np.asarray(self.s, dtype=float).reshape(3))
        object.__setattr__(self, "T", np.asarray(self.T, dtype=float).reshape(3, 3))


def bloch_decompose(rho: DensityMatrix) -> BlochForm:
    """Local Bloch vectors and correlation matrix, ``t_ij = Tr[rho s_i x s_j]``."""
    m = rho.mat
    r = np.einsum("kij,ji->k", _PAULI_A, m).real
    s = np.einsum("kij,ji->k", _PAULI_B, m).real
    t = np.einsum("klij,ji->kl", _PAULI_AB, m).real
    return BlochForm(r, s, t)


def bloch_matrix(b: BlochForm) -> np.ndarray:
    """The canonical-form sum without validation."""
    m = I4.copy()
    m += np.einsum("k,kij->ij", b.r, _PAULI_A)
    m += np.einsum("k,kij->ij", b.s, _PAULI_B)
    m += np.einsum("kl,klij->ij", b.T, _PAULI_AB)
    return m / 4


def bloch_compose(b: BlochForm, psd_tol: float = PSD_TOL) -> DensityMatrix:
    return from_matrix(bloch_matrix(b), psd_tol)


def werner(p: float) -> DensityMatrix:
    """``(1 - p) I/4 + p |Phi+><Phi+|`` for ``p`` in [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"Werner mixing parameter must lie in [0, 1], got {p}")
    phi = bell_basis()[:, 0]
    return from_matrix((1 - p) * I4 / 4 + p * np.outer(phi, phi.conj()))


@dataclass(frozen=True)
class BellDiagonalParams:
    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            c = getattr(self, name)
            if not -1.0 <= c <= 1.0:
                raise OutOfRange(f"{name}={c} outside [-1, 1]")

    @property
    def chi(self) -> float:
        return 1.0 + self.c1 + self.c2 + self.c3

    def eigenvalues(self) -> np.ndarray:
        """Closed-form eigenvalues ``(chi - 2c1, chi - 2c2, chi - 2c3, 2 - chi) / 4``."""
        chi = self.chi
        return np.array(
            [chi - 2 * self.c1, chi - 2 * self.c2, chi - 2 * self.c3, 2 - chi]
        ) / 4

    def in_tetrahedron(self, tol: float = 0.0) -> bool:
        return bool(np.all(self.eigenvalues() >= -tol))

    @classmethod
    def from_eigenvalues(cls, lam) -> "BellDiagonalParams":
        """Inverse of :meth:`eigenvalues`."""
        lam = np.asarray(lam, dtype=float)
        chi = 2 - 4 * lam[3]
        c = (chi - 4 * lam[:3]) / 2
        return cls(*(float(np.clip(x, -1.0, 1.0)) for x in c))


def bell_diagonal(params: BellDiagonalParams, psd_tol: float = PSD_TOL) -> DensityMatrix:
    """State with zero local Bloch vectors and ``T = diag(c1, c2, c3)``."""
    t = np.diag([params.c1, params.c2, params.c3])
    return bloch_compose(BlochForm(np.zeros(3), np.zeros(3), t), psd_tol)


def comp_diagonal(spec: Spectrum) -> DensityMatrix:
    """``diag(a1, a2, a3, a4)`` on ``|00>, |01>, |10>, |11>``."""
    return from_matrix(np.diag(np.asarray(spec.values, dtype=complex)))


def dense_coding_state(a: float, b: float) -> DensityMatrix:
    """Real state supported on ``|00>, |10>`` with populations a, 1-a and coherence b.

    Its spectrum is ``(1 +/- q)/2`` with ``q = sqrt(1 - 4a + 4a^2 + 4b^2)``.
    """
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = a
    m[0, 2] = m[2, 0] = b
    m[2, 2] = 1 - a
    return from_matrix(m)


def merging_state() -> DensityMatrix:
    """``3/4 |00><00| + 1/4 |11><11|``."""
    return from_matrix(np.diag([0.75, 0, 0, 0.25]).astype(complex))


# --- JSON ----------------------------------------------------------------


def _fmt(x: float) -> str:
    return format(float(x) + 0.0, ".17g")  # + 0.0 drops the sign of -0.0


def matrix_to_json_text(m: np.ndarray) -> str:
    """Row-major ``[[[re, im], ...], ...]`` with 17 significant digits."""
    rows = []
    for row in np.asarray(m, dtype=complex):
        rows.append("[" + ",".join(f"[{_fmt(z.real)},{_fmt(z.imag)}]" for z in row) + "]")
    return "[" + ",".join(rows) + "]"


def matrix_from_jsonable(obj) -> np.ndarray:
    arr = np.asarray(obj, dtype=float)
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise ValueError(f"matrix must be a nested [[[re, im], ...], ...] array, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def state_to_json(rho: DensityMatrix) -> str:
    return '{"dim":[2,2],"matrix":' + matrix_to_json_text(rho.mat) + "}"


def state_from_json(text: str, psd_tol: float = PSD_TOL) -> DensityMatrix:
    """Parse and validate a state document ``{"dim": [2,2], "matrix": ...}``."""
    doc = json.loads(text)
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise ValueError('state JSON needs a "matrix" field')
    if list(doc.get("dim", [2, 2])) != [2, 2]:
        raise ValueError(f"only dim [2, 2] is supported, got {doc.get('dim')}")
    return from_matrix(matrix_from_jsonable(doc["matrix"]), psd_tol)
