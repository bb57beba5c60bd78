"""Base-2 von Neumann entropy and the quantities built on it."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import linalg
from .states import DensityMatrix, clip_spectrum

ZERO_EIGENVALUE = 1e-15


def entropy_of_spectrum(eigenvalues) -> np.ndarray | float:
    """``-sum(l log2 l)`` along the last axis, with ``0 log 0 = 0``.

    Negative roundoff is clipped and the spectrum renormalised before the sum.
    """
    lam = clip_spectrum(eigenvalues)
    nz = lam > ZERO_EIGENVALUE
    terms = np.where(nz, lam * np.log2(np.where(nz, lam, 1.0)), 0.0)
    out = 0.0 - np.sum(terms, axis=-1)  # no signed zero for pure states
    return float(out) if np.ndim(out) == 0 else out


def matrix_entropy(m: np.ndarray) -> np.ndarray | float:
    """Entropy of a Hermitian unit-trace matrix or stack, no state validation."""
    return entropy_of_spectrum(linalg.eigvalsh(m))


def von_neumann(rho: DensityMatrix) -> float:
    return entropy_of_spectrum(rho.eigenvalues)


def marginal_entropy(rho: DensityMatrix, keep: str) -> float:
    return matrix_entropy(rho.marginal(keep))


@dataclass(frozen=True)
class EntropyReport:
    S_total: float
    S_A: float
    S_B: float
    cond_given_A: float
    cond_given_B: float

    def to_dict(self) -> dict:
        return asdict(self)


def entropy_report(rho: DensityMatrix) -> EntropyReport:
    s = von_neumann(rho)
    s_a = marginal_entropy(rho, "A")
    s_b = marginal_entropy(rho, "B")
    return EntropyReport(s, s_a, s_b, s - s_a, s - s_b)


def dense_coding_capacity(rho: DensityMatrix, receiver_marginal: str = "B") -> float:
    """``max(1, 1 + S(marginal) - S(rho))`` bits for a pair of qubits.

    The textbook formula uses the receiver's marginal ``rho_B``; pass
    ``receiver_marginal="A"`` to track subsystem A instead.  A value above 1
    means a quantum advantage.
    """
    s = von_neumann(rho)
    s_m = marginal_entropy(rho, receiver_marginal)
    return max(1.0, 1.0 + s_m - s)


def merging_cost(rho: DensityMatrix, sender: str = "A") -> float:
    """Conditional entropy used as the state-merging cost, in qubits.

    For ``sender="A"`` this is ``S(rho_AB) - S(rho_A)``; ``sender="B"``
    subtracts ``S(rho_B)``.  Positive: qubits must be sent.  Zero: free.
    Negative: both parties bank that much future quantum communication.
    """
    sender = sender.upper()
    if sender not in ("A", "B"):
        raise ValueError(f"sender must be 'A' or 'B', got {sender!r}")
    return von_neumann(rho) - marginal_entropy(rho, sender)


def merging_class(cost: float, tol: float = 1e-9) -> str:
    """Label a merging cost as ``"positive"``, ``"zero"`` or ``"negative"``."""
    if cost > tol:
        return "positive"
    if cost < -tol:
        return "negative"
    return "zero"
