"""Membership tests for the state classes studied here.

CVENN   non-negative conditional entropy ``S(rho) - S(rho_A)``
ACVENN  stays in CVENN under every global unitary; equivalent to ``S(rho) >= 1``
PPT     positive partial transpose (= separable for two qubits)
AS      absolutely separable; spectral test ``a1 <= a3 + 2 sqrt(a2 a4)``
L       Bell-CHSH local, ``M(rho) <= 1``
AL      absolutely local; only the Werner case ``p <= 1/sqrt(2)`` is covered

Boundary states count as members: every comparison is inclusive up to
``class_tol``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import linalg
from ._bisect import bisect
from .entropy import entropy_report, von_neumann
from .errors import DegenerateSpectrum, OutOfRange
from .states import (
    I4,
    BellDiagonalParams,
    DensityMatrix,
    Spectrum,
    bell_diagonal,
    bloch_decompose,
)

CLASS_TOL = 1e-9
AL_WERNER_THRESHOLD = 1 / np.sqrt(2)


def is_cvenn(rho: DensityMatrix, class_tol: float = CLASS_TOL) -> bool:
    return entropy_report(rho).cond_given_A >= -class_tol


def is_acvenn(rho: DensityMatrix, class_tol: float = CLASS_TOL) -> bool:
    """True iff no global unitary can make the conditional entropy negative."""
    return von_neumann(rho) >= 1.0 - class_tol


def ppt_min_eigenvalue(rho: DensityMatrix) -> float:
    return float(linalg.eigvalsh(linalg.partial_transpose(rho.mat, "B"))[0])


def is_ppt_separable(rho: DensityMatrix, psd_tol: float | None = None) -> bool:
    tol = rho.psd_tol if psd_tol is None else psd_tol
    return ppt_min_eigenvalue(rho) >= -tol


def abs_separable_margin(spectra) -> np.ndarray | float:
    """``a3 + 2 sqrt(a2 a4) - a1`` for descending spectra (last axis).

    Non-negative margin means absolutely separable.  Input need not be sorted;
    it is sorted descending here.
    """
    a = -np.sort(-np.asarray(spectra, dtype=float), axis=-1)
    a = np.clip(a, 0.0, None)
    out = a[..., 2] + 2 * np.sqrt(a[..., 1] * a[..., 3]) - a[..., 0]
    return float(out) if np.ndim(out) == 0 else out


def is_abs_separable(spec: Spectrum, class_tol: float = CLASS_TOL) -> bool:
    return abs_separable_margin(spec.as_array()) >= -class_tol


def chsh_M(rho: DensityMatrix) -> float:
    """Sum of the two largest eigenvalues of ``T^t T``."""
    t = bloch_decompose(rho).T
    w = linalg.eigvalsh(t.T @ t)
    return float(w[-1] + w[-2])


def is_bell_local(rho: DensityMatrix, class_tol: float = CLASS_TOL) -> bool:
    return chsh_M(rho) <= 1.0 + class_tol


def is_al_werner(p: float, class_tol: float = CLASS_TOL) -> bool:
    """Absolute Bell-CHSH locality of the Werner state with visibility ``p``."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"Werner mixing parameter must lie in [0, 1], got {p}")
    return p <= AL_WERNER_THRESHOLD + class_tol


def werner_entropy_lhs(p: float) -> float:
    """``3(1-p) log2(1-p) + (1+3p) log2(1+3p)``; the Werner state is in ACVENN iff this is <= 4."""
    left = 0.0 if p >= 1.0 else 3 * (1 - p) * np.log2(1 - p)
    return float(left + (1 + 3 * p) * np.log2(1 + 3 * p))


def werner_acvenn_threshold(xtol: float = 1e-15) -> float:
    """Largest Werner ``p`` with ``S >= 1``, by bisection on [0, 1]."""
    return bisect(lambda p: werner_entropy_lhs(p) - 4.0, 0.0, 1.0, xtol=xtol)


def bd_closed_form_lhs(params: BellDiagonalParams) -> float:
    """Left-hand side of the Bell-diagonal ACVENN inequality (base-2 logs).

    Written as products and ratios of ``chi - 2 c_i`` and ``2 - chi``; equals
    ``sum_i x_i log2 x_i`` with ``x_i = 4 lambda_i``.
    """
    chi = params.chi
    c1, c2, c3 = params.c1, params.c2, params.c3
    x1, x2, x3, x4 = chi - 2 * c1, chi - 2 * c2, chi - 2 * c3, 2 - chi
    if min(x1, x2, x3, x4) <= 0.0:
        raise DegenerateSpectrum(
            f"closed form needs an interior point, got 4*lambda = {(x1, x2, x3, x4)}"
        )
    log = np.log2
    return float(
        log(x2 * x3 * x4 * x1)
        + c1 * log((x2 * x3) / (x4 * x1))
        + c2 * log((x3 * x1) / (x2 * x4))
        + c3 * log((x2 * x1) / (x3 * x4))
    )


def bd_acvenn_closed_form(params: BellDiagonalParams, class_tol: float = CLASS_TOL) -> bool:
    return bd_closed_form_lhs(params) <= 4.0 + class_tol


def bd_is_acvenn(params: BellDiagonalParams, class_tol: float = CLASS_TOL) -> bool:
    """Spectral route for the same question, via the constructed state."""
    return is_acvenn(bell_diagonal(params), class_tol)


@dataclass(frozen=True)
class ClassReport:
    S_total: float
    cond_given_A: float
    cond_given_B: float
    M_value: float
    is_cvenn: bool
    is_acvenn: bool
    is_ppt_separable: bool
    is_abs_separable: bool
    is_bell_local: bool
    distance_from_I4: float

    def to_dict(self) -> dict:
        return asdict(self)


def classify(rho: DensityMatrix, class_tol: float = CLASS_TOL) -> ClassReport:
    rep = entropy_report(rho)
    m_val = chsh_M(rho)
    return ClassReport(
        S_total=rep.S_total,
        cond_given_A=rep.cond_given_A,
        cond_given_B=rep.cond_given_B,
        M_value=m_val,
        is_cvenn=rep.cond_given_A >= -class_tol,
        is_acvenn=rep.S_total >= 1.0 - class_tol,
        is_ppt_separable=is_ppt_separable(rho),
        is_abs_separable=is_abs_separable(rho.spectrum, class_tol),
        is_bell_local=m_val <= 1.0 + class_tol,
        distance_from_I4=linalg.frobenius_norm(rho.mat - I4 / 4),
    )
