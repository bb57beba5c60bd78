"""Explicit separating witnesses for ACVENN.

For a target ``chi`` with ``S(chi) < 1`` we walk the segment from ``I/4`` to
``chi`` until the entropy drops to exactly one bit, at ``sigma0``.  The
tangent functional of the entropy there gives

    W = -log2(sigma0) - I.

Klein's inequality ``S(rho) <= -Tr[rho log2 sigma0]`` yields
``Tr(W rho) >= S(rho) - 1`` for every state, so ``Tr(W rho) >= 0`` on all of
ACVENN, while strict concavity along the segment makes ``Tr(W chi) < 0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import linalg
from ._bisect import bisect
from .entropy import entropy_of_spectrum, von_neumann
from .errors import TargetInsideClass
from .states import (
    I4,
    DensityMatrix,
    from_matrix,
    matrix_from_jsonable,
    matrix_to_json_text,
)

BOUNDARY_FTOL = 1e-10
MAX_BISECTIONS = 200


@dataclass(frozen=True)
class WitnessOperator:
    W: np.ndarray
    tangent_point: DensityMatrix
    target: DensityMatrix
    t0: float

    def to_json(self) -> str:
        return (
            "{"
            f'"W":{matrix_to_json_text(self.W)},'
            f'"tangent_point":{matrix_to_json_text(self.tangent_point.mat)},'
            f'"t0":{format(self.t0, ".17g")},'
            f'"target":{matrix_to_json_text(self.target.mat)}'
            "}"
        )

    @classmethod
    def from_json(cls, text: str) -> "WitnessOperator":
        doc = json.loads(text)
        missing = {"W", "tangent_point", "t0", "target"} - set(doc)
        if missing:
            raise ValueError(f"witness JSON missing fields: {sorted(missing)}")
        w = matrix_from_jsonable(doc["W"])
        if w.shape != (4, 4):
            raise ValueError(f"witness operator must be 4x4, got {w.shape}")
        return cls(
            W=w,
            tangent_point=from_matrix(matrix_from_jsonable(doc["tangent_point"])),
            target=from_matrix(matrix_from_jsonable(doc["target"])),
            t0=float(doc["t0"]),
        )


def _check_target(chi: DensityMatrix) -> float:
    s = von_neumann(chi)
    if s >= 1.0:
        raise TargetInsideClass(f"S(target) = {s:.12g} >= 1: the target is already in ACVENN")
    return s


def boundary_parameter(chi: DensityMatrix) -> float:
    """``t0`` in (0, 1) with ``S((1 - t0) I/4 + t0 chi) = 1``."""
    _check_target(chi)
    lam = np.asarray(chi.spectrum.as_array())
    # the mixture shares chi's eigenbasis, so its spectrum is affine in t
    f = lambda t: entropy_of_spectrum((1 - t) / 4 + t * lam) - 1.0  # noqa: E731
    return bisect(f, 0.0, 1.0, ftol=BOUNDARY_FTOL, max_iter=MAX_BISECTIONS)


def boundary_point(chi: DensityMatrix) -> DensityMatrix:
    """The full-rank state on the ``I/4 -> chi`` segment with entropy exactly 1."""
    t0 = boundary_parameter(chi)
    return from_matrix((1 - t0) * I4 / 4 + t0 * chi.mat)


def build_witness(chi: DensityMatrix) -> WitnessOperator:
    t0 = boundary_parameter(chi)
    sigma0 = from_matrix((1 - t0) * I4 / 4 + t0 * chi.mat)
    w = -linalg.funm_hermitian(sigma0.mat, np.log2) - I4
    w = 0.5 * (w + w.conj().T)
    return WitnessOperator(W=w, tangent_point=sigma0, target=chi, t0=t0)


def eval_witness(w: WitnessOperator, rho: DensityMatrix) -> float:
    """``Tr(W rho)``; negative values flag states outside ACVENN."""
    return float(np.real(np.trace(w.W @ rho.mat)))


def eval_witness_batch(w: WitnessOperator, mats: np.ndarray) -> np.ndarray:
    return np.real(np.einsum("ij,...ji->...", w.W, mats))
