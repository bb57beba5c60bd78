"""Conditional von Neumann entropy of two-qubit states under global unitaries."""

from .classes import ClassReport, classify, is_acvenn
from .entropy import EntropyReport, entropy_report, von_neumann
from .orbit import Unitary, apply, bell_diagonalizing_unitary, min_conditional_entropy
from .states import DensityMatrix, Spectrum, from_matrix, werner
from .witness import WitnessOperator, build_witness, eval_witness

__all__ = [
    "ClassReport",
    "DensityMatrix",
    "EntropyReport",
    "Spectrum",
    "Unitary",
    "WitnessOperator",
    "apply",
    "bell_diagonalizing_unitary",
    "build_witness",
    "classify",
    "entropy_report",
    "eval_witness",
    "from_matrix",
    "is_acvenn",
    "min_conditional_entropy",
    "von_neumann",
    "werner",
]
