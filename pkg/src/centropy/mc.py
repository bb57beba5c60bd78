"""Monte Carlo estimates of extremal sizes of the ACVENN and AS classes.

Samples are indexed ``0 .. n-1`` and grouped into fixed-size blocks; block
``k`` draws from stream ``(seed, k)``.  A run over ``n`` samples therefore
sees exactly the first ``n`` samples of any longer run with the same seed,
and the result does not depend on how many worker processes share the blocks.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import linalg
from .classes import CLASS_TOL, abs_separable_margin
from .entropy import entropy_of_spectrum
from .orbit import haar_unitaries
from .rng import DEFAULT_SEED, complex_ginibre, make_rng
from .states import DensityMatrix, Spectrum, clip_spectrum, comp_diagonal, from_matrix

BLOCK_SIZE = 10_000

OBJECTIVES = {
    # name: (sampler, goal)
    "max-distance-in-acvenn": ("hs", "max"),
    "min-distance-outside-acvenn": ("hs", "min"),
    "min-entropy-in-as": ("simplex", "min"),
}


def hs_matrices(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` Hilbert-Schmidt random states as raw ``(n, 4, 4)`` arrays."""
    g = complex_ginibre(rng, (n, 4, 4))
    m = g @ np.swapaxes(g.conj(), -1, -2)
    tr = np.real(np.trace(m, axis1=-2, axis2=-1))
    return m / tr[:, None, None]


def sample_hs_state(rng: np.random.Generator) -> DensityMatrix:
    """``G G^dagger / Tr(G G^dagger)`` for a 4x4 complex Ginibre ``G``."""
    return from_matrix(hs_matrices(rng, 1)[0])


def simplex_spectra(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniform points on the probability simplex (sorted uniform spacings), descending."""
    cuts = np.sort(rng.random((n, 3)), axis=1)
    edges = np.concatenate([np.zeros((n, 1)), cuts, np.ones((n, 1))], axis=1)
    return -np.sort(-np.diff(edges, axis=1), axis=1)


def sample_as_state(
    rng: np.random.Generator, class_tol: float = CLASS_TOL, max_proposals: int = 1_000_000
) -> DensityMatrix:
    """Absolutely separable state: rejection-sampled spectrum, Haar-rotated."""
    for _ in range(max_proposals):
        lam = simplex_spectra(rng, 1)[0]
        if abs_separable_margin(lam) >= -class_tol:
            u = haar_unitaries(rng, 1)[0]
            diag = comp_diagonal(Spectrum(tuple(lam))).mat
            return from_matrix(u @ diag @ u.conj().T)
    raise RuntimeError(f"no absolutely separable spectrum in {max_proposals} proposals")


def distance_from_I4(rho: DensityMatrix) -> float:
    """Frobenius distance to ``I/4``, via ``sqrt(Tr rho^2 - 1/4)``."""
    purity = float(np.sum(np.abs(rho.mat) ** 2))
    return float(np.sqrt(max(purity - 0.25, 0.0)))


def distance_from_spectrum(spectra) -> np.ndarray | float:
    lam = np.asarray(spectra, dtype=float)
    out = np.sqrt(np.clip(np.sum(lam**2, axis=-1) - 0.25, 0.0, None))
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class SampleStats:
    objective: str
    n_samples: int
    n_accepted: int
    extreme_value: float
    extreme_state_spectrum: Spectrum | None
    seed: int

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "n_samples": self.n_samples,
            "n_accepted": self.n_accepted,
            "acceptance_rate": self.n_accepted / self.n_samples,
            "extreme_value": self.extreme_value,
            "extreme_state_spectrum": (
                list(self.extreme_state_spectrum.values) if self.extreme_state_spectrum else None
            ),
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _block_records(sampler: str, seed: int, block: int, count: int, class_tol: float):
    """Spectra, entropies, distances and class flags for one block of samples."""
    rng = make_rng(seed, block)
    if sampler == "hs":
        spectra = clip_spectrum(linalg.eigvalsh(hs_matrices(rng, count)))[:, ::-1]
    else:
        spectra = simplex_spectra(rng, count)
    entropy = np.atleast_1d(entropy_of_spectrum(spectra))
    distance = np.atleast_1d(distance_from_spectrum(spectra))
    return {
        "spectra": spectra,
        "S": entropy,
        "distance": distance,
        "is_acvenn": entropy >= 1.0 - class_tol,
        "is_abs_separable": np.atleast_1d(abs_separable_margin(spectra)) >= -class_tol,
    }


def _objective_view(objective: str, rec: dict):
    if objective == "max-distance-in-acvenn":
        return rec["is_acvenn"], rec["distance"]
    if objective == "min-distance-outside-acvenn":
        return ~rec["is_acvenn"], rec["distance"]
    return rec["is_abs_separable"], rec["S"]


def _run_block(args):
    objective, seed, block, count, class_tol = args
    sampler, goal = OBJECTIVES[objective]
    rec = _block_records(sampler, seed, block, count, class_tol)
    mask, values = _objective_view(objective, rec)
    n_acc = int(mask.sum())
    if n_acc == 0:
        return n_acc, None, None
    idx = np.flatnonzero(mask)
    pick = idx[np.argmax(values[idx])] if goal == "max" else idx[np.argmin(values[idx])]
    return n_acc, float(values[pick]), rec["spectra"][pick]


def _blocks(n: int, block_size: int):
    return [(k, min(block_size, n - k * block_size)) for k in range((n + block_size - 1) // block_size)]


def estimate_extreme(
    objective: str,
    n: int,
    seed: int = DEFAULT_SEED,
    class_tol: float = CLASS_TOL,
    workers: int = 1,
    block_size: int = BLOCK_SIZE,
) -> SampleStats:
    """Sample ``n`` candidates, keep the class members, report the extreme.

    Objectives
    ----------
    ``max-distance-in-acvenn``
        Hilbert-Schmidt states with ``S >= 1``; largest distance from ``I/4``.
    ``min-distance-outside-acvenn``
        Hilbert-Schmidt states with ``S < 1``; smallest distance from ``I/4``.
    ``min-entropy-in-as``
        Uniform simplex spectra passing the absolute-separability test;
        smallest entropy.  Only the spectrum matters, so no unitary is drawn.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; choose from {sorted(OBJECTIVES)}")
    if n < 1:
        raise ValueError("n must be at least 1")
    _, goal = OBJECTIVES[objective]
    jobs = [(objective, seed, k, count, class_tol) for k, count in _blocks(n, block_size)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_block, jobs))
    else:
        results = [_run_block(j) for j in jobs]

    n_accepted = sum(r[0] for r in results)
    best_val, best_spec = (-np.inf if goal == "max" else np.inf), None
    for _, val, spec in results:  # block order; strict comparison keeps the earliest tie
        if val is None:
            continue
        if (goal == "max" and val > best_val) or (goal == "min" and val < best_val):
            best_val, best_spec = val, spec
    return SampleStats(
        objective=objective,
        n_samples=n,
        n_accepted=n_accepted,
        extreme_value=float(best_val) if best_spec is not None else float("nan"),
        extreme_state_spectrum=Spectrum(tuple(best_spec)) if best_spec is not None else None,
        seed=seed,
    )


def objective_value(objective: str, spec: Spectrum) -> float:
    """Re-evaluate the objective on a reported spectrum."""
    if objective == "min-entropy-in-as":
        return entropy_of_spectrum(spec.as_array())
    return distance_from_spectrum(spec.as_array())


def write_sample_csv(
    path: str,
    objective: str,
    n: int,
    seed: int = DEFAULT_SEED,
    class_tol: float = CLASS_TOL,
    block_size: int = BLOCK_SIZE,
) -> None:
    """Per-sample table ``index,distance,S,is_acvenn,is_abs_separable`` for plotting."""
    sampler, _ = OBJECTIVES[objective]
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["index", "distance", "S", "is_acvenn", "is_abs_separable"])
        start = 0
        for k, count in _blocks(n, block_size):
            rec = _block_records(sampler, seed, k, count, class_tol)
            for i in range(count):
                out.writerow(
                    [
                        start + i,
                        format(rec["distance"][i], ".12g"),
                        format(rec["S"][i], ".12g"),
                        str(bool(rec["is_acvenn"][i])).lower(),
                        str(bool(rec["is_abs_separable"][i])).lower(),
                    ]
                )
            start += count
