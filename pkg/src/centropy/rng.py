"""Seeded, counter-based random streams.

Every stream is a Philox generator keyed by ``(seed, stream)``, so workers
that own disjoint stream ids draw independent, reproducible sequences.
"""

from __future__ import annotations

import numpy as np

DEFAULT_SEED = 42


def make_rng(seed: int = DEFAULT_SEED, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(stream)])))


def complex_ginibre(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    """Standard complex Gaussian entries, ``E|z|^2 = 1``.

    Real and imaginary parts are drawn interleaved, so the first ``k`` matrices
    of a batch do not depend on the batch size.
    """
    x = rng.standard_normal(tuple(shape) + (2,))
    return (x[..., 0] + 1j * x[..., 1]) / np.sqrt(2)
