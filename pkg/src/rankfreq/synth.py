"""Synthetic token streams drawn from known rank-frequency laws.

Word ``r`` is spelled ``"w" + str(r)``.  Draws use inverse-CDF sampling over
the cumulative table of the normalised law, so a given seed always yields
the same stream.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Union

import numpy as np

from .freqtable import FrequencyTable
from .validation import check_positive_int


@dataclass(frozen=True)
class ZipfLaw:
    z: float = 1.0

    def weights(self, V):
        return np.power(np.arange(1, V + 1, dtype=np.float64), -self.z)


@dataclass(frozen=True)
class PiecewiseZipfLaw:
    """Exponent ``z1`` up to ``break_rank``, ``z2`` after; continuous at the break."""

    z1: float = 1.0
    z2: float = 1.6
    break_rank: int = 800

    def weights(self, V):
        r = np.arange(1, V + 1, dtype=np.float64)
        b = float(self.break_rank)
        return np.where(r <= b, np.power(r, -self.z1),
                        b ** -self.z1 * np.power(r / b, -self.z2))


@dataclass(frozen=True)
class ExtrapolationLaw:
    """``max(A - B r**t, 0)``; ranks past the zero crossing get no mass."""

    A: float = 0.04
    B: float = 0.01
    t: float = 0.1

    def weights(self, V):
        r = np.arange(1, V + 1, dtype=np.float64)
        return np.clip(self.A - self.B * np.power(r, self.t), 0.0, None)


Law = Union[ZipfLaw, PiecewiseZipfLaw, ExtrapolationLaw]


@dataclass(frozen=True)
class GeneratorSpec:
    law: Law
    vocabulary_size: int
    sample_size: int
    seed: int = 0

    def __post_init__(self):
        check_positive_int(self.vocabulary_size, "vocabulary_size")
        check_positive_int(self.sample_size, "sample_size")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def probabilities(law: Law, V: int) -> np.ndarray:
    w = law.weights(check_positive_int(V, "V"))
    total = w.sum()
    if not total > 0:
        raise ValueError(f"{law!r} puts no mass on ranks 1..{V}")
    return w / total


def sample_ranks(spec: GeneratorSpec) -> np.ndarray:
    """``sample_size`` i.i.d. ranks (1-based) from the normalised law."""
    cdf = np.cumsum(probabilities(spec.law, spec.vocabulary_size))
    cdf[-1] = 1.0
    rng = np.random.default_rng(int(spec.seed))
    u = rng.random(spec.sample_size)
    return np.searchsorted(cdf, u, side="right") + 1


def word(rank: int) -> str:
    return f"w{rank}"


def generate(spec: GeneratorSpec) -> List[str]:
    return [word(r) for r in sample_ranks(spec).tolist()]


def sample_table(spec: GeneratorSpec) -> FrequencyTable:
    """Same as ``build_table(generate(spec))`` without materialising tokens."""
    counts = np.bincount(sample_ranks(spec), minlength=spec.vocabulary_size + 1)[1:]
    seen = np.flatnonzero(counts)
    return FrequencyTable([word(int(i) + 1) for i in seen], counts[seen])
