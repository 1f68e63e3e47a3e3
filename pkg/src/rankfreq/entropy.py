"""Truncated frequency entropy ``S_N = -sum_{r<=N} f_r ln f_r``."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .validation import check_positive_int, check_rank_frequency

DEFAULT_N = 3000


@dataclass(frozen=True)
class EntropyResult:
    N: int
    S: float
    coverage: float
    unit: str = "nats"

    def to_dict(self) -> dict:
        return {"N": self.N, "S": self.S, "coverage": self.coverage, "unit": self.unit}


def entropy(data, N: int = DEFAULT_N, *, bits: bool = False) -> EntropyResult:
    """Sum over the top ``N`` ranks of the whole-corpus frequencies.

    The frequencies are not renormalised over the top ``N``; ``coverage``
    reports how much probability mass the truncation kept.
    """
    N = check_positive_int(N, "N")
    freqs, _ = check_rank_frequency(data)
    top = freqs[:N]
    top = top[top > 0]
    S = -math.fsum((top * np.log(top)).tolist()) + 0.0
    if bits:
        S /= math.log(2)
    return EntropyResult(N=N, S=S, coverage=math.fsum(top.tolist()),
                         unit="bits" if bits else "nats")
