"""Vocabulary-volume extrapolation with the model ``f_r = A - B r**t``.

For ``A, B > 0`` the model frequency falls to zero at ``R = (A/B)**(1/t)``,
taken as the number of possible distinct words.  For each candidate ``t``
the model is linear in ``(A, B)`` and is solved by least squares; the
candidate with the smallest residual sum of squares wins.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import InsufficientDataError, NoValidModelError
from .validation import check_rank_frequency, check_window
from . import zipf

# 0.010, 0.015, ..., 0.500
DEFAULT_T_GRID = np.round(np.arange(2, 101) * 0.005, 10)


def vocabulary_volume(A: float, B: float, t: float) -> float:
    try:
        return (A / B) ** (1.0 / t)
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class ExtrapolationModel:
    A: float
    B: float
    t: float
    R: float
    rss: float
    r_lo: int = 1
    r_hi: int = 1

    def predict(self, ranks):
        return self.A - self.B * np.power(np.asarray(ranks, dtype=np.float64), self.t)

    def to_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "t": self.t, "R": self.R, "rss": self.rss,
                "r_lo": self.r_lo, "r_hi": self.r_hi}


def fit_extrapolation(data, r_lo: int = 1, r_hi: Optional[int] = None,
                      t_grid=None) -> ExtrapolationModel:
    """Grid search over ``t`` with a closed-form ``(A, B)`` solve per candidate.

    ``r_hi`` defaults to the last rank.  Candidates with non-positive ``A`` or
    ``B`` are discarded; ties in RSS go to the smaller ``t``.
    """
    freqs, _ = check_rank_frequency(data)
    if r_hi is None:
        r_hi = freqs.size
    r_lo, r_hi = check_window(r_lo, r_hi, freqs.size)
    if r_hi - r_lo + 1 < 10:
        raise InsufficientDataError("extrapolation fit needs at least 10 ranks")
    grid = DEFAULT_T_GRID if t_grid is None else np.asarray(t_grid, dtype=np.float64)
    if grid.size == 0 or np.any(grid <= 0) or np.any(grid > 1):
        raise ValueError("t_grid values must lie in (0, 1]")

    ranks = np.arange(r_lo, r_hi + 1, dtype=np.float64)
    f = freqs[r_lo - 1:r_hi]
    best = None
    for t in np.sort(grid):
        X = np.column_stack([np.ones_like(ranks), -np.power(ranks, t)])
        (A, B), *_ = np.linalg.lstsq(X, f, rcond=None)
        if not (A > 0 and B > 0):
            continue
        resid = f - X @ np.array([A, B])
        rss = float(resid @ resid)
        if best is None or rss < best[0]:
            best = (rss, float(A), float(B), float(t))
    if best is None:
        raise NoValidModelError(
            f"no t in the grid gives A > 0 and B > 0 over ranks [{r_lo}, {r_hi}]"
        )
    rss, A, B, t = best
    return ExtrapolationModel(A=A, B=B, t=t, R=vocabulary_volume(A, B, t), rss=rss,
                              r_lo=r_lo, r_hi=r_hi)


def predict_zero_rank(model: ExtrapolationModel) -> int:
    """Smallest integer rank at which the model frequency is <= 0."""
    R = model.R
    nearest = round(R)
    if abs(R - nearest) <= 1e-9 * max(R, 1.0):
        return int(nearest)
    return int(math.ceil(R))


def tail_range(data, boundary=None, series=None, *,
               min_levels: int = zipf.DEFAULT_MIN_LEVELS) -> tuple:
    """Default ``(r_lo, r_hi)`` for extrapolation: the non-kernel tail.

    ``r_lo`` is the kernel boundary when one was detected, otherwise the end
    of the resolved part of the window scan (or rank 1 without a scan).
    ``r_hi`` is the last rank with a non-zero count, hapax plateau included.
    """
    freqs, counts = check_rank_frequency(data)
    src = counts if counts is not None else freqs
    r_hi = int(np.flatnonzero(src > 0)[-1]) + 1
    if boundary is not None:
        r_lo = boundary.r_max
    elif series is not None and len(series):
        resolved = zipf.resolved_prefix(series, min_levels)
        r_lo = resolved[-1].r_hi if resolved else 1
    else:
        r_lo = 1
    if r_hi - r_lo + 1 < 10:
        r_lo = 1
    return r_lo, r_hi


class VocabularyExtrapolator(BaseEstimator, RegressorMixin):
    """Estimator wrapper around :func:`fit_extrapolation`.

    With ``r_lo=None`` the fit range comes from :func:`tail_range`, which runs
    a window scan and kernel-boundary detection first.
    """

    def __init__(self, r_lo=None, r_hi=None, t_grid=None, width=zipf.DEFAULT_WIDTH,
                 step=zipf.DEFAULT_STEP, delta=zipf.DEFAULT_DELTA,
                 min_levels=zipf.DEFAULT_MIN_LEVELS):
        self.r_lo = r_lo
        self.r_hi = r_hi
        self.t_grid = t_grid
        self.width = width
        self.step = step
        self.delta = delta
        self.min_levels = min_levels

    def fit(self, X, y=None):
        r_lo, r_hi = self.r_lo, self.r_hi
        if r_lo is None:
            boundary = series = None
            try:
                series = zipf.window_scan(X, self.width, self.step)
                if len(series) >= 3:
                    boundary = zipf.detect_kernel_boundary(
                        series, self.delta, min_levels=self.min_levels)
            except InsufficientDataError:
                pass
            r_lo, default_hi = tail_range(X, boundary, series, min_levels=self.min_levels)
            r_hi = default_hi if r_hi is None else r_hi
        self.model_ = fit_extrapolation(X, r_lo, r_hi, self.t_grid)
        self.R_ = self.model_.R
        return self

    def predict(self, X):
        check_is_fitted(self, "model_")
        return self.model_.predict(np.asarray(X, dtype=np.float64).ravel())
