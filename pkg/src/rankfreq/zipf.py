"""Zipf's law fits: global, windowed, and kernel-vocabulary boundary detection.

All fits are unweighted least squares of ``ln f`` on ``ln r``; the amplitude
``A`` is ``exp(intercept)`` and the exponent ``z`` is minus the slope.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import InsufficientDataError
from .validation import check_positive_int, check_rank_frequency, check_window, plateau_cap

DEFAULT_MIN_COUNT = 5
DEFAULT_WIDTH = 200
DEFAULT_STEP = 100
DEFAULT_DELTA = 0.2
DEFAULT_PERSISTENCE = 2
DEFAULT_MIN_LEVELS = 8


@dataclass(frozen=True)
class ZipfFit:
    A: float
    z: float
    r_lo: int
    r_hi: int
    rss: float
    r2: float
    n_points: int
    n_excluded: int = 0
    n_levels: int = 0  # distinct count (or frequency) values inside the window

    @property
    def r_center(self) -> int:
        return (self.r_lo + self.r_hi) // 2

    def predict(self, ranks):
        return self.A / np.power(np.asarray(ranks, dtype=np.float64), self.z)

    def to_dict(self) -> dict:
        return {"A": self.A, "z": self.z, "r_lo": self.r_lo, "r_hi": self.r_hi,
                "rss": self.rss, "r2": self.r2}


def _ols(x, y):
    n = x.size
    xm = x.mean()
    ym = y.mean()
    dx = x - xm
    dy = y - ym
    sxx = float(dx @ dx)
    slope = float(dx @ dy) / sxx
    intercept = ym - slope * xm
    resid = y - (intercept + slope * x)
    rss = float(resid @ resid)
    sst = float(dy @ dy)
    r2 = 1.0 - rss / sst if sst > 0 else 1.0
    return intercept, slope, rss, r2, n


def _fit_arrays(freqs, counts, r_lo, r_hi):
    seg = freqs[r_lo - 1:r_hi]
    mask = seg > 0
    n_excluded = int(seg.size - mask.sum())
    if mask.sum() < 3:
        raise InsufficientDataError(
            f"window [{r_lo}, {r_hi}] has fewer than 3 positive frequencies"
        )
    ranks = np.arange(r_lo, r_hi + 1, dtype=np.float64)[mask]
    intercept, slope, rss, r2, n = _ols(np.log(ranks), np.log(seg[mask]))
    levels_src = counts[r_lo - 1:r_hi] if counts is not None else seg
    return ZipfFit(
        A=float(np.exp(intercept)), z=-slope, r_lo=r_lo, r_hi=r_hi, rss=rss, r2=r2,
        n_points=n, n_excluded=n_excluded, n_levels=int(np.unique(levels_src).size),
    )


def fit_zipf(data, r_lo: int = 1, r_hi: Optional[int] = None, *,
             min_count: int = DEFAULT_MIN_COUNT) -> ZipfFit:
    """Fit ``f_r = A / r**z`` over ranks ``r_lo..r_hi`` inclusive.

    ``data`` is a FrequencyTable or a rank-ordered array (see
    :func:`~rankfreq.validation.check_rank_frequency`).  When ``r_hi`` is
    omitted it defaults to the last rank with count >= ``min_count``, which
    keeps the flat tail of rare words out of the fit.  Zero frequencies
    inside the window are skipped and counted in ``n_excluded``.
    """
    freqs, counts = check_rank_frequency(data)
    if r_hi is None:
        r_hi = plateau_cap(freqs, counts, min_count)
    r_lo, r_hi = check_window(r_lo, r_hi, freqs.size)
    return _fit_arrays(freqs, counts, r_lo, r_hi)


@dataclass(frozen=True)
class WindowSeries:
    window_width: int
    step: int
    fits: Tuple[ZipfFit, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.fits)

    @property
    def centers(self) -> np.ndarray:
        return np.array([f.r_center for f in self.fits], dtype=np.int64)

    @property
    def exponents(self) -> np.ndarray:
        return np.array([f.z for f in self.fits])

    def to_tsv(self) -> str:
        lines = ["r_center\tz\tA\tr2"]
        lines += [f"{f.r_center}\t{f.z:.10g}\t{f.A:.10g}\t{f.r2:.10g}" for f in self.fits]
        return "\n".join(lines) + "\n"


def window_scan(data, width: int = DEFAULT_WIDTH, step: int = DEFAULT_STEP, *,
                min_count: int = DEFAULT_MIN_COUNT) -> WindowSeries:
    """Fit Zipf's law on overlapping rank windows ``[1, w], [1+s, w+s], ...``.

    Windows stop before ``r_hi`` would pass the last rank with count >=
    ``min_count``.
    """
    width = check_positive_int(width, "width", minimum=10)
    step = check_positive_int(step, "step")
    freqs, counts = check_rank_frequency(data)
    limit = plateau_cap(freqs, counts, min_count)
    if limit < width:
        raise InsufficientDataError(
            f"only {limit} usable ranks, fewer than one window of {width}"
        )
    fits = []
    r_lo = 1
    while r_lo + width - 1 <= limit:
        fits.append(_fit_arrays(freqs, counts, r_lo, r_lo + width - 1))
        r_lo += step
    return WindowSeries(window_width=width, step=step, fits=tuple(fits))


@dataclass(frozen=True)
class KernelBoundary:
    r_max: int
    z_before: float
    z_after: float
    method: str  # "window-jump" or "two-segment"
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {"r_max": self.r_max, "z_before": self.z_before, "z_after": self.z_after,
                "method": self.method, "degenerate": self.degenerate}


def resolved_prefix(series: WindowSeries, min_levels: int = DEFAULT_MIN_LEVELS) -> List[ZipfFit]:
    """Leading windows whose counts take at least ``min_levels`` distinct values.

    Past that point the integer staircase of low counts dominates the slope.
    """
    out = []
    for f in series.fits:
        if f.n_levels < min_levels:
            break
        out.append(f)
    return out


def resolved_end(series: WindowSeries, min_levels: int = DEFAULT_MIN_LEVELS) -> Optional[int]:
    """Last rank covered by the resolved prefix, or None if no window is resolved."""
    resolved = resolved_prefix(series, min_levels)
    return resolved[-1].r_hi if resolved else None


def detect_kernel_boundary(series: WindowSeries, delta: float = DEFAULT_DELTA, *,
                           persistence: int = DEFAULT_PERSISTENCE,
                           min_levels: int = DEFAULT_MIN_LEVELS) -> Optional[KernelBoundary]:
    """Find the first rank window where the Zipf exponent jumps.

    Window ``i`` triggers when it and the next ``persistence - 1`` windows all
    differ from the median exponent of windows ``0..i-1`` by more than
    ``delta``, in the same direction.  ``persistence=1`` is the bare
    single-window rule.  Only the resolved prefix of the series is examined.
    Returns None when no window triggers.
    """
    if len(series) < 3:
        raise ValueError(f"need at least 3 windows, got {len(series)}")
    if delta <= 0:
        raise ValueError("delta must be positive")
    persistence = check_positive_int(persistence, "persistence")
    fits = resolved_prefix(series, min_levels)
    z = np.array([f.z for f in fits])
    for i in range(1, len(z) - persistence + 1):
        med = float(np.median(z[:i]))
        diffs = z[i:i + persistence] - med
        if np.all(np.abs(diffs) > delta) and (np.all(diffs > 0) or np.all(diffs < 0)):
            return KernelBoundary(
                r_max=fits[i].r_center, z_before=med, z_after=float(np.median(z[i:])),
                method="window-jump",
            )
    return None


def _segment_rss(cum, i, j):
    # rows of cum: n, Sx, Sy, Sxx, Sxy, Syy over masked points in [i, j)
    n, sx, sy, sxx, sxy, syy = cum[:, j] - cum[:, i]
    cxx = sxx - sx * sx / n
    cxy = sxy - sx * sy / n
    cyy = syy - sy * sy / n
    return max(cyy - cxy * cxy / cxx, 0.0)


def fit_two_segment(data, r_lo: int = 1, r_hi: Optional[int] = None, *,
                    step: int = DEFAULT_STEP, delta: float = DEFAULT_DELTA,
                    min_count: int = DEFAULT_MIN_COUNT
                    ) -> Tuple[KernelBoundary, ZipfFit, ZipfFit]:
    """Best single breakpoint for a broken power law.

    Candidate breaks are the multiples of ``step`` strictly inside
    ``(r_lo, r_hi)``; the left segment is ``[r_lo, b]`` and the right one
    ``[b + 1, r_hi]``.  The break with the smallest summed log-log RSS wins
    (earliest on ties).  The boundary is flagged ``degenerate`` when the two
    exponents differ by no more than ``delta``.
    """
    freqs, counts = check_rank_frequency(data)
    if r_hi is None:
        r_hi = plateau_cap(freqs, counts, min_count)
    r_lo, r_hi = check_window(r_lo, r_hi, freqs.size)
    step = check_positive_int(step, "step")
    if r_hi - r_lo + 1 < 20:
        raise InsufficientDataError("two-segment fit needs at least 20 ranks")

    seg = freqs[r_lo - 1:r_hi]
    mask = (seg > 0).astype(np.float64)
    x = np.log(np.arange(r_lo, r_hi + 1, dtype=np.float64))
    y = np.where(seg > 0, np.log(np.where(seg > 0, seg, 1.0)), 0.0)
    cols = np.vstack([mask, mask * x, mask * y, mask * x * x, mask * x * y, mask * y * y])
    cum = np.hstack([np.zeros((6, 1)), np.cumsum(cols, axis=1)])

    best = None
    first = (r_lo // step + 1) * step
    for b in range(first, r_hi, step):
        left = b - r_lo + 1
        if cum[0, left] < 3 or cum[0, -1] - cum[0, left] < 3:
            continue
        total = _segment_rss(cum, 0, left) + _segment_rss(cum, left, cum.shape[1] - 1)
        if best is None or total < best[0]:
            best = (total, b)
    if best is None:
        raise InsufficientDataError(
            f"no breakpoint multiple of {step} leaves 3 points on both sides of "
            f"[{r_lo}, {r_hi}]"
        )
    b = best[1]
    left_fit = _fit_arrays(freqs, counts, r_lo, b)
    right_fit = _fit_arrays(freqs, counts, b + 1, r_hi)
    boundary = KernelBoundary(
        r_max=b, z_before=left_fit.z, z_after=right_fit.z, method="two-segment",
        degenerate=abs(right_fit.z - left_fit.z) <= delta,
    )
    return boundary, left_fit, right_fit


def loglog_tsv(data) -> str:
    freqs, _ = check_rank_frequency(data)
    lines = ["ln_r\tln_f"]
    for r, f in enumerate(freqs.tolist(), start=1):
        if f > 0:
            lines.append(f"{np.log(r):.10g}\t{np.log(f):.10g}")
    return "\n".join(lines) + "\n"


class ZipfRegressor(BaseEstimator, RegressorMixin):
    """Zipf's law as an estimator.

    ``fit(X)`` takes a FrequencyTable or a rank-ordered count/frequency array;
    ``predict(ranks)`` returns ``A / r**z``.  ``score`` is the usual R^2 in
    frequency space (from RegressorMixin); ``fit_.r2`` is the log-log one.
    """

    def __init__(self, r_lo=1, r_hi=None, min_count=DEFAULT_MIN_COUNT):
        self.r_lo = r_lo
        self.r_hi = r_hi
        self.min_count = min_count

    def fit(self, X, y=None):
        self.fit_ = fit_zipf(X, self.r_lo, self.r_hi, min_count=self.min_count)
        self.A_ = self.fit_.A
        self.z_ = self.fit_.z
        return self

    def predict(self, X):
        check_is_fitted(self, "fit_")
        return self.fit_.predict(np.asarray(X, dtype=np.float64).ravel())


class KernelBoundaryDetector(BaseEstimator):
    """Windowed scan plus boundary search, with both estimators side by side.

    After ``fit``: ``series_``, ``boundary_`` (window-jump, may be None) and
    ``two_segment_`` (a ``(boundary, left_fit, right_fit)`` triple, or None
    when there is too little data).
    """

    def __init__(self, width=DEFAULT_WIDTH, step=DEFAULT_STEP, delta=DEFAULT_DELTA,
                 persistence=DEFAULT_PERSISTENCE, min_levels=DEFAULT_MIN_LEVELS,
                 min_count=DEFAULT_MIN_COUNT):
        self.width = width
        self.step = step
        self.delta = delta
        self.persistence = persistence
        self.min_levels = min_levels
        self.min_count = min_count

    def fit(self, X, y=None):
        self.series_ = window_scan(X, self.width, self.step, min_count=self.min_count)
        self.boundary_ = None
        if len(self.series_) >= 3:
            self.boundary_ = detect_kernel_boundary(
                self.series_, self.delta, persistence=self.persistence,
                min_levels=self.min_levels,
            )
        try:
            self.two_segment_ = fit_two_segment(
                X, r_hi=resolved_end(self.series_, self.min_levels), step=self.step,
                delta=self.delta, min_count=self.min_count
            )
        except InsufficientDataError:
            self.two_segment_ = None
        return self

    @property
    def r_max_(self):
        check_is_fitted(self, "series_")
        return None if self.boundary_ is None else self.boundary_.r_max
