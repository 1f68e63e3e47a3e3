"""Input validation helpers used by the fitting functions and estimators."""
from __future__ import annotations

import numbers

import numpy as np

from .exceptions import InsufficientDataError


def check_rank_frequency(X):
    """Return ``(freqs, counts)`` for a table or a 1-D array in rank order.

    Accepts a :class:`~rankfreq.freqtable.FrequencyTable`, an integer array of
    counts, or a float array of relative frequencies.  ``counts`` is ``None``
    when only frequencies are known.  Values are taken in the order given;
    position ``i`` is rank ``i + 1``.
    """
    # local import: freqtable imports this module
    from .freqtable import FrequencyTable

    if isinstance(X, FrequencyTable):
        return X.freqs, X.counts
    arr = np.asarray(X)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.ravel()
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D rank-ordered array, got shape {arr.shape}")
    if arr.size == 0:
        raise InsufficientDataError("empty rank-frequency data")
    if not np.issubdtype(arr.dtype, np.number):
        raise ValueError(f"expected numeric data, got dtype {arr.dtype}")
    if np.any(~np.isfinite(arr)) or np.any(arr < 0):
        raise ValueError("frequencies must be finite and non-negative")
    if np.issubdtype(arr.dtype, np.integer):
        counts = arr.astype(np.int64)
        total = counts.sum()
        if total == 0:
            raise InsufficientDataError("all counts are zero")
        return counts / total, counts
    return arr.astype(np.float64), None


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_window(r_lo, r_hi, size):
    r_lo = check_positive_int(r_lo, "r_lo")
    r_hi = check_positive_int(r_hi, "r_hi")
    if r_hi <= r_lo:
        raise ValueError(f"r_hi ({r_hi}) must exceed r_lo ({r_lo})")
    if r_hi > size:
        raise InsufficientDataError(f"r_hi ({r_hi}) exceeds the number of ranks ({size})")
    return r_lo, r_hi


def plateau_cap(freqs, counts, min_count):
    """Last rank whose count is at least ``min_count``.

    Frequency-only input has no count scale, so its whole range is usable.
    """
    if counts is None:
        return len(freqs)
    idx = np.flatnonzero(counts >= max(min_count or 1, 1))
    if idx.size == 0:
        raise InsufficientDataError(f"no rank has count >= {min_count}")
    return int(idx[-1]) + 1
