import math
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rankfreq.entropy import entropy
from rankfreq.freqtable import build_table


def brute_force_entropy(tokens, N):
    """Independent path: raw count map, own ranking, plain loop."""
    counts = Counter(tokens)
    total = sum(counts.values())
    ranked = sorted(counts.values(), reverse=True)[:N]
    s = 0.0
    for c in ranked:
        p = c / total
        s -= p * math.log(p)
    return s


def test_single_word_is_zero():
    res = entropy(build_table(["і"] * 10), 3000)
    assert res.S == 0.0 and res.coverage == 1.0


def test_uniform_3000():
    res = entropy(np.full(3000, 1 / 3000), 3000)
    assert abs(res.S - math.log(3000)) <= 1e-12
    assert math.isclose(res.S, 8.00636757, abs_tol=1e-8)


def test_two_words_analytic():
    res = entropy(build_table("а б а".split()), 3000)
    expected = -(2 / 3) * math.log(2 / 3) - (1 / 3) * math.log(1 / 3)
    assert abs(res.S - expected) <= 1e-15
    assert round(res.S, 4) == 0.6365


def test_no_renormalization_over_top_n():
    t = build_table(list("aaaabbbcc d".replace(" ", "")))
    res = entropy(t, 2)
    f = t.freqs[:2]
    assert res.S == pytest.approx(-(f * np.log(f)).sum(), abs=1e-15)
    assert res.coverage == pytest.approx(7 / 10)


def test_bits():
    t = build_table(list("aabb"))
    assert entropy(t, 10, bits=True).S == pytest.approx(1.0)


def test_bad_n():
    with pytest.raises(ValueError):
        entropy(build_table(["a"]), 0)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 40), min_size=1, max_size=300), st.integers(1, 60))
def test_matches_brute_force(ids, N):
    tokens = [f"w{i}" for i in ids]
    t = build_table(tokens)
    res = entropy(t, N)
    assert abs(res.S - brute_force_entropy(tokens, N)) <= 1e-12
    assert res.S >= 0
    assert 0 < res.coverage <= 1 + 1e-12
    assert res.S <= math.log(N) + abs(math.log(res.coverage)) + 1e-12


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 40), min_size=1, max_size=300))
def test_monotone_in_n(ids):
    t = build_table([f"w{i}" for i in ids])
    values = [entropy(t, n).S for n in range(1, t.vocabulary_size + 2)]
    assert all(b >= a for a, b in zip(values, values[1:]))
