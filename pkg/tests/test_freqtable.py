import math
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rankfreq.exceptions import EmptyCorpusError
from rankfreq.freqtable import FrequencyTable, build_table, merge_tables, top_k

from conftest import random_tokens


def test_direct_count():
    t = build_table(["a", "b", "a"])
    assert [(e.rank, e.word, e.count) for e in t] == [(1, "a", 2), (2, "b", 1)]
    assert t[1].freq == 2 / 3 and t[2].freq == 1 / 3
    assert t.corpus_size == 3 and t.vocabulary_size == 2


def test_tie_break_by_code_point():
    t = build_table(["y", "x"])
    assert t.words == ("x", "y")
    t = build_table(["в", "і", "а"])
    assert t.words == tuple(sorted("віа"))


def test_empty_stream():
    with pytest.raises(EmptyCorpusError):
        build_table([])


def test_top_k():
    t = build_table(["a", "b", "a"])
    assert top_k(t, 5) == t.entries
    assert top_k(t, 1) == [t[1]]
    with pytest.raises(ValueError):
        top_k(t, 0)


def test_merge_identity_and_disjoint():
    t = build_table(["a", "b", "a"])
    assert merge_tables([t]) == t
    u = build_table(["c", "d", "d", "e"])
    assert merge_tables([t, u]).vocabulary_size == 5


def test_merge_self_doubles_counts(rng):
    toks = random_tokens(rng, 500)
    t = build_table(toks)
    doubled = merge_tables([t, t])
    assert doubled == build_table(toks + toks)
    assert np.array_equal(doubled.counts, 2 * t.counts)
    assert doubled.words == t.words


def test_tsv_format_and_roundtrip():
    t = build_table(["і"] * 371 + ["в"] * 303 + ["на"] * 173 + ["з"] * 166 + ["не"] * 157
                    + ["x%d" % i for i in range(8830)])
    text = t.to_tsv()
    lines = text.split("\n")
    assert lines[0] == "rank\tword\tcount\tfreq"
    assert lines[1] == "1\tі\t371\t0.0371"
    assert lines[5] == "5\tне\t157\t0.0157"
    assert text.endswith("\n") and "\r" not in text
    assert FrequencyTable.from_tsv(text) == t


def test_from_tsv_rejects_bad_header():
    with pytest.raises(ValueError):
        FrequencyTable.from_tsv("word\tcount\n")


def test_accessors():
    t = build_table("a b c a b a".split())
    assert t.count_of("a") == 3 and t.count_of("zzz") == 0
    assert list(t.ranks) == [1, 2, 3]
    with pytest.raises(IndexError):
        t[4]
    with pytest.raises(ValueError):
        t.counts[0] = 5


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(list("абвгдеє") + ["ab", "ба"]), min_size=1, max_size=200),
       st.randoms(use_true_random=False))
def test_table_invariants(tokens, r):
    t = build_table(tokens)
    assert t.corpus_size == len(tokens) == int(t.counts.sum())
    assert t.vocabulary_size == len(set(tokens)) == len(t.entries)
    assert math.isclose(math.fsum(t.freqs), 1.0, abs_tol=1e-9)
    assert np.all(np.diff(t.counts) <= 0)
    assert np.all(np.diff(t.freqs) <= 0)
    for e in t:
        assert e.freq == e.count / t.corpus_size
    shuffled = list(tokens)
    r.shuffle(shuffled)
    assert build_table(shuffled) == t


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(list("абвгд")), min_size=1, max_size=120),
       st.lists(st.integers(0, 119), max_size=6))
def test_merge_of_any_partition_equals_build(tokens, cuts):
    bounds = sorted({0, len(tokens), *[c for c in cuts if c < len(tokens)]})
    parts = [tokens[a:b] for a, b in zip(bounds, bounds[1:]) if b > a]
    assert merge_tables([build_table(p) for p in parts]).to_tsv() == build_table(tokens).to_tsv()


def test_merge_commutative_associative(rng):
    a, b, c = (build_table(random_tokens(rng, n)) for n in (50, 80, 120))
    assert merge_tables([a, b, c]) == merge_tables([c, a, b])
    assert merge_tables([merge_tables([a, b]), c]) == merge_tables([a, merge_tables([b, c])])
