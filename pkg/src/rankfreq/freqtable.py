"""Rank-frequency tables."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, List, Mapping

import numpy as np

from .exceptions import EmptyCorpusError
from .validation import check_positive_int

TSV_HEADER = "rank\tword\tcount\tfreq"


@dataclass(frozen=True)
class RankEntry:
    rank: int
    word: str
    count: int
    freq: float


class FrequencyTable:
    """Immutable rank-frequency table.

    Rows are ordered by count descending, ties broken by the word's code-point
    order, so the ranking is total.  ``freqs`` are fractions of the whole
    corpus (``count / corpus_size``).
    """

    __slots__ = ("_words", "_counts", "_freqs", "_index")

    def __init__(self, words, counts):
        words = tuple(words)
        counts = np.array(counts, dtype=np.int64)
        if counts.ndim != 1 or len(words) != counts.size:
            raise ValueError("words and counts must be 1-D sequences of equal length")
        if counts.size == 0 or counts.sum() == 0:
            raise EmptyCorpusError("frequency table needs at least one token")
        if np.any(counts < 0):
            raise ValueError("counts must be non-negative")
        clist = counts.tolist()
        order = sorted(range(len(words)), key=lambda i: (-clist[i], words[i]))
        if order != list(range(len(words))):
            words = tuple(words[i] for i in order)
            counts = counts[order]
        if len(set(words)) != len(words):
            raise ValueError("duplicate words in frequency table")
        counts.setflags(write=False)
        freqs = counts / counts.sum()
        freqs.setflags(write=False)
        self._words = words
        self._counts = counts
        self._freqs = freqs
        self._index = None

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> "FrequencyTable":
        return cls(list(counts.keys()), list(counts.values()))

    @property
    def words(self):
        return self._words

    @property
    def counts(self) -> np.ndarray:
        return self._counts

    @property
    def freqs(self) -> np.ndarray:
        return self._freqs

    @property
    def ranks(self) -> np.ndarray:
        return np.arange(1, len(self._words) + 1)

    @property
    def corpus_size(self) -> int:
        return int(self._counts.sum())

    @property
    def vocabulary_size(self) -> int:
        return len(self._words)

    @property
    def entries(self) -> List[RankEntry]:
        return [
            RankEntry(r, w, int(c), float(f))
            for r, w, c, f in zip(range(1, len(self._words) + 1), self._words,
                                  self._counts, self._freqs)
        ]

    def __len__(self):
        return len(self._words)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, rank: int) -> RankEntry:
        """Entry at 1-based ``rank``."""
        if not 1 <= rank <= len(self._words):
            raise IndexError(f"rank {rank} outside 1..{len(self._words)}")
        i = rank - 1
        return RankEntry(rank, self._words[i], int(self._counts[i]), float(self._freqs[i]))

    def count_of(self, word: str) -> int:
        if self._index is None:
            self._index = {w: i for i, w in enumerate(self._words)}
        i = self._index.get(word)
        return 0 if i is None else int(self._counts[i])

    def as_counter(self) -> Counter:
        return Counter(dict(zip(self._words, self._counts.tolist())))

    def __eq__(self, other):
        if not isinstance(other, FrequencyTable):
            return NotImplemented
        return self._words == other._words and np.array_equal(self._counts, other._counts)

    def __hash__(self):
        return hash((self._words, self._counts.tobytes()))

    def __repr__(self):
        return (f"FrequencyTable(vocabulary_size={self.vocabulary_size}, "
                f"corpus_size={self.corpus_size})")

    def to_tsv(self) -> str:
        lines = [TSV_HEADER]
        for r, w, c, f in zip(range(1, len(self._words) + 1), self._words,
                              self._counts.tolist(), self._freqs.tolist()):
            lines.append(f"{r}\t{w}\t{c}\t{f:.6g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str) -> "FrequencyTable":
        """Parse the output of :meth:`to_tsv`; counts are authoritative."""
        lines = text.splitlines()
        if not lines or lines[0].rstrip("\r") != TSV_HEADER:
            raise ValueError(f"frequency TSV must start with header {TSV_HEADER!r}")
        words, counts = [], []
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.rstrip("\r").split("\t")
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: expected 4 tab-separated fields")
            words.append(parts[1])
            counts.append(int(parts[2]))
        return cls(words, counts)


def build_table(tokens: Iterable[str]) -> FrequencyTable:
    counts = Counter(tokens)
    if not counts:
        raise EmptyCorpusError("cannot build a frequency table from an empty token stream")
    return FrequencyTable.from_counts(counts)


def top_k(table: FrequencyTable, k: int) -> List[RankEntry]:
    k = check_positive_int(k, "k")
    return [table[r] for r in range(1, min(k, table.vocabulary_size) + 1)]


def merge_tables(tables: Iterable[FrequencyTable]) -> FrequencyTable:
    """Sum counts word by word and re-rank."""
    total = Counter()
    n = 0
    for t in tables:
        total.update(t.as_counter())
        n += 1
    if n == 0:
        raise ValueError("merge_tables needs at least one table")
    return FrequencyTable.from_counts(total)
