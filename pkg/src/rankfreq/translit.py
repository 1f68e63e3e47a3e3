"""Bidirectional Ukrainian Cyrillic <-> Latin transliteration.

The mapping lives in a TSV data file (``data/uk_translit.tsv``) so another
table can be dropped in.  Both directions use greedy longest-match.  When two
adjacent letters would transliterate into a string that reads back as a
single digraph (``ш`` + ``ч`` -> ``šč`` is ``щ``), a middle dot ``·`` is put
between them, which keeps the scheme invertible for every input.
"""
from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Sequence, Tuple

from .exceptions import TranslitError

SEPARATOR = "·"
TABLE_HEADER = ("cyrillic", "latin")


def _check_longest_first(keys: Sequence[str], side: str):
    for i, k in enumerate(keys):
        for longer in keys[i + 1:]:
            if len(longer) > len(k) and longer.startswith(k):
                raise ValueError(
                    f"{side} key {longer!r} must be listed before its prefix {k!r}"
                )


class TranslitTable:
    def __init__(self, pairs: Sequence[Tuple[str, str]], separator: str = SEPARATOR):
        pairs = list(pairs)
        cyr = [c for c, _ in pairs]
        lat = [l for _, l in pairs]
        for side, keys in (("cyrillic", cyr), ("latin", lat)):
            if any(not k for k in keys):
                raise ValueError(f"empty {side} entry")
            if len(set(keys)) != len(keys):
                dup = sorted({k for k in keys if keys.count(k) > 1})
                raise ValueError(f"{side} side is not injective: {dup}")
            _check_longest_first(keys, side)
        if any(separator in k for k in cyr + lat):
            raise ValueError(f"separator {separator!r} appears inside the table")
        self.separator = separator
        self.to_latin_map: Dict[str, str] = dict(pairs)
        self.from_latin_map: Dict[str, str] = {l: c for c, l in pairs}
        self._cyr_lengths = sorted({len(k) for k in cyr}, reverse=True)
        self._lat_lengths = sorted({len(k) for k in lat}, reverse=True)
        self.break_pairs = frozenset(
            (x, y) for x in cyr for y in cyr
            if self._parse(self.to_latin_map[x] + self.to_latin_map[y],
                           self.from_latin_map, self._lat_lengths) != [
                self.to_latin_map[x], self.to_latin_map[y]]
        )

    @classmethod
    def from_tsv(cls, text: str, separator: str = SEPARATOR) -> "TranslitTable":
        pairs = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'cyrillic<TAB>latin'")
            if tuple(parts) == TABLE_HEADER:
                continue
            pairs.append((parts[0], parts[1]))
        return cls(pairs, separator)

    @classmethod
    def load(cls, path=None) -> "TranslitTable":
        if path is None:
            text = resources.files("rankfreq").joinpath("data/uk_translit.tsv").read_text(
                encoding="utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return cls.from_tsv(text)

    @property
    def latin_repertoire(self) -> frozenset:
        return frozenset("".join(self.from_latin_map)) | {self.separator}

    @property
    def cyrillic_repertoire(self) -> frozenset:
        return frozenset("".join(self.to_latin_map))

    @staticmethod
    def _parse(s, mapping, lengths, allow=None):
        units = []
        i = 0
        while i < len(s):
            if allow is not None and s[i] == allow:
                units.append(allow)
                i += 1
                continue
            for n in lengths:
                if s[i:i + n] in mapping:
                    units.append(s[i:i + n])
                    i += n
                    break
            else:
                raise TranslitError(
                    f"unsupported character {s[i]!r} at offset {i}", char=s[i], offset=i)
        return units

    def to_latin(self, word: str) -> str:
        units = self._parse(word, self.to_latin_map, self._cyr_lengths)
        out = []
        for prev, cur in zip([None] + units[:-1], units):
            if prev is not None and (prev, cur) in self.break_pairs:
                out.append(self.separator)
            out.append(self.to_latin_map[cur])
        return "".join(out)

    def from_latin(self, word: str) -> str:
        units = self._parse(word, self.from_latin_map, self._lat_lengths, allow=self.separator)
        out = []
        offset = 0
        for i, u in enumerate(units):
            if u == self.separator:
                prev = units[i - 1] if i > 0 else None
                nxt = units[i + 1] if i + 1 < len(units) else None
                if (prev is None or nxt is None or nxt == self.separator
                        or (self.from_latin_map[prev], self.from_latin_map[nxt])
                        not in self.break_pairs):
                    raise TranslitError(
                        f"separator at offset {offset} does not split a digraph",
                        char=u, offset=offset)
            else:
                out.append(self.from_latin_map[u])
            offset += len(u)
        return "".join(out)

    def transliterate_text(self, text: str, direction: str = "to-latin") -> str:
        """Transliterate runs of supported characters; pass everything else through."""
        if direction == "to-latin":
            repertoire, fn = self.cyrillic_repertoire, self.to_latin
        elif direction == "from-latin":
            repertoire, fn = self.latin_repertoire, self.from_latin
        else:
            raise ValueError(f"direction must be 'to-latin' or 'from-latin', got {direction!r}")
        pattern = _run_pattern(frozenset(repertoire))
        return pattern.sub(lambda m: fn(m.group(0)), text)


@lru_cache(maxsize=4)
def _run_pattern(repertoire: frozenset):
    chars = "".join(sorted(repertoire))
    return re.compile("[" + re.escape(chars) + "]+")


@lru_cache(maxsize=1)
def default_table() -> TranslitTable:
    return TranslitTable.load()


def to_latin(word: str) -> str:
    return default_table().to_latin(word)


def from_latin(word: str) -> str:
    return default_table().from_latin(word)
