"""Text cleaning and tokenization.

Raw text is split on whitespace into chunks.  Punctuation glued to a word is
stripped silently; a chunk made only of punctuation is counted as a removed
item.  Every surviving word-like piece is classified as a kept token, a
number, a word containing digits, or a word in a foreign script.
"""
from __future__ import annotations

import json
import os
import unicodedata
from dataclasses import asdict, dataclass, fields
from typing import Iterable, List, Sequence, Tuple

from sklearn.base import BaseEstimator, TransformerMixin

from .exceptions import ConfigError, TextDecodeError

UKRAINIAN_LOWER = "абвгґдеєжзиіїйклмнопрстуфхцчшщьюя"
UKRAINIAN_LETTERS = frozenset(UKRAINIAN_LOWER + UKRAINIAN_LOWER.upper())

APOSTROPHES = frozenset("'’ʼ")
HYPHENS = frozenset("-‐‑")
DASHES = HYPHENS | frozenset("‒–—―−")

SCRIPT_FILTERS = ("ukrainian-cyrillic", "cyrillic", "none")

# Euphony alternants of the two most frequent Ukrainian function words.
UKRAINIAN_EUPHONY_GROUPS = (
    ("і", frozenset({"і", "й", "та"})),
    ("в", frozenset({"в", "у", "вві", "уві"})),
)

CONFIG_ENV_VAR = "RANKFREQ_CONFIG"


def _validate_groups(groups):
    seen = {}
    out = []
    for canonical, variants in groups:
        if not canonical:
            raise ConfigError("variant group has an empty canonical word")
        members = frozenset(variants) | {canonical}
        for word in members:
            if word in seen:
                raise ConfigError(
                    f"variant groups overlap: {word!r} is in the groups of "
                    f"{seen[word]!r} and {canonical!r}"
                )
            seen[word] = canonical
        out.append((canonical, members))
    return tuple(out)


@dataclass(frozen=True)
class CleanConfig:
    lowercase: bool = True
    keep_internal_hyphen: bool = True
    keep_apostrophe: bool = True
    script_filter: str = "ukrainian-cyrillic"
    variant_merge_groups: Tuple[Tuple[str, frozenset], ...] = ()
    # False keeps mixed letter/digit words such as the synthetic "w17"
    drop_number_words: bool = True

    def __post_init__(self):
        if self.script_filter not in SCRIPT_FILTERS:
            raise ConfigError(
                f"script_filter must be one of {SCRIPT_FILTERS}, got {self.script_filter!r}"
            )
        object.__setattr__(
            self, "variant_merge_groups", _validate_groups(self.variant_merge_groups)
        )

    @classmethod
    def from_dict(cls, data: dict) -> "CleanConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(data)
        groups = kwargs.pop("variant_merge_groups", {})
        if isinstance(groups, dict):
            groups = [(k, frozenset(v)) for k, v in groups.items()]
        else:
            groups = [(k, frozenset(v)) for k, v in groups]
        return cls(variant_merge_groups=tuple(groups), **kwargs)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["variant_merge_groups"] = {
            canonical: sorted(members) for canonical, members in self.variant_merge_groups
        }
        return d


def load_config(path=None) -> CleanConfig:
    """Read a JSON config file; fall back to $RANKFREQ_CONFIG, then defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return CleanConfig()
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return CleanConfig.from_dict(data)


@dataclass
class CleanReport:
    tokens_kept: int = 0
    removed_numbers: int = 0
    removed_number_words: int = 0
    removed_foreign_script: int = 0
    removed_punctuation_only: int = 0
    dashes_removed: int = 0

    @property
    def items_examined(self) -> int:
        return sum(getattr(self, f.name) for f in fields(self))

    def __add__(self, other: "CleanReport") -> "CleanReport":
        if not isinstance(other, CleanReport):
            return NotImplemented
        return CleanReport(
            **{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)}
        )

    def to_dict(self) -> dict:
        return asdict(self)


def _is_letter(ch):
    return unicodedata.category(ch).startswith("L")


def _is_digit(ch):
    return unicodedata.category(ch).startswith("N")


def _in_script(ch, script_filter):
    if script_filter == "ukrainian-cyrillic":
        return ch in UKRAINIAN_LETTERS
    if script_filter == "cyrillic":
        return unicodedata.name(ch, "").startswith("CYRILLIC")
    return True


def _normalize_chunk(chunk):
    # NFC keeps й/ї precomposed; leftover combining marks are stress accents.
    chunk = unicodedata.normalize("NFC", chunk)
    return "".join(ch for ch in chunk if not unicodedata.category(ch).startswith("M"))


def _split_pieces(chunk, config):
    """Split one whitespace chunk into word-like pieces.

    A hyphen or apostrophe survives only between two letters/digits; any other
    non-alphanumeric character separates pieces.
    """
    pieces = []
    current = []
    n = len(chunk)
    for i, ch in enumerate(chunk):
        # U+02BC is category Lm, so joiners are tested before letters
        joiner = ch in HYPHENS or ch in APOSTROPHES
        if not joiner and (_is_letter(ch) or _is_digit(ch)):
            current.append(ch)
            continue
        if current and i + 1 < n and _is_digit(current[-1]) and _is_digit(chunk[i + 1]):
            # 12,5  10:30  1945–1970 stay one number
            current.append(ch)
            continue
        if current and joiner and i + 1 < n:
            nxt = chunk[i + 1]
            if nxt not in APOSTROPHES and (_is_letter(nxt) or _is_digit(nxt)):
                digit_side = _is_digit(current[-1]) or _is_digit(nxt)
                if ch in APOSTROPHES:
                    if config.keep_apostrophe:
                        current.append("'")
                    # dropped apostrophe still joins the two halves
                    continue
                if config.keep_internal_hyphen or digit_side:
                    current.append("-")
                    continue
        if current:
            pieces.append("".join(current))
            current = []
    if current:
        pieces.append("".join(current))
    return pieces


def _decode(text):
    if isinstance(text, (bytes, bytearray, memoryview)):
        try:
            return bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise TextDecodeError(exc.start, exc.reason) from None
    return text


def tokenize(text, config: CleanConfig | None = None) -> Tuple[List[str], CleanReport]:
    """Clean ``text`` (str or UTF-8 bytes) and return ``(tokens, report)``.

    Variant merging is not applied here; see :func:`apply_variant_merge`.
    """
    config = config or CleanConfig()
    text = _decode(text)
    tokens = []
    report = CleanReport()
    for chunk in text.split():
        chunk = _normalize_chunk(chunk)
        pieces = _split_pieces(chunk, config)
        if not pieces:
            if chunk and all(ch in DASHES for ch in chunk):
                report.dashes_removed += 1
            else:
                report.removed_punctuation_only += 1
            continue
        for piece in pieces:
            has_digit = any(_is_digit(ch) for ch in piece)
            has_letter = any(_is_letter(ch) for ch in piece)
            if has_digit and has_letter and config.drop_number_words:
                report.removed_number_words += 1
            elif has_digit and not has_letter:
                report.removed_numbers += 1
            elif not all(_in_script(ch, config.script_filter) for ch in piece if _is_letter(ch)):
                report.removed_foreign_script += 1
            else:
                tokens.append(piece.lower() if config.lowercase else piece)
                report.tokens_kept += 1
    return tokens, report


def apply_variant_merge(tokens: Sequence[str], config: CleanConfig | Iterable) -> List[str]:
    """Replace every euphony variant by its group's canonical word."""
    groups = config.variant_merge_groups if isinstance(config, CleanConfig) else config
    groups = _validate_groups(groups)
    if not groups:
        return list(tokens)
    lookup = {word: canonical for canonical, members in groups for word in members}
    return [lookup.get(tok, tok) for tok in tokens]


class TextCleaner(BaseEstimator, TransformerMixin):
    """Stateless transformer: documents in, cleaned (and merged) token lists out.

    The summed :class:`CleanReport` of the last ``transform`` call is kept in
    ``report_``.
    """

    def __init__(self, lowercase=True, keep_internal_hyphen=True, keep_apostrophe=True,
                 script_filter="ukrainian-cyrillic", variant_merge_groups=(),
                 drop_number_words=True):
        self.lowercase = lowercase
        self.keep_internal_hyphen = keep_internal_hyphen
        self.keep_apostrophe = keep_apostrophe
        self.script_filter = script_filter
        self.variant_merge_groups = variant_merge_groups
        self.drop_number_words = drop_number_words

    def _config(self):
        return CleanConfig(
            lowercase=self.lowercase,
            keep_internal_hyphen=self.keep_internal_hyphen,
            keep_apostrophe=self.keep_apostrophe,
            script_filter=self.script_filter,
            variant_merge_groups=tuple(self.variant_merge_groups),
            drop_number_words=self.drop_number_words,
        )

    def fit(self, X, y=None):
        self._config()
        return self

    def transform(self, X):
        if isinstance(X, (str, bytes)):
            raise TypeError("TextCleaner expects an iterable of documents, not a single string")
        config = self._config()
        out = []
        total = CleanReport()
        for doc in X:
            toks, rep = tokenize(doc, config)
            out.append(apply_variant_merge(toks, config))
            total = total + rep
        self.report_ = total
        return out
