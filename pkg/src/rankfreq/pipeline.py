"""End-to-end corpus analysis: manifest in, one report directory per style out."""
from __future__ import annotations

import json
import logging
import os
import shutil
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import zipf
from .entropy import DEFAULT_N, entropy
from .exceptions import (ConfigError, EmptyCorpusError, InsufficientDataError,
                         LemmaMapError, NoValidModelError)
from .extrapolate import fit_extrapolation, tail_range
from .freqtable import FrequencyTable, build_table, merge_tables
from .tokenizer import CleanConfig, CleanReport, apply_variant_merge, tokenize

logger = logging.getLogger(__name__)

STYLE_LABELS = ("belles-lettres", "colloquial", "scientific", "official", "journalistic",
                "other")
MERGED = "merged"
REPORT_FILES = ("freq.tsv", "zipf.json", "windows.tsv", "kernel.json", "entropy.json",
                "extrapolation.json", "loglog.tsv")


@dataclass(frozen=True)
class ManifestEntry:
    path: Path
    style: str


@dataclass(frozen=True)
class CorpusManifest:
    name: str
    entries: Tuple[ManifestEntry, ...]

    def __post_init__(self):
        if not self.entries:
            raise ConfigError("manifest has no entries")
        paths = [e.path for e in self.entries]
        if len(set(paths)) != len(paths):
            raise ConfigError("manifest paths must be distinct")
        for e in self.entries:
            if e.style not in STYLE_LABELS:
                raise ConfigError(
                    f"unknown style label {e.style!r}; use one of {STYLE_LABELS}")

    @property
    def styles(self) -> List[str]:
        seen = []
        for e in self.entries:
            if e.style not in seen:
                seen.append(e.style)
        return seen

    @classmethod
    def load(cls, path) -> "CorpusManifest":
        """Read a JSON manifest; relative paths resolve against its directory.

        Format: ``{"name": str, "entries": [{"path": str, "style": str}, ...]}``.
        """
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        base = path.parent
        try:
            entries = tuple(
                ManifestEntry((base / e["path"]).resolve(), e.get("style", "other"))
                for e in data["entries"]
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"{path}: malformed manifest ({exc})") from exc
        return cls(name=data.get("name", path.stem), entries=entries)


def load_lemma_map(path) -> Dict[str, str]:
    """TSV ``surface<TAB>lemma`` per line; blank lines and ``#`` comments skipped."""
    mapping = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise LemmaMapError("expected 'surface<TAB>lemma'", line=lineno)
            surface, lemma = parts[0].strip(), parts[1].strip()
            if not surface or not lemma:
                raise LemmaMapError("empty surface form or lemma", line=lineno)
            if surface in mapping and mapping[surface] != lemma:
                raise LemmaMapError(f"{surface!r} mapped twice", line=lineno)
            mapping[surface] = lemma
    return mapping


def apply_lemma_map(tokens: Sequence[str], mapping: Dict[str, str]) -> List[str]:
    return [mapping.get(t, t) for t in tokens]


@dataclass
class PipelineOptions:
    window_width: int = zipf.DEFAULT_WIDTH
    window_step: int = zipf.DEFAULT_STEP
    entropy_n: int = DEFAULT_N
    delta: float = zipf.DEFAULT_DELTA
    persistence: int = zipf.DEFAULT_PERSISTENCE
    min_levels: int = zipf.DEFAULT_MIN_LEVELS
    min_count: int = zipf.DEFAULT_MIN_COUNT
    lemma_map: Optional[Dict[str, str]] = None
    jobs: int = 1


def read_tokens(path, config: CleanConfig, lemma_map=None) -> Tuple[List[str], CleanReport]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror}") from exc
    tokens, report = tokenize(raw, config)
    tokens = apply_variant_merge(tokens, config)
    if lemma_map:
        tokens = apply_lemma_map(tokens, lemma_map)
    return tokens, report


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def _error(exc) -> dict:
    return {"error": type(exc).__name__, "detail": str(exc)}


def analyze_table(table: FrequencyTable, options: PipelineOptions | None = None) -> Dict[str, str]:
    """Every report for one table, as ``{file name: content}``.

    Analyses that the data cannot support are written as ``{"error": ...}``
    objects (or header-only TSV) rather than aborting the run.
    """
    options = options or PipelineOptions()
    files = {"freq.tsv": table.to_tsv(), "loglog.tsv": zipf.loglog_tsv(table)}

    try:
        zfit = zipf.fit_zipf(table, min_count=options.min_count)
        files["zipf.json"] = _dumps(zfit.to_dict())
    except (InsufficientDataError, ValueError) as exc:
        files["zipf.json"] = _dumps(_error(exc))

    series = None
    try:
        series = zipf.window_scan(table, options.window_width, options.window_step,
                                  min_count=options.min_count)
        files["windows.tsv"] = series.to_tsv()
    except (InsufficientDataError, ValueError):
        files["windows.tsv"] = zipf.WindowSeries(options.window_width,
                                                 options.window_step).to_tsv()

    boundary = None
    kernel = {"window_jump": None, "two_segment": None}
    if series is not None and len(series) >= 3:
        boundary = zipf.detect_kernel_boundary(
            series, options.delta, persistence=options.persistence,
            min_levels=options.min_levels)
        kernel["window_jump"] = None if boundary is None else boundary.to_dict()
    try:
        r_hi = None if series is None else zipf.resolved_end(series, options.min_levels)
        two, left, right = zipf.fit_two_segment(
            table, r_hi=r_hi, step=options.window_step, delta=options.delta,
            min_count=options.min_count)
        kernel["two_segment"] = dict(two.to_dict(), left=left.to_dict(), right=right.to_dict())
    except (InsufficientDataError, ValueError) as exc:
        kernel["two_segment"] = _error(exc)
    files["kernel.json"] = _dumps(kernel)

    files["entropy.json"] = _dumps(entropy(table, options.entropy_n).to_dict())

    try:
        r_lo, r_hi = tail_range(table, boundary, series, min_levels=options.min_levels)
        model = fit_extrapolation(table, r_lo, r_hi)
        files["extrapolation.json"] = _dumps(model.to_dict())
    except (InsufficientDataError, NoValidModelError, ValueError) as exc:
        files["extrapolation.json"] = _dumps(_error(exc))
    return files


def _style_table(entries, config, options):
    tables = []
    report = CleanReport()
    for e in entries:
        tokens, rep = read_tokens(e.path, config, options.lemma_map)
        report = report + rep
        if tokens:
            tables.append(build_table(tokens))
    if not tables:
        raise EmptyCorpusError(
            "no tokens left after cleaning in: " + ", ".join(str(e.path) for e in entries))
    return merge_tables(tables), report


def run_pipeline(manifest: CorpusManifest, out_dir, config: CleanConfig | None = None,
                 options: PipelineOptions | None = None, *, force: bool = False) -> dict:
    """Analyse every style in ``manifest`` plus their union into ``out_dir``.

    The tree is built in a temporary sibling directory and renamed into place
    only when every report succeeded, so a failed run leaves nothing behind.
    """
    config = config or CleanConfig()
    options = options or PipelineOptions()
    out_dir = Path(out_dir)
    if out_dir.exists() and any(out_dir.iterdir()) and not force:
        raise FileExistsError(f"output directory {out_dir} is not empty (use force=True)")
    styles = manifest.styles
    if MERGED in styles:
        raise ConfigError(f"style label {MERGED!r} is reserved")

    def work(style):
        return _style_table([e for e in manifest.entries if e.style == style], config, options)

    with ThreadPoolExecutor(max_workers=max(1, options.jobs)) as pool:
        results = list(pool.map(work, styles))
    per_style = dict(zip(styles, results))
    merged = merge_tables([t for t, _ in results])

    out_dir.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=f".{out_dir.name}.", dir=out_dir.parent))
    summary = {"name": manifest.name, "styles": {}}
    try:
        for label, table in [(s, per_style[s][0]) for s in styles] + [(MERGED, merged)]:
            d = tmp / label
            d.mkdir()
            for name, content in analyze_table(table, options).items():
                (d / name).write_text(content, encoding="utf-8", newline="\n")
            summary["styles"][label] = {
                "corpus_size": table.corpus_size,
                "vocabulary_size": table.vocabulary_size,
            }
            if label != MERGED:
                summary["styles"][label]["clean_report"] = per_style[label][1].to_dict()
        (tmp / "summary.json").write_text(_dumps(summary), encoding="utf-8", newline="\n")
        if out_dir.exists():
            shutil.rmtree(out_dir)
        os.replace(tmp, out_dir)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
    logger.info("wrote %d report directories to %s", len(styles) + 1, out_dir)
    return summary
