"""Command-line interface: ``rankfreq <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import synth, zipf
from .entropy import DEFAULT_N, entropy
from .exceptions import RankFreqError
from .extrapolate import fit_extrapolation, tail_range
from .freqtable import FrequencyTable, build_table, merge_tables, top_k
from .pipeline import (CorpusManifest, PipelineOptions, load_lemma_map, read_tokens,
                       run_pipeline)
from .tokenizer import CleanReport, apply_variant_merge, load_config, tokenize
from .translit import TranslitTable

log = logging.getLogger("rankfreq")


def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="JSON cleaning config (default: $RANKFREQ_CONFIG)")
    p.add_argument("--lemma-map", help="TSV surface<TAB>lemma applied after cleaning")
    p.add_argument("--window-width", type=int, default=zipf.DEFAULT_WIDTH)
    p.add_argument("--window-step", type=int, default=zipf.DEFAULT_STEP)
    p.add_argument("--entropy-n", type=int, default=DEFAULT_N)
    p.add_argument("--delta", type=float, default=zipf.DEFAULT_DELTA)
    p.add_argument("--min-count", type=int, default=zipf.DEFAULT_MIN_COUNT,
                   help="plateau cap: fits stop at the last rank with this count")
    p.add_argument("--out-dir", help="write the report file(s) here instead of stdout")
    p.add_argument("--format", choices=("tsv", "json"), default=None)
    p.add_argument("--persistence", type=int, default=zipf.DEFAULT_PERSISTENCE,
                   help="windows in a row that must jump past delta")
    p.add_argument("--min-levels", type=int, default=zipf.DEFAULT_MIN_LEVELS,
                   help="distinct counts a window needs to take part in detection")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _input_parser():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("inputs", nargs="*", help="UTF-8 text files (stdin when omitted)")
    p.add_argument("--table", action="append", default=[],
                   help="frequency TSV produced by 'freq' (repeatable)")
    return p


def build_parser():
    common = _common_parser()
    inputs = _input_parser()
    parser = argparse.ArgumentParser(prog="rankfreq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tokenize", parents=[common, inputs], help="clean text into tokens")
    p.add_argument("--report", action="store_true", help="print the clean report to stderr")

    p = sub.add_parser("freq", parents=[common, inputs], help="rank-frequency table")
    p.add_argument("--top", type=int, help="only the first K ranks")

    p = sub.add_parser("fit", parents=[common, inputs], help="global Zipf fit")
    p.add_argument("--r-lo", type=int, default=1)
    p.add_argument("--r-hi", type=int)

    sub.add_parser("windows", parents=[common, inputs], help="windowed Zipf exponents")

    p = sub.add_parser("kernel", parents=[common, inputs], help="kernel-vocabulary boundary")

    p = sub.add_parser("entropy", parents=[common, inputs], help="truncated entropy S_N")
    p.add_argument("--bits", action="store_true")

    p = sub.add_parser("extrapolate", parents=[common, inputs], help="vocabulary volume R")
    p.add_argument("--r-lo", type=int)
    p.add_argument("--r-hi", type=int)

    p = sub.add_parser("translit", parents=[common], help="Cyrillic <-> Latin")
    p.add_argument("inputs", nargs="*")
    p.add_argument("--reverse", action="store_true", help="Latin to Cyrillic")
    p.add_argument("--table-file", help="alternative cyrillic<TAB>latin table")

    p = sub.add_parser("synth", parents=[common], help="sample a synthetic corpus")
    p.add_argument("--law", choices=("zipf", "piecewise-zipf", "extrapolation-model"),
                   default="zipf")
    p.add_argument("--z", type=float, default=1.0)
    p.add_argument("--z2", type=float, default=1.6)
    p.add_argument("--break-rank", type=int, default=800)
    p.add_argument("--A", type=float, default=0.04)
    p.add_argument("--B", type=float, default=0.01)
    p.add_argument("--t", type=float, default=0.1)
    p.add_argument("--vocab", type=int, default=50000)
    p.add_argument("--tokens", type=int, default=1000000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", help="token file (default stdout)")

    p = sub.add_parser("pipeline", parents=[common], help="full analysis of a manifest")
    p.add_argument("manifest")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--force", action="store_true", help="replace a non-empty --out-dir")
    return parser


def _write(args, filename, content):
    """Atomically write ``content`` to ``--out-dir/filename``, or print it."""
    if not args.out_dir:
        sys.stdout.write(content)
        return
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=out, prefix=f".{filename}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
        os.replace(tmp, out / filename)
    except BaseException:
        os.unlink(tmp)
        raise


def _json(obj):
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def _kv(obj):
    return "".join(f"{k}\t{v}\n" for k, v in obj.items())


def _load_table(args) -> FrequencyTable:
    config = load_config(args.config)
    lemma_map = load_lemma_map(args.lemma_map) if args.lemma_map else None
    tables = [FrequencyTable.from_tsv(Path(p).read_text(encoding="utf-8")) for p in args.table]
    if args.inputs:
        for path in args.inputs:
            tokens, _ = read_tokens(path, config, lemma_map)
            if tokens:
                tables.append(build_table(tokens))
    elif not args.table:
        tokens, _ = tokenize(sys.stdin.buffer.read(), config)
        tokens = apply_variant_merge(tokens, config)
        if lemma_map:
            tokens = [lemma_map.get(t, t) for t in tokens]
        tables.append(build_table(tokens))
    return merge_tables(tables)


def cmd_tokenize(args):
    config = load_config(args.config)
    lemma_map = load_lemma_map(args.lemma_map) if args.lemma_map else None
    out, total = [], CleanReport()
    sources = args.inputs or [None]
    for path in sources:
        if path is None:
            tokens, rep = tokenize(sys.stdin.buffer.read(), config)
            tokens = apply_variant_merge(tokens, config)
            if lemma_map:
                tokens = [lemma_map.get(t, t) for t in tokens]
        else:
            tokens, rep = read_tokens(path, config, lemma_map)
        out.extend(tokens)
        total = total + rep
    _write(args, "tokens.txt", "".join(t + "\n" for t in out))
    if args.report:
        sys.stderr.write(_json(total.to_dict()))


def cmd_freq(args):
    table = _load_table(args)
    if args.top:
        entries = top_k(table, args.top)
    else:
        entries = table.entries
    if args.format == "json":
        _write(args, "freq.json", _json([e.__dict__ for e in entries]))
    elif args.top:
        lines = ["rank\tword\tcount\tfreq"] + [
            f"{e.rank}\t{e.word}\t{e.count}\t{e.freq:.6g}" for e in entries]
        _write(args, "freq.tsv", "\n".join(lines) + "\n")
    else:
        _write(args, "freq.tsv", table.to_tsv())


def cmd_fit(args):
    table = _load_table(args)
    fit = zipf.fit_zipf(table, args.r_lo, args.r_hi, min_count=args.min_count)
    if args.format == "tsv":
        _write(args, "zipf.tsv", _kv(fit.to_dict()))
    else:
        _write(args, "zipf.json", _json(fit.to_dict()))
    if args.out_dir:
        _write(args, "loglog.tsv", zipf.loglog_tsv(table))


def cmd_windows(args):
    table = _load_table(args)
    series = zipf.window_scan(table, args.window_width, args.window_step,
                              min_count=args.min_count)
    if args.format == "json":
        _write(args, "windows.json", _json([f.to_dict() for f in series.fits]))
    else:
        _write(args, "windows.tsv", series.to_tsv())


def cmd_kernel(args):
    table = _load_table(args)
    series = zipf.window_scan(table, args.window_width, args.window_step,
                              min_count=args.min_count)
    boundary = zipf.detect_kernel_boundary(series, args.delta, persistence=args.persistence,
                                           min_levels=args.min_levels)
    two, left, right = zipf.fit_two_segment(
        table, r_hi=zipf.resolved_end(series, args.min_levels), step=args.window_step,
        delta=args.delta, min_count=args.min_count)
    report = {
        "window_jump": None if boundary is None else boundary.to_dict(),
        "two_segment": dict(two.to_dict(), left=left.to_dict(), right=right.to_dict()),
    }
    _write(args, "kernel.json", _json(report))


def cmd_entropy(args):
    table = _load_table(args)
    res = entropy(table, args.entropy_n, bits=args.bits)
    if args.format == "json":
        _write(args, "entropy.json", _json(res.to_dict()))
    else:
        _write(args, "entropy.tsv", f"N\t{res.N}\nS\t{res.S:.6f}\ncoverage\t{res.coverage:.6f}\n")


def cmd_extrapolate(args):
    table = _load_table(args)
    r_lo, r_hi = args.r_lo, args.r_hi
    if r_lo is None:
        series = boundary = None
        try:
            series = zipf.window_scan(table, args.window_width, args.window_step,
                                      min_count=args.min_count)
            if len(series) >= 3:
                boundary = zipf.detect_kernel_boundary(
                    series, args.delta, persistence=args.persistence,
                    min_levels=args.min_levels)
        except RankFreqError:
            pass
        r_lo, default_hi = tail_range(table, boundary, series, min_levels=args.min_levels)
        r_hi = r_hi or default_hi
    model = fit_extrapolation(table, r_lo, r_hi)
    if args.format == "tsv":
        _write(args, "extrapolation.tsv", _kv(model.to_dict()))
    else:
        _write(args, "extrapolation.json", _json(model.to_dict()))


def cmd_translit(args):
    table = TranslitTable.load(args.table_file)
    direction = "from-latin" if args.reverse else "to-latin"
    if args.inputs:
        text = "".join(Path(p).read_text(encoding="utf-8") for p in args.inputs)
    else:
        text = sys.stdin.read()
    _write(args, "translit.txt", table.transliterate_text(text, direction))


def cmd_synth(args):
    law = {
        "zipf": lambda: synth.ZipfLaw(args.z),
        "piecewise-zipf": lambda: synth.PiecewiseZipfLaw(args.z, args.z2, args.break_rank),
        "extrapolation-model": lambda: synth.ExtrapolationLaw(args.A, args.B, args.t),
    }[args.law]()
    spec = synth.GeneratorSpec(law, args.vocab, args.tokens, args.seed)
    ranks = synth.sample_ranks(spec).tolist()
    # 20 tokens per line keeps files readable without hurting tokenization
    lines = (" ".join(synth.word(r) for r in ranks[i:i + 20]) for i in range(0, len(ranks), 20))
    content = "\n".join(lines) + "\n"
    if args.output:
        out = Path(args.output)
        tmp = out.with_name(f".{out.name}.tmp")
        tmp.write_text(content, encoding="utf-8")
        os.replace(tmp, out)
    else:
        _write(args, "synth.txt", content)


def cmd_pipeline(args):
    if not args.out_dir:
        raise SystemExit("pipeline requires --out-dir")
    manifest = CorpusManifest.load(args.manifest)
    options = PipelineOptions(
        window_width=args.window_width, window_step=args.window_step,
        entropy_n=args.entropy_n, delta=args.delta, min_count=args.min_count,
        persistence=args.persistence, min_levels=args.min_levels,
        lemma_map=load_lemma_map(args.lemma_map) if args.lemma_map else None,
        jobs=args.jobs,
    )
    run_pipeline(manifest, args.out_dir, load_config(args.config), options, force=args.force)


COMMANDS = {
    "tokenize": cmd_tokenize, "freq": cmd_freq, "fit": cmd_fit, "windows": cmd_windows,
    "kernel": cmd_kernel, "entropy": cmd_entropy, "extrapolate": cmd_extrapolate,
    "translit": cmd_translit, "synth": cmd_synth, "pipeline": cmd_pipeline,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (RankFreqError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
