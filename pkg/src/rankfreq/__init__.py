"""Rank-frequency statistics for text corpora.

Cleaning and tokenization, rank-frequency tables, Zipf fits with kernel
vocabulary detection, truncated entropy, vocabulary-volume extrapolation,
Ukrainian transliteration and a synthetic Zipfian generator.
"""
from .entropy import EntropyResult, entropy
from .exceptions import (ConfigError, EmptyCorpusError, InsufficientDataError,
                         LemmaMapError, NoValidModelError, RankFreqError, TextDecodeError,
                         TranslitError)
from .extrapolate import (ExtrapolationModel, VocabularyExtrapolator, fit_extrapolation,
                          predict_zero_rank, tail_range)
from .freqtable import FrequencyTable, RankEntry, build_table, merge_tables, top_k
from .synth import (ExtrapolationLaw, GeneratorSpec, PiecewiseZipfLaw, ZipfLaw, generate,
                    sample_table)
from .tokenizer import (UKRAINIAN_EUPHONY_GROUPS, CleanConfig, CleanReport, TextCleaner,
                        apply_variant_merge, load_config, tokenize)
from .translit import TranslitTable, from_latin, to_latin
from .zipf import (KernelBoundary, KernelBoundaryDetector, WindowSeries, ZipfFit,
                   ZipfRegressor, detect_kernel_boundary, fit_two_segment, fit_zipf,
                   window_scan)

__version__ = "0.1.0"
