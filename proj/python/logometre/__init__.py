"""Logometric comparison of non-aligned bilingual corpora."""

from ._core import (
    Corpus,
    Lexicon,
    LogometreError,
    build_report,
    compare,
    cooc_matrix,
    correspondence_analysis,
    dictionary,
    load_corpus,
    load_lexicon,
    normalize_lemma,
    parse_corpus,
    parse_lexicon,
    pivot,
    render_report,
    run_cli,
    specificities,
    specificity_log10p,
    specificity_z,
)

__all__ = [
    "Corpus",
    "Lexicon",
    "LogometreError",
    "build_report",
    "compare",
    "cooc_matrix",
    "correspondence_analysis",
    "dictionary",
    "load_corpus",
    "load_lexicon",
    "normalize_lemma",
    "parse_corpus",
    "parse_lexicon",
    "pivot",
    "render_report",
    "run_cli",
    "specificities",
    "specificity_log10p",
    "specificity_z",
]

__version__ = "0.3.0"
