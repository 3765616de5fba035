"""Compression rate, unigram entropy and the (diagnostic) rank-frequency table."""

from __future__ import annotations

import gzip
import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyDocument, UndefinedForSingletonVocabulary
from .ingest import TokenSequence
from .powerlaw import PowerLawFit, fit_loglog

GZIP_LEVEL = 9


def compressor_id(level: int = GZIP_LEVEL) -> str:
    return f"gzip/deflate level={level} wbits=15 mtime=0"


@dataclass(frozen=True)
class RedundancyMetrics:
    """``h_norm`` is None when the vocabulary has a single type."""

    r: float
    h_bits: float
    h_norm: float | None
    raw_bytes: int
    compressed_bytes: int


def _require_tokens(seq: TokenSequence) -> None:
    if len(seq) == 0:
        raise EmptyDocument(f"no tokens in {seq.source_id or 'input'}")


def compressed_size(data: bytes, level: int = GZIP_LEVEL) -> int:
    # mtime=0 keeps the gzip header, and so the size, independent of wall time
    return len(gzip.compress(data, compresslevel=level, mtime=0))


def compression_rate_bytes(data: bytes, level: int = GZIP_LEVEL) -> tuple[float, int, int]:
    if not data:
        raise EmptyDocument("cannot compress empty input")
    compressed = compressed_size(data, level)
    return len(data) / compressed, len(data), compressed


def compression_rate(seq: TokenSequence, level: int = GZIP_LEVEL) -> tuple[float, int, int]:
    """``(r, raw_bytes, compressed_bytes)`` for the space-joined token stream."""
    _require_tokens(seq)
    return compression_rate_bytes(seq.normalized_bytes, level)


def entropy_from_counts(counts) -> float:
    """Shannon entropy in bits of the distribution proportional to ``counts``."""
    c = np.asarray(counts, dtype=np.float64)
    c = c[c > 0]
    if c.size == 0:
        raise EmptyDocument("no counts")
    if np.all(c == c[0]):
        return math.log2(c.size)
    # sorted so that the floating-point sum does not depend on type order
    p = np.sort(c) / c.sum()
    return float(-(p * np.log2(p)).sum())


def shannon_entropy(seq: TokenSequence) -> float:
    _require_tokens(seq)
    return entropy_from_counts(seq.counts())


def normalized_entropy(seq: TokenSequence) -> float:
    _require_tokens(seq)
    n_types = seq.n_types
    if n_types < 2:
        raise UndefinedForSingletonVocabulary("normalized entropy needs at least 2 types")
    return shannon_entropy(seq) / math.log2(n_types)


def redundancy(seq: TokenSequence, raw: bytes | None = None, level: int = GZIP_LEVEL) -> RedundancyMetrics:
    """All redundancy metrics of ``seq``; pass ``raw`` to compress the original file bytes instead."""
    if raw is None:
        r, raw_bytes, comp = compression_rate(seq, level)
    else:
        r, raw_bytes, comp = compression_rate_bytes(raw, level)
    h = shannon_entropy(seq)
    h_norm = h / math.log2(seq.n_types) if seq.n_types >= 2 else None
    return RedundancyMetrics(r=r, h_bits=h, h_norm=h_norm, raw_bytes=raw_bytes, compressed_bytes=comp)


def ranked_words(seq: TokenSequence) -> list[tuple[int, str, int]]:
    """``(rank, word, frequency)`` by descending frequency, ties in lexicographic word order."""
    _require_tokens(seq)
    _, vocab = seq.encoded
    counts = seq.counts().tolist()
    order = sorted(range(len(vocab)), key=lambda i: (-counts[i], vocab[i]))
    return [(rank, vocab[i], counts[i]) for rank, i in enumerate(order, start=1)]


def zipf_rank_frequency(seq: TokenSequence) -> list[tuple[int, int]]:
    """Rank-frequency pairs. Diagnostic only: the Zipf exponent hardly differs between corpora."""
    return [(rank, freq) for rank, _, freq in ranked_words(seq)]


def zipf_exponent(seq: TokenSequence, max_rank: int | None = None) -> PowerLawFit:
    """Log-log slope of frequency on rank; ``max_rank`` keeps the hapax-dominated tail out of the fit."""
    table = zipf_rank_frequency(seq)[:max_rank]
    return fit_loglog([t[0] for t in table], [t[1] for t in table])
