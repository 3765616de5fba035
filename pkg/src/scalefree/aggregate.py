"""Per-chunk signatures and their per-category summaries."""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import EmptyCategory
from .heaps import DEFAULT_MIN_N, DEFAULT_SAMPLES_PER_DECADE, GrowthCurve, growth_curve, heaps_beta
from .ingest import CorpusManifest, NormalizeOptions, TokenSequence, load_category
from .powerlaw import PowerLawFit
from .redundancy import GZIP_LEVEL, RedundancyMetrics, redundancy
from .taylor import DEFAULT_SEGMENT_SIZE, DispersionPoints, dispersion, taylor_alpha

STD_CONVENTION = "population"


@dataclass(frozen=True)
class MetricOptions:
    segment_size: int = DEFAULT_SEGMENT_SIZE
    samples_per_decade: int = DEFAULT_SAMPLES_PER_DECADE
    min_n: int = DEFAULT_MIN_N
    compress_level: int = GZIP_LEVEL


@dataclass(frozen=True)
class ComplexitySignature:
    chunk_id: int
    beta: PowerLawFit
    alpha: PowerLawFit
    redundancy: RedundancyMetrics
    n_tokens: int
    n_types: int
    category: str = ""


@dataclass(frozen=True)
class Analysis:
    """A signature together with the curves it was fitted on."""

    signature: ComplexitySignature
    curve: GrowthCurve
    dispersion: DispersionPoints


def analyze(
    seq: TokenSequence,
    options: MetricOptions = MetricOptions(),
    *,
    chunk_id: int = 0,
    category: str = "",
    raw: bytes | None = None,
) -> Analysis:
    curve = growth_curve(seq, options.samples_per_decade)
    points = dispersion(seq, options.segment_size)
    sig = ComplexitySignature(
        chunk_id=chunk_id,
        beta=heaps_beta(curve, options.min_n),
        alpha=taylor_alpha(points),
        redundancy=redundancy(seq, raw=raw, level=options.compress_level),
        n_tokens=len(seq),
        n_types=seq.n_types,
        category=category,
    )
    return Analysis(signature=sig, curve=curve, dispersion=points)


def signature(seq: TokenSequence, options: MetricOptions = MetricOptions(), **kw) -> ComplexitySignature:
    return analyze(seq, options, **kw).signature


class MeanStd(NamedTuple):
    mean: float
    std: float


@dataclass(frozen=True)
class BasicStats:
    category: str
    files_count: int
    total_words: int
    vocabulary: int
    avg_words_per_file: float

    def as_tuple(self) -> tuple:
        return (self.category, self.files_count, self.total_words, self.vocabulary, self.avg_words_per_file)


@dataclass(frozen=True)
class CategorySummary:
    category: str
    n_chunks: int
    beta: MeanStd
    alpha: MeanStd
    r: MeanStd
    h_norm: MeanStd
    files_count: int | None = None
    total_words: int | None = None
    vocabulary: int | None = None
    avg_words_per_file: float | None = None


def mean_std(values: Sequence[float]) -> MeanStd:
    """Arithmetic mean and population standard deviation, independent of value order."""
    values = list(values)
    if not values:
        return MeanStd(float("nan"), float("nan"))
    if all(v == values[0] for v in values):
        return MeanStd(float(values[0]), 0.0)
    return MeanStd(statistics.fmean(values), statistics.pstdev(values))


def summarize(
    signatures: Sequence[ComplexitySignature],
    category: str,
    basic: BasicStats | None = None,
) -> CategorySummary:
    if not signatures:
        raise EmptyCategory(f"category {category!r} has no chunks to summarize")
    return CategorySummary(
        category=category,
        n_chunks=len(signatures),
        beta=mean_std([s.beta.exponent for s in signatures]),
        alpha=mean_std([s.alpha.exponent for s in signatures]),
        r=mean_std([s.redundancy.r for s in signatures]),
        h_norm=mean_std([s.redundancy.h_norm for s in signatures if s.redundancy.h_norm is not None]),
        files_count=basic.files_count if basic else None,
        total_words=basic.total_words if basic else None,
        vocabulary=basic.vocabulary if basic else None,
        avg_words_per_file=basic.avg_words_per_file if basic else None,
    )


def basic_stats_of(category: str, docs: Sequence[TokenSequence]) -> BasicStats:
    """Counts over whole documents, before any chunk tail is dropped."""
    if not docs:
        raise EmptyCategory(f"category {category!r} has no files")
    total = sum(len(d) for d in docs)
    vocab: set[str] = set()
    for d in docs:
        vocab.update(d.tokens)
    return BasicStats(category, len(docs), total, len(vocab), total / len(docs))


def basic_stats(
    manifest: CorpusManifest, options: NormalizeOptions = NormalizeOptions()
) -> list[BasicStats]:
    return [basic_stats_of(c.name, load_category(c, options)) for c in manifest.categories]
