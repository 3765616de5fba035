"""Scale-free complexity signatures of text corpora.

Heaps' exponent (vocabulary growth), Taylor's exponent (fluctuation scaling
of word counts), gzip compression rate and unigram entropy, computed per
fixed-size chunk and summarized per corpus category.
"""

__version__ = "0.1.0"

from .aggregate import ComplexitySignature, CategorySummary, MetricOptions, analyze, signature, summarize
from .heaps import GrowthCurve, growth_curve, heaps_beta
from .ingest import (
    Chunk,
    CorpusManifest,
    NormalizeOptions,
    TokenSequence,
    chunk,
    load_manifest,
    normalize_and_tokenize,
    read_document,
)
from .oracle import SyntheticSpec, generate, random_words, shuffle
from .powerlaw import PowerLawFit, fit_loglog
from .redundancy import (
    RedundancyMetrics,
    compression_rate,
    normalized_entropy,
    shannon_entropy,
    zipf_rank_frequency,
)
from .taylor import DispersionPoints, dispersion, taylor_alpha
