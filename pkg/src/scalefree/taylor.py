"""Taylor's fluctuation scaling: per-word mean and spread of counts across segments."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FewerThanTwoPoints, TooFewSegments
from .ingest import TokenSequence
from .powerlaw import PowerLawFit, fit_loglog

DEFAULT_SEGMENT_SIZE = 1000


@dataclass(frozen=True)
class DispersionPoints:
    """Per-word population mean ``mu`` and standard deviation ``sigma`` of segment counts.

    Only words occurring in at least one segment are listed. Words whose count
    is the same in every segment (``sigma == 0``) stay here but are left out
    of the fit; see ``excluded``.
    """

    words: tuple[str, ...]
    mu: np.ndarray
    sigma: np.ndarray
    segment_size: int
    n_segments: int

    @property
    def retained_mask(self) -> np.ndarray:
        return self.sigma > 0

    @property
    def entries(self) -> list[tuple[str, float, float]]:
        keep = self.retained_mask
        return [(w, m, s) for w, m, s, k in zip(self.words, self.mu.tolist(), self.sigma.tolist(), keep) if k]

    @property
    def excluded(self) -> list[tuple[str, float, float]]:
        keep = self.retained_mask
        return [(w, m, s) for w, m, s, k in zip(self.words, self.mu.tolist(), self.sigma.tolist(), keep) if not k]

    @property
    def n_retained(self) -> int:
        return int(np.count_nonzero(self.retained_mask))


def dispersion(seq: TokenSequence, segment_size: int = DEFAULT_SEGMENT_SIZE) -> DispersionPoints:
    """Cut ``seq`` into ``len(seq) // segment_size`` consecutive segments (tail dropped)
    and summarize each word's count per segment."""
    if segment_size < 1:
        raise ValueError("segment_size must be >= 1")
    n_seg = len(seq) // segment_size
    if n_seg < 2:
        raise TooFewSegments(
            f"{len(seq)} tokens give {n_seg} segment(s) of {segment_size}; need at least "
            f"{2 * segment_size} tokens or a smaller --segment-size"
        )
    ids, vocab = seq.encoded
    used = ids[: n_seg * segment_size]
    seg_of = np.repeat(np.arange(n_seg, dtype=np.int64), segment_size)
    pair, count = np.unique(used * n_seg + seg_of, return_counts=True)
    word = pair // n_seg

    total = np.bincount(word, weights=count, minlength=len(vocab))
    sumsq = np.bincount(word, weights=count.astype(np.float64) ** 2, minlength=len(vocab))
    present = np.flatnonzero(total > 0)
    total = np.rint(total[present]).astype(np.int64)
    sumsq = np.rint(sumsq[present]).astype(np.int64)
    # n^2 * variance in exact integer arithmetic, so sigma == 0 is detected exactly
    spread = n_seg * sumsq - total * total
    mu = total / n_seg
    sigma = np.sqrt(spread.astype(np.float64)) / n_seg
    words = tuple(vocab[i] for i in present.tolist())
    return DispersionPoints(words=words, mu=mu, sigma=sigma, segment_size=segment_size, n_segments=n_seg)


def taylor_alpha(points: DispersionPoints) -> PowerLawFit:
    """Fit ``sigma ~ mu**alpha`` over words with nonzero variance."""
    keep = points.retained_mask
    if np.count_nonzero(keep) < 2:
        raise FewerThanTwoPoints(
            f"only {np.count_nonzero(keep)} words with nonzero variance across {points.n_segments} segments"
        )
    return fit_loglog(points.mu[keep], points.sigma[keep])
