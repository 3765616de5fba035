"""Vocabulary growth (type-token curve) and Heaps' exponent."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyDocument, FewerThanTwoPoints
from .ingest import TokenSequence
from .powerlaw import PowerLawFit, fit_loglog

DEFAULT_SAMPLES_PER_DECADE = 20
DEFAULT_MIN_N = 100


@dataclass(frozen=True)
class GrowthCurve:
    """Distinct-type count ``v`` after reading the first ``n`` tokens."""

    n: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.n, dtype=np.int64)
        v = np.asarray(self.v, dtype=np.int64)
        if n.shape != v.shape or n.ndim != 1 or n.size == 0:
            raise ValueError("n and v must be equal-length non-empty 1-D arrays")
        if n[0] < 1 or np.any(np.diff(n) <= 0):
            raise ValueError("n must start at >= 1 and increase strictly")
        if np.any(np.diff(v) < 0) or np.any(v > n) or v[0] < 1:
            raise ValueError("v must be non-decreasing with 1 <= v <= n")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "v", v)

    @property
    def samples(self) -> list[tuple[int, int]]:
        return list(zip(self.n.tolist(), self.v.tolist()))

    def __len__(self) -> int:
        return self.n.size


def log_sample_points(n_total: int, samples_per_decade: int = DEFAULT_SAMPLES_PER_DECADE) -> np.ndarray:
    """Integer positions ``round(10**(k/spd))`` up to ``n_total``, deduplicated, plus ``n_total``."""
    if samples_per_decade < 1:
        raise ValueError("samples_per_decade must be >= 1")
    k_max = int(np.floor(samples_per_decade * np.log10(n_total))) if n_total > 1 else 0
    pts = np.rint(10.0 ** (np.arange(k_max + 1) / samples_per_decade)).astype(np.int64)
    pts = pts[(pts >= 1) & (pts <= n_total)]
    return np.unique(np.append(pts, n_total))


def growth_curve(
    seq: TokenSequence,
    samples_per_decade: int = DEFAULT_SAMPLES_PER_DECADE,
    *,
    every_position: bool = False,
) -> GrowthCurve:
    if len(seq) == 0:
        raise EmptyDocument(f"no tokens in {seq.source_id or 'input'}")
    ids = seq.encoded[0]
    running_v = np.maximum.accumulate(ids) + 1
    if every_position:
        n = np.arange(1, len(ids) + 1)
    else:
        n = log_sample_points(len(ids), samples_per_decade)
    return GrowthCurve(n=n, v=running_v[n - 1])


def heaps_beta(curve: GrowthCurve, min_n: int = DEFAULT_MIN_N) -> PowerLawFit:
    """Fit ``V ~ N**beta`` over the samples with ``N >= min_n``."""
    keep = curve.n >= min_n
    if np.count_nonzero(keep) < 2:
        raise FewerThanTwoPoints(
            f"only {np.count_nonzero(keep)} growth samples with N >= {min_n}"
        )
    return fit_loglog(curve.n[keep], curve.v[keep])
