"""Baseline texts with known exponents: token shuffles and i.i.d. Zipf streams.

All randomness comes from numpy's Philox4x64 counter-based generator, so a
seed fixes the output on every platform.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

import numpy as np

from .errors import EmptyDocument
from .ingest import TokenSequence

# largest vocabulary sampled through an explicit cumulative-weight table
TABLE_LIMIT = 1 << 22


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def shuffle(seq: TokenSequence, seed: int) -> TokenSequence:
    """Uniformly random permutation of the tokens (Fisher-Yates via ``Generator.permutation``)."""
    if len(seq) == 0:
        raise EmptyDocument(f"no tokens in {seq.source_id or 'input'}")
    perm = make_rng(seed).permutation(len(seq))
    if len(seq) == 1:
        tokens = seq.tokens
    else:
        tokens = operator.itemgetter(*perm.tolist())(seq.tokens)
    return TokenSequence(tokens, source_id=f"{seq.source_id}~shuffled[{seed}]", n_replaced=seq.n_replaced)


@dataclass(frozen=True)
class SyntheticSpec:
    vocab_size: int
    length: int
    zipf_exponent: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.vocab_size < 1:
            raise ValueError("vocab_size must be >= 1")
        if self.length < 0:
            raise ValueError("length must be >= 0")
        if self.zipf_exponent < 0:
            raise ValueError("zipf_exponent must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def _log1p_over_x(x):
    small = np.abs(x) < 1e-8
    safe = np.where(small, 1.0, x)
    return np.where(small, 1.0 - x / 2 + x * x / 3, np.log1p(safe) / safe)


def _expm1_over_x(x):
    small = np.abs(x) < 1e-8
    safe = np.where(small, 1.0, x)
    return np.where(small, 1.0 + x / 2 + x * x / 6, np.expm1(safe) / safe)


class _RejectionInversion:
    """Exact Zipf sampler needing O(1) memory (Hoermann & Derflinger, 1996)."""

    def __init__(self, n: int, s: float):
        self.n, self.s = n, s
        self.h_x1 = self.big_h(1.5) - 1.0
        self.h_n = self.big_h(n + 0.5)
        self.shift = 2.0 - self.big_h_inv(self.big_h(2.5) - self.h(2.0))

    def h(self, x):
        return np.exp(-self.s * np.log(x))

    def big_h(self, x):
        lx = np.log(x)
        return _expm1_over_x((1.0 - self.s) * lx) * lx

    def big_h_inv(self, y):
        t = np.maximum(-1.0, y * (1.0 - self.s))
        return np.exp(_log1p_over_x(t) * y)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        out = np.empty(size, dtype=np.int64)
        pending = np.arange(size)
        while pending.size:
            u = self.h_n + rng.random(pending.size) * (self.h_x1 - self.h_n)
            x = self.big_h_inv(u)
            k = np.clip(np.floor(x + 0.5), 1, self.n)
            ok = (k - x <= self.shift) | (u >= self.big_h(k + 0.5) - self.h(k))
            out[pending[ok]] = k[ok].astype(np.int64)
            pending = pending[~ok]
        return out


def sample_ranks(spec: SyntheticSpec) -> np.ndarray:
    """i.i.d. ranks in ``1..vocab_size`` with ``P(k)`` proportional to ``k**-zipf_exponent``."""
    rng = make_rng(spec.seed)
    v, s = spec.vocab_size, spec.zipf_exponent
    if s == 0:
        return rng.integers(1, v + 1, size=spec.length, dtype=np.int64)
    if v <= TABLE_LIMIT:
        cdf = np.cumsum(np.arange(1, v + 1, dtype=np.float64) ** -s)
        cdf /= cdf[-1]
        ranks = np.searchsorted(cdf, rng.random(spec.length), side="right") + 1
        return np.minimum(ranks, v)
    return _RejectionInversion(v, s).sample(rng, spec.length)


def generate(spec: SyntheticSpec) -> TokenSequence:
    """Token stream of ``spec.length`` i.i.d. Zipf draws, token for rank k named ``w<k>``."""
    ranks = sample_ranks(spec)
    tokens = tuple(f"w{k}" for k in ranks.tolist())
    return TokenSequence(
        tokens,
        source_id=f"synthetic[V={spec.vocab_size},s={spec.zipf_exponent},N={spec.length},seed={spec.seed}]",
    )


def random_words(n_tokens: int, word_length: int = 6, seed: int = 0,
                 alphabet: str = "abcdefghijklmnopqrstuvwxyz") -> TokenSequence:
    """``n_tokens`` words of uniformly random letters; a near-incompressible baseline."""
    if n_tokens < 0 or word_length < 1 or not alphabet:
        raise ValueError("need n_tokens >= 0, word_length >= 1 and a non-empty alphabet")
    letters = np.array(list(alphabet))
    grid = letters[make_rng(seed).integers(0, len(alphabet), size=(n_tokens, word_length))]
    tokens = tuple("".join(row) for row in grid.tolist())
    return TokenSequence(tokens, source_id=f"random_words[{n_tokens}x{word_length},seed={seed}]")
