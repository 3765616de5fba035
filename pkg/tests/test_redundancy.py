import gzip
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GOLDEN
from scalefree.errors import EmptyDocument, UndefinedForSingletonVocabulary
from scalefree.ingest import TokenSequence
from scalefree.oracle import random_words, shuffle
from scalefree.redundancy import (
    compression_rate,
    compression_rate_bytes,
    compressor_id,
    entropy_from_counts,
    normalized_entropy,
    ranked_words,
    redundancy,
    shannon_entropy,
    zipf_exponent,
    zipf_rank_frequency,
)

COMPRESSION = json.loads((GOLDEN / "compression.json").read_text())


def seq_of(text):
    return TokenSequence(tuple(text.split()))


def test_single_letter_compresses_hugely():
    r, raw, comp = compression_rate(TokenSequence(("a",) * 300_000))
    assert r > 100
    assert raw == 599_999
    assert comp == COMPRESSION["single_letter_300k"]["compressed_bytes"]


def test_random_letters_barely_compress():
    r, raw, comp = compression_rate(random_words(300_000, seed=0))
    assert r < 2
    assert comp == COMPRESSION["random_words_300k_seed0"]["compressed_bytes"]


def test_desk_chunk_compression_golden(desk_chunks):
    for name, chunks in desk_chunks.items():
        for c in chunks:
            gold = COMPRESSION[f"{name}_{c.index}"]
            r, raw, comp = compression_rate(c.tokens)
            assert (raw, comp) == (gold["raw_bytes"], gold["compressed_bytes"])
            assert r == gold["r"]


def test_compression_rate_is_ratio_of_gzip_sizes():
    data = b"the quick brown fox " * 50
    r, raw, comp = compression_rate_bytes(data)
    assert comp == len(gzip.compress(data, compresslevel=9, mtime=0))
    assert r == raw / comp


def test_compressor_id_names_settings():
    assert compressor_id() == "gzip/deflate level=9 wbits=15 mtime=0"


def test_empty_input():
    with pytest.raises(EmptyDocument):
        compression_rate_bytes(b"")
    with pytest.raises(EmptyDocument):
        shannon_entropy(TokenSequence(()))


def test_entropy_uniform_eight():
    assert shannon_entropy(seq_of("a b c d e f g h")) == 3.0


def test_entropy_single_type():
    assert shannon_entropy(seq_of("a a a a")) == 0.0


def test_entropy_dyadic():
    assert shannon_entropy(seq_of("a a b c")) == 1.5
    assert entropy_from_counts([2, 1, 1]) == 1.5


def test_entropy_ignores_zero_counts():
    assert entropy_from_counts([0, 4, 0, 4]) == 1.0


def test_normalized_entropy_uniform_is_one():
    for v in (2, 3, 7, 1000):
        assert normalized_entropy(TokenSequence(tuple(f"w{i}" for i in range(v)) * 3)) == 1.0


def test_normalized_entropy_dyadic():
    assert normalized_entropy(seq_of("a a b c")) == pytest.approx(1.5 / math.log2(3), rel=1e-15)


def test_normalized_entropy_singleton():
    with pytest.raises(UndefinedForSingletonVocabulary):
        normalized_entropy(seq_of("a a a"))
    assert redundancy(seq_of("a a a")).h_norm is None


def test_rank_frequency_table_with_ties():
    seq = seq_of("c b a a b a")
    assert zipf_rank_frequency(seq) == [(1, 3), (2, 2), (3, 1)]
    assert ranked_words(seq_of("b a c a b c d")) == [(1, "a", 2), (2, "b", 2), (3, "c", 2), (4, "d", 1)]


def test_zipf_exponent_of_literature_head(desk_chunks):
    fit = zipf_exponent(desk_chunks["literature"][0].tokens, max_rank=1000)
    assert fit.exponent == pytest.approx(-1.0, abs=0.1)


def test_raw_bytes_mode():
    seq = seq_of("alpha beta")
    m = redundancy(seq, raw=b"Alpha, beta!\n")
    assert m.raw_bytes == 13
    assert m.h_bits == 1.0


def test_random_tokens_lower_compression(desk_chunks):
    text = desk_chunks["literature"][0].tokens
    noise = random_words(len(text), seed=1)
    assert compression_rate(noise)[0] < compression_rate(text)[0]


@pytest.mark.xfail(strict=False, reason=(
    "reference band 0.75-0.84 for natural-language chunks is not reached by the "
    "bundled desk corpora (0.62-0.70); see README, desk corpus"))
def test_natural_language_h_norm_band(desk_chunks):
    values = [redundancy(c.tokens).h_norm for chunks in desk_chunks.values() for c in chunks]
    assert all(0.75 <= v <= 0.84 for v in values), values


token_lists = st.lists(st.sampled_from(["a", "b", "c", "dd", "eee", "f", "gg"]), min_size=1, max_size=300)


@settings(max_examples=200)
@given(token_lists, st.integers(0, 2**32))
def test_entropy_bitwise_permutation_invariant(toks, seed):
    seq = TokenSequence(tuple(toks))
    shuffled = shuffle(seq, seed)
    assert shannon_entropy(shuffled) == shannon_entropy(seq)
    assert redundancy(shuffled).h_norm == redundancy(seq).h_norm


@settings(max_examples=200)
@given(token_lists)
def test_redundancy_invariants(toks):
    seq = TokenSequence(tuple(toks))
    m = redundancy(seq)
    assert m.r == m.raw_bytes / m.compressed_bytes
    assert 0.0 <= m.h_bits <= math.log2(seq.n_types) + 1e-12
    if seq.n_types >= 2:
        assert 0.0 <= m.h_norm <= 1.0 + 1e-12
    else:
        assert m.h_norm is None


@settings(max_examples=200)
@given(st.lists(st.integers(1, 50), min_size=2, max_size=40))
def test_h_norm_one_only_when_uniform(counts):
    h = entropy_from_counts(counts) / math.log2(len(counts))
    if len(set(counts)) == 1:
        assert h == 1.0
    else:
        assert h < 1.0
