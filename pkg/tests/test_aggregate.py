import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GOLDEN
from scalefree.aggregate import (
    ComplexitySignature,
    MetricOptions,
    analyze,
    basic_stats,
    basic_stats_of,
    mean_std,
    signature,
    summarize,
)
from scalefree.errors import EmptyCategory
from scalefree.ingest import TokenSequence
from scalefree.oracle import SyntheticSpec, generate
from scalefree.powerlaw import PowerLawFit
from scalefree.redundancy import RedundancyMetrics


def fake_signature(beta, alpha=0.6, r=3.0, h_norm=0.7, chunk_id=0):
    fit = lambda e: PowerLawFit(e, 0.0, 1.0, 10, 0.01)
    red = RedundancyMetrics(r=r, h_bits=9.0, h_norm=h_norm, raw_bytes=300, compressed_bytes=100)
    return ComplexitySignature(chunk_id, fit(beta), fit(alpha), red, 1000, 100, "c")


def test_single_chunk_has_zero_std():
    s = summarize([fake_signature(0.71)], "c")
    assert s.n_chunks == 1
    assert s.beta == (0.71, 0.0)
    assert s.alpha.std == 0.0 and s.r.std == 0.0 and s.h_norm.std == 0.0


def test_two_chunk_population_std():
    s = summarize([fake_signature(0.5), fake_signature(0.7)], "c")
    assert s.beta.mean == pytest.approx(0.6)
    assert s.beta.std == pytest.approx(0.1)


def test_empty_category():
    with pytest.raises(EmptyCategory):
        summarize([], "c")
    with pytest.raises(EmptyCategory):
        basic_stats_of("c", [])


def test_undefined_h_norm_is_skipped():
    s = summarize([fake_signature(0.5, h_norm=None), fake_signature(0.5, h_norm=0.8)], "c")
    assert s.h_norm == (0.8, 0.0)


@settings(max_examples=200)
@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=30), st.randoms(use_true_random=False))
def test_summary_order_invariant(betas, rnd):
    sigs = [fake_signature(b, chunk_id=i) for i, b in enumerate(betas)]
    shuffled = sigs[:]
    rnd.shuffle(shuffled)
    a, b = summarize(sigs, "c"), summarize(shuffled, "c")
    assert a.beta.mean == pytest.approx(b.beta.mean, abs=1e-12)
    assert a.beta.std == pytest.approx(b.beta.std, abs=1e-12)
    assert a.beta.std >= 0.0


def test_mean_std_of_constant_is_exact():
    assert mean_std([0.1] * 7) == (0.1, 0.0)


def test_basic_stats_small():
    vocab = [f"w{i}" for i in range(50)]
    docs = [TokenSequence(tuple(vocab[(j * 7 + k) % 50] for j in range(100))) for k in range(3)]
    assert basic_stats_of("c", docs).as_tuple() == ("c", 3, 300, 50, 100.0)


def test_basic_stats_desk_golden(desk_manifest):
    gold = json.loads((GOLDEN / "basic_stats.json").read_text())
    got = {s.category: list(s.as_tuple()[1:]) for s in basic_stats(desk_manifest)}
    assert got == gold


def test_analyze_consistency():
    seq = generate(SyntheticSpec(2000, 20_000, 1.0, seed=4))
    a = analyze(seq, MetricOptions(segment_size=500), chunk_id=3, category="x")
    sig = a.signature
    assert sig == signature(seq, MetricOptions(segment_size=500), chunk_id=3, category="x")
    assert (sig.n_tokens, sig.n_types) == (20_000, seq.n_types)
    assert a.curve.n[-1] == 20_000 and a.curve.v[-1] == seq.n_types
    assert a.dispersion.n_segments == 40
    assert sig.chunk_id == 3 and sig.category == "x"
