"""Regenerate the regression goldens under tests/golden/ from the current build.

Run only after a deliberate change to tokenization, compression or output
format, and review the diff:

    python scripts/freeze_goldens.py
"""

import json
import shutil
from pathlib import Path

from scalefree.aggregate import basic_stats
from scalefree.ingest import TokenSequence, chunk, concatenate, load_category, load_manifest
from scalefree.oracle import random_words
from scalefree.redundancy import compression_rate
from scalefree.report import RunConfig, compute_results, render_outputs

ROOT = Path(__file__).resolve().parents[1]
DESK = ROOT / "data" / "desk" / "manifest.json"
GOLDEN = ROOT / "tests" / "golden"


def compression_cases():
    manifest = load_manifest(DESK)
    cases = {
        "single_letter_300k": TokenSequence(("a",) * 300_000),
        "random_words_300k_seed0": random_words(300_000, seed=0),
    }
    for cat in manifest.categories:
        for c in chunk(concatenate(load_category(cat)), 300_000):
            cases[f"{cat.name}_{c.index}"] = c.tokens
    out = {}
    for name, seq in cases.items():
        r, raw, comp = compression_rate(seq)
        out[name] = {"raw_bytes": raw, "compressed_bytes": comp, "r": r}
    return out


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    (GOLDEN / "compression.json").write_text(json.dumps(compression_cases(), indent=2, sort_keys=True) + "\n")

    stats = {s.category: list(s.as_tuple()[1:]) for s in basic_stats(load_manifest(DESK))}
    (GOLDEN / "basic_stats.json").write_text(json.dumps(stats, indent=2, sort_keys=True) + "\n")

    config = RunConfig(manifest=str(DESK), shuffle_baseline=True, seed=0)
    files = render_outputs(config, compute_results(config))
    target = GOLDEN / "desk_run"
    shutil.rmtree(target, ignore_errors=True)
    target.mkdir()
    for name, text in files.items():
        (target / name).write_text(text, encoding="utf-8")
    print(f"wrote goldens to {GOLDEN}")


if __name__ == "__main__":
    main()
