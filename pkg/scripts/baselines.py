"""Analytic baselines next to the desk corpus.

Prints beta, alpha, r and H_norm for each desk chunk, for token-shuffled
copies of those chunks, and for i.i.d. Zipf streams at a few exponents.
Shuffling should pull alpha to 0.5; a uniform draw from a huge vocabulary
should push beta to 1.

    python scripts/baselines.py [--seeds 5] [--length 300000]
"""

import argparse
import statistics
from pathlib import Path

from scalefree import MetricOptions, SyntheticSpec, generate, shuffle, signature
from scalefree.ingest import chunk, concatenate, load_category, load_manifest

DESK = Path(__file__).resolve().parents[1] / "data" / "desk" / "manifest.json"


def row(label, sigs):
    def col(values):
        return f"{statistics.fmean(values):8.4f} ± {statistics.pstdev(values):.4f}"

    beta = col([s.beta.exponent for s in sigs])
    alpha = col([s.alpha.exponent for s in sigs])
    r = col([s.redundancy.r for s in sigs])
    h = col([s.redundancy.h_norm for s in sigs])
    print(f"{label:<28} {beta}  {alpha}  {r}  {h}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--length", type=int, default=300_000, help="synthetic stream length")
    args = ap.parse_args()
    opts = MetricOptions()

    print(f"{'text':<28} {'beta':>17}  {'alpha':>17}  {'r':>17}  {'H_norm':>17}")
    for cat in load_manifest(DESK).categories:
        for c in chunk(concatenate(load_category(cat)), 300_000):
            row(f"{cat.name}#{c.index}", [signature(c.tokens, opts)])
            row(f"  shuffled x{args.seeds}", [signature(shuffle(c.tokens, s), opts) for s in range(args.seeds)])

    for vocab, s in [(10**9, 0.0), (10**9, 0.5), (10**6, 1.0), (10**4, 1.0)]:
        sigs = [signature(generate(SyntheticSpec(vocab, args.length, s, seed)), opts) for seed in range(args.seeds)]
        row(f"zipf s={s} V=1e{len(str(vocab)) - 1}", sigs)


if __name__ == "__main__":
    main()
