"""Monte Carlo acceptance bands for the synthetic-text tests.

Deliberately shares no code with ``scalefree``: draws come from the stdlib
Mersenne Twister, Zipf ranks from an Euler-Maclaurin inverse CDF, counting and
least squares are plain Python. Each band is mean +/- 3 std over 20 seeds.

    python scripts/derive_oracle_bands.py > tests/golden/oracle_bands.json
"""

import bisect
import json
import math
import random
import statistics
import sys
from collections import Counter

SEEDS = range(20)
EXACT_RANKS = 10_000


def ols_slope(xs, ys):
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    n = len(lx)
    mx, my = sum(lx) / n, sum(ly) / n
    sxx = sum((a - mx) ** 2 for a in lx)
    sxy = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    return sxy / sxx


class ZipfInverse:
    """Inverse CDF of P(k) ~ k**-s on 1..V. Exact table below EXACT_RANKS,
    Euler-Maclaurin partial sums (error << 1e-12) above."""

    def __init__(self, vocab, s):
        self.V, self.s = vocab, s
        k0 = min(vocab, EXACT_RANKS)
        self.cum = []
        acc = 0.0
        for k in range(1, k0 + 1):
            acc += k ** -s
            self.cum.append(acc)
        self.k0 = k0
        self.total = self.partial(vocab)

    def f(self, x):
        return x ** -self.s

    def antider(self, x):
        return math.log(x) if self.s == 1 else x ** (1 - self.s) / (1 - self.s)

    def fprime(self, x):
        return -self.s * x ** (-self.s - 1)

    def partial(self, k):
        if k <= self.k0:
            return self.cum[k - 1]
        a = self.k0
        return (self.cum[-1] + self.antider(k) - self.antider(a)
                + (self.f(k) - self.f(a)) / 2 + (self.fprime(k) - self.fprime(a)) / 12)

    def __call__(self, u):
        target = u * self.total
        if target <= self.cum[-1]:
            return bisect.bisect_left(self.cum, target) + 1
        lo, hi = self.k0 + 1, self.V
        while lo < hi:
            mid = (lo + hi) // 2
            if self.partial(mid) >= target:
                hi = mid
            else:
                lo = mid + 1
        return lo


def draw(vocab, s, length, seed):
    rng = random.Random(seed)
    if s == 0:
        return [rng.randrange(1, vocab + 1) for _ in range(length)]
    inv = ZipfInverse(vocab, s)
    return [inv(rng.random()) for _ in range(length)]


def sample_points(n, per_decade=20):
    k_max = math.floor(per_decade * math.log10(n))
    pts = {round(10 ** (k / per_decade)) for k in range(k_max + 1)}
    pts = sorted(p for p in pts if 1 <= p <= n)
    if pts[-1] != n:
        pts.append(n)
    return pts


def heaps_beta(tokens, min_n=100):
    want = set(sample_points(len(tokens)))
    seen = set()
    ns, vs = [], []
    for i, t in enumerate(tokens, start=1):
        seen.add(t)
        if i in want and i >= min_n:
            ns.append(i)
            vs.append(len(seen))
    return ols_slope(ns, vs)


def taylor_alpha(tokens, segment=1000):
    n_seg = len(tokens) // segment
    per_seg = [Counter(tokens[i * segment:(i + 1) * segment]) for i in range(n_seg)]
    words = set().union(*per_seg)
    mus, sigmas = [], []
    for w in words:
        c = [seg.get(w, 0) for seg in per_seg]
        sd = statistics.pstdev(c)
        if sd > 0:
            mus.append(sum(c) / n_seg)
            sigmas.append(sd)
    return ols_slope(mus, sigmas)


def band(values):
    m, sd = statistics.fmean(values), statistics.pstdev(values)
    return {"mean": m, "std": sd, "lo": m - 3 * sd, "hi": m + 3 * sd, "n_seeds": len(values)}


def main():
    out = {}
    cases = {
        "heaps_zipf1_V1e6_N3e5": dict(vocab=10**6, s=1.0, length=300_000),
        "heaps_uniform_V1e9_N1e5": dict(vocab=10**9, s=0.0, length=100_000),
        "heaps_zipf0.5_V1e9_N1e5": dict(vocab=10**9, s=0.5, length=100_000),
        "heaps_zipf1_V1e9_N1e5": dict(vocab=10**9, s=1.0, length=100_000),
    }
    for name, c in cases.items():
        betas = [heaps_beta(draw(c["vocab"], c["s"], c["length"], seed)) for seed in SEEDS]
        out[name] = {**c, **band(betas)}
        print(name, out[name], file=sys.stderr)
    c = dict(vocab=10_000, s=1.0, length=300_000, segment=1000)
    alphas = [taylor_alpha(draw(c["vocab"], c["s"], c["length"], seed), c["segment"]) for seed in SEEDS]
    out["taylor_zipf1_V1e4_N3e5"] = {**c, **band(alphas)}
    print("taylor", out["taylor_zipf1_V1e4_N3e5"], file=sys.stderr)
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    print()


if __name__ == "__main__":
    main()
