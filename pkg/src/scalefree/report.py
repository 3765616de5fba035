"""Pipeline orchestration and CSV emitters.

Every CSV starts with ``#`` comment lines carrying the full run configuration,
so a result file is enough to reproduce itself::

    # scalefree 0.1.0
    # run_config: {"chunk_size": 300000, ...}
    # compressor: gzip/deflate level=9 wbits=15 mtime=0
    # std: population
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .aggregate import (
    STD_CONVENTION,
    Analysis,
    BasicStats,
    CategorySummary,
    ComplexitySignature,
    MetricOptions,
    analyze,
    basic_stats_of,
    summarize,
)
from .errors import EmptyCategory
from .heaps import GrowthCurve
from .ingest import (
    DEFAULT_CHUNK_SIZE,
    NormalizeOptions,
    TokenSequence,
    chunk,
    concatenate,
    load_category,
    load_manifest,
    read_document,
    split_sizes,
)
from .oracle import shuffle
from .redundancy import GZIP_LEVEL, compressor_id
from .taylor import DEFAULT_SEGMENT_SIZE, DispersionPoints

log = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "SCALEFREE_OUTPUT_DIR"
OUTPUT_FILES = (
    "signatures.csv",
    "summary.csv",
    "scatter_alpha_beta.csv",
    "box_r.csv",
    "plane_hnorm_r.csv",
)


@dataclass(frozen=True)
class RunConfig:
    manifest: str = ""
    chunk_size: int = DEFAULT_CHUNK_SIZE
    segment_size: int = DEFAULT_SEGMENT_SIZE
    case_fold: bool = True
    strip_punctuation: bool = True
    compress_level: int = GZIP_LEVEL
    samples_per_decade: int = 20
    min_n: int = 100
    output_dir: str = "scalefree-out"
    seed: int = 0
    shuffle_baseline: bool = False
    dump_curves: bool = False
    dump_dispersion: bool = False
    raw_compression: bool = False
    jobs: int = 1

    @property
    def normalize(self) -> NormalizeOptions:
        return NormalizeOptions(case_fold=self.case_fold, strip_punctuation=self.strip_punctuation)

    @property
    def metrics(self) -> MetricOptions:
        return MetricOptions(
            segment_size=self.segment_size,
            samples_per_decade=self.samples_per_decade,
            min_n=self.min_n,
            compress_level=self.compress_level,
        )

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True, separators=(", ", ": "))

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        data = json.loads(text)
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown run_config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_header(cls, path: str | Path) -> "RunConfig":
        """Recover the configuration embedded in an output file's header."""
        with open(path, encoding="utf-8") as f:
            for line in f:
                if not line.startswith("#"):
                    break
                if line.startswith("# run_config: "):
                    return cls.from_json(line[len("# run_config: "):])
        raise ValueError(f"{path} has no run_config header line")


def fmt(x) -> str:
    """Six significant digits with '.' as decimal separator; ``None`` becomes ``nan``."""
    if x is None:
        return "nan"
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.6g}"


def header_lines(config: RunConfig) -> list[str]:
    return [
        f"# scalefree {__version__}",
        f"# run_config: {config.to_json()}",
        f"# compressor: {compressor_id(config.compress_level)}",
        f"# std: {STD_CONVENTION}",
    ]


def render_csv(config: RunConfig, columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    for line in header_lines(config):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return buf.getvalue()


# ---------------------------------------------------------------- table builders

SIGNATURE_COLUMNS = (
    "category", "chunk_id", "beta", "beta_stderr", "alpha", "alpha_stderr",
    "r", "h_bits", "h_norm", "n_tokens", "n_types",
)


def signature_rows(sigs: Sequence[ComplexitySignature]):
    for s in sigs:
        yield (
            s.category, s.chunk_id, s.beta.exponent, s.beta.stderr_exponent,
            s.alpha.exponent, s.alpha.stderr_exponent, s.redundancy.r,
            s.redundancy.h_bits, s.redundancy.h_norm, s.n_tokens, s.n_types,
        )


SUMMARY_COLUMNS = (
    "category", "label", "files_count", "total_words", "vocabulary", "avg_words_per_file",
    "n_chunks", "dropped_tail_tokens", "invalid_utf8",
    "beta_mean", "beta_std", "alpha_mean", "alpha_std",
    "r_mean", "r_std", "h_norm_mean", "h_norm_std",
)


@dataclass(frozen=True)
class CategoryResult:
    name: str
    label: str
    basic: BasicStats
    summary: CategorySummary
    analyses: tuple[Analysis, ...]
    dropped_tail: int
    n_replaced: int
    baseline: tuple[Analysis, ...] = ()

    @property
    def signatures(self) -> list[ComplexitySignature]:
        return [a.signature for a in self.analyses]


def summary_rows(results: Sequence[CategoryResult]):
    for c in results:
        s = c.summary
        yield (
            c.name, c.label, c.basic.files_count, c.basic.total_words, c.basic.vocabulary,
            c.basic.avg_words_per_file, s.n_chunks, c.dropped_tail, c.n_replaced,
            s.beta.mean, s.beta.std, s.alpha.mean, s.alpha.std,
            s.r.mean, s.r.std, s.h_norm.mean, s.h_norm.std,
        )


def scatter_rows(results: Sequence[CategoryResult]):
    for c in results:
        for s in c.signatures:
            yield (c.name, c.label, s.chunk_id, s.beta.exponent, s.alpha.exponent)


def box_rows(results: Sequence[CategoryResult]):
    for c in results:
        for s in c.signatures:
            yield (c.name, c.label, s.chunk_id, s.redundancy.r)


def plane_rows(results: Sequence[CategoryResult]):
    for c in results:
        s = c.summary
        yield (c.name, c.label, s.h_norm.mean, s.h_norm.std, s.r.mean, s.r.std)


def baseline_rows(results: Sequence[CategoryResult], seed: int):
    for c in results:
        for orig, shuf in zip(c.analyses, c.baseline):
            o, b = orig.signature, shuf.signature
            yield (
                c.name, o.chunk_id, seed, o.alpha.exponent, b.alpha.exponent,
                o.beta.exponent, b.beta.exponent, abs(b.beta.exponent - o.beta.exponent),
                o.redundancy.r, b.redundancy.r,
            )


def curve_rows(curve: GrowthCurve):
    return zip(curve.n.tolist(), curve.v.tolist())


def dispersion_rows(points: DispersionPoints):
    for w, m, s in zip(points.words, points.mu.tolist(), points.sigma.tolist()):
        yield (w, m, s, int(s == 0.0))


# ---------------------------------------------------------------- pipeline

def _analyze_chunk(args) -> tuple[Analysis, Analysis | None]:
    seq, options, chunk_id, category, baseline_seed = args
    a = analyze(seq, options, chunk_id=chunk_id, category=category)
    b = None
    if baseline_seed is not None:
        b = analyze(shuffle(seq, baseline_seed), options, chunk_id=chunk_id, category=category)
    return a, b


def compute_results(config: RunConfig) -> list[CategoryResult]:
    manifest = load_manifest(config.manifest)
    results = []
    pool = ProcessPoolExecutor(max_workers=config.jobs) if config.jobs > 1 else None
    try:
        for cat in manifest.categories:
            docs = load_category(cat, config.normalize)
            basic = basic_stats_of(cat.name, docs)
            whole = concatenate(docs, source_id=cat.name)
            del docs
            chunks = chunk(whole, config.chunk_size)
            if not chunks:
                raise EmptyCategory(
                    f"category {cat.name!r} has {len(whole)} tokens, fewer than half a "
                    f"{config.chunk_size}-token chunk"
                )
            _, dropped = split_sizes(len(whole), config.chunk_size)
            seed = config.seed if config.shuffle_baseline else None
            jobs = [(c.tokens, config.metrics, c.index, cat.name, seed) for c in chunks]
            out = list(pool.map(_analyze_chunk, jobs)) if pool else [_analyze_chunk(j) for j in jobs]
            analyses = tuple(a for a, _ in out)
            baseline = tuple(b for _, b in out if b is not None)
            results.append(CategoryResult(
                name=cat.name,
                label=cat.label,
                basic=basic,
                summary=summarize([a.signature for a in analyses], cat.name, basic),
                analyses=analyses,
                dropped_tail=dropped,
                n_replaced=whole.n_replaced,
                baseline=baseline,
            ))
            log.info("%s: %d chunks", cat.name, len(chunks))
    finally:
        if pool:
            pool.shutdown()
    return results


def render_outputs(config: RunConfig, results: Sequence[CategoryResult]) -> dict[str, str]:
    """Relative file name -> file content for one pipeline run."""
    files = {
        "signatures.csv": render_csv(
            config, SIGNATURE_COLUMNS,
            signature_rows([s for c in results for s in c.signatures])),
        "summary.csv": render_csv(config, SUMMARY_COLUMNS, summary_rows(results)),
        "scatter_alpha_beta.csv": render_csv(
            config, ("category", "label", "chunk_id", "beta", "alpha"), scatter_rows(results)),
        "box_r.csv": render_csv(config, ("category", "label", "chunk_id", "r"), box_rows(results)),
        "plane_hnorm_r.csv": render_csv(
            config, ("category", "label", "h_norm_mean", "h_norm_std", "r_mean", "r_std"),
            plane_rows(results)),
    }
    if config.shuffle_baseline:
        files["baseline_shuffled.csv"] = render_csv(
            config,
            ("category", "chunk_id", "seed", "alpha", "alpha_shuffled", "beta", "beta_shuffled",
             "beta_abs_diff", "r", "r_shuffled"),
            baseline_rows(results, config.seed))
    for c in results:
        for a in c.analyses:
            stem = f"{c.name}_{a.signature.chunk_id:04d}"
            if config.dump_curves:
                files[f"curves/{stem}.csv"] = render_csv(config, ("n", "v"), curve_rows(a.curve))
            if config.dump_dispersion:
                files[f"dispersion/{stem}.csv"] = render_csv(
                    config, ("word", "mu", "sigma", "excluded"), dispersion_rows(a.dispersion))
    return files


def write_outputs(out_dir: Path, files: dict[str, str]) -> list[Path]:
    """Write all files or none: anything already written is removed if a write fails."""
    written: list[Path] = []
    try:
        for name, text in files.items():
            path = out_dir / name
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            written.append(path)
    except BaseException:
        for p in written:
            p.unlink(missing_ok=True)
        raise
    return written


def resolve_output_dir(config: RunConfig) -> RunConfig:
    """Apply the ``SCALEFREE_OUTPUT_DIR`` override."""
    env = os.environ.get(OUTPUT_DIR_ENV)
    if env:
        config = dataclasses.replace(config, output_dir=env)
    return config


def run_pipeline(config: RunConfig) -> list[Path]:
    """Run every category of the manifest and write the CSV set into ``config.output_dir``.

    Nothing is written unless all metrics were computed.
    """
    results = compute_results(config)
    files = render_outputs(config, results)
    return write_outputs(Path(config.output_dir), files)


# ---------------------------------------------------------------- single file

def analyze_file(path: str | Path, config: RunConfig = RunConfig()) -> Analysis:
    seq = read_document(path, config.normalize)
    raw = Path(path).read_bytes() if config.raw_compression else None
    return analyze(seq, config.metrics, raw=raw, category=str(path))


def format_analysis(path: str | Path, a: Analysis, config: RunConfig = RunConfig()) -> str:
    s = a.signature
    red = s.redundancy
    d = a.dispersion
    mode = "raw file bytes" if config.raw_compression else "normalized tokens"
    lines = [
        f"file: {path}",
        f"tokens N = {s.n_tokens}   types V = {s.n_types}",
        f"beta  = {s.beta.exponent:.4f} +/- {s.beta.stderr_exponent:.4f}   "
        f"(R^2 = {s.beta.r_squared:.4f}, {s.beta.n_points} points, N >= {config.min_n})",
        f"alpha = {s.alpha.exponent:.4f} +/- {s.alpha.stderr_exponent:.4f}   "
        f"(R^2 = {s.alpha.r_squared:.4f}, {d.n_segments} segments of {d.segment_size}, "
        f"{d.n_retained} words fitted, {len(d.words) - d.n_retained} zero-variance excluded)",
        f"r     = {red.r:.4f}   ({red.raw_bytes} -> {red.compressed_bytes} bytes, {mode}, "
        f"{compressor_id(config.compress_level)})",
        f"H     = {red.h_bits:.4f} bits/word",
        f"H_norm = {fmt(red.h_norm)}",
    ]
    return "\n".join(lines)


def write_file_dumps(out_dir: Path, stem: str, a: Analysis, config: RunConfig) -> list[Path]:
    files = {}
    if config.dump_curves:
        files[f"{stem}_heaps.csv"] = render_csv(config, ("n", "v"), curve_rows(a.curve))
    if config.dump_dispersion:
        files[f"{stem}_dispersion.csv"] = render_csv(
            config, ("word", "mu", "sigma", "excluded"), dispersion_rows(a.dispersion))
    return write_outputs(out_dir, files)


def write_tokens(path: str | Path, seq: TokenSequence, width: int = 0) -> None:
    """Write tokens space-separated, optionally wrapping every ``width`` tokens."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        if width <= 0:
            f.write(" ".join(seq.tokens) + "\n")
            return
        t = seq.tokens
        for i in range(0, len(t), width):
            f.write(" ".join(t[i:i + width]) + "\n")
