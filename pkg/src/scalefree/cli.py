"""Command line interface: ``scalefree {run,file,synth,shuffle}``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import sys
from pathlib import Path

from .errors import ScaleFreeError
from .ingest import DEFAULT_CHUNK_SIZE, NormalizeOptions, read_document
from .oracle import SyntheticSpec, generate, shuffle
from .report import (
    OUTPUT_DIR_ENV,
    RunConfig,
    analyze_file,
    format_analysis,
    resolve_output_dir,
    run_pipeline,
    write_file_dumps,
    write_tokens,
)
from .taylor import DEFAULT_SEGMENT_SIZE

log = logging.getLogger("scalefree")


def _add_text_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--keep-punctuation", action="store_true",
                   help="keep punctuation characters attached to tokens")
    p.add_argument("--no-case-fold", action="store_true", help="do not lowercase")


def _add_metric_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--segment-size", type=int, default=DEFAULT_SEGMENT_SIZE,
                   help="tokens per segment for Taylor's law (default %(default)s)")
    p.add_argument("--samples-per-decade", type=int, default=20,
                   help="growth-curve sampling density (default %(default)s)")
    p.add_argument("--min-n", type=int, default=100,
                   help="smallest N used in the Heaps fit (default %(default)s)")
    p.add_argument("--dump-curves", action="store_true", help="write (n, v) growth curves as CSV")
    p.add_argument("--dump-dispersion", action="store_true",
                   help="write per-word (mu, sigma) as CSV")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scalefree",
        description="Heaps/Taylor exponents, compression rate and entropy of text corpora.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="analyze every category of a manifest")
    run.add_argument("manifest", nargs="?", help="JSON corpus manifest")
    run.add_argument("--from-header", metavar="CSV",
                     help="rerun with the configuration embedded in an output file")
    run.add_argument("-o", "--output", help=f"output directory (env {OUTPUT_DIR_ENV})")
    run.add_argument("--chunk-size", type=int, default=DEFAULT_CHUNK_SIZE,
                     help="tokens per chunk (default %(default)s)")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--shuffle-baseline", action="store_true",
                     help="also analyze a shuffled copy of every chunk")
    run.add_argument("-j", "--jobs", type=int, default=1, help="worker processes")
    _add_text_options(run)
    _add_metric_options(run)

    f = sub.add_parser("file", help="analyze a single plain-text document")
    f.add_argument("path")
    f.add_argument("--raw-compression", action="store_true",
                   help="compress the raw file bytes instead of the normalized tokens")
    f.add_argument("-o", "--output", help="directory for --dump-* files (default: cwd)")
    _add_text_options(f)
    _add_metric_options(f)

    s = sub.add_parser("synth", help="write an i.i.d. Zipf token stream")
    s.add_argument("--vocab", type=int, required=True)
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--exponent", type=float, default=0.0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--width", type=int, default=20, help="tokens per output line")
    s.add_argument("-o", "--output", required=True)

    sh = sub.add_parser("shuffle", help="write a token-shuffled copy of a document")
    sh.add_argument("path")
    sh.add_argument("--seed", type=int, default=0)
    sh.add_argument("--width", type=int, default=20, help="tokens per output line")
    sh.add_argument("-o", "--output", required=True)
    _add_text_options(sh)
    return parser


def _metric_fields(args) -> dict:
    return dict(
        segment_size=args.segment_size,
        samples_per_decade=args.samples_per_decade,
        min_n=args.min_n,
        case_fold=not args.no_case_fold,
        strip_punctuation=not args.keep_punctuation,
        dump_curves=args.dump_curves,
        dump_dispersion=args.dump_dispersion,
    )


def cmd_run(args) -> int:
    if args.from_header:
        config = RunConfig.from_header(args.from_header)
        if args.output:
            config = dataclasses.replace(config, output_dir=args.output)
    else:
        if not args.manifest:
            raise SystemExit("scalefree run: a manifest (or --from-header) is required")
        config = RunConfig(
            manifest=args.manifest,
            chunk_size=args.chunk_size,
            seed=args.seed,
            shuffle_baseline=args.shuffle_baseline,
            jobs=args.jobs,
            output_dir=args.output or RunConfig.output_dir,
            **_metric_fields(args),
        )
        if not args.output:
            config = resolve_output_dir(config)
    written = run_pipeline(config)
    for p in written:
        print(p)
    return 0


def cmd_file(args) -> int:
    config = RunConfig(raw_compression=args.raw_compression, **_metric_fields(args))
    a = analyze_file(args.path, config)
    print(format_analysis(args.path, a, config))
    if config.dump_curves or config.dump_dispersion:
        out = Path(args.output or os.getcwd())
        for p in write_file_dumps(out, Path(args.path).stem, a, config):
            print(p)
    return 0


def cmd_synth(args) -> int:
    seq = generate(SyntheticSpec(vocab_size=args.vocab, length=args.length,
                                 zipf_exponent=args.exponent, seed=args.seed))
    write_tokens(args.output, seq, args.width)
    print(f"{args.output}: {len(seq)} tokens, {seq.n_types} types")
    return 0


def cmd_shuffle(args) -> int:
    opts = NormalizeOptions(case_fold=not args.no_case_fold,
                            strip_punctuation=not args.keep_punctuation)
    seq = shuffle(read_document(args.path, opts), args.seed)
    write_tokens(args.output, seq, args.width)
    print(f"{args.output}: {len(seq)} tokens")
    return 0


COMMANDS = {"run": cmd_run, "file": cmd_file, "synth": cmd_synth, "shuffle": cmd_shuffle}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ScaleFreeError, ValueError, OSError) as e:
        print(f"scalefree {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
