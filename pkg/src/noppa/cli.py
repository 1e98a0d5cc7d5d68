"""Command-line interface.

Subcommands: embed, fit-noise, attention, contrib, weight-curve, eval,
bench.  Exit codes: 0 ok, 1 runtime error, 2 missing input, 3 infeasible
configuration, 64 usage.  All randomness flows from ``--seed``; identical
flags and seed produce byte-identical primary output files.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import analysis, denoiser, evalkit
from .encoder import EncoderConfig
from .errors import InfeasibleConfigError, NoppaError
from .evalkit import A_RANGE, K_RANGE, VARIANTS
from .lexicon import load_frequencies, load_vectors
from .pipeline import Pipeline

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISSING_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_USAGE = 64

DATA_DIR_ENV = "NOPPA_DATA_DIR"


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve(path: str) -> str:
    """Resolve a path, falling back to $NOPPA_DATA_DIR as search root."""
    if os.path.exists(path):
        return path
    root = os.environ.get(DATA_DIR_ENV)
    if root:
        candidate = os.path.join(root, path)
        if os.path.exists(candidate):
            return candidate
    return path


def _common_flags(parser, need_freq=True):
    parser.add_argument("--vectors", required=True, help="word-vector text file")
    parser.add_argument("--freq", required=need_freq,
                        help="token<TAB>count frequency file")
    parser.add_argument("-a", type=float, default=0.05,
                        help="frequency-smoothing constant (default 0.05)")
    parser.add_argument("-k", type=int, default=0,
                        help="number of noise directions (default 0)")
    parser.add_argument("--no-positions", action="store_true",
                        help="disable positional offsets")
    parser.add_argument("--noise-model", help="noise-model file to apply")
    parser.add_argument("--seed", type=int, default=1034, help="global RNG seed")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker fan-out for per-sentence encoding")
    parser.add_argument("--out", help="output file (default stdout)")
    parser.add_argument("--unsafe-ranges", action="store_true",
                        help="allow a/k outside the documented ranges")


def _check_ranges(args):
    if args.unsafe_ranges:
        return
    if not (A_RANGE[0] <= args.a <= A_RANGE[1]):
        raise InfeasibleConfigError(
            f"a={args.a:g} outside [{A_RANGE[0]}, {A_RANGE[1]}] "
            f"(use --unsafe-ranges to override)")
    if not (K_RANGE[0] <= args.k <= K_RANGE[1]):
        raise InfeasibleConfigError(
            f"k={args.k} outside [{K_RANGE[0]}, {K_RANGE[1]}] "
            f"(use --unsafe-ranges to override)")


def _open_input(path):
    resolved = _resolve(path)
    if not os.path.exists(resolved):
        raise FileNotFoundError(f"missing input: {path}")
    return resolved


def _build_pipeline(args) -> Pipeline:
    _check_ranges(args)
    vectors = load_vectors(_open_input(args.vectors))
    frequencies = load_frequencies(_open_input(args.freq))
    noise = None
    if getattr(args, "noise_model", None):
        noise = denoiser.load(_open_input(args.noise_model))
    config = EncoderConfig(a=args.a, dim=vectors.dim,
                           use_positions=not args.no_positions, k=args.k)
    return Pipeline(vectors=vectors, frequencies=frequencies,
                    config=config, noise=noise)


def _write_out(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_sentences(path) -> list[str]:
    with open(_open_input(path), "r", encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh]


def cmd_embed(args) -> int:
    pipe = _build_pipeline(args)
    lines = _read_sentences(args.sentences)
    width = 2 * pipe.config.dim
    nan_row = ",".join(["nan"] * width)

    def one(indexed):
        idx, raw = indexed
        try:
            _, emb = pipe.embed(raw)
        except NoppaError:
            return idx, None
        return idx, emb.vector

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(one, enumerate(lines)))
    else:
        rows = [one(item) for item in enumerate(lines)]
    out = []
    for idx, vec in rows:  # ordering follows input line index
        if vec is None:
            print(f"warning: line {idx + 1} produced no embeddable tokens",
                  file=sys.stderr)
            out.append(nan_row)
        else:
            out.append(",".join(repr(float(v)) for v in vec))
    _write_out(args, "\n".join(out) + "\n")
    return EXIT_OK


def cmd_fit_noise(args) -> int:
    if not args.out:
        raise NoppaError("--out is required for fit-noise")
    pipe = _build_pipeline(args)
    lines = _read_sentences(args.sentences)
    vectors = []
    for raw in lines:
        try:
            _, emb = pipe.embed(raw, denoise=False)
        except NoppaError:
            continue
        vectors.append(emb.vector)
    if len(vectors) < max(args.k, 1):
        raise InfeasibleConfigError(
            f"k={args.k} but only {len(vectors)} sentences encoded successfully")
    model = denoiser.fit(np.stack(vectors), args.k)
    denoiser.save(model, args.out)
    return EXIT_OK


def cmd_attention(args) -> int:
    pipe = _build_pipeline(args)
    _write_out(args, analysis.attention_report(args.sentence, pipe))
    return EXIT_OK


def cmd_contrib(args) -> int:
    pipe = _build_pipeline(args)
    report = analysis.contribution_report(args.sentence, pipe,
                                          denoised=not args.pre_denoise)
    _write_out(args, analysis.contribution_csv(report, pipe))
    return EXIT_OK


def _parse_grid(text: str, cast):
    try:
        return [cast(v) for v in text.split(",") if v != ""]
    except ValueError:
        raise NoppaError(f"cannot parse grid {text!r}") from None


def cmd_weight_curve(args) -> int:
    frequencies = load_frequencies(_open_input(args.freq))
    groups = {}
    for spec in args.group:
        if "=" not in spec:
            raise NoppaError(f"--group expects NAME=tok1,tok2,... got {spec!r}")
        name, tokens = spec.split("=", 1)
        groups[name] = [t for t in tokens.split(",") if t]
    curve = analysis.weight_curve(groups, frequencies,
                                  _parse_grid(args.a_grid, float))
    _write_out(args, analysis.weight_curve_csv(curve, frequencies))
    return EXIT_OK


def cmd_eval(args) -> int:
    vectors = load_vectors(_open_input(args.vectors))
    frequencies = load_frequencies(_open_input(args.freq))
    dataset = evalkit.load_dataset(args.name, _open_input(args.dataset))
    dataset = evalkit.subset(dataset, args.train_limit, args.dev_limit,
                             args.test_limit)
    seeds = _parse_grid(args.seeds, int)
    result = evalkit.grid_search(
        dataset, vectors, frequencies,
        a_grid=_parse_grid(args.a_grid, float),
        k_grid=_parse_grid(args.k_grid, int),
        seeds=seeds, variant=args.variant,
        use_positions=not args.no_positions,
        fit_on="train+test" if args.fit_on_test else "train",
        enforce_ranges=not args.unsafe_ranges,
        log_path=args.log)
    print(f"{dataset.name} {args.variant}: best dev run a={result.best.a:g} "
          f"k={result.best.k} seed={result.best.seed} "
          f"dev={result.best.dev_accuracy:.2f} test={result.best.test_accuracy:.2f}")
    print(f"dev-best config a={result.best_a:g} k={result.best_k}: "
          f"test {result.test_mean:.1f}±{result.test_std:.2f} "
          f"over {len(seeds)} seeds")
    return EXIT_OK


def cmd_bench(args) -> int:
    vectors = load_vectors(_open_input(args.vectors))
    frequencies = load_frequencies(_open_input(args.freq))
    config = EncoderConfig(a=args.a, dim=vectors.dim,
                           use_positions=not args.no_positions, k=args.k)
    sentences = _read_sentences(args.sentences) if args.sentences else []
    noise = denoiser.load(_open_input(args.noise_model)) if args.noise_model else None
    report = evalkit.bench_throughput(
        sentences, vectors, frequencies, config,
        repetitions=args.reps, noise=noise,
        scaling_n=args.scale_n, scaling_count=args.scale_count,
        seed=args.seed)
    print(f"machine: {report.machine}")
    print(f"sentences: {report.sentence_count}")
    print(f"encode: {report.encode.mean:.4f}s ± {report.encode.stderr:.4f}s "
          f"over {len(report.encode.times)} reps")
    print(f"encode+denoise: {report.encode_denoise_mean:.4f}s "
          f"± {report.encode_denoise_stderr:.4f}s")
    if report.scaling is not None:
        s = report.scaling
        print(f"scaling probe (n={s.n} vs {2 * s.n}, {s.count} sentences): "
              f"encode {s.encode_short.best:.4f}s -> {s.encode_long.best:.4f}s "
              f"(ratio {s.encode_ratio:.2f}); "
              f"denoise {s.denoise_short.mean * 1e3:.3f}ms -> "
              f"{s.denoise_long.mean * 1e3:.3f}ms (ratio {s.denoise_ratio:.2f})")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="noppa",
                     description="Non-parametric sentence embeddings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", parents=[], help="embed a sentences file to CSV")
    _common_flags(p)
    p.add_argument("sentences", help="input file, one sentence per line")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("fit-noise", help="fit and save a noise model")
    _common_flags(p)
    p.add_argument("sentences", help="training sentences, one per line")
    p.set_defaults(func=cmd_fit_noise)

    p = sub.add_parser("attention", help="attention matrix CSV for one sentence")
    _common_flags(p)
    p.add_argument("sentence")
    p.set_defaults(func=cmd_attention)

    p = sub.add_parser("contrib", help="per-word contribution scores CSV")
    _common_flags(p)
    p.add_argument("sentence")
    p.add_argument("--pre-denoise", action="store_true",
                   help="score against the embedding before noise removal")
    p.set_defaults(func=cmd_contrib)

    p = sub.add_parser("weight-curve", help="weight-vs-a curves CSV")
    p.add_argument("--freq", required=True)
    p.add_argument("--group", action="append", required=True,
                   help="NAME=tok1,tok2,... (repeatable)")
    p.add_argument("--a-grid", default="1,0.1,0.01,0.001")
    p.add_argument("--out")
    p.set_defaults(func=cmd_weight_curve)

    p = sub.add_parser("eval", help="grid-search evaluation on a dataset")
    _common_flags(p)
    p.add_argument("dataset", help="TSV file or split directory")
    p.add_argument("--name", default="dataset")
    p.add_argument("--variant", choices=VARIANTS, default="noppa")
    p.add_argument("--a-grid", default="0.01,0.03,0.05,0.1")
    p.add_argument("--k-grid", default="0,5,10,15,20")
    p.add_argument("--seeds", default="1034")
    p.add_argument("--train-limit", type=int)
    p.add_argument("--dev-limit", type=int)
    p.add_argument("--test-limit", type=int)
    p.add_argument("--fit-on-test", action="store_true",
                   help="fit the noise model on train+test sentences")
    p.add_argument("--log", help="run-log file (appended)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="throughput and scaling benchmark")
    _common_flags(p)
    p.add_argument("--sentences", help="sentences file to time end-to-end")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--scale-n", type=int,
                   help="run the length-scaling probe at n and 2n")
    p.add_argument("--scale-count", type=int, default=1000)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    except InfeasibleConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NoppaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
