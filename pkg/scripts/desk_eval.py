#!/usr/bin/env python3
"""Desk-scale downstream comparison: NoPPA vs its ablations and baselines.

With no arguments this uses the built-in synthetic lexicon and topic
corpus (2000/250/500 split), mirroring the acceptance protocol.  Point
``--vectors/--freq/--dataset`` at real files to run the same protocol on
a real task subset.
"""

import argparse
import sys

from noppa import evalkit, load_frequencies, load_vectors, synth

A_GRID = [0.01, 0.03, 0.05, 0.1]
K_GRID = [0, 5, 10, 15, 20]
SEEDS = [1034, 1314, 20220505]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--vectors", help="word-vector file (default: synthetic)")
    parser.add_argument("--freq", help="frequency file (default: synthetic)")
    parser.add_argument("--dataset", help="TSV file or split directory")
    parser.add_argument("--name", default="dataset")
    parser.add_argument("--train-limit", type=int, default=2000)
    parser.add_argument("--dev-limit", type=int, default=250)
    parser.add_argument("--test-limit", type=int, default=500)
    parser.add_argument("--log", help="run-log file (appended)")
    args = parser.parse_args()

    if args.vectors and args.freq and args.dataset:
        vectors = load_vectors(args.vectors)
        frequencies = load_frequencies(args.freq)
        dataset = evalkit.load_dataset(args.name, args.dataset)
        dataset = evalkit.subset(dataset, args.train_limit, args.dev_limit,
                                 args.test_limit)
    else:
        lex = synth.make_lexicon(seed=7, dim=50)
        vectors, frequencies = lex.vectors, lex.frequencies
        dataset = synth.make_topic_corpus(lex, seed=11, train=args.train_limit,
                                          dev=args.dev_limit, test=args.test_limit)
        print("using the synthetic topic corpus (pass --vectors/--freq/"
              "--dataset for real data)")

    print(f"{dataset.name}: {len(dataset.train)} train / {len(dataset.dev)} dev "
          f"/ {len(dataset.test)} test")
    rows = []
    for variant, a_grid, k_grid in (
            ("glove_avg", [0.05], [0]),
            ("freq_weighted_avg", A_GRID, [0]),
            ("ce_avg", [0.05], [0]),
            ("ce_avg_nr", [0.05], K_GRID),
            ("ce_sfw", A_GRID, [0]),
            ("noppa", A_GRID, K_GRID)):
        result = evalkit.grid_search(dataset, vectors, frequencies, a_grid,
                                     k_grid, seeds=SEEDS, variant=variant,
                                     log_path=args.log)
        rows.append((variant, result))
        print(f"{variant:>18}: test {result.test_mean:5.2f} "
              f"± {result.test_std:4.2f}  (dev-best a={result.best_a:g} "
              f"k={result.best_k})")

    by_name = dict(rows)
    noppa = by_name["noppa"].test_mean
    print(f"\nordering check: noppa {noppa:.2f} vs glove_avg "
          f"{by_name['glove_avg'].test_mean:.2f} "
          f"(gap {noppa - by_name['glove_avg'].test_mean:+.2f}); "
          f"vs ce_avg {by_name['ce_avg'].test_mean:.2f} "
          f"(gap {noppa - by_name['ce_avg'].test_mean:+.2f})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
