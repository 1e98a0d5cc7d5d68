#!/usr/bin/env python3
"""Length-scaling benchmark: encode time at n vs 2n plus denoise timing.

The encode pass is dominated by the pairwise log-kernel, whose work grows
with n^2 * d, so doubling the sentence length should roughly quadruple the
encode time while leaving the per-sentence denoise cost unchanged.
"""

import argparse
import os
import sys

# single-core protocol: spinning BLAS workers distort elementwise timings
for _var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS",
             "NUMEXPR_NUM_THREADS"):
    os.environ.setdefault(_var, "1")

import numpy as np

from noppa import EncoderConfig, FrequencyTable, VectorTable, evalkit


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dim", type=int, default=300)
    parser.add_argument("--vocab", type=int, default=500)
    parser.add_argument("--scale-n", type=int, default=64)
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--reps", type=int, default=3)
    parser.add_argument("-k", type=int, default=10)
    parser.add_argument("--seed", type=int, default=5001)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    entries = {f"v{i:04d}": rng.standard_normal(args.dim).astype(np.float32)
               for i in range(args.vocab)}
    vectors = VectorTable.from_mapping(entries)
    frequencies = FrequencyTable.from_counts(
        {t: int(rng.integers(1, 10000)) for t in entries})
    config = EncoderConfig(a=0.05, dim=args.dim, k=args.k)

    report = evalkit.bench_throughput([], vectors, frequencies, config,
                                      repetitions=args.reps,
                                      scaling_n=args.scale_n,
                                      scaling_count=args.count,
                                      seed=args.seed)
    s = report.scaling
    print(f"machine: {report.machine}")
    print(f"{args.count} synthetic sentences per length, best of {args.reps} reps")
    print(f"encode  n={s.n:4d}: {s.encode_short.best:7.3f}s "
          f"(mean {s.encode_short.mean:.3f} ± {s.encode_short.stderr:.3f})")
    print(f"encode  n={2 * s.n:4d}: {s.encode_long.best:7.3f}s "
          f"(mean {s.encode_long.mean:.3f} ± {s.encode_long.stderr:.3f})")
    print(f"encode ratio: {s.encode_ratio:.2f} (n^2 scaling predicts ~4)")
    print(f"denoise n={s.n:4d}: {s.denoise_short.mean * 1e3:7.3f}ms per pass")
    print(f"denoise n={2 * s.n:4d}: {s.denoise_long.mean * 1e3:7.3f}ms per pass")
    print(f"denoise ratio: {s.denoise_ratio:.2f} (length-independent predicts 1)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
