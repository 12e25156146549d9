#!/usr/bin/env python3
"""Sweep the permanent-zero probability of random Bernoulli matrices
across k and compare with the 2kp^k prediction.

Writes one JSON line per (k, seed) pair; the `ratio` column should drift
toward 1 as k grows.  Example:

    python scripts/perm_zero_sweep.py --k 8 10 12 --trials 100000 -o sweep.jsonl
"""

import argparse
import json
import sys

from listpack.matrixlab import zero_permanent_prob_mc


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=[8, 10, 12])
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args()

    out = sys.stdout if args.output == "-" else open(args.output, "w")
    for k in args.k:
        predicted = 2 * k * args.p**k
        for seed in args.seeds:
            est, ci = zero_permanent_prob_mc(k, args.p, args.trials, seed)
            out.write(
                json.dumps(
                    {
                        "k": k,
                        "p": args.p,
                        "trials": args.trials,
                        "seed": seed,
                        "estimate": est,
                        "ci": ci,
                        "predicted": predicted,
                        "ratio": est / predicted,
                    },
                    sort_keys=True,
                )
                + "\n"
            )
            out.flush()
    if out is not sys.stdout:
        out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
