#!/usr/bin/env python3
"""Exact list-packing numbers of small paths, cycles, and cliques.

For each graph, reports the least k at which every canonical k-list
assignment packs.  Sizes beyond n = 5 or so get slow quickly — the
enumeration is exponential.

    python scripts/packing_number_scan.py --max-n 4
"""

import argparse
import json
import sys
import time

from listpack.core import Graph
from listpack.exact import BudgetExceeded, decide_chi_star_list


def families(max_n):
    for n in range(2, max_n + 1):
        yield f"P{n}", Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    for n in range(3, max_n + 1):
        yield f"C{n}", Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    for n in range(2, max_n + 1):
        yield f"K{n}", Graph.from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n)]
        )


def packing_number(g, k_max, budget):
    for k in range(1, k_max + 1):
        if decide_chi_star_list(g, k, budget=budget) is None:
            return k
    return None


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--k-max", type=int, default=5)
    ap.add_argument("--budget", type=int, default=10**7)
    args = ap.parse_args()

    for name, g in families(args.max_n):
        start = time.monotonic()
        try:
            value = packing_number(g, args.k_max, args.budget)
            note = "" if value is not None else f"> {args.k_max}"
        except BudgetExceeded:
            value, note = None, "budget exceeded"
        print(
            json.dumps(
                {
                    "graph": name,
                    "n": g.n,
                    "chi_star_list": value,
                    "note": note,
                    "seconds": round(time.monotonic() - start, 2),
                },
                sort_keys=True,
            )
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
