"""Compiled vs pure-Python flow kernels.

    python benchmarks/bench_kernels.py [--repeat R] [--quick]

Each row times one kernel call on both backends, checks the two results
are identical, and prints the speedup.
"""

from __future__ import annotations

import argparse
import sys
import timeit

from z3conn import kernels
from z3conn.families import complete, complete_bipartite, wheel
from z3conn.graph import MultiGraph

CASES = [
    # (label, graph, kernel, k, quick)
    ("sweep K6 k=3", complete(6), "sweep", 3, True),
    ("sweep K8 k=3", complete(8), "sweep", 3, False),
    ("sweep W8 k=5", wheel(8), "sweep", 5, False),
    ("gray K5 k=3", complete(5), "gray", 3, True),
    ("gray K4,4 k=3", complete_bipartite(4, 4), "gray", 3, False),
    ("orient K6", complete(6), "orient", 3, True),
    ("orient K7", complete(7), "orient", 3, False),
]


def _call(mod, G: MultiGraph, kernel: str, k: int):
    tails = [u for u, _ in G.edges]
    heads = [v for _, v in G.edges]
    if kernel == "sweep":
        return mod.sweep_boundaries(G.n, k, tails, heads)
    if kernel == "gray":
        return mod.gray_boundaries(G.n, k, tails, heads)
    return mod.orientation_boundaries(G.n, tails, heads)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small cases only")
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled extension not available; build it with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'case':<18}{'m':>4}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for label, G, kernel, k, quick in CASES:
        if args.quick and not quick:
            continue
        a = _call(kernels.python, G, kernel, k)
        b = _call(kernels.compiled, G, kernel, k)
        if bytes(a) != bytes(b):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 2
        tp = min(timeit.repeat(lambda: _call(kernels.python, G, kernel, k), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: _call(kernels.compiled, G, kernel, k), number=1, repeat=args.repeat))
        print(f"{label:<18}{G.m:>4}{tp:>12.4f}{tc:>12.5f}{tp / tc:>9.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
