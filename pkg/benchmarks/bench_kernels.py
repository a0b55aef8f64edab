"""Compiled vs pure-Python kernels.

Times range-query batches on both backends and a full ``solve_tree`` run
with each kernel, and checks that the answers agree.  ``run s`` is the
query batch for range rows and the whole solve for solve rows.

    python3 benchmarks/bench_kernels.py --points 50000 --queries 20000
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction

from twocut.generators import random_graph
from twocut.rangeindex import build_grid_fanout, build_merge_tree, compiled_available
from twocut.tworespect import solve_tree


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def bench_range(points: int, queries: int, seed: int):
    rng = random.Random(seed)
    n = points
    pts = [(rng.randint(1, n), rng.randint(1, n), rng.randint(0, 100)) for _ in range(points)]
    qs = []
    for _ in range(queries):
        x1, x2 = sorted(rng.randint(1, n) for _ in range(2))
        y1, y2 = sorted(rng.randint(1, n) for _ in range(2))
        qs.append((x1, x2, y1, y2))
    builders = {
        "merge": lambda k: build_merge_tree(pts, n, kernel=k),
        "grid": lambda k: build_grid_fanout(pts, Fraction(1, 4), n, kernel=k),
    }
    rows = []
    for name, build in builders.items():
        answers = {}
        for kernel in ("python", "compiled"):
            idx, t_build = timed(lambda: build(kernel))
            answers[kernel], t_query = timed(lambda: [idx.rect_sum(*q) for q in qs])
            rows.append((f"range/{name}", kernel, t_build, t_query))
        if answers["python"] != answers["compiled"]:
            sys.exit(f"range/{name}: kernels disagree")
    return rows


def bench_solve(n: int, m: int, seed: int):
    g, tree = random_graph(n, m, 100, seed=seed, with_tree=True)
    rows = []
    for backend in ("merge", "grid"):
        results = {}
        for kernel in ("python", "compiled"):
            res, secs = timed(lambda: solve_tree(g, tree, backend=backend, kernel=kernel))
            results[kernel] = res.candidate
            rows.append((f"solve/{backend}", kernel, res.stats.build_seconds, secs))
        if results["python"] != results["compiled"]:
            sys.exit(f"solve/{backend}: kernels disagree")
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=50_000)
    ap.add_argument("--queries", type=int, default=20_000)
    ap.add_argument("--n", type=int, default=2000, help="vertices for the solve benchmark")
    ap.add_argument("--m", type=int, default=50_000, help="edges for the solve benchmark")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not compiled_available():
        sys.exit("compiled kernel not built (or TWOCUT_PURE_PYTHON is set)")

    rows = bench_range(args.points, args.queries, args.seed) + bench_solve(args.n, args.m, args.seed)
    print(f"{'workload':<14}{'kernel':<10}{'build s':>10}{'run s':>10}{'speedup':>9}")
    base = {}
    for work, kernel, t_build, t_total in rows:
        if kernel == "python":
            base[work] = t_total
            speed = ""
        else:
            speed = f"{base[work] / t_total:.1f}x" if t_total else "-"
        print(f"{work:<14}{kernel:<10}{t_build:>10.3f}{t_total:>10.3f}{speed:>9}")


if __name__ == "__main__":
    main()
