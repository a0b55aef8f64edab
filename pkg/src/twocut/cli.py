"""``twocut`` command-line frontend.

Exit codes: 0 success, 1 usage, 2 parse error, 3 structural error,
4 verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import generators
from .graph import Graph, GraphError, ParseError, StructureError, parse_graph, parse_trees, serialize_graph
from .pipeline import (
    CutResult,
    PackingConfig,
    brute_force_two_respect,
    extract_partition,
    greedy_tree_packing,
    min_cut,
    stoer_wagner,
)
from .rangeindex import compiled_available
from .tworespect import SolveStats, solve_tree

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_STRUCT, EXIT_MISMATCH = 0, 1, 2, 3, 4
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class _Help(argparse.HelpFormatter):
    """Append meaningful defaults to every option's help line."""

    def _get_help_string(self, action):
        text = action.help or ""
        if "(default" in text or any(action.default is d for d in (None, False, argparse.SUPPRESS)) or not action.option_strings:
            return text
        return f"{text} (default: %(default)s)".lstrip()


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("formatter_class", _Help)
        super().__init__(*args, **kwargs)

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _epsilon(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < eps <= Fraction(1, 2):
        raise argparse.ArgumentTypeError("epsilon must lie in (0, 1/2]")
    return eps


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _seed(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _solver_flags(p: argparse.ArgumentParser, with_format: bool = True) -> None:
    p.add_argument("--backend", choices=["merge", "grid"], default="merge",
                   help="range-counting backend")
    p.add_argument("--epsilon", type=_epsilon, default=Fraction(1, 4),
                   help="grid fan-out exponent in (0, 1/2]")
    p.add_argument("--kernel", choices=["auto", "python", "compiled"], default="auto",
                   help="range-query kernel")
    if with_format:
        p.add_argument("--format", choices=["text", "json"], default="text", help="report format")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="twocut", description="Exact minimum cuts through 2-respecting spanning trees.")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("mincut", help="global minimum cut of a graph file")
    p.add_argument("graph", help="graph file ('-' for standard input)")
    _solver_flags(p)
    p.add_argument("--trees", type=_positive, default=None, help="number of packed trees (default: ceil(log2 n)^2)")
    p.add_argument("--tree-file", default=None, help="use these spanning trees instead of packing")
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="64-bit seed")
    p.add_argument("--threads", type=_positive, default=1, help="trees solved in parallel")
    p.add_argument("--oracle", action="store_true", help="also run Stoer-Wagner and require agreement")

    p = sub.add_parser("tworespect", help="minimum cut 2-respecting one given tree")
    p.add_argument("graph")
    p.add_argument("tree", help="tree file: one line of n-1 edge ids per tree")
    p.add_argument("--row", type=int, default=0, help="tree row to use")
    _solver_flags(p)
    p.add_argument("--oracle", action="store_true", help="also run the brute-force oracle and require agreement")

    p = sub.add_parser("verify", help="check a corpus directory against both oracles")
    p.add_argument("directory")
    _solver_flags(p, with_format=False)
    p.add_argument("--trees", type=_positive, default=None,
                   help="packed trees for files without a .tree companion (default: ceil(log2 n)^2)")
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="64-bit seed")

    p = sub.add_parser("gen", help="write a generated instance to standard output")
    p.add_argument("family", choices=["random", "planted", "dumbbell", "cycle", "grid"])
    p.add_argument("n", type=_positive)
    p.add_argument("m", type=int, nargs="?", default=None, help="edge count (random, planted)")
    p.add_argument("--weight-bound", type=_positive, default=100, help="weights drawn from [1, W]")
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="64-bit seed")
    p.add_argument("--cut-weight", type=_positive, default=3, help="planted cut weight")
    p.add_argument("--side-size", type=_positive, default=None, help="planted side size (default: n // 2)")
    p.add_argument("--cols", type=_positive, default=None, help="grid width (default: floor(sqrt n))")
    p.add_argument("--tree-out", default=None, help="planted: write the companion tree file here")
    p.add_argument("--side-out", default=None, help="planted: write the planted side bitstring here")

    p = sub.add_parser("bench", help="counters and timings per backend")
    p.add_argument("graphs", nargs="*", help="graph files")
    p.add_argument("--backend", choices=["merge", "grid", "both"], default="both", help="backends to run")
    p.add_argument("--epsilon", type=_epsilon, default=Fraction(1, 4), help="grid fan-out exponent in (0, 1/2]")
    p.add_argument("--kernel", choices=["auto", "python", "compiled"], default="auto", help="range-query kernel")
    p.add_argument("--trees", type=_positive, default=1, help="packed trees per file")
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="64-bit seed")
    p.add_argument("--assert-budgets", action="store_true",
                   help="fail unless SMAWK evaluations <= 8 * sum(|P'|+|Q'|)")
    p.add_argument("--scaling", action="store_true", help="time random instances at m=1e5 and m=4e5")
    p.add_argument("--scaling-n", type=_positive, default=2000, help="vertex count for --scaling")
    p.add_argument("--format", choices=["text", "json"], default="text", help="report format")
    return ap


# ------------------------------------------------------------ helpers

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_graph(path: str) -> Graph:
    return parse_graph(_read_text(path))


def _stats_dict(s: Optional[SolveStats], timings: bool = False) -> dict:
    """Counters only by default, so reports stay byte-for-byte reproducible."""
    if s is None:
        return {}
    out = {}
    for name in s.__dataclass_fields__:
        if name.endswith("_seconds") and not timings:
            continue
        v = getattr(s, name)
        out[name] = round(v, 6) if isinstance(v, float) else v
    return out


def _emit(args, result: CutResult, stats: Optional[SolveStats], extra: dict, out) -> None:
    edges = list(result.candidate.edges) if result.candidate else []
    if args.format == "json":
        rec = {"value": str(result.value), "side": result.bitstring, "edges": edges,
               "tree": result.tree_index, "stats": _stats_dict(stats)}
        rec.update({k: str(v) if k in ("oracle",) else v for k, v in extra.items()})
        out.write(json.dumps(rec, sort_keys=False) + "\n")
        return
    out.write(f"value {result.value}\n")
    out.write(f"side {result.bitstring}\n")
    out.write(f"edges {' '.join(map(str, edges))}\n")
    if result.tree_index is not None:
        out.write(f"tree {result.tree_index}\n")
    for k, v in extra.items():
        out.write(f"{k} {v}\n")


def _config(args) -> PackingConfig:
    return PackingConfig(tree_count=getattr(args, "trees", None), seed=getattr(args, "seed", DEFAULT_SEED),
                         backend=args.backend, epsilon=args.epsilon, kernel=args.kernel,
                         threads=getattr(args, "threads", 1))


def _check_kernel(args) -> None:
    if args.kernel == "compiled" and not compiled_available():
        raise UsageError("compiled kernel requested but the extension is not built")


# ------------------------------------------------------------ commands

def run_mincut(args, out) -> int:
    g = _load_graph(args.graph)
    trees = None
    if args.tree_file:
        trees = parse_trees(_read_text(args.tree_file), g.m)
    stats = SolveStats()
    res = min_cut(g, _config(args), trees=trees, stats=stats)
    extra = {"seed": args.seed}
    status = EXIT_OK
    if args.oracle:
        ref = stoer_wagner(g)
        extra["oracle"] = ref.value
        extra["match"] = "yes" if ref.value == res.value else "no"
        if ref.value != res.value:
            status = EXIT_MISMATCH
    _emit(args, res, stats, extra, out)
    return status


def run_tworespect(args, out) -> int:
    g = _load_graph(args.graph)
    trees = parse_trees(_read_text(args.tree), g.m)
    if not 0 <= args.row < len(trees):
        raise UsageError(f"tree file has {len(trees)} row(s); --row {args.row} is out of range")
    sol = solve_tree(g, trees[args.row], backend=args.backend, epsilon=args.epsilon, kernel=args.kernel)
    cand = sol.candidate
    res = CutResult(cand.value, extract_partition(sol.tree, cand), cand, args.row)
    extra = {}
    status = EXIT_OK
    if args.oracle:
        ref = brute_force_two_respect(g, trees[args.row])
        extra["oracle"] = ref.value
        extra["match"] = "yes" if ref.value == cand.value else "no"
        if ref.value != cand.value:
            status = EXIT_MISMATCH
    _emit(args, res, sol.stats, extra, out)
    return status


def run_verify(args, out) -> int:
    root = Path(args.directory)
    if not root.is_dir():
        raise UsageError(f"not a directory: {args.directory}")
    files = sorted(p for p in root.iterdir() if p.is_file() and p.suffix == ".gr")
    cfg = _config(args)
    header = f"{'file':<28} {'n':>5} {'m':>6} {'trees':>5} {'tree_ok':>7} {'mincut':>12} {'sw':>12} {'eq':>3}"
    out.write(header + "\n")
    tree_total = tree_ok = inst = inst_eq = errors = 0
    for path in files:
        try:
            g = parse_graph(path.read_text())
            companion = path.with_suffix(".tree")
            if companion.exists():
                trees = parse_trees(companion.read_text(), g.m)
            else:
                trees = greedy_tree_packing(g, cfg)
            ok = 0
            for tr in trees:
                got = solve_tree(g, tr, backend=cfg.backend, epsilon=cfg.epsilon, kernel=cfg.kernel).candidate
                ok += got.value == brute_force_two_respect(g, tr).value
            res = min_cut(g, cfg, trees=trees)
            ref = stoer_wagner(g)
        except (GraphError, OSError, ValueError) as exc:
            errors += 1
            out.write(f"{path.name:<28} ERROR {type(exc).__name__}: {exc}\n")
            continue
        tree_total += len(trees)
        tree_ok += ok
        inst += 1
        eq = res.value == ref.value
        inst_eq += eq
        out.write(f"{path.name:<28} {g.n:>5} {g.m:>6} {len(trees):>5} {ok:>3}/{len(trees):<3} "
                  f"{str(res.value):>12} {str(ref.value):>12} {'yes' if eq else 'no':>3}\n")

    def rate(a, b):
        return f"{100.0 * a / b:.1f}%" if b else "n/a"

    out.write(f"instances {inst}  errors {errors}\n")
    out.write(f"per-tree match {tree_ok}/{tree_total} ({rate(tree_ok, tree_total)})\n")
    out.write(f"mincut = stoer-wagner {inst_eq}/{inst} ({rate(inst_eq, inst)})\n")
    return EXIT_MISMATCH if tree_ok != tree_total else EXIT_OK


def run_gen(args, out) -> int:
    fam, n, m = args.family, args.n, args.m
    if fam != "planted" and (args.tree_out or args.side_out):
        raise UsageError("--tree-out and --side-out apply to the planted family only")
    try:
        if fam == "random":
            g = generators.random_graph(n, m if m is not None else 2 * n, args.weight_bound, args.seed)
            comment = f"random n={n} m={g.m} W={args.weight_bound} seed={args.seed}"
        elif fam == "planted":
            side_size = args.side_size if args.side_size is not None else max(1, n // 2)
            inst = generators.planted(n, args.cut_weight, side_size, m, args.weight_bound, args.seed)
            g = inst.graph
            comment = f"planted n={n} cut={args.cut_weight} side={side_size} seed={args.seed}"
            if args.tree_out:
                Path(args.tree_out).write_text(" ".join(map(str, inst.tree)) + "\n")
            if args.side_out:
                Path(args.side_out).write_text("".join("1" if b else "0" for b in inst.side) + "\n")
        elif fam == "dumbbell":
            g = generators.dumbbell(n)
            comment = f"dumbbell n={n}"
        elif fam == "cycle":
            g = generators.cycle(n)
            comment = f"cycle n={n}"
        else:
            g = generators.grid(n, args.cols, args.weight_bound, args.seed)
            comment = f"grid n={n} W={args.weight_bound} seed={args.seed}"
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(serialize_graph(g, [comment]))
    return EXIT_OK


def _bench_one(g: Graph, tree, backend: str, args) -> dict:
    t0 = time.perf_counter()
    sol = solve_tree(g, tree, backend=backend, epsilon=args.epsilon, kernel=args.kernel)
    wall = time.perf_counter() - t0
    rec = {"backend": backend, "wall_seconds": round(wall, 4), "value": str(sol.candidate.value)}
    rec.update(_stats_dict(sol.stats, timings=True))
    return rec


def run_bench(args, out) -> int:
    if not args.graphs and not args.scaling:
        raise UsageError("give graph files, --scaling, or both")
    backends = ["merge", "grid"] if args.backend == "both" else [args.backend]
    cfg = PackingConfig(tree_count=args.trees, seed=args.seed, epsilon=args.epsilon, kernel=args.kernel)
    records, status = [], EXIT_OK
    for path in args.graphs:
        g = _load_graph(path)
        for ti, tree in enumerate(greedy_tree_packing(g, cfg)):
            for backend in backends:
                rec = {"file": path, "tree": ti, "n": g.n, "m": g.m}
                rec.update(_bench_one(g, tree, backend, args))
                budget = 8 * rec["pair_list_total"]
                rec["smawk_budget"] = budget
                rec["budget_ok"] = rec["smawk_evaluations"] <= budget
                if args.assert_budgets and not rec["budget_ok"]:
                    status = EXIT_MISMATCH
                records.append(rec)
    scaling = None
    if args.scaling:
        times = {}
        for m in (100_000, 400_000):
            g, tree = generators.random_graph(args.scaling_n, m, 100, args.seed, with_tree=True)
            best = min(_bench_one(g, tree, backends[0], args)["wall_seconds"] for _ in range(2))
            times[m] = best
        scaling = {"n": args.scaling_n, "seconds_m1e5": times[100_000], "seconds_m4e5": times[400_000],
                   "ratio": round(times[400_000] / times[100_000], 3) if times[100_000] else None}
    if args.format == "json":
        out.write(json.dumps({"runs": records, "scaling": scaling}) + "\n")
        return status
    cols = ["file", "tree", "backend", "n", "m", "wall_seconds", "oracle_queries", "frontier_queries",
            "smawk_evaluations", "smawk_budget", "range_queries", "range_nodes_visited"]
    if records:
        out.write("  ".join(cols) + "\n")
        for rec in records:
            out.write("  ".join(str(rec[c]) for c in cols) + ("" if rec["budget_ok"] else "  OVER-BUDGET") + "\n")
    if scaling:
        out.write(f"scaling n={scaling['n']}: m=1e5 {scaling['seconds_m1e5']}s, m=4e5 {scaling['seconds_m4e5']}s, "
                  f"ratio {scaling['ratio']}\n")
    return status


COMMANDS = {"mincut": run_mincut, "tworespect": run_tworespect, "verify": run_verify, "gen": run_gen,
            "bench": run_bench}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if hasattr(args, "kernel"):
            _check_kernel(args)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"twocut: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"twocut: parse error: {exc}\n")
        return EXIT_PARSE
    except (StructureError, GraphError) as exc:
        err.write(f"twocut: structural error: {exc}\n")
        return EXIT_STRUCT
    except OSError as exc:
        err.write(f"twocut: {exc}\n")
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
