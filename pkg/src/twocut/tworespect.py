"""Minimum cut that 2-respects a spanning tree.

Three kinds of candidate are compared:

* single tree edges (the subtree boundary ``w(T_e)``),
* two edges on one heavy path, found with a staircase Monge search,
* two edges on different heavy paths, restricted to *interesting* path
  pairs and solved per pair with SMAWK.

An edge pair that is not mutually interested never beats its best single
edge, so the pruning loses nothing.  Interest frontiers are found by walking
the centroid decomposition of the binarized tree.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .graph import Graph, StructureError
from .monge import ImplicitMatrix, monge_global_min, staircase_monge_min
from .oracle import CutOracle, build_cut_oracle
from .tree import (
    CentroidDecomposition,
    HeavyPathDecomposition,
    RootedTree,
    binarize,
    centroid_decompose,
    heavy_path_decompose,
    root_tree,
)


@dataclass(frozen=True)
class CutCandidate:
    edges: tuple
    value: object

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @property
    def sort_key(self):
        return (self.value, len(self.edges), self.edges)


def best_candidate(cands: Iterable[Optional[CutCandidate]]) -> Optional[CutCandidate]:
    best = None
    for c in cands:
        if c is not None and (best is None or c.sort_key < best.sort_key):
            best = c
    return best


@dataclass
class SolveStats:
    oracle_queries: int = 0
    frontier_queries: int = 0
    same_path_evaluations: int = 0
    smawk_calls: int = 0
    smawk_evaluations: int = 0
    smawk_worst_ratio: float = 0.0
    pair_count: int = 0
    pair_list_total: int = 0
    range_queries: int = 0
    range_nodes_visited: int = 0
    build_seconds: float = 0.0
    solve_seconds: float = 0.0

    def merge(self, other: "SolveStats") -> None:
        for name in self.__dataclass_fields__:
            a, b = getattr(self, name), getattr(other, name)
            setattr(self, name, max(a, b) if name == "smawk_worst_ratio" else a + b)


# ------------------------------------------------------------ same path

def _pair(oracle: CutOracle, u: int, v: int, value) -> CutCandidate:
    pe = oracle.tree.parent_edge
    return CutCandidate((pe[u], pe[v]), value)


def same_path_min(path: list, oracle: CutOracle, stats: Optional[SolveStats] = None) -> Optional[CutCandidate]:
    """Best pair of distinct edges on one heavy path (given by lower
    endpoints, top to bottom)."""
    L = len(path)
    if L < 2:
        return None
    cut = oracle.cut_lower
    m = ImplicitMatrix(L, L, lambda i, j: cut(path[i], path[j]))
    i, j, v = staircase_monge_min(m)
    if stats is not None:
        stats.same_path_evaluations += m.evaluations
    return _pair(oracle, path[i], path[j], v)


# ------------------------------------------------------------ frontiers

@dataclass
class InterestFrontier:
    """Per lower endpoint ``u`` of a tree edge:

    ``cross[u]``  lower endpoint of the deepest edge independent of the edge
                  that it is cross-interested in, or the parent of ``u`` when
                  there is none (only ancestors remain, by convention);
    ``down[u]``   lower endpoint of the deepest descendant edge it is
                  down-interested in, or ``u`` itself when there is none.

    The root-to-frontier paths cover every edge the edge is interested in.
    Entries for the root are -1.
    """

    tree: RootedTree
    cross: list
    down: list


def _descend(cd: CentroidDecomposition, pred) -> int:
    """Deepest node of the root-anchored path of binarized edges (named by
    lower node) on which ``pred`` holds."""
    b = cd.tree
    level = cd.level
    nxt = cd.next_centroid
    c = cd.top
    while True:
        lc = level[c]
        p = b.parent[c]
        if p >= 0 and level[p] > lc and not pred(c):
            c = nxt[c][p]
            continue
        for ch in b.children[c]:
            if level[ch] > lc and pred(ch):
                c = nxt[c][ch]
                break
        else:
            return c


def compute_interest_frontiers(oracle: CutOracle, cd: CentroidDecomposition,
                               stats: Optional[SolveStats] = None) -> InterestFrontier:
    t = oracle.tree
    b = cd.tree
    lo, hi, owner = b.lo, b.hi, b.owner
    cross = [-1] * t.n
    down = [-1] * t.n
    before = oracle.queries
    for u in range(t.n):
        if u == t.root:
            continue
        tip = owner[_descend(cd, lambda x: oracle.cross_reach(u, lo[x], hi[x]))]
        if t.is_ancestor(tip, u) or t.is_ancestor(u, tip):
            tip = t.parent[u]
        cross[u] = tip
        down[u] = owner[_descend(cd, lambda x: oracle.down_reach(u, lo[x], hi[x]))]
    if stats is not None:
        stats.frontier_queries += oracle.queries - before
    return InterestFrontier(tree=t, cross=cross, down=down)


# ------------------------------------------------------------ path pairs

@dataclass
class InterestingPair:
    p: int
    q: int
    p_edges: list    # lower endpoints on path p interested in q, top to bottom
    q_edges: list


def build_interesting_pairs(frontiers: InterestFrontier, hpd: HeavyPathDecomposition) -> list[InterestingPair]:
    t = frontiers.tree
    interest: dict[int, dict[int, list]] = {}
    for u in range(t.n):
        if u == t.root:
            continue
        own = hpd.path_of[u][0]
        targets = set()
        for x in (frontiers.cross[u], frontiers.down[u]):
            for pid, _ in hpd.root_path_prefixes(t, x):
                if pid != own:
                    targets.add(pid)
        lists = interest.setdefault(own, {})
        for pid in targets:
            lists.setdefault(pid, []).append(u)
    idx = lambda v: hpd.path_of[v][1]
    pairs = []
    for p in sorted(interest):
        for q in sorted(interest[p]):
            if p < q and p in interest.get(q, {}):
                pairs.append(InterestingPair(
                    p, q, sorted(interest[p][q], key=idx), sorted(interest[q][p], key=idx)))
    return pairs


def pair_blocks(pair: InterestingPair, t: RootedTree, hpd: HeavyPathDecomposition) -> list[tuple[list, list]]:
    """Split an interesting pair into Monge blocks ``(rows, cols)`` of lower
    endpoints.

    Rows are the edges of the lower path, deepest first.  Columns are the
    other path's edges that are ancestors of all rows (deepest first) or
    independent of all rows (shallowest first).
    """
    a, b = pair.p, pair.q
    a_list, b_list = pair.p_edges, pair.q_edges
    if t.is_ancestor(hpd.paths[a][0], hpd.paths[b][0]):
        a_list, b_list = b_list, a_list
    rows = a_list[::-1]
    top = a_list[0]
    anc = [f for f in b_list if f != top and t.is_ancestor(f, top)]
    ind = [f for f in b_list if not (f != top and t.is_ancestor(f, top))]
    blocks = []
    if anc:
        blocks.append((rows, anc[::-1]))
    if ind:
        blocks.append((rows, ind))
    return blocks


def cross_path_min(pairs: list[InterestingPair], oracle: CutOracle, hpd: HeavyPathDecomposition,
                   stats: Optional[SolveStats] = None) -> Optional[CutCandidate]:
    cut = oracle.cut_lower
    best = None
    for pair in pairs:
        if stats is not None:
            stats.pair_count += 1
            stats.pair_list_total += len(pair.p_edges) + len(pair.q_edges)
        for rows, cols in pair_blocks(pair, oracle.tree, hpd):
            m = ImplicitMatrix(len(rows), len(cols), lambda i, j, r=rows, c=cols: cut(r[i], c[j]))
            i, j, v = monge_global_min(m, inverse=True)
            if stats is not None:
                stats.smawk_calls += 1
                stats.smawk_evaluations += m.evaluations
                stats.smawk_worst_ratio = max(stats.smawk_worst_ratio, m.evaluations / (m.rows + m.cols))
            best = best_candidate([best, _pair(oracle, rows[i], cols[j], v)])
    return best


# ------------------------------------------------------------ driver

@dataclass
class TreeSolution:
    candidate: CutCandidate
    tree: RootedTree
    stats: SolveStats = field(default_factory=SolveStats)


def one_respect_min(oracle: CutOracle) -> Optional[CutCandidate]:
    """Tree edge with the lightest subtree boundary; ties by edge id."""
    t = oracle.tree
    best = None
    for u in range(t.n):
        if u == t.root:
            continue
        c = CutCandidate((t.parent_edge[u],), t.down_weight[u])
        if best is None or c.sort_key < best.sort_key:
            best = c
    return best


def solve_tree(g: Graph, tree_edges: Iterable[int], backend: str = "merge", epsilon=Fraction(1, 4),
               kernel: str = "auto") -> TreeSolution:
    if g.n < 2:
        raise StructureError("a cut needs at least two vertices")
    stats = SolveStats()
    t0 = time.perf_counter()
    t = root_tree(g, tree_edges, 0)
    oracle = build_cut_oracle(g, t, backend=backend, epsilon=epsilon, kernel=kernel)
    t1 = time.perf_counter()
    hpd = heavy_path_decompose(t)
    cands = [one_respect_min(oracle)]
    for path in hpd.paths:
        cands.append(same_path_min(path, oracle, stats))
    cd = centroid_decompose(binarize(t))
    frontiers = compute_interest_frontiers(oracle, cd, stats)
    pairs = build_interesting_pairs(frontiers, hpd)
    cands.append(cross_path_min(pairs, oracle, hpd, stats))
    best = best_candidate(cands)
    t2 = time.perf_counter()
    rs = oracle.index.stats
    stats.oracle_queries = oracle.queries
    stats.range_queries = rs.queries
    stats.range_nodes_visited = rs.nodes_visited
    stats.build_seconds = t1 - t0
    stats.solve_seconds = t2 - t1
    return TreeSolution(candidate=best, tree=t, stats=stats)


def two_respect_min(g: Graph, tree_edges: Iterable[int], backend: str = "merge", epsilon=Fraction(1, 4),
                    kernel: str = "auto") -> CutCandidate:
    return solve_tree(g, tree_edges, backend=backend, epsilon=epsilon, kernel=kernel).candidate
