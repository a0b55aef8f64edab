"""End-to-end global minimum cut plus the two reference oracles.

``min_cut`` packs spanning trees greedily, solves the 2-respecting problem
on each and keeps the best.  The packing is a load-balancing heuristic, not
Karger's guaranteed construction, so the answer is always a real cut but is
only optimal when some packed tree crosses a minimum cut at most twice.
"""
from __future__ import annotations

import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .graph import Graph, StructureError, components
from .tworespect import CutCandidate, SolveStats, TreeSolution, one_respect_min, solve_tree
from .tree import RootedTree

__all__ = [
    "CutResult", "PackingConfig", "brute_force_two_respect", "default_tree_count", "extract_partition",
    "greedy_tree_packing", "min_cut", "one_respect_min", "stoer_wagner",
]


@dataclass(frozen=True)
class CutResult:
    value: object
    side: tuple                       # side[v] is True for v in S
    candidate: Optional[CutCandidate] = None
    tree_index: Optional[int] = None

    @property
    def bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self.side)

    @property
    def members(self) -> list[int]:
        return [v for v, b in enumerate(self.side) if b]


@dataclass
class PackingConfig:
    tree_count: Optional[int] = None   # None: ceil(log2 n) ** 2
    seed: int = 0
    backend: str = "merge"
    epsilon: object = Fraction(1, 4)
    kernel: str = "auto"
    threads: int = 1

    def trees_for(self, n: int) -> int:
        if self.tree_count is not None:
            if self.tree_count < 1:
                raise ValueError("tree_count must be at least 1")
            return self.tree_count
        return default_tree_count(n)


def default_tree_count(n: int) -> int:
    return max(1, math.ceil(math.log2(max(n, 2))) ** 2)


def _require_connected(g: Graph) -> None:
    if g.n < 2:
        raise StructureError("a cut needs at least two vertices")
    if len(components(g)) != 1:
        raise StructureError("graph is disconnected")


# ------------------------------------------------------------ partitions

def extract_partition(t: RootedTree, cand: CutCandidate) -> tuple:
    lo, hi, post = t.post_low, t.post, t.post
    us = [t.lower_endpoint(e) for e in cand.edges]
    inside = lambda x, u: lo[u] <= post[x] <= hi[u]
    if len(us) == 1:
        (u,) = us
        return tuple(inside(x, u) for x in range(t.n))
    u, v = us
    if hi[u] < lo[v] or hi[v] < lo[u]:
        return tuple(inside(x, u) or inside(x, v) for x in range(t.n))
    if not (lo[u] <= lo[v] and hi[v] <= hi[u]):
        u, v = v, u
    return tuple(inside(x, u) and not inside(x, v) for x in range(t.n))


# ------------------------------------------------------------ packing

def greedy_tree_packing(g: Graph, cfg: PackingConfig = PackingConfig()) -> list[list[int]]:
    """k spanning trees; each is a minimum spanning tree under cost
    load(e)/w(e), after which every chosen edge's load grows by one.
    Zero-weight edges cost +infinity and are used only when unavoidable."""
    _require_connected(g)
    k = cfg.trees_for(g.n)
    load = [0] * g.m
    trees = []
    for _ in range(k):
        def cost(eid):
            w = g.edges[eid][2]
            return (1, 0, eid) if w == 0 else (0, Fraction(load[eid]) / w, eid)

        parent = list(range(g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        chosen = []
        for eid in sorted(range(g.m), key=cost):
            u, v, _ = g.edges[eid]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                chosen.append(eid)
                if len(chosen) == g.n - 1:
                    break
        for eid in chosen:
            load[eid] += 1
        trees.append(sorted(chosen))
    return trees


# ------------------------------------------------------------ driver

def min_cut(g: Graph, cfg: PackingConfig = PackingConfig(), trees: Optional[Sequence[Sequence[int]]] = None,
            stats: Optional[SolveStats] = None) -> CutResult:
    _require_connected(g)
    if trees is None:
        trees = greedy_tree_packing(g, cfg)
    first_seen: dict[frozenset, int] = {}
    jobs = []
    for i, tr in enumerate(trees):
        key = frozenset(tr)
        if key not in first_seen:
            first_seen[key] = i
            jobs.append((i, list(tr)))

    def run(job) -> tuple[int, TreeSolution]:
        i, tr = job
        return i, solve_tree(g, tr, backend=cfg.backend, epsilon=cfg.epsilon, kernel=cfg.kernel)

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            solved = list(pool.map(run, jobs))
    else:
        solved = [run(j) for j in jobs]
    best_i, best = min(solved, key=lambda s: (s[1].candidate.value, len(s[1].candidate.edges), s[0]))
    if stats is not None:
        for _, sol in solved:
            stats.merge(sol.stats)
    side = extract_partition(best.tree, best.candidate)
    return CutResult(best.candidate.value, side, best.candidate, best_i)


# ------------------------------------------------------------ oracles

def _as_vector(ws):
    if all(isinstance(w, int) for w in ws) and sum(ws) < (1 << 62) // 4:
        return np.asarray(ws, dtype=np.int64)
    return np.asarray(ws, dtype=object)


def brute_force_two_respect(g: Graph, tree_edges: Iterable[int]) -> CutCandidate:
    """Minimum over all single tree edges and pairs, by explicit tree-path
    marking of every graph edge."""
    tree_edges = list(tree_edges)
    n = g.n
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k, eid in enumerate(tree_edges):
        u, v, _ = g.edges[eid]
        adj[u].append((v, k))
        adj[v].append((u, k))
    par = [-1] * n
    par_k = [-1] * n
    depth = [0] * n
    seen = [False] * n
    seen[0] = True
    queue = [0]
    for x in queue:
        for y, k in adj[x]:
            if not seen[y]:
                seen[y] = True
                par[y], par_k[y], depth[y] = x, k, depth[x] + 1
                queue.append(y)
    if len(queue) != n or len(tree_edges) != n - 1:
        raise StructureError("tree edges do not form a spanning tree")

    k = len(tree_edges)
    marks = np.zeros((k, g.m), dtype=bool)
    for gid, (a, b, _) in enumerate(g.edges):
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            marks[par_k[a], gid] = True
            a = par[a]
    w = _as_vector([wt for _, _, wt in g.edges])
    single = marks.astype(w.dtype) @ w if g.m else np.zeros(k, dtype=w.dtype)
    shared = (marks.astype(w.dtype) * w) @ marks.T.astype(w.dtype) if g.m else np.zeros((k, k), dtype=w.dtype)

    best = None
    for i in range(k):
        c = CutCandidate((tree_edges[i],), _scalar(single[i]))
        if best is None or c.sort_key < best.sort_key:
            best = c
    for i in range(k):
        for j in range(i + 1, k):
            v = _scalar(single[i] + single[j] - 2 * shared[i, j])
            if v <= best.value:
                c = CutCandidate((tree_edges[i], tree_edges[j]), v)
                if c.sort_key < best.sort_key:
                    best = c
    return best


def _scalar(x):
    return int(x) if isinstance(x, (np.integer,)) else x


def stoer_wagner(g: Graph) -> CutResult:
    _require_connected(g)
    n = g.n
    adj: list[dict[int, object]] = [dict() for _ in range(n)]
    for u, v, w in g.edges:
        adj[u][v] = adj[u].get(v, 0) + w
        adj[v][u] = adj[v].get(u, 0) + w
    groups = {v: [v] for v in range(n)}
    active = set(range(n))
    best_value, best_group = None, None
    while len(active) > 1:
        start = min(active)
        key = {v: 0 for v in active}
        heap = [(0, start)]
        added = set()
        order = []
        while len(order) < len(active):
            if heap:
                negw, v = heapq.heappop(heap)
                if v in added or -negw != key[v]:
                    continue
            else:
                v = min(active - added)
            added.add(v)
            order.append(v)
            for nb, wt in adj[v].items():
                if nb not in added:
                    key[nb] += wt
                    heapq.heappush(heap, (-key[nb], nb))
        s, t = order[-2], order[-1]
        phase = key[t]
        if best_value is None or phase < best_value:
            best_value, best_group = phase, list(groups[t])
        for nb, wt in adj[t].items():
            if nb == s:
                continue
            adj[s][nb] = adj[s].get(nb, 0) + wt
            adj[nb][s] = adj[nb].get(s, 0) + wt
            del adj[nb][t]
        adj[s].pop(t, None)
        adj[t] = {}
        groups[s].extend(groups.pop(t))
        active.remove(t)
    side = [False] * n
    for v in best_group:
        side[v] = True
    if side[0]:
        side = [not b for b in side]
    return CutResult(best_value, tuple(side))
