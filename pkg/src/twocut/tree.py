"""Rooted spanning trees: postorder annotation, subtree boundary weights,
heavy paths, LCA, binarization and centroid decomposition.

A tree edge is identified throughout by its *lower* endpoint ``u``; the edge
id is ``parent_edge[u]``.  Subtree membership is postorder-interval
containment: ``x`` lies below ``u`` iff ``post_low[u] <= post[x] <= post[u]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, StructureError


class LCA:
    """Euler tour + sparse table; O(n log n) build, O(1) query."""

    def __init__(self, parent: Sequence[int], children: Sequence[Sequence[int]], depth: Sequence[int], root: int):
        n = len(parent)
        euler: list[int] = []
        first = [0] * n
        stack = [(root, 0)]
        while stack:
            v, i = stack.pop()
            if i == 0:
                first[v] = len(euler)
            euler.append(v)
            if i < len(children[v]):
                stack.append((v, i + 1))
                stack.append((children[v][i], 0))
        self.first = np.asarray(first, dtype=np.int64)
        self.euler = np.asarray(euler, dtype=np.int64)
        d = np.asarray(depth, dtype=np.int64)[self.euler]
        levels = [np.arange(len(euler), dtype=np.int64)]
        span = 1
        while 2 * span <= len(euler):
            prev = levels[-1]
            a, b = prev[:-span], prev[span:]
            levels.append(np.where(d[a] <= d[b], a, b))
            span *= 2
        self._levels = levels
        self._d = d

    def __call__(self, u: int, v: int) -> int:
        return int(self.many(np.array([u]), np.array([v]))[0])

    def many(self, us, vs) -> np.ndarray:
        a = self.first[np.asarray(us, dtype=np.int64)]
        b = self.first[np.asarray(vs, dtype=np.int64)]
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        length = hi - lo + 1
        k = np.zeros_like(length)
        if len(length):
            k = np.floor(np.log2(length)).astype(np.int64)
        out = np.empty(len(lo), dtype=np.int64)
        for level in np.unique(k):
            sel = k == level
            table = self._levels[level]
            x = table[lo[sel]]
            y = table[hi[sel] - (1 << level) + 1]
            out[sel] = np.where(self._d[x] <= self._d[y], x, y)
        return self.euler[out]


@dataclass
class RootedTree:
    graph: Graph
    root: int
    tree_edges: tuple
    parent: list          # parent vertex, -1 at the root
    parent_edge: list     # edge id to the parent, -1 at the root
    children: list        # child lists in postorder
    depth: list
    size: list
    post: list            # 1..n
    post_low: list
    down_weight: list     # w(v↓): weight leaving the subtree of v
    vertex_at: list       # vertex_at[t] = vertex with post time t (index 0 unused)
    lca: LCA

    @property
    def n(self) -> int:
        return len(self.parent)

    def lower_endpoint(self, eid: int) -> int:
        lower = self.__dict__.get("_lower")
        if lower is None:
            lower = self._lower = {e: v for v, e in enumerate(self.parent_edge) if e >= 0}
        v = lower.get(eid)
        if v is None:
            raise ValueError(f"edge {eid} is not a tree edge")
        return v

    def is_ancestor(self, a: int, b: int) -> bool:
        """True if vertex ``a`` is an ancestor of (or equal to) ``b``."""
        return self.post_low[a] <= self.post[b] <= self.post[a]

    def subtree_interval(self, v: int) -> tuple[int, int]:
        return self.post_low[v], self.post[v]

    def in_subtree(self, x: int, v: int) -> bool:
        return self.post_low[v] <= self.post[x] <= self.post[v]


def root_tree(g: Graph, tree_edges: Iterable[int], root: int = 0) -> RootedTree:
    tree_edges = tuple(tree_edges)
    n = g.n
    if not 0 <= root < n:
        raise StructureError(f"root {root} out of range")
    if len(tree_edges) != n - 1 or len(set(tree_edges)) != n - 1:
        raise StructureError(f"a spanning tree needs {n - 1} distinct edges, got {len(tree_edges)}")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for eid in tree_edges:
        if not 0 <= eid < g.m:
            raise StructureError(f"tree edge id {eid} out of range")
        u, v, _ = g.edges[eid]
        adj[u].append((v, eid))
        adj[v].append((u, eid))

    parent = [-1] * n
    parent_edge = [-1] * n
    depth = [0] * n
    seen = [False] * n
    seen[root] = True
    order = [root]
    for x in order:
        for y, eid in sorted(adj[x]):
            if not seen[y]:
                seen[y] = True
                parent[y], parent_edge[y], depth[y] = x, eid, depth[x] + 1
                order.append(y)
    if len(order) != n:
        raise StructureError("tree edges do not span the graph (tree is disconnected or cyclic)")

    size = [1] * n
    for x in reversed(order[1:]):
        size[parent[x]] += size[x]

    kids: list[list[int]] = [[] for _ in range(n)]
    for x in order[1:]:
        kids[parent[x]].append(x)
    for lst in kids:
        lst.sort()

    post = [0] * n
    post_low = [0] * n
    vertex_at = [0] * (n + 1)
    t = 0
    stack = [(root, 0)]
    while stack:
        v, i = stack.pop()
        if i < len(kids[v]):
            stack.append((v, i + 1))
            stack.append((kids[v][i], 0))
        else:
            t += 1
            post[v] = t
            vertex_at[t] = v
            post_low[v] = post_low[kids[v][0]] if kids[v] else t

    lca = LCA(parent, kids, depth, root)

    # w(v↓): +w at both endpoints, -2w at their LCA, then subtree sums
    acc = [0] * n
    if g.m:
        us = [u for u, _, _ in g.edges]
        vs = [v for _, v, _ in g.edges]
        anc = lca.many(us, vs).tolist()
        for (u, v, w), a in zip(g.edges, anc):
            acc[u] += w
            acc[v] += w
            acc[a] -= 2 * w
    for x in reversed(order[1:]):
        acc[parent[x]] += acc[x]

    return RootedTree(
        graph=g, root=root, tree_edges=tree_edges, parent=parent, parent_edge=parent_edge,
        children=kids, depth=depth, size=size, post=post, post_low=post_low,
        down_weight=acc, vertex_at=vertex_at, lca=lca,
    )


@dataclass
class HeavyPathDecomposition:
    paths: list           # each path: lower endpoints of its edges, top to bottom
    path_of: list         # vertex -> (path id, index), (-1, -1) at the root
    top: list             # path id -> upper endpoint of its first edge

    def path_edge_ids(self, t: RootedTree, pid: int) -> list[int]:
        return [t.parent_edge[v] for v in self.paths[pid]]

    def root_path_prefixes(self, t: RootedTree, x: int) -> list[tuple[int, int]]:
        """Heavy paths met by the root-to-``x`` path, as (path id, number of
        leading edges of that path lying on the root-to-``x`` path)."""
        out = []
        while x != t.root:
            pid, idx = self.path_of[x]
            out.append((pid, idx + 1))
            x = self.top[pid]
        return out

    def paths_on_root_path(self, t: RootedTree, x: int) -> int:
        return len(self.root_path_prefixes(t, x))


def heavy_path_decompose(t: RootedTree) -> HeavyPathDecomposition:
    n = t.n
    heavy = [-1] * n
    for v in range(n):
        best = -1
        for c in t.children[v]:
            if best < 0 or t.size[c] > t.size[best] or (t.size[c] == t.size[best] and c < best):
                best = c
        heavy[v] = best
    paths: list[list[int]] = []
    top: list[int] = []
    path_of = [(-1, -1)] * n

    def starts(y):
        # every child of the root opens a path; elsewhere only light children
        return [(y, c) for c in t.children[y] if c != heavy[y] or y == t.root]

    stack = list(reversed(starts(t.root)))
    while stack:
        upper, x = stack.pop()
        pid = len(paths)
        path = []
        while x >= 0:
            path_of[x] = (pid, len(path))
            path.append(x)
            x = heavy[x]
        paths.append(path)
        top.append(upper)
        pending = [s for y in path for s in starts(y)]
        stack.extend(reversed(pending))
    return HeavyPathDecomposition(paths=paths, path_of=path_of, top=top)


@dataclass
class BinarizedTree:
    n_original: int
    parent: list          # -1 at the root
    children: list
    lo: list              # subtended postorder interval of each node
    hi: list
    owner: list           # original vertex a node belongs to (itself if original)

    @property
    def size(self) -> int:
        return len(self.parent)

    def is_virtual(self, x: int) -> bool:
        return x >= self.n_original

    def neighbors(self, x: int) -> list[int]:
        p = self.parent[x]
        return ([p] if p >= 0 else []) + list(self.children[x])


def binarize(t: RootedTree) -> BinarizedTree:
    """Caterpillar every vertex with more than two children.

    Children are chained in postorder, so a virtual node covers a run of
    consecutive sibling subtrees, which is one contiguous postorder interval.
    """
    n = t.n
    parent = list(t.parent)
    children = [list(c) for c in t.children]
    lo = list(t.post_low)
    hi = list(t.post)
    owner = list(range(n))
    for v in range(n):
        kids = t.children[v]
        if len(kids) <= 2:
            continue
        prev = v
        children[v] = [kids[0]]
        for i in range(1, len(kids) - 1):
            x = len(parent)
            parent.append(prev)
            children.append([kids[i]])
            children[prev].append(x)
            lo.append(t.post_low[kids[i]])
            hi.append(t.post[kids[-1]])
            owner.append(v)
            parent[kids[i]] = x
            prev = x
        children[prev].append(kids[-1])
        parent[kids[-1]] = prev
    return BinarizedTree(n_original=n, parent=parent, children=children, lo=lo, hi=hi, owner=owner)


@dataclass
class CentroidDecomposition:
    tree: BinarizedTree
    top: int                      # first centroid
    cparent: list                 # centroid-tree parent, -1 for the top
    level: list                   # 1-based depth in the centroid tree
    next_centroid: list           # per centroid: {neighbor: centroid of the part containing it}

    @property
    def depth(self) -> int:
        return max(self.level) if self.level else 0


def centroid_decompose(b: BinarizedTree) -> CentroidDecomposition:
    N = b.size
    adj = [b.neighbors(x) for x in range(N)]
    removed = [False] * N
    cparent = [-1] * N
    level = [0] * N
    nxt: list[dict] = [dict() for _ in range(N)]
    bfs_parent = [-1] * N
    sub = [0] * N
    top = -1
    work = [(0, -1, -1)]
    while work:
        s, pc, via = work.pop()
        order = [s]
        bfs_parent[s] = -1
        for x in order:
            for y in adj[x]:
                if not removed[y] and y != bfs_parent[x]:
                    bfs_parent[y] = x
                    order.append(y)
        for x in reversed(order):
            sub[x] = 1
        for x in reversed(order[1:]):
            sub[bfs_parent[x]] += sub[x]
        total = len(order)
        c = s
        while True:
            for y in adj[c]:
                if not removed[y] and y != bfs_parent[c] and 2 * sub[y] > total:
                    c = y
                    break
            else:
                break
        removed[c] = True
        cparent[c] = pc
        level[c] = 1 if pc < 0 else level[pc] + 1
        if pc < 0:
            top = c
        else:
            nxt[pc][via] = c
        for y in adj[c]:
            if not removed[y]:
                work.append((y, c, y))
    return CentroidDecomposition(tree=b, top=top, cparent=cparent, level=level, next_centroid=nxt)
