"""Weighted 2D orthogonal range counting on the [1..n] x [1..n] grid.

Two interchangeable backends answer ``rect_sum(x1, x2, y1, y2)`` exactly:

``merge``
    A merge-sort tree over x-sorted points.  Each level stores the y values
    of aligned blocks in sorted order plus prefix weights; a query touches
    O(log m) blocks and binary-searches each one.

``grid``
    A two-level fan-out structure of degree ``B = ceil(n**eps)``.  The outer
    tree is the subtree of the complete B-ary tree over y induced by the
    points; every outer node keeps a 1D structure (the induced B-ary tree over
    the x values of its points).  Only dominance queries ``[x,n] x [y,n]`` are
    answered natively; rectangles use inclusion-exclusion.  Unary chains are
    compressed so a 1D structure on ``s`` points has fewer than ``2s`` nodes.

When the compiled kernel is importable and every partial sum fits in a
signed 64-bit integer the query loops run in C; otherwise the pure-Python
code below is used.  Answers are identical either way.
"""
from __future__ import annotations

import os
from array import array
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Optional, Sequence

import numpy as np

try:
    from . import _kernels
except ImportError:  # extension not built
    _kernels = None

if os.environ.get("TWOCUT_PURE_PYTHON"):
    _kernels = None

_INT64_SAFE = 1 << 62


def compiled_available() -> bool:
    return _kernels is not None


@dataclass
class RangeStats:
    queries: int = 0
    nodes_visited: int = 0
    one_d_queries: int = 0


class RangeIndex:
    """Backend contract.  Subclasses implement ``_rect``."""

    kind = "abstract"

    def __init__(self, n: int, points):
        self.n = n
        self.point_count = len(points)
        self.total = sum((w for _, _, w in points), 0)
        self.kernel = "python"

    @property
    def stats(self) -> RangeStats:
        """Snapshot of the counters."""
        raise NotImplementedError

    def rect_sum(self, x1: int, x2: int, y1: int, y2: int):
        n = self.n
        for c in (x1, x2, y1, y2):
            if not 0 <= c <= n + 1:
                raise ValueError(f"coordinate {c} outside [0, {n + 1}]")
        x1, y1 = max(x1, 1), max(y1, 1)
        x2, y2 = min(x2, n), min(y2, n)
        if x1 > x2 or y1 > y2:
            return 0
        return self._rect(x1, x2, y1, y2)

    def _rect(self, x1, x2, y1, y2):
        raise NotImplementedError


def _validate(points, n: Optional[int]):
    pts = [(int(x), int(y), w) for x, y, w in points]
    if n is None:
        n = max((max(x, y) for x, y, _ in pts), default=1)
    for x, y, w in pts:
        if not (1 <= x <= n and 1 <= y <= n):
            raise ValueError(f"point ({x}, {y}) outside the [1..{n}] grid")
        if w < 0:
            raise ValueError(f"negative weight {w}")
    return pts, n


def _fits_int64(pts) -> bool:
    if not all(isinstance(w, int) for _, _, w in pts):
        return False
    return sum(w for _, _, w in pts) < _INT64_SAFE


def _use_kernel(kernel: str, pts) -> bool:
    if kernel == "python":
        return False
    ok = _kernels is not None and _fits_int64(pts)
    if kernel == "compiled" and not ok:
        raise RuntimeError("compiled kernel unavailable for this input")
    return ok


# ---------------------------------------------------------------- merge tree

class MergeTreeIndex(RangeIndex):
    kind = "merge"

    def __init__(self, points, n=None, kernel: str = "auto"):
        pts, n = _validate(points, n)
        super().__init__(n, pts)
        m = len(pts)
        pts.sort(key=lambda p: (p[0], p[1]))
        self._m = m
        xs = np.fromiter((p[0] for p in pts), dtype=np.int64, count=m)
        ys = np.fromiter((p[1] for p in pts), dtype=np.int64, count=m)
        order = np.arange(m)
        levels = []   # per level: permutation of point indices, y-sorted within blocks
        span = 1
        while True:
            block = order // span if m else order
            perm = np.lexsort((np.arange(m), ys, block)) if m else order
            levels.append(perm)
            if span >= m:
                break
            span *= 2
        self._nlevels = len(levels)
        if _use_kernel(kernel, pts):
            ws = np.fromiter((p[2] for p in pts), dtype=np.int64, count=m)
            self._core = _kernels.MergeTreeCore(xs, ys, ws, np.stack(levels) if m else np.zeros((1, 0), dtype=np.int64))
            self.kernel = "compiled"
            return
        self._core = None
        self._stats = RangeStats()
        self._xs = array("q", xs.tolist())
        weights = [p[2] for p in pts]
        self._ys = []
        self._cum = []
        for perm in levels:
            idx = perm.tolist()
            self._ys.append(array("q", ys[perm].tolist()))
            self._cum.append([0] + list(accumulate(weights[i] for i in idx)))

    @property
    def stats(self) -> RangeStats:
        """Snapshot of the counters."""
        if self._core is not None:
            return RangeStats(self._core.queries, self._core.nodes_visited, 0)
        return replace(self._stats)

    def _rect(self, x1, x2, y1, y2):
        if self._core is not None:
            return self._core.rect_sum(x1, x2, y1, y2)
        st = self._stats
        st.queries += 1
        a = bisect_left(self._xs, x1)
        b = bisect_right(self._xs, x2)
        total = 0
        level = 0
        m = self._m
        while a < b:
            if a & 1:
                total += self._block(level, a, y1, y2, m)
                a += 1
            if b & 1:
                b -= 1
                total += self._block(level, b, y1, y2, m)
            a >>= 1
            b >>= 1
            level += 1
        return total

    def _block(self, level, j, y1, y2, m):
        self._stats.nodes_visited += 1
        s = j << level
        e = min(s + (1 << level), m)
        ys = self._ys[level]
        lo = bisect_left(ys, y1, s, e)
        hi = bisect_right(ys, y2, lo, e)
        cum = self._cum[level]
        return cum[hi] - cum[lo]


def build_merge_tree(points, n: Optional[int] = None, kernel: str = "auto") -> MergeTreeIndex:
    return MergeTreeIndex(points, n=n, kernel=kernel)


# ---------------------------------------------------------- grid fan-out

def fanout_degree(n: int, epsilon) -> tuple[int, int]:
    """Return (B, D): degree ``ceil(n**eps)`` (at least 2) and the depth D,
    the least d with B**d >= n."""
    eps = Fraction(str(epsilon)) if isinstance(epsilon, float) else Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    B = 2
    # smallest integer B with B**den >= n**num, i.e. B >= n**eps exactly
    num, den = eps.numerator, eps.denominator
    target = n ** num
    lo, hi = 1, max(2, n)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** den >= target:
            hi = mid
        else:
            lo = mid + 1
    B = max(B, lo)
    D = 1
    while B ** D < n:
        D += 1
    return B, D


class _FlatForest:
    """Compressed induced B-ary trees stored in flat arrays.

    Node ``i`` covers leaf keys ``[start[i], end[i]]``; its children are
    ``kids[first[i] : first[i] + count[i]]`` in ascending key order.
    """

    def __init__(self, B: int, D: int):
        self.B, self.D = B, D
        self.start: list[int] = []
        self.end: list[int] = []
        self.weight: list = []
        self.first: list[int] = []
        self.count: list[int] = []
        self.kids: list[int] = []

    def __len__(self):
        return len(self.start)

    def build(self, keys: Sequence[int], weights: Sequence) -> int:
        """Add a tree over sorted distinct ``keys``; return its root id."""
        B = self.B
        pw = [B ** i for i in range(self.D + 1)]
        root = self._new(0, pw[self.D] - 1)
        if not keys:
            self.weight[root] = 0
            self.first[root] = len(self.kids)
            self.count[root] = 0
            return root
        prefix = [0] + list(accumulate(weights))
        # (node, level, lo, hi) over keys[lo:hi]
        stack = [(root, self.D, 0, len(keys))]
        while stack:
            node, level, lo, hi = stack.pop()
            self.weight[node] = prefix[hi] - prefix[lo]
            groups = []
            i = lo
            span = pw[level - 1]
            while i < hi:
                blk = keys[i] // span
                j = i + 1
                while j < hi and keys[j] // span == blk:
                    j += 1
                groups.append((i, j))
                i = j
            self.first[node] = len(self.kids)
            self.count[node] = len(groups)
            children = []
            for i, j in groups:
                if j - i == 1:
                    k = keys[i]
                    c = self._new(k, k)
                    self.weight[c] = prefix[j] - prefix[i]
                    self.first[c] = 0
                    self.count[c] = 0
                    children.append(c)
                    continue
                lv = level - 1
                a, b = keys[i], keys[j - 1]
                while lv > 1 and a // pw[lv - 1] == b // pw[lv - 1]:
                    lv -= 1
                s = (a // pw[lv]) * pw[lv]
                c = self._new(s, s + pw[lv] - 1)
                children.append(c)
                stack.append((c, lv, i, j))
            self.kids.extend(children)
        return root

    def _new(self, s, e) -> int:
        self.start.append(s)
        self.end.append(e)
        self.weight.append(0)
        self.first.append(0)
        self.count.append(0)
        return len(self.start) - 1


def _suffix_1d(f: _FlatForest, root: int, k: int, st: RangeStats):
    """Total weight of keys >= k in the tree rooted at ``root``."""
    st.one_d_queries += 1
    node = root
    total = 0
    st.nodes_visited += 1
    if f.start[node] >= k:
        return f.weight[node]
    while True:
        a = f.first[node]
        nxt = -1
        for idx in range(a + f.count[node] - 1, a - 1, -1):
            c = f.kids[idx]
            st.nodes_visited += 1
            if f.start[c] >= k:
                total += f.weight[c]
            elif f.end[c] >= k:
                nxt = c
                break
            else:
                break
        if nxt < 0:
            return total
        node = nxt


class GridFanoutIndex(RangeIndex):
    kind = "grid"

    def __init__(self, points, epsilon=Fraction(1, 4), n=None, kernel: str = "auto"):
        pts, n = _validate(points, n)
        super().__init__(n, pts)
        self.B, self.D = fanout_degree(n, epsilon)
        self.epsilon = Fraction(str(epsilon)) if isinstance(epsilon, float) else Fraction(epsilon)
        # outer tree over y keys; leaf keys are coordinate - 1
        agg_y: dict[int, list] = {}
        for x, y, w in pts:
            agg_y.setdefault(y - 1, []).append((x - 1, w))
        ykeys = sorted(agg_y)
        yweights = [sum(w for _, w in agg_y[k]) for k in ykeys]
        self.outer = _FlatForest(self.B, self.D)
        self.outer_root = self.outer.build(ykeys, yweights)
        self.inner = _FlatForest(self.B, self.D)
        # the root's own structure is never queried, so it is not built
        self.inner_root = [-1] * len(self.outer)
        self.stored_points = 0
        for node in range(len(self.outer)):
            if node == self.outer_root:
                continue
            lo = bisect_left(ykeys, self.outer.start[node])
            hi = bisect_right(ykeys, self.outer.end[node])
            acc: dict[int, object] = {}
            for k in ykeys[lo:hi]:
                for xk, w in agg_y[k]:
                    acc[xk] = acc.get(xk, 0) + w
                    self.stored_points += 1
            xkeys = sorted(acc)
            self.inner_root[node] = self.inner.build(xkeys, [acc[k] for k in xkeys])
        self._stats = RangeStats()
        self._core = None
        if _use_kernel(kernel, pts):
            self._core = _kernels.GridFanoutCore(
                *(np.asarray(a, dtype=np.int64) for a in (
                    self.outer.start, self.outer.end, self.outer.first, self.outer.count, self.outer.kids,
                    self.inner.start, self.inner.end, self.inner.weight, self.inner.first, self.inner.count,
                    self.inner.kids, self.inner_root)),
                self.outer_root,
            )
            self.kernel = "compiled"

    @property
    def node_count(self) -> int:
        return len(self.outer) + len(self.inner)

    @property
    def stats(self) -> RangeStats:
        """Snapshot of the counters."""
        if self._core is not None:
            return RangeStats(self._core.queries, self._core.nodes_visited, self._core.one_d_queries)
        return replace(self._stats)

    def dominance(self, x: int, y: int):
        """Total weight in ``[x, n] x [y, n]``."""
        if x > self.n or y > self.n:
            return 0
        x, y = max(x, 1), max(y, 1)
        if self._core is not None:
            return self._core.dominance(x, y)
        self._stats.queries += 1
        return self._dominance(x - 1, y - 1)

    def _dominance(self, kx: int, ky: int):
        f = self.outer
        st = self._stats
        node = self.outer_root
        total = 0
        st.nodes_visited += 1
        while True:
            a = f.first[node]
            nxt = -1
            for idx in range(a + f.count[node] - 1, a - 1, -1):
                c = f.kids[idx]
                st.nodes_visited += 1
                if f.start[c] >= ky:
                    total += _suffix_1d(self.inner, self.inner_root[c], kx, st)
                elif f.end[c] >= ky:
                    nxt = c
                    break
                else:
                    break
            if nxt < 0:
                return total
            node = nxt

    def _rect(self, x1, x2, y1, y2):
        d = self.dominance
        return d(x1, y1) - d(x2 + 1, y1) - d(x1, y2 + 1) + d(x2 + 1, y2 + 1)


def build_grid_fanout(points, epsilon=Fraction(1, 4), n: Optional[int] = None, kernel: str = "auto") -> GridFanoutIndex:
    return GridFanoutIndex(points, epsilon=epsilon, n=n, kernel=kernel)


def build_index(points, n: int, backend: str = "merge", epsilon=Fraction(1, 4), kernel: str = "auto") -> RangeIndex:
    if backend == "merge":
        return build_merge_tree(points, n=n, kernel=kernel)
    if backend == "grid":
        return build_grid_fanout(points, epsilon=epsilon, n=n, kernel=kernel)
    raise ValueError(f"unknown backend {backend!r}")


def naive_rect_sum(points: Iterable, x1, x2, y1, y2):
    return sum((w for x, y, w in points if x1 <= x <= x2 and y1 <= y <= y2), 0)
