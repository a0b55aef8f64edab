"""Deterministic instance families for tests, the corpus and benchmarks."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

from .graph import Graph


@dataclass
class Planted:
    graph: Graph
    side: tuple          # side[v] is True for the planted side
    tree: list           # edge ids of a spanning tree crossing the cut at most twice
    cut_weight: int


def _shuffled(rng: random.Random, edges: list, tree: list) -> tuple[list, list]:
    order = list(range(len(edges)))
    rng.shuffle(order)
    new_id = {old: i for i, old in enumerate(order)}
    return [edges[o] for o in order], sorted(new_id[e] for e in tree)


def random_graph(n: int, m: int, weight_bound: int = 100, seed: int = 0, with_tree: bool = False):
    """Connected multigraph: a random recursive spanning tree plus uniform
    extra edges, weights uniform in [1, weight_bound], edge order shuffled."""
    if n < 1:
        raise ValueError("n must be positive")
    if m < n - 1:
        raise ValueError(f"a connected graph on {n} vertices needs m >= {n - 1}")
    if n == 1 and m > 0:
        raise ValueError("a single vertex admits no edges")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    edges, tree = [], []
    for i in range(1, n):
        tree.append(len(edges))
        edges.append((perm[i], perm[rng.randrange(i)], rng.randint(1, weight_bound)))
    while len(edges) < m:
        u, v = rng.sample(range(n), 2)
        edges.append((u, v, rng.randint(1, weight_bound)))
    edges, tree = _shuffled(rng, edges, tree)
    g = Graph(n, tuple(edges))
    return (g, tree) if with_tree else g


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n, 1) for i in range(n)))


def dumbbell(n: int) -> Graph:
    """Two unit-weight cliques on n/2 vertices joined by one unit bridge."""
    if n < 4 or n % 2:
        raise ValueError("dumbbell needs an even n >= 4")
    k = n // 2
    edges = []
    for base in (0, k):
        for i in range(k):
            for j in range(i + 1, k):
                edges.append((base + i, base + j, 1))
    edges.append((k - 1, k, 1))
    return Graph(n, tuple(edges))


def grid(n: int, cols: Optional[int] = None, weight_bound: int = 1, seed: int = 0) -> Graph:
    if cols is None:
        cols = max(1, math.isqrt(n))
    if n < 2 or n % cols:
        raise ValueError(f"grid needs n divisible by cols ({n} % {cols} != 0)")
    rng = random.Random(seed)
    rows = n // cols
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1, rng.randint(1, weight_bound)))
            if r + 1 < rows:
                edges.append((v, v + cols, rng.randint(1, weight_bound)))
    return Graph(n, tuple(edges))


def planted(n: int, cut_weight: int, side_size: int, m: Optional[int] = None, weight_bound: int = 10,
            seed: int = 0) -> Planted:
    """Graph whose unique minimum cut is a chosen side of ``side_size``
    vertices with boundary ``cut_weight``, and a spanning tree crossing it
    twice (once when ``cut_weight == 1``).

    Each side is held together by a cycle of weight ``cut_weight + 1`` edges
    (one edge of weight ``2*cut_weight + 1`` for two vertices), so any cut
    splitting a side costs more than the planted one.
    """
    if not 1 <= side_size <= n - 1:
        raise ValueError("side_size must lie in [1, n-1]")
    if cut_weight < 1:
        raise ValueError("cut_weight must be positive")
    rng = random.Random(seed)
    verts = list(range(n))
    rng.shuffle(verts)
    S, R = verts[:side_size], verts[side_size:]
    edges, tree = [], []

    def hold_together(part, tree_ranges):
        k = len(part)
        if k == 2:
            idx = len(edges)
            edges.append((part[0], part[1], 2 * cut_weight + 1))
            if any(a <= 0 < 1 <= b for a, b in tree_ranges):
                tree.append(idx)
        elif k >= 3:
            for i in range(k):
                idx = len(edges)
                edges.append((part[i], part[(i + 1) % k], cut_weight + 1))
                if any(a <= i and i + 1 <= b for a, b in tree_ranges):
                    tree.append(idx)

    two = cut_weight >= 2 and len(S) >= 2
    h = len(S) // 2
    hold_together(S, [(0, h - 1), (h, len(S) - 1)] if two else [(0, len(S) - 1)])
    hold_together(R, [(0, len(R) - 1)])
    if two:
        ends = [(S[0], rng.choice(R), cut_weight // 2), (S[-1], rng.choice(R), cut_weight - cut_weight // 2)]
    else:
        ends = [(rng.choice(S), rng.choice(R), cut_weight)]
    for u, v, w in ends:
        tree.append(len(edges))
        edges.append((u, v, w))
    target = len(edges) if m is None else m
    if target < len(edges):
        raise ValueError(f"planted instance needs at least {len(edges)} edges")
    sides = [p for p in (S, R) if len(p) >= 2]
    while len(edges) < target:
        if not sides:
            raise ValueError("no room for extra internal edges")
        part = rng.choice(sides)
        u, v = rng.sample(part, 2)
        edges.append((u, v, rng.randint(1, weight_bound)))
    edges, tree = _shuffled(rng, edges, tree)
    side = [False] * n
    for v in S:
        side[v] = True
    return Planted(Graph(n, tuple(edges)), tuple(side), tree, cut_weight)
