"""Weighted undirected multigraphs and the DIMACS-like text format.

File format (UTF-8)::

    c optional comment lines
    p <n> <m>
    e <u> <v> <w>      (exactly m lines, 1-based vertices, integer w >= 0)

Vertices are 0-based internally and edge ids follow file order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, TextIO, Union

Weight = Union[int, Fraction]


class GraphError(ValueError):
    """Structurally invalid graph (bad vertex, self-loop, negative weight)."""


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class StructureError(ValueError):
    """Input is well-formed but violates a structural precondition
    (disconnected graph, tree edges that do not span, ...)."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple = field(default=())

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise GraphError(f"vertex count must be a positive integer, got {self.n!r}")
        edges = tuple((int(u), int(v), _exact(w)) for u, v, w in self.edges)
        for eid, (u, v, w) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {eid}: vertex out of range")
            if u == v:
                raise GraphError(f"edge {eid}: self-loop at vertex {u}")
            if w < 0:
                raise GraphError(f"edge {eid}: negative weight {w}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def total_weight(self) -> Weight:
        return sum((w for _, _, w in self.edges), 0)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of (neighbor, edge id)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for eid, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        return adj

    def is_connected(self) -> bool:
        return len(components(self)) == 1

    def boundary_weight(self, side: Sequence[bool]) -> Weight:
        """Total weight of edges with exactly one endpoint in ``side``."""
        return sum((w for u, v, w in self.edges if bool(side[u]) != bool(side[v])), 0)


def _exact(w) -> Weight:
    if isinstance(w, bool):
        raise GraphError("boolean is not a weight")
    if isinstance(w, int):
        return w
    if isinstance(w, Rational):
        f = Fraction(w)
        return f.numerator if f.denominator == 1 else f
    raise GraphError(f"weights must be exact (int or Fraction), got {type(w).__name__}")


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    adj = g.adjacency()
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            x = stack.pop()
            comp.append(x)
            for y, _ in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        out.append(sorted(comp))
    return out


def parse_graph(text: Union[str, TextIO, Iterable[str]]) -> Graph:
    if isinstance(text, str):
        lines = text.splitlines()
    else:
        lines = text
    n = m = None
    p_line = 0
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError(lineno, "duplicate problem line")
            # tolerate the DIMACS "p <format> n m" variant
            nums = parts[2:] if len(parts) == 4 else parts[1:]
            if len(nums) != 2:
                raise ParseError(lineno, "expected 'p <n> <m>'")
            n, m = _int(nums[0], lineno, "n"), _int(nums[1], lineno, "m")
            if n < 1 or m < 0:
                raise ParseError(lineno, "n must be positive and m non-negative")
            p_line = lineno
        elif parts[0] in ("e", "a"):
            if n is None:
                raise ParseError(lineno, "edge line before problem line")
            if len(parts) != 4:
                raise ParseError(lineno, "expected 'e <u> <v> <w>'")
            u, v, w = (_int(x, lineno, name) for x, name in zip(parts[1:], "uvw"))
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(lineno, f"vertex id out of range 1..{n}")
            if u == v:
                raise ParseError(lineno, f"self-loop at vertex {u}")
            if w < 0:
                raise ParseError(lineno, f"negative weight {w}")
            edges.append((u - 1, v - 1, w))
        else:
            raise ParseError(lineno, f"unrecognised line type {parts[0]!r}")
    if n is None:
        raise ParseError(max(p_line, 1), "missing problem line")
    if len(edges) != m:
        raise ParseError(p_line, f"header declares {m} edges but {len(edges)} found")
    return Graph(n, tuple(edges))


def _int(tok: str, lineno: int, name: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"{name} is not an integer: {tok!r}") from None


def serialize_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p {g.n} {g.m}")
    for u, v, w in g.edges:
        if isinstance(w, Fraction):
            raise GraphError("the text format carries integer weights only")
        out.append(f"e {u + 1} {v + 1} {w}")
    return "\n".join(out) + "\n"


def collapse_parallel_edges(g: Graph) -> Graph:
    """Merge parallel edges into one edge per unordered pair, summing weights.

    Output edges are ordered by first occurrence of their vertex pair.
    """
    merged: dict[tuple[int, int], Weight] = {}
    for u, v, w in g.edges:
        key = (u, v) if u < v else (v, u)
        merged[key] = merged.get(key, 0) + w
    return Graph(g.n, tuple((u, v, w) for (u, v), w in merged.items()))


def parse_trees(text: Union[str, Iterable[str]], m: int) -> list[list[int]]:
    """Tree file: one tree per line, whitespace-separated edge ids."""
    lines = text.splitlines() if isinstance(text, str) else text
    trees = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        ids = [_int(t, lineno, "edge id") for t in line.split()]
        for eid in ids:
            if not 0 <= eid < m:
                raise ParseError(lineno, f"edge id {eid} out of range 0..{m - 1}")
        trees.append(ids)
    return trees
