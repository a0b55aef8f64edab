"""Instance generators and definition-level oracles shared by the tests.

Nothing here touches postorder intervals or range structures: subtrees are
explicit vertex sets and every weight is a direct edge scan.
"""
from __future__ import annotations

import random

from twocut.graph import Graph


def rand_instance(rng: random.Random, nmax=64, mmax=512, wmax=100, nmin=2, wmin=0):
    """Random connected multigraph plus the edge ids of a random spanning tree
    hidden among the (shuffled) edges."""
    n = rng.randint(nmin, nmax)
    perm = list(range(n))
    rng.shuffle(perm)
    edges, tree = [], []
    for i in range(1, n):
        tree.append(len(edges))
        edges.append((perm[i], perm[rng.randrange(i)], rng.randint(wmin, wmax)))
    if n >= 2:
        for _ in range(rng.randint(0, max(0, mmax - len(edges)))):
            u, v = rng.sample(range(n), 2)
            edges.append((u, v, rng.randint(wmin, wmax)))
    order = list(range(len(edges)))
    rng.shuffle(order)
    inv = {o: i for i, o in enumerate(order)}
    return Graph(n, tuple(edges[o] for o in order)), sorted(inv[t] for t in tree)


def random_tree_graph(rng: random.Random, n: int, shape: str = "recursive") -> Graph:
    """Unit-weight tree on n vertices (the graph is its own spanning tree)."""
    if shape == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif shape == "star":
        pairs = [(0, i) for i in range(1, n)]
    elif shape == "binary":
        pairs = [((i - 1) // 2, i) for i in range(1, n)]
    elif shape == "caterpillar":
        spine = max(1, n // 3)
        pairs = [(i, i + 1) for i in range(spine - 1)] + [(rng.randrange(spine), i) for i in range(spine, n)]
    elif shape == "broom":
        half = n // 2
        pairs = [(i, i + 1) for i in range(half - 1)] + [(half - 1, i) for i in range(half, n)]
    else:
        pairs = [(rng.randrange(i), i) for i in range(1, n)]
    label = list(range(n))
    if shape not in ("path", "binary"):
        rng.shuffle(label)
    return Graph(n, tuple((label[a], label[b], 1) for a, b in pairs))


def spider_instance(rng: random.Random, legs=(2, 4), leg_len=(3, 20)):
    """Root with a few long chains and heavy edges running between chains.
    Such trees give interesting path pairs with many rows and columns."""
    n, edges, chains = 1, [], []
    for _ in range(rng.randint(*legs)):
        prev, chain = 0, []
        for _ in range(rng.randint(*leg_len)):
            edges.append((prev, n, rng.randint(1, 3)))
            chain.append(n)
            prev = n
            n += 1
        chains.append(chain)
    tree = list(range(len(edges)))
    for _ in range(rng.randint(n, 4 * n)):
        a, b = rng.sample(chains, 2)
        edges.append((rng.choice(a), rng.choice(b), rng.randint(1, 50)))
    return Graph(n, tuple(edges)), tree


class NaiveTree:
    """Rooted tree with explicit subtree vertex sets, built by its own BFS."""

    def __init__(self, g: Graph, tree_edges, root: int = 0):
        self.g = g
        n = g.n
        adj = [[] for _ in range(n)]
        for eid in tree_edges:
            u, v, _ = g.edges[eid]
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        self.parent = [-1] * n
        self.parent_edge = [-1] * n
        seen = {root}
        order = [root]
        for x in order:
            for y, eid in adj[x]:
                if y not in seen:
                    seen.add(y)
                    self.parent[y], self.parent_edge[y] = x, eid
                    order.append(y)
        assert len(order) == n
        self.order = order
        self.root = root
        self.tree_edges = sorted(tree_edges)
        self.lower = {self.parent_edge[v]: v for v in range(n) if v != root}
        self.below = {}
        for eid, v in self.lower.items():
            s = set()
            stack = [v]
            while stack:
                x = stack.pop()
                s.add(x)
                stack.extend(y for y, _ in adj[x] if y != self.parent[x])
            self.below[eid] = frozenset(s)

    def ancestors(self, v):
        out = []
        while v != -1:
            out.append(v)
            v = self.parent[v]
        return out

    def weight_between(self, a, b):
        return sum(w for u, v, w in self.g.edges if (u in a and v in b) or (u in b and v in a))

    def boundary(self, s):
        return sum(w for u, v, w in self.g.edges if (u in s) != (v in s))

    def pair_value(self, e, f):
        """Cut determined by tree edges e and f: S = T_e xor T_f."""
        if e == f:
            return self.boundary(self.below[e])
        return self.boundary(self.below[e] ^ self.below[f])

    def relation(self, e, f):
        a, b = self.below[e], self.below[f]
        if not a & b:
            return "independent"
        return "descendant" if b < a else "ancestor"


def naive_min_two_respect(nt: NaiveTree):
    best = None
    es = nt.tree_edges
    for i, e in enumerate(es):
        for f in es[i:]:
            v = nt.pair_value(e, f)
            if best is None or v < best:
                best = v
    return best


def _subtree_sums(nt: NaiveTree, per_vertex):
    """Sum of ``per_vertex`` over the subtree of each vertex, by pushing
    values from children to parents in reverse BFS order."""
    acc = list(per_vertex)
    for x in reversed(nt.order):
        if nt.parent[x] >= 0:
            acc[nt.parent[x]] += acc[x]
    return acc


def naive_interest(nt: NaiveTree, e):
    """(independent edges e is cross-interested in, descendant edges e is
    down-interested in), straight from the definitions.

    Every edge leaving T_e is charged to its outside endpoint (for
    w(T_e, T_f)) and to its inside endpoint (for w(T_f, V - T_e)).
    """
    Te = nt.below[e]
    n = nt.g.n
    outside_end = [0] * n
    inside_end = [0] * n
    We = 0
    for a, b, w in nt.g.edges:
        if (a in Te) != (b in Te):
            if b in Te:
                a, b = b, a
            We += w
            inside_end[a] += w
            outside_end[b] += w
    into = _subtree_sums(nt, outside_end)
    out_of = _subtree_sums(nt, inside_end)
    cross, down = [], []
    for f in nt.tree_edges:
        if f == e:
            continue
        v = nt.lower[f]
        rel = nt.relation(e, f)
        if rel == "independent" and We < 2 * into[v]:
            cross.append(f)
        elif rel == "descendant" and We < 2 * out_of[v]:
            down.append(f)
    return cross, down


def deepest_on_chain(nt: NaiveTree, edge_ids):
    """Check that the edges' lower endpoints form one downward chain and
    return its deepest lower endpoint (None for an empty set)."""
    if not edge_ids:
        return None
    lows = [nt.lower[f] for f in edge_ids]
    depth = {v: len(nt.ancestors(v)) for v in lows}
    lows.sort(key=depth.get)
    for a, b in zip(lows, lows[1:]):
        assert nt.parent[b] == a, "interested edges do not form a downward path"
    return lows[-1]


def naive_frontier(nt: NaiveTree, e):
    """(c_e, d_e) as lower endpoints, with the ancestor conventions."""
    u = nt.lower[e]
    cross, down = naive_interest(nt, e)
    c = deepest_on_chain(nt, cross)
    if c is None:
        c = nt.parent[u]
    else:
        top = min((nt.lower[f] for f in cross), key=lambda v: len(nt.ancestors(v)))
        assert nt.parent[top] in nt.ancestors(u), "cross path is not anchored on the ancestor chain"
    d = deepest_on_chain(nt, down)
    if d is None:
        d = u
    else:
        top = min((nt.lower[f] for f in down), key=lambda v: len(nt.ancestors(v)))
        assert nt.parent[top] == u, "down path does not start below e"
    return c, d
