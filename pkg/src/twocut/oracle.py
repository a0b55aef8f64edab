"""Cut values and interest predicates for pairs of tree edges, answered with
rectangle sums over postorder coordinates.

Every graph edge (a, b) becomes the two points (â, b̂) and (b̂, â).  For
subtree intervals I = [lo_I, hi_I] and J:

* weight between disjoint subtrees      = rect(I x J)
* weight from J (inside I) to outside I = rect(J x [1, lo_I - 1]) + rect(J x [hi_I + 1, n])

and the cut determined by two tree edges follows from the two boundary
weights minus twice the relevant cross term.
"""
from __future__ import annotations

from fractions import Fraction

from .graph import Graph
from .rangeindex import build_index
from .tree import RootedTree


class CandidacyError(ValueError):
    """A non-tree (or virtual) edge was offered as a cut candidate."""


class CutOracle:
    def __init__(self, g: Graph, t: RootedTree, backend: str = "merge", epsilon=Fraction(1, 4), kernel: str = "auto"):
        self.graph = g
        self.tree = t
        self.backend = backend
        self.n = t.n
        post = t.post
        points = []
        for a, b, w in g.edges:
            points.append((post[a], post[b], w))
            points.append((post[b], post[a], w))
        self.index = build_index(points, t.n, backend=backend, epsilon=epsilon, kernel=kernel)
        self._rect = self.index.rect_sum
        self.lo = t.post_low
        self.hi = t.post
        self.W = t.down_weight
        self.queries = 0

    @property
    def point_weight(self):
        return self.index.total

    # -- interval primitives --------------------------------------------

    def between(self, a_lo, a_hi, b_lo, b_hi):
        """Weight between two disjoint vertex intervals."""
        return self._rect(a_lo, a_hi, b_lo, b_hi)

    def leaving(self, inner_lo, inner_hi, outer_lo, outer_hi):
        """Weight from ``inner`` (nested in ``outer``) to outside ``outer``."""
        r = self._rect
        return r(inner_lo, inner_hi, 1, outer_lo - 1) + r(inner_lo, inner_hi, outer_hi + 1, self.n)

    def boundary(self, lo, hi):
        return self.leaving(lo, hi, lo, hi)

    # -- edge-level queries (tree edges named by lower endpoint) ----------

    def _lower(self, eid: int) -> int:
        try:
            return self.tree.lower_endpoint(eid)
        except ValueError:
            raise CandidacyError(f"edge {eid} is not a tree edge") from None

    def cut_one(self, eid: int):
        return self.W[self._lower(eid)]

    def cut_value(self, e: int, f: int):
        if e == f:
            raise ValueError("cut_value needs two distinct tree edges")
        return self.cut_lower(self._lower(e), self._lower(f))

    def cut_lower(self, u: int, v: int):
        self.queries += 1
        lo, hi, W = self.lo, self.hi, self.W
        ulo, uhi, vlo, vhi = lo[u], hi[u], lo[v], hi[v]
        if uhi < vlo or vhi < ulo:
            return W[u] + W[v] - 2 * self._rect(ulo, uhi, vlo, vhi)
        if ulo <= vlo and vhi <= uhi:
            return W[u] + W[v] - 2 * self.leaving(vlo, vhi, ulo, uhi)
        return W[u] + W[v] - 2 * self.leaving(ulo, uhi, vlo, vhi)

    def relation(self, e: int, f: int) -> str:
        """'independent', 'descendant' (f below e) or 'ancestor' (f above e)."""
        u, v = self._lower(e), self._lower(f)
        if u == v:
            return "same"
        lo, hi = self.lo, self.hi
        if hi[u] < lo[v] or hi[v] < lo[u]:
            return "independent"
        return "descendant" if lo[u] <= lo[v] and hi[v] <= hi[u] else "ancestor"

    def is_cross_interested(self, e: int, f: int) -> bool:
        rel = self.relation(e, f)
        if rel == "ancestor":
            return True
        if rel != "independent":
            raise ValueError(f"cross-interest is undefined for a {rel} edge")
        self.queries += 1
        u, v = self._lower(e), self._lower(f)
        return self.W[u] < 2 * self._rect(self.lo[u], self.hi[u], self.lo[v], self.hi[v])

    def is_down_interested(self, e: int, f: int) -> bool:
        rel = self.relation(e, f)
        if rel == "ancestor":
            return True
        if rel != "descendant":
            raise ValueError(f"down-interest is undefined for a {rel} edge")
        self.queries += 1
        u, v = self._lower(e), self._lower(f)
        return self.W[u] < 2 * self.leaving(self.lo[v], self.hi[v], self.lo[u], self.hi[u])

    # -- predicates over arbitrary subtree intervals (binarized nodes) ------

    def cross_reach(self, u: int, lo: int, hi: int) -> bool:
        """Does more than half of w(T_u) land in [lo, hi] minus T_u?

        Closed under taking ancestors, so the true intervals form one
        root-anchored path.  On independent intervals this is exactly
        cross-interest.
        """
        ulo, uhi = self.lo[u], self.hi[u]
        if lo >= ulo and hi <= uhi:
            return False
        self.queries += 1
        if hi < ulo or uhi < lo:
            got = self._rect(ulo, uhi, lo, hi)
        else:
            r = self._rect
            got = r(ulo, uhi, lo, ulo - 1) + r(ulo, uhi, uhi + 1, hi)
        return self.W[u] < 2 * got

    def down_reach(self, u: int, lo: int, hi: int) -> bool:
        """Down-interest of T_u in the interval, with the interval of u itself
        and every ancestor counted as interesting."""
        ulo, uhi = self.lo[u], self.hi[u]
        if lo <= ulo and uhi <= hi:
            return True
        if hi < ulo or uhi < lo:
            return False
        self.queries += 1
        return self.W[u] < 2 * self.leaving(lo, hi, ulo, uhi)


def build_cut_oracle(g: Graph, t: RootedTree, backend: str = "merge", epsilon=Fraction(1, 4), kernel: str = "auto") -> CutOracle:
    return CutOracle(g, t, backend=backend, epsilon=epsilon, kernel=kernel)
