"""Row minima and global minima of implicitly defined Monge matrices.

All searches break ties by smallest row, then smallest column, in the
caller's coordinates.  Ties are resolved by comparing ``(value, column)``
keys; adding an infinitesimal multiple of the column index is a column-only
perturbation, so it keeps a Monge matrix Monge and makes every row minimum
unique.
"""
from __future__ import annotations

from typing import Callable, Optional, Sequence


class ImplicitMatrix:
    """An ``rows x cols`` matrix given by a pure function ``fn(i, j)``."""

    def __init__(self, rows: int, cols: int, fn: Callable[[int, int], object]):
        self.rows = rows
        self.cols = cols
        self.fn = fn
        self.evaluations = 0

    def __call__(self, i: int, j: int):
        self.evaluations += 1
        return self.fn(i, j)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "ImplicitMatrix":
        """Submatrix rows [r0, r1) x cols [c0, c1); evaluations count here and in the parent."""
        return ImplicitMatrix(r1 - r0, c1 - c0, lambda i, j: self(i + r0, j + c0))

    def dense(self) -> list[list]:
        return [[self.fn(i, j) for j in range(self.cols)] for i in range(self.rows)]


def _smawk(rows: Sequence[int], cols: Sequence[int], key) -> dict:
    """Row minima of a totally monotone matrix; ``cols`` is listed in the
    order along which minima positions are nondecreasing."""
    if not rows:
        return {}
    stack: list = []
    nrows = len(rows)
    for c in cols:
        while stack:
            r = rows[len(stack) - 1]
            if key(r, stack[-1]) <= key(r, c):
                break
            stack.pop()
        if len(stack) < nrows:
            stack.append(c)
    cols = stack
    res = _smawk(rows[1::2], cols, key)
    pos = {c: i for i, c in enumerate(cols)}
    start = 0
    for k in range(0, nrows, 2):
        r = rows[k]
        stop = pos[res[rows[k + 1]]] if k + 1 < nrows else len(cols) - 1
        best = cols[start]
        best_key = key(r, best)
        for idx in range(start + 1, stop + 1):
            kk = key(r, cols[idx])
            if kk < best_key:
                best, best_key = cols[idx], kk
        res[r] = best
        start = stop
    return res


def _cached_key(m: ImplicitMatrix):
    cache: dict = {}

    def key(i, j):
        k = (i, j)
        v = cache.get(k)
        if v is None:
            v = cache[k] = (m(i, j), j)
        return v

    return key, cache


def smawk_row_minima(m: ImplicitMatrix, column_order: Optional[Sequence[int]] = None) -> list[tuple[int, object]]:
    """Leftmost minimum of every row as ``(column, value)``.

    Requires leftmost-minimum columns to be nondecreasing down the rows
    (true for Monge matrices).  ``column_order`` lists the columns in the
    order along which that holds; ties are still broken by smallest column.
    """
    if m.rows == 0 or m.cols == 0:
        return [] if m.rows == 0 else [(None, None)] * m.rows
    cols = list(range(m.cols)) if column_order is None else list(column_order)
    key, cache = _cached_key(m)
    if m.rows == 1 or m.cols == 1:
        out = []
        for i in range(m.rows):
            best = min(cols, key=lambda j: key(i, j))
            out.append((best, cache[(i, best)][0]))
        return out
    res = _smawk(list(range(m.rows)), cols, key)
    return [(res[i], cache[(i, res[i])][0]) for i in range(m.rows)]


def monge_global_min(m: ImplicitMatrix, inverse: bool = True) -> Optional[tuple[int, int, object]]:
    """Smallest entry of a Monge matrix as ``(i, j, value)``.

    ``inverse=True`` expects ``M[i,j] + M[i+1,j+1] >= M[i,j+1] + M[i+1,j]``;
    reading the columns right to left turns that into the standard form.
    """
    if m.rows == 0 or m.cols == 0:
        return None
    order = range(m.cols - 1, -1, -1) if inverse else range(m.cols)
    minima = smawk_row_minima(m, order)
    best = None
    for i, (j, v) in enumerate(minima):
        if best is None or (v, i, j) < (best[2], best[0], best[1]):
            best = (i, j, v)
    return best


def staircase_monge_min(m: ImplicitMatrix, exclude_diagonal: bool = True) -> Optional[tuple[int, int, object]]:
    """Minimum off-diagonal entry of a symmetric partial Monge matrix.

    Only the strict upper triangle is searched.  Rows ``[lo, h)`` against
    columns ``[h, hi)`` form a full rectangle that never touches the
    diagonal, so it is solved with SMAWK; the two triangles left over recurse.
    That costs O(l log l) evaluations for an l x l matrix.
    """
    if not exclude_diagonal:
        raise ValueError("only the excluded-diagonal variant is supported")
    if m.rows != m.cols:
        raise ValueError("staircase search needs a square matrix")
    if m.rows < 2:
        return None
    best = None
    work = [(0, m.rows)]
    while work:
        lo, hi = work.pop()
        if hi - lo < 2:
            continue
        h = (lo + hi) // 2
        got = monge_global_min(m.block(lo, h, h, hi), inverse=True)
        i, j, v = got[0] + lo, got[1] + h, got[2]
        if best is None or (v, i, j) < (best[2], best[0], best[1]):
            best = (i, j, v)
        work.append((h, hi))
        work.append((lo, h))
    return best


def naive_row_minima(m: ImplicitMatrix) -> list[tuple[int, object]]:
    out = []
    for i in range(m.rows):
        row = [m.fn(i, j) for j in range(m.cols)]
        v = min(row)
        out.append((row.index(v), v))
    return out
