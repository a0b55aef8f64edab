# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled query loops for the range-counting backends.

Layouts mirror the pure-Python implementations in ``rangeindex``; the
callers guarantee every partial sum fits in int64.
"""
import numpy as np
cimport numpy as cnp

from libc.stdint cimport int64_t

cnp.import_array()


cdef inline Py_ssize_t _lower_bound(const int64_t[:] a, Py_ssize_t lo, Py_ssize_t hi, int64_t key) noexcept nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline Py_ssize_t _upper_bound(const int64_t[:] a, Py_ssize_t lo, Py_ssize_t hi, int64_t key) noexcept nogil:
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] <= key:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef class MergeTreeCore:
    cdef int64_t[:] xs
    cdef int64_t[:, :] ys
    cdef int64_t[:, :] cum
    cdef Py_ssize_t m
    cdef public long long queries
    cdef public long long nodes_visited

    def __init__(self, xs, ys, ws, perms):
        cdef Py_ssize_t L = perms.shape[0]
        self.m = xs.shape[0]
        self.xs = np.ascontiguousarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        ws = np.asarray(ws, dtype=np.int64)
        perms = np.asarray(perms, dtype=np.int64)
        self.ys = np.ascontiguousarray(ys[perms])
        cum = np.zeros((L, self.m + 1), dtype=np.int64)
        if self.m:
            cum[:, 1:] = np.cumsum(ws[perms], axis=1)
        self.cum = cum
        self.queries = 0
        self.nodes_visited = 0

    cpdef object rect_sum(self, int64_t x1, int64_t x2, int64_t y1, int64_t y2):
        cdef Py_ssize_t a, b, s, e, lo, hi
        cdef int level = 0
        cdef int64_t total = 0
        cdef long long visits = 0
        with nogil:
            a = _lower_bound(self.xs, 0, self.m, x1)
            b = _upper_bound(self.xs, 0, self.m, x2)
            while a < b:
                if a & 1:
                    s = a << level
                    e = s + (1 << level)
                    if e > self.m:
                        e = self.m
                    lo = _lower_bound(self.ys[level], s, e, y1)
                    hi = _upper_bound(self.ys[level], lo, e, y2)
                    total += self.cum[level, hi] - self.cum[level, lo]
                    visits += 1
                    a += 1
                if b & 1:
                    b -= 1
                    s = b << level
                    e = s + (1 << level)
                    if e > self.m:
                        e = self.m
                    lo = _lower_bound(self.ys[level], s, e, y1)
                    hi = _upper_bound(self.ys[level], lo, e, y2)
                    total += self.cum[level, hi] - self.cum[level, lo]
                    visits += 1
                a >>= 1
                b >>= 1
                level += 1
        self.queries += 1
        self.nodes_visited += visits
        return total


cdef class GridFanoutCore:
    cdef int64_t[:] ostart, oend, ofirst, ocount, okids
    cdef int64_t[:] istart, iend, iweight, ifirst, icount, ikids, iroot
    cdef int64_t oroot
    cdef public long long queries
    cdef public long long nodes_visited
    cdef public long long one_d_queries

    def __init__(self, ostart, oend, ofirst, ocount, okids,
                 istart, iend, iweight, ifirst, icount, ikids, iroot, oroot):
        self.ostart, self.oend, self.ofirst, self.ocount, self.okids = ostart, oend, ofirst, ocount, okids
        self.istart, self.iend, self.iweight = istart, iend, iweight
        self.ifirst, self.icount, self.ikids, self.iroot = ifirst, icount, ikids, iroot
        self.oroot = oroot
        self.queries = 0
        self.nodes_visited = 0
        self.one_d_queries = 0

    cdef int64_t _suffix(self, int64_t node, int64_t k, long long* visits) noexcept nogil:
        cdef int64_t total = 0, nxt, c
        cdef Py_ssize_t idx, a
        visits[0] += 1
        if self.istart[node] >= k:
            return self.iweight[node]
        while True:
            a = self.ifirst[node]
            nxt = -1
            idx = a + self.icount[node] - 1
            while idx >= a:
                c = self.ikids[idx]
                visits[0] += 1
                if self.istart[c] >= k:
                    total += self.iweight[c]
                elif self.iend[c] >= k:
                    nxt = c
                    break
                else:
                    break
                idx -= 1
            if nxt < 0:
                return total
            node = nxt

    cpdef object dominance(self, int64_t x, int64_t y):
        cdef int64_t kx = x - 1, ky = y - 1
        cdef int64_t node = self.oroot, nxt, c, total = 0
        cdef Py_ssize_t idx, a
        cdef long long visits = 1, oned = 0
        with nogil:
            while True:
                a = self.ofirst[node]
                nxt = -1
                idx = a + self.ocount[node] - 1
                while idx >= a:
                    c = self.okids[idx]
                    visits += 1
                    if self.ostart[c] >= ky:
                        total += self._suffix(self.iroot[c], kx, &visits)
                        oned += 1
                    elif self.oend[c] >= ky:
                        nxt = c
                        break
                    else:
                        break
                    idx -= 1
                if nxt < 0:
                    break
                node = nxt
        self.queries += 1
        self.nodes_visited += visits
        self.one_d_queries += oned
        return total
