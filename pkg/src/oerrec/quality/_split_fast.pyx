# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled CART split-search kernel.

Must stay bit-identical to oerrec.quality._split_py.best_split: same stable
argsort, same float expressions in the same order, same tie-breaking (first
strictly-smaller weighted Gini wins, features scanned ascending, thresholds
ascending within a feature).
"""

from libc.stdint cimport int64_t
from libc.math cimport INFINITY

import numpy as np


def best_split(double[:, ::1] values, int64_t[::1] labels, int64_t[::1] candidates,
               int min_leaf):
    """Best (feature, threshold, weighted_gini) over candidate features, or None.

    Splits send rows with value <= threshold left; only splits leaving at
    least min_leaf rows on each side are considered.
    """
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t m = candidates.shape[0]
    if n < 2 * min_leaf:
        return None

    cdef double best_w = INFINITY
    cdef double best_thr = 0.0
    cdef int64_t best_feature = -1

    cdef Py_ssize_t ci, i, nl, nr
    cdef int64_t f, total1, left0, left1, right0, right1
    cdef double dn = <double> n
    cdef double pl0, pl1, pr0, pr1, gl, gr, w, fnl, fnr
    cdef double[::1] v = np.empty(n, dtype=np.float64)
    cdef int64_t[::1] y = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] order

    values_np = np.asarray(values)

    total1 = 0
    for i in range(n):
        total1 += labels[i]

    for ci in range(m):
        f = candidates[ci]
        order = np.argsort(values_np[:, f], kind="stable").astype(np.int64, copy=False)
        for i in range(n):
            v[i] = values[order[i], f]
            y[i] = labels[order[i]]
        left0 = 0
        left1 = 0
        for i in range(n - 1):
            if y[i] == 1:
                left1 += 1
            else:
                left0 += 1
            if v[i] == v[i + 1]:
                continue
            nl = i + 1
            nr = n - nl
            if nl < min_leaf or nr < min_leaf:
                continue
            right1 = total1 - left1
            right0 = nr - right1
            fnl = <double> nl
            fnr = <double> nr
            pl0 = left0 / fnl
            pl1 = left1 / fnl
            pr0 = right0 / fnr
            pr1 = right1 / fnr
            gl = 1.0 - pl0 * pl0 - pl1 * pl1
            gr = 1.0 - pr0 * pr0 - pr1 * pr1
            w = (fnl * gl + fnr * gr) / dn
            if w < best_w:
                best_w = w
                best_thr = (v[i] + v[i + 1]) / 2.0
                best_feature = f

    if best_feature < 0:
        return None
    return int(best_feature), best_thr, best_w
