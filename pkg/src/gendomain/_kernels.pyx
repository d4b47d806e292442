# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled distance kernels (see ``_fallback`` for the reference semantics)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, pow, INFINITY

cnp.import_array()

# norm kinds: 0 = max, 1 = l1, 2 = l2 (squared inside loops), 3 = general p
cdef int _kind(double p):
    if p == INFINITY:
        return 0
    if p == 1.0:
        return 1
    if p == 2.0:
        return 2
    return 3


cdef inline double _acc(double acc, double a, int kind, double p) nogil:
    if kind == 0:
        return a if a > acc else acc
    if kind == 1:
        return acc + a
    if kind == 2:
        return acc + a * a
    return acc + pow(a, p)


cdef inline double _finish(double acc, int kind, double p) nogil:
    if kind == 2:
        return sqrt(acc)
    if kind == 3:
        return pow(acc, 1.0 / p)
    return acc


def nearest(points, nodes, double p, weights):
    cdef double[:, ::1] X = np.ascontiguousarray(points, dtype=np.float64)
    cdef double[:, ::1] Y = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t m = X.shape[0], n = Y.shape[0], d = Y.shape[1]
    dist_arr = np.empty(m, dtype=np.float64)
    idx_arr = np.empty(m, dtype=np.intp)
    cdef double[::1] dist = dist_arr
    cdef Py_ssize_t[::1] idx = idx_arr
    cdef int kind = _kind(p)
    cdef Py_ssize_t i, j, k, best_j
    cdef double acc, best
    with nogil:
        for i in range(m):
            best = INFINITY
            best_j = 0
            for j in range(n):
                acc = 0.0
                for k in range(d):
                    acc = _acc(acc, fabs(X[i, k] - Y[j, k]) * w[k], kind, p)
                    if acc >= best:
                        break
                if acc < best:
                    best = acc
                    best_j = j
            dist[i] = _finish(best, kind, p)
            idx[i] = best_j
    return dist_arr, idx_arr


def box_sup_bound(centers, half, nodes, double p, weights):
    cdef double[:, ::1] C = np.ascontiguousarray(centers, dtype=np.float64)
    cdef double[:, ::1] H = np.ascontiguousarray(half, dtype=np.float64)
    cdef double[:, ::1] Y = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t b = C.shape[0], n = Y.shape[0], d = Y.shape[1]
    out_arr = np.empty(b, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef int kind = _kind(p)
    cdef Py_ssize_t i, j, k
    cdef double acc, best
    with nogil:
        for i in range(b):
            best = INFINITY
            for j in range(n):
                acc = 0.0
                for k in range(d):
                    acc = _acc(acc, (fabs(C[i, k] - Y[j, k]) + H[i, k]) * w[k], kind, p)
                    if acc >= best:
                        break
                if acc < best:
                    best = acc
            out[i] = _finish(best, kind, p)
    return out_arr


def max_dist(cands, points, double p, weights):
    cdef double[:, ::1] C = np.ascontiguousarray(cands, dtype=np.float64)
    cdef double[:, ::1] X = np.ascontiguousarray(points, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t c = C.shape[0], m = X.shape[0], d = X.shape[1]
    out_arr = np.empty(c, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef int kind = _kind(p)
    cdef Py_ssize_t i, j, k
    cdef double acc, worst
    with nogil:
        for i in range(c):
            worst = 0.0
            for j in range(m):
                acc = 0.0
                for k in range(d):
                    acc = _acc(acc, fabs(C[i, k] - X[j, k]) * w[k], kind, p)
                if acc > worst:
                    worst = acc
            out[i] = _finish(worst, kind, p)
    return out_arr
