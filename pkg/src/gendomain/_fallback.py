"""Pure numpy versions of the distance kernels.

Same signatures and semantics as the compiled ``_kernels`` module.  Work is
chunked so that no intermediate array exceeds a few million entries.
"""

import math

import numpy as np

_CHUNK_ENTRIES = 1 << 21


def _lp(a, p):
    # a: nonnegative, already weighted; reduces the last axis
    if p == math.inf:
        return a.max(axis=-1)
    if p == 1.0:
        return a.sum(axis=-1)
    if p == 2.0:
        return np.sqrt(np.einsum("...i,...i->...", a, a))
    return (a ** p).sum(axis=-1) ** (1.0 / p)


def _rows_per_chunk(n, d):
    return max(1, _CHUNK_ENTRIES // max(1, n * d))


def nearest(points, nodes, p, weights):
    """Distance to, and index of, the nearest node for every point (ties -> lowest index)."""
    points = np.ascontiguousarray(points, dtype=float)
    nodes = np.ascontiguousarray(nodes, dtype=float)
    m = points.shape[0]
    n, d = nodes.shape
    dist = np.empty(m)
    idx = np.empty(m, dtype=np.intp)
    step = _rows_per_chunk(n, d)
    for s in range(0, m, step):
        diff = np.abs(points[s:s + step, None, :] - nodes[None, :, :]) * weights
        dd = _lp(diff, p)
        j = dd.argmin(axis=1)
        idx[s:s + step] = j
        dist[s:s + step] = dd[np.arange(j.size), j]
    return dist, idx


def box_sup_bound(centers, half, nodes, p, weights):
    """``min_i max_{y in box} ||y - x_i||`` for axis-aligned boxes ``center +- half``."""
    centers = np.ascontiguousarray(centers, dtype=float)
    half = np.ascontiguousarray(half, dtype=float)
    nodes = np.ascontiguousarray(nodes, dtype=float)
    b = centers.shape[0]
    n, d = nodes.shape
    out = np.empty(b)
    step = _rows_per_chunk(n, d)
    for s in range(0, b, step):
        far = (np.abs(centers[s:s + step, None, :] - nodes[None, :, :]) + half[s:s + step, None, :]) * weights
        out[s:s + step] = _lp(far, p).min(axis=1)
    return out


def max_dist(cands, points, p, weights):
    """For each candidate, the largest distance to any of ``points``."""
    cands = np.ascontiguousarray(cands, dtype=float)
    points = np.ascontiguousarray(points, dtype=float)
    c = cands.shape[0]
    m, d = points.shape
    out = np.empty(c)
    step = _rows_per_chunk(m, d)
    for s in range(0, c, step):
        diff = np.abs(cands[s:s + step, None, :] - points[None, :, :]) * weights
        out[s:s + step] = _lp(diff, p).max(axis=1)
    return out
