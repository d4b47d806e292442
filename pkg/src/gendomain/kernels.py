"""Backend selection for the distance kernels.

The compiled extension is used when it was built; otherwise (or when the
environment variable ``GENDOMAIN_PURE_PYTHON`` is set to a non-empty value)
the numpy fallback is used.  Both expose ``nearest``, ``box_sup_bound`` and
``max_dist`` with identical semantics.

Nearest-node queries against many nodes go through a k-d tree
(``scipy.spatial.cKDTree``) in either backend; brute force wins below
``TREE_MIN_NODES`` nodes.  The tree does not promise the lowest index on
exact distance ties, which only occur on a null set of query points.
"""

import os

import numpy as np
from scipy.spatial import cKDTree

from . import _fallback

TREE_MIN_NODES = 128

_compiled = None
if not os.environ.get("GENDOMAIN_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

_impl = _compiled if _compiled is not None else _fallback
BACKEND = "compiled" if _compiled is not None else "python"


def available_backends():
    out = {"python": _fallback}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


def _prep(points, nodes, norm):
    points = np.atleast_2d(np.asarray(points, dtype=float))
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    if points.shape[1] != nodes.shape[1]:
        raise ValueError(f"dimension mismatch: {points.shape[1]} vs {nodes.shape[1]}")
    return points, nodes, norm.weight_array(nodes.shape[1])


def nearest(points, nodes, norm, use_tree=True):
    points, nodes, w = _prep(points, nodes, norm)
    if nodes.shape[0] == 0:
        raise ValueError("empty node set")
    if nodes.shape[0] >= TREE_MIN_NODES and use_tree:
        dist, idx = cKDTree(nodes * w).query(points * w, k=1, p=norm.p)
        return dist, idx.astype(np.intp)
    return _impl.nearest(points, nodes, norm.p, w)


def min_dist(points, nodes, norm):
    return nearest(points, nodes, norm)[0]


def box_sup_bound(centers, half, nodes, norm):
    centers, nodes, w = _prep(centers, nodes, norm)
    return _impl.box_sup_bound(centers, np.atleast_2d(half), nodes, norm.p, w)


def max_dist(cands, points, norm):
    cands, points, w = _prep(cands, points, norm)
    return _impl.max_dist(cands, points, norm.p, w)
