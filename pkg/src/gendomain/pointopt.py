"""Node-set construction: grids, extremal ball unions, greedy covering, Lloyd descent.

Optimised node sets only ever give upper bounds on the optimal error; the
exact constructions (grids, centres of disjoint equal balls) are the
reference points the optimisers are measured against.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .domains import BallUnion, Box, Domain, ImplicitMask, sample_uniform, volume
from .geometry import L2, NormSpec
from .wce import LIPSCHITZ, ModulusOfContinuity, certified_covering_radius

OBJECTIVES = ("covering", "quantization")


@dataclass
class OptimizerConfig:
    iterations: int = 40
    restarts: int = 8
    samples_per_cell: int = 200
    seed: int = 0
    objective: str = "covering"
    pool: int = 10_000
    eval_samples: int | None = None
    omega: ModulusOfContinuity = field(default=LIPSCHITZ, compare=False)

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError(f"objective must be one of {OBJECTIVES}")
        for name in ("iterations", "restarts", "samples_per_cell", "pool"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


# exact reference constructions ---------------------------------------------

def grid_coordinates(lo: float, hi: float, m: int) -> np.ndarray:
    return lo + (hi - lo) * (np.arange(m) + 0.5) / m


def make_grid_points(box: Domain, m: int) -> np.ndarray:
    """The ``m^d`` cell centres of a box; covering radius ``side / (2m)`` in the max-norm."""
    if not isinstance(box, Box):
        raise TypeError("grid points need a Box domain")
    if m < 1:
        raise ValueError("m must be >= 1")
    axes = [grid_coordinates(l, h, m) for l, h in zip(box.lo, box.hi)]
    return np.array(list(itertools.product(*axes)))


def make_extremal_ball_union(n: int, delta: float, d: int, norm: NormSpec = L2,
                             spacing: float | None = None):
    """``n`` disjoint balls ``delta*B`` centred on the first axis, nodes at the centres."""
    if spacing is None:
        spacing = 3.0 * delta
    w0 = norm.weight_array(d)[0]
    if not spacing * w0 > 2 * delta:
        raise ValueError("spacing must exceed 2*delta (in the norm) for disjoint balls")
    centers = np.zeros((n, d))
    centers[:, 0] = spacing * np.arange(n)
    D = BallUnion(tuple(map(tuple, centers)), (float(delta),) * n, norm, True)
    return D, centers


# greedy farthest point -------------------------------------------------------

def approximate_center(points: np.ndarray, norm: NormSpec, n_candidates: int = 1024,
                       extra=None) -> np.ndarray:
    """Best of a candidate set for ``min_c max_y ||y - c||`` over the given points."""
    cands = [points[:n_candidates], points.mean(axis=0, keepdims=True),
             0.5 * (points.min(axis=0) + points.max(axis=0))[None, :]]
    if extra is not None:
        cands.append(np.atleast_2d(extra))
    cands = np.concatenate(cands)
    return cands[np.argmin(kernels.max_dist(cands, points, norm))]


def greedy_farthest_point(D: Domain, n: int, norm: NormSpec = L2, seed: int = 0,
                          pool: int = 10_000, n_center_candidates: int = 1024) -> np.ndarray:
    """Gonzalez farthest-point insertion over a sampled candidate pool.

    The first node is an approximate Chebyshev centre of the pool; the result
    covers the pool within twice the optimal radius.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    P = sample_uniform(D, pool, seed)
    first = approximate_center(P, norm, n_center_candidates)
    if not D.contains(first):
        first = P[np.argmin(norm.norm(P - first))]
    X = np.empty((n, D.d))
    X[0] = first
    dist = kernels.min_dist(P, X[:1], norm)
    for t in range(1, n):
        j = int(dist.argmax())
        X[t] = P[j]
        dist = np.minimum(dist, norm.norm(P - P[j]))
    return X


# Lloyd-type descent ----------------------------------------------------------

def _group(idx, n):
    order = np.argsort(idx, kind="stable")
    counts = np.bincount(idx, minlength=n)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    return order, counts, starts


def _covering_centers_inf(S, idx, n):
    order, counts, starts = _group(idx, n)
    Ss = S[order]
    nz = counts > 0
    lo = np.full((n, S.shape[1]), np.nan)
    hi = np.full((n, S.shape[1]), np.nan)
    lo[nz] = np.minimum.reduceat(Ss, starts[nz], axis=0)
    hi[nz] = np.maximum.reduceat(Ss, starts[nz], axis=0)
    return 0.5 * (lo + hi), nz


def _min_enclosing_l2(P, w, iters=200):
    # Badoiu-Clarkson iteration in the weighted coordinates
    Q = P * w
    c = 0.5 * (Q.min(axis=0) + Q.max(axis=0))
    for k in range(1, iters + 1):
        far = Q[np.argmax(((Q - c) ** 2).sum(axis=1))]
        c = c + (far - c) / (k + 1)
    best = c
    r = np.sqrt(((Q - c) ** 2).sum(axis=1)).max()
    c0 = 0.5 * (Q.min(axis=0) + Q.max(axis=0))
    if np.sqrt(((Q - c0) ** 2).sum(axis=1)).max() < r:
        best = c0
    return best / w


def _one_center(P, norm: NormSpec, current):
    if norm.is_inf:
        return 0.5 * (P.min(axis=0) + P.max(axis=0))
    if norm.p == 2:
        return _min_enclosing_l2(P, norm.weight_array(P.shape[1]))
    c0 = approximate_center(P, norm, 64, extra=current)
    res = minimize(lambda c: float(norm.norm(P - c).max()), c0, method="Nelder-Mead",
                   options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 400})
    return res.x if res.fun <= float(norm.norm(P - c0).max()) else c0


def _weiszfeld(P, w, start, iters=100):
    Q = P * w
    c = start * w
    for _ in range(iters):
        r = np.sqrt(((Q - c) ** 2).sum(axis=1))
        r = np.maximum(r, 1e-12)
        c_new = (Q / r[:, None]).sum(axis=0) / (1.0 / r).sum()
        if np.abs(c_new - c).max() < 1e-12:
            c = c_new
            break
        c = c_new
    return c / w


def _quantization_center(P, norm: NormSpec, omega: ModulusOfContinuity, current):
    if omega.tag == "identity":
        if norm.p == 1:
            return np.median(P, axis=0)
        if norm.p == 2:
            return _weiszfeld(P, norm.weight_array(P.shape[1]), P.mean(axis=0))
    f = lambda c: float(omega(norm.norm(P - c)).sum())  # noqa: E731
    c0 = P.mean(axis=0)
    if f(current) < f(c0):
        c0 = current
    return minimize(f, c0, method="Nelder-Mead", options={"xatol": 1e-9, "fatol": 1e-12, "maxiter": 400}).x


def _objective(kind, E, X, norm, omega, vol):
    g = kernels.min_dist(E, X, norm)
    if kind == "covering":
        return float(g.max())
    return vol * float(omega(g).mean())


@dataclass
class LloydResult:
    points: np.ndarray
    trace: list
    best_iteration: int
    reseeded: list


def lloyd_descent(D: Domain, X0, cfg: OptimizerConfig = OptimizerConfig(), norm: NormSpec = L2) -> LloydResult:
    """Alternate nearest-node classification of samples with per-cell centre updates.

    Covering: each node moves to the 1-centre of its cell samples (exact
    midrange for the max-norm, Badoiu-Clarkson for l_2, candidate search
    plus Nelder-Mead otherwise).  Quantization: each node moves to the
    minimiser of ``sum omega(dist)`` over its cell samples.  Nodes that leave
    ``D`` are replaced by the nearest cell sample; empty cells are re-seeded.
    The returned points are the best iterate on a fixed evaluation sample.
    """
    X = np.array(X0, dtype=float, copy=True)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("need a nonempty (n, d) initial node array")
    n = X.shape[0]
    vol = volume(D, 200_000, cfg.seed + 7).value
    n_eval = cfg.eval_samples or max(20_000, 2 * cfg.samples_per_cell * n)
    E = sample_uniform(D, n_eval, cfg.seed + 1_000_003)
    best = _objective(cfg.objective, E, X, norm, cfg.omega, vol)
    best_X, best_it = X.copy(), 0
    trace = [{"iteration": 0, "objective": best, "best": best}]
    reseeded = []
    for it in range(1, cfg.iterations + 1):
        S = sample_uniform(D, cfg.samples_per_cell * n, cfg.seed * 100_003 + it)
        _, idx = kernels.nearest(S, X, norm)
        if cfg.objective == "covering" and norm.is_inf:
            C, nz = _covering_centers_inf(S, idx, n)
        else:
            order, counts, starts = _group(idx, n)
            nz = counts > 0
            C = np.full_like(X, np.nan)
            for i in np.nonzero(nz)[0]:
                P = S[order[starts[i]:starts[i] + counts[i]]]
                if cfg.objective == "covering":
                    C[i] = _one_center(P, norm, X[i])
                else:
                    C[i] = _quantization_center(P, norm, cfg.omega, X[i])
        outside = nz & ~D.contains(np.where(np.isnan(C), X, C))
        for i in np.nonzero(outside)[0]:
            P = S[idx == i]
            C[i] = P[np.argmin(norm.norm(P - C[i]))]
        empty = np.nonzero(~nz)[0]
        if empty.size:
            fresh = sample_uniform(D, empty.size, cfg.seed * 7919 + it)
            C[empty] = fresh
            reseeded.append({"iteration": it, "nodes": empty.tolist()})
        X = C
        obj = _objective(cfg.objective, E, X, norm, cfg.omega, vol)
        if obj < best:
            best, best_X, best_it = obj, X.copy(), it
        trace.append({"iteration": it, "objective": obj, "best": best, "reseeded": int(empty.size)})
    return LloydResult(best_X, trace, best_it, reseeded)


@dataclass
class OptimizeResult:
    points: np.ndarray
    objective: float
    certified: object | None
    restart: int
    trace: list
    restarts: list


def optimize_nodes(D: Domain, n: int, norm: NormSpec = L2, cfg: OptimizerConfig = OptimizerConfig(),
                   certify_tol: float = 1e-4) -> OptimizeResult:
    """Greedy initialisation followed by Lloyd descent, best of ``cfg.restarts``.

    For the covering objective on boxes and ball unions the restarts are
    ranked by their certified covering radius (upper end); otherwise by the
    Monte-Carlo objective.
    """
    certifiable = cfg.objective == "covering" and not isinstance(D, ImplicitMask)
    best = None
    summaries = []
    for r in range(cfg.restarts):
        seed = cfg.seed + 1009 * r
        X0 = greedy_farthest_point(D, n, norm, seed=seed, pool=max(cfg.pool, 20 * n))
        sub = OptimizerConfig(cfg.iterations, 1, cfg.samples_per_cell, seed, cfg.objective,
                              cfg.pool, cfg.eval_samples, cfg.omega)
        res = lloyd_descent(D, X0, sub, norm)
        cert = certified_covering_radius(D, res.points, norm, tol=certify_tol) if certifiable else None
        score = cert.hi if cert is not None else res.trace[res.best_iteration]["best"]
        summaries.append({"restart": r, "seed": seed, "score": score,
                          "mc_objective": res.trace[res.best_iteration]["best"]})
        if best is None or score < best[0]:
            best = (score, r, res, cert)
    score, r, res, cert = best
    return OptimizeResult(res.points, score, cert, r, res.trace, summaries)


# fooling function for the C~^2 integration example ---------------------------

def _spline_1d(u, h, a):
    # u = distance to the nearest grid coordinate, in [0, h/2]
    q = 0.25 * h
    return np.where(u <= q, a * u * u, a * (h * h / 8.0 - (0.5 * h - u) ** 2))


@dataclass
class FoolingCertificate:
    m: int
    d: int
    amplitude: float
    integral: float
    integral_coefficient: float
    vanishes_at_nodes: bool
    max_abs: float
    lipschitz_1d: float
    derivative_lipschitz_1d: float
    lipschitz_d: float
    derivative_lipschitz_d: float
    class_ok: bool


def fooling_function(box: Box, m: int, amplitude: float = 0.5, check_points: int = 20_001):
    """Nonnegative C^1 quadratic spline vanishing on the ``m^d`` grid, with certificate.

    In one variable ``f_1`` is periodic with period ``h = side/m``: ``a u^2``
    for ``u <= h/4`` and ``a (h^2/8 - (h/2 - u)^2)`` for ``h/4 <= u <= h/2``,
    where ``u`` is the distance to the nearest grid coordinate.  Then
    ``f_d(x) = (1/d) sum_i f_1(x^i)``.  With ``a = 1/2`` one has
    ``|f_1'| <= h/4``, ``|f_1''| <= 1``, so on the unit cube
    ``Lip(f_d) <= d^(-1/2)`` and every directional derivative is
    ``d^(-1)``-Lipschitz.  ``int f_d = vol * mean_i(a h_i^2 / 16)``, which is
    ``n^(-2/d) / 32`` on the unit cube with ``n = m^d`` nodes.
    """
    if not isinstance(box, Box):
        raise TypeError("fooling function needs a Box domain")
    d = box.d
    coords = [grid_coordinates(l, h, m) for l, h in zip(box.lo, box.hi)]
    hs = np.array([(h - l) / m for l, h in zip(box.lo, box.hi)])
    lo = np.array(box.lo)
    a = float(amplitude)

    def f(x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        total = np.zeros(len(x))
        for k in range(d):
            j = np.clip(np.rint((x[:, k] - lo[k]) / hs[k] - 0.5), 0, m - 1).astype(int)
            u = np.abs(x[:, k] - coords[k][j])
            total += _spline_1d(u, hs[k], a)
        return total / d

    nodes = make_grid_points(box, m)
    at_nodes = f(nodes)
    vol = box.exact_volume()
    integral = vol * float(np.mean(a * hs ** 2 / 16.0))

    # derivative bounds of f_1 from a fine 1-D grid on the longest side
    k = int(np.argmax(hs))
    t = np.linspace(box.lo[k], box.hi[k], check_points)
    jj = np.clip(np.rint((t - lo[k]) / hs[k] - 0.5), 0, m - 1).astype(int)
    f1 = _spline_1d(np.abs(t - coords[k][jj]), hs[k], a)
    dt = t[1] - t[0]
    lip1 = float(np.abs(np.diff(f1)).max() / dt)
    slope = np.diff(f1) / dt
    dlip1 = float(np.abs(np.diff(slope)).max() / dt)
    lip_d = lip1 / math.sqrt(d)
    dlip_d = dlip1 / d
    tol = 1e-6
    max_abs = float(np.max(f1))
    class_ok = (max_abs <= 1 + tol and lip_d <= d ** -0.5 * (1 + 1e-3) + tol
                and dlip_d <= (1.0 / d) * (1 + 1e-3) + tol)
    cert = FoolingCertificate(m, d, a, integral, integral * m ** 2, bool(np.all(at_nodes == 0.0)),
                              max_abs, lip1, dlip1, lip_d, dlip_d, bool(class_ok))
    return f, cert
