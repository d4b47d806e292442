"""Worst-case errors of sampling algorithms on Hölder/Lipschitz classes.

For nodes ``X`` in a domain ``D`` and the class of functions with modulus of
continuity ``omega`` (w.r.t. a norm), the function ``g(x) = min_i ||x - x_i||``
controls both problems:

* L_inf recovery: the radius of information is ``omega(sup_D g)``;
* integration: it is ``int_D omega(g(x)) dx``, attained by ``omega o g``
  itself, which is admissible and vanishes on ``X``.

``sup_D g`` (the covering radius) is computed either by certified
branch-and-bound over boxes or by a Monte-Carlo maximum, which is only a lower
estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels
from .domains import BallUnion, Box, Domain, ImplicitMask, bbox_hit_fraction, sample_uniform, volume
from .geometry import L2, NormSpec


class UnsupportedDomainError(TypeError):
    pass


@dataclass(frozen=True)
class ModulusOfContinuity:
    """A modulus ``omega`` with ``omega(0) = 0``, nondecreasing and subadditive."""

    func: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    tag: str = "custom"
    alpha: float = 1.0

    def __call__(self, h):
        return self.func(np.asarray(h, dtype=float))

    @classmethod
    def lipschitz(cls) -> "ModulusOfContinuity":
        return cls(lambda h: h, "identity", 1.0)

    @classmethod
    def power(cls, alpha: float) -> "ModulusOfContinuity":
        if not 0 < alpha <= 1:
            raise ValueError("Hölder exponent must lie in (0, 1]")
        if alpha == 1:
            return cls.lipschitz()
        return cls(lambda h: np.power(h, alpha), "power", float(alpha))

    def check(self, n_pairs: int = 10_000, scale: float = 1.0, seed: int = 0, rtol: float = 1e-12) -> dict:
        """Sampled check of ``omega(0)=0``, monotonicity, subadditivity and continuity at 0."""
        rng = np.random.default_rng(seed)
        a = rng.random(n_pairs) * scale
        b = rng.random(n_pairs) * scale
        wa, wb, wab = self(a), self(b), self(a + b)
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        small = self(np.geomspace(1e-12, 1e-3, 20) * scale)
        res = {
            "zero": float(self(np.array([0.0]))[0]) == 0.0,
            "nondecreasing": bool(np.all(self(lo) <= self(hi) * (1 + rtol) + rtol)),
            "subadditive": bool(np.all(wab <= (wa + wb) * (1 + rtol) + rtol)),
            "continuous_at_zero": bool(np.all(np.diff(small) >= 0) and small[0] < 1e-3 * max(small[-1], 1e-300) + 1e-6),
        }
        res["ok"] = all(res.values())
        return res


LIPSCHITZ = ModulusOfContinuity.lipschitz()


@dataclass
class ErrorReport:
    """A worst-case error value.

    ``kind`` is ``"certified"`` (true value lies in ``[lo, hi]``),
    ``"monte-carlo"`` (``value +- stderr``) or ``"exact"``.
    """

    value: float
    kind: str
    lo: float | None = None
    hi: float | None = None
    stderr: float = 0.0
    seed: int | None = None
    samples: int = 0
    flags: dict = field(default_factory=dict)

    @property
    def width(self) -> float:
        if self.lo is None or self.hi is None:
            return math.nan
        return self.hi - self.lo

    def to_json(self) -> dict:
        return {"value": self.value, "kind": self.kind, "lo": self.lo, "hi": self.hi,
                "stderr": self.stderr, "seed": self.seed, "samples": self.samples,
                "flags": dict(self.flags)}


def _nodes(X, d=None):
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.size == 0:
        X = X.reshape(0, d or 0)
    if d is not None and X.shape[0] and X.shape[1] != d:
        raise ValueError(f"nodes have dimension {X.shape[1]}, domain has {d}")
    return X


def distance_to_nodes(points, X, norm: NormSpec = L2) -> np.ndarray:
    """``g(x) = min_i ||x - x_i||`` for each row of ``points``."""
    return kernels.min_dist(points, X, norm)


# certified covering radius -------------------------------------------------

def _split_candidates(X):
    """Per-axis midpoints between consecutive distinct node coordinates."""
    out = []
    for k in range(X.shape[1]):
        u = np.unique(X[:, k])
        out.append(0.5 * (u[1:] + u[:-1]))
    return out


def _initial_probes(D):
    lo, hi = D.bbox()
    d = D.d
    if isinstance(D, Box):
        corners = np.array(np.meshgrid(*[[0.0, 1.0]] * d, indexing="ij")).reshape(d, -1).T
        return lo + corners * (hi - lo)
    c, r = D.center_array, D.radius_array
    w = D.norm.weight_array(d)
    probes = [c]
    for k in range(d):
        e = np.zeros(d)
        e[k] = 1.0 / w[k]
        probes += [c + r[:, None] * e, c - r[:, None] * e]
    return np.concatenate(probes)


def _choose_splits(L, H, w, mids):
    widths = (H - L) * w
    axis = widths.argmax(axis=1)
    rows = np.arange(len(L))
    a, b = L[rows, axis], H[rows, axis]
    center = 0.5 * (a + b)
    cut = center.copy()
    for k, m in enumerate(mids):
        sel = np.nonzero(axis == k)[0]
        if sel.size == 0 or m.size == 0:
            continue
        j = np.clip(np.searchsorted(m, center[sel]), 1, max(m.size - 1, 1))
        left = m[np.clip(j - 1, 0, m.size - 1)]
        right = m[np.clip(j, 0, m.size - 1)]
        pick = np.where(np.abs(left - center[sel]) <= np.abs(right - center[sel]), left, right)
        margin = 0.1 * (b[sel] - a[sel])
        ok = (pick > a[sel] + margin) & (pick < b[sel] - margin)
        cut[sel] = np.where(ok, pick, center[sel])
    L1, H1 = L.copy(), H.copy()
    H1[rows, axis] = cut
    L2_, H2 = L.copy(), H.copy()
    L2_[rows, axis] = cut
    return np.concatenate([L1, L2_]), np.concatenate([H1, H2])


def certified_covering_radius(D: Domain, X, norm: NormSpec = L2, tol: float = 1e-6,
                              max_boxes: int = 5_000_000) -> ErrorReport:
    """Branch-and-bound enclosure of ``sup_{x in D} min_i ||x - x_i||``.

    Upper bounds use ``max_{y in box} ||y - x_i|| = ||(|c - x_i| + h)||`` (the
    norm is monotone in absolute coordinates) minimised over nodes; for ball
    unions a box is also bounded by ``min_i ||a_k - x_i|| + r_k`` over the
    balls it meets.  Lower bounds are values of ``g`` at feasible points.
    Boxes are split along their longest side, preferably at a midpoint between
    node coordinates, which aligns the subdivision with grid cells.
    """
    if isinstance(D, ImplicitMask):
        raise UnsupportedDomainError("certified covering radius needs a Box or BallUnion domain")
    X = _nodes(X, D.d)
    if X.shape[0] == 0:
        return ErrorReport(math.inf, "certified", math.inf, math.inf, flags={"no_nodes": True})
    d = D.d
    w = norm.weight_array(d)
    mids = _split_candidates(X)
    balls = isinstance(D, BallUnion)
    if balls:
        C, R = D.center_array, D.radius_array
        # per ball: min_i (||a_k - x_i|| + r_k) in the metric norm, valid because the
        # ball is contained in the metric ball of radius r_k * rho around a_k
        rho = _norm_ratio(D.norm, norm, d)
        ball_cap = kernels.min_dist(C, X, norm) + R * rho

    probes = _initial_probes(D)
    probes = probes[D.contains(probes)]
    lower = float(kernels.min_dist(probes, X, norm).max()) if len(probes) else 0.0
    settled_upper = -math.inf

    lo, hi = D.bbox()
    L, H = lo[None, :].astype(float), hi[None, :].astype(float)
    processed = 0
    converged = True
    while len(L):
        c = 0.5 * (L + H)
        h = 0.5 * (H - L)
        if balls:
            near = np.clip(C[None, :, :], L[:, None, :], H[:, None, :])
            meets = D.norm.norm(near - C[None, :, :]) <= R[None, :]
            alive = meets.any(axis=1)
            L, H, c, h, meets, near = L[alive], H[alive], c[alive], h[alive], meets[alive], near[alive]
            if not len(L):
                break
        U = kernels.box_sup_bound(c, h, X, norm)
        if balls:
            U = np.minimum(U, np.where(meets, ball_cap[None, :], -math.inf).max(axis=1))

        # feasible points for the lower bound
        _, j = kernels.nearest(c, X, norm)
        far = c + np.where(c >= X[j], 1.0, -1.0) * h
        cand = [c, far]
        if balls:
            k = meets.argmax(axis=1)
            cand.append(near[np.arange(len(k)), k])
        cand = np.concatenate(cand)
        cand = cand[D.contains(cand)]
        if len(cand):
            lower = max(lower, float(kernels.min_dist(cand, X, norm).max()))

        processed += len(L)
        diam = norm.norm(2.0 * h)
        split = (U > lower + tol) & (diam >= tol)
        if np.any(~split):
            settled_upper = max(settled_upper, float(U[~split].max()))
        L, H = L[split], H[split]
        if processed + 2 * len(L) > max_boxes and len(L):
            settled_upper = max(settled_upper, float(U[split].max()))
            converged = False
            break
        if len(L):
            L, H = _choose_splits(L, H, w, mids)

    upper = max(lower, settled_upper)
    return ErrorReport(0.5 * (lower + upper), "certified", lower, upper, samples=processed,
                       flags={"converged": converged, "tol": tol})


def _norm_ratio(inner: NormSpec, outer: NormSpec, d: int) -> float:
    """Smallest ``rho`` with ``||v||_outer <= rho ||v||_inner`` (1 when the norms agree)."""
    if inner == outer:
        return 1.0
    wi, wo = inner.weight_array(d), outer.weight_array(d)
    ratio = wo / wi
    pi, po = inner.p, outer.p
    if po >= pi:
        return float(ratio.max())
    # p_out < p_in: ||u||_po <= d^(1/po - 1/pi) ||u||_pi
    expo = (1.0 / po) - (0.0 if pi == math.inf else 1.0 / pi)
    return float(ratio.max() * d ** expo)


def mc_covering_radius(D: Domain, X, norm: NormSpec = L2, budget: int = 100_000, seed: int = 0) -> ErrorReport:
    """Maximum of ``g`` over uniform samples: a lower estimate of the covering radius."""
    X = _nodes(X, D.d)
    if X.shape[0] == 0:
        return ErrorReport(math.inf, "monte-carlo", flags={"no_nodes": True})
    pts = sample_uniform(D, budget, seed)
    g = kernels.min_dist(pts, X, norm)
    v = float(g.max())
    return ErrorReport(v, "monte-carlo", lo=v, hi=None, seed=seed, samples=budget,
                       flags={"lower_estimate": True})


def covering_radius(D: Domain, X, norm: NormSpec = L2, mode: str = "certified",
                    budget: int = 100_000, seed: int = 0, tol: float = 1e-6) -> ErrorReport:
    if mode == "certified":
        return certified_covering_radius(D, X, norm, tol=tol)
    if mode in ("monte-carlo", "mc"):
        return mc_covering_radius(D, X, norm, budget, seed)
    raise ValueError(f"unknown mode {mode!r}")


def wce_linf(D: Domain, X, norm: NormSpec = L2, omega: ModulusOfContinuity = LIPSCHITZ,
             mode: str = "certified", budget: int = 100_000, seed: int = 0, tol: float = 1e-6) -> ErrorReport:
    """Worst-case L_inf recovery error ``omega(covering radius)`` for fixed nodes."""
    rep = covering_radius(D, X, norm, mode, budget, seed, tol)
    f = lambda v: None if v is None else float(omega(np.array([v]))[0])  # noqa: E731
    return ErrorReport(f(rep.value), rep.kind, f(rep.lo), f(rep.hi), rep.stderr, rep.seed,
                       rep.samples, dict(rep.flags, omega=omega.tag))


def wce_integration(D: Domain, X, norm: NormSpec = L2, omega: ModulusOfContinuity = LIPSCHITZ,
                    budget: int = 200_000, seed: int = 0) -> ErrorReport:
    """Monte-Carlo estimate of ``int_D omega(min_i ||x - x_i||) dx``.

    With an exact volume this is ``vol(D) * mean`` over uniform points of ``D``;
    otherwise it is ``vol(bbox) * mean(1_D * omega(g))`` over the bounding box.
    """
    X = _nodes(X, D.d)
    if X.shape[0] == 0:
        return ErrorReport(math.inf, "monte-carlo", flags={"no_nodes": True})
    vol = D.exact_volume()
    if vol is not None:
        pts = sample_uniform(D, budget, seed)
        vals = omega(kernels.min_dist(pts, X, norm))
        mean = float(vals.mean())
        se = float(vals.std(ddof=1)) / math.sqrt(budget) if budget > 1 else math.inf
        return ErrorReport(vol * mean, "monte-carlo", stderr=vol * se, seed=seed, samples=budget,
                           flags={"volume": "exact"})
    lo, hi = D.bbox()
    box_vol = float(np.prod(hi - lo))
    mean, se = bbox_hit_fraction(D, budget, seed, lambda x: omega(kernels.min_dist(x, X, norm)))
    return ErrorReport(box_vol * mean, "monte-carlo", stderr=box_vol * se, seed=seed, samples=budget,
                       flags={"volume": "bounding-box"})


def extremal_function(X, norm: NormSpec = L2, omega: ModulusOfContinuity = LIPSCHITZ):
    """``x -> omega(min_i ||x - x_i||)``: vanishes on ``X`` and has modulus ``omega``."""
    X = _nodes(X)
    return lambda x: omega(kernels.min_dist(np.atleast_2d(x), X, norm))


def central_algorithm(X, values, x, norm: NormSpec = L2, omega: ModulusOfContinuity = LIPSCHITZ,
                      D: Domain | None = None):
    """Midpoint of the tightest upper and lower envelopes consistent with the data.

    ``A(x) = (max_i(v_i - omega(|x - x_i|)) + min_i(v_i + omega(|x - x_i|))) / 2``.
    Accepts a single point or an ``(m, d)`` array.
    """
    X = _nodes(X)
    if X.shape[0] == 0:
        raise ValueError("central algorithm needs at least one node")
    v = np.asarray(values, dtype=float)
    if v.shape != (X.shape[0],) or not np.all(np.isfinite(v)):
        raise ValueError("need one finite value per node")
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    pts = np.atleast_2d(x)
    if D is not None and not np.all(D.contains(pts)):
        raise ValueError("evaluation point outside the domain")
    out = np.empty(len(pts))
    step = max(1, (1 << 20) // max(1, X.shape[0] * X.shape[1]))
    for s in range(0, len(pts), step):
        r = omega(norm.norm(pts[s:s + step, None, :] - X[None, :, :]))
        out[s:s + step] = 0.5 * ((v - r).max(axis=1) + (v + r).min(axis=1))
    return float(out[0]) if single else out


@dataclass
class QuadratureResult:
    value: float
    stderr: float
    weights: np.ndarray
    volume: float

    def __float__(self):
        return self.value


def voronoi_weights(D: Domain, X, norm: NormSpec = L2, budget: int = 200_000, seed: int = 0):
    """Monte-Carlo Voronoi-cell volumes; ``(weights, nearest-index per sample, volume)``."""
    X = _nodes(X, D.d)
    if X.shape[0] == 0:
        raise ValueError("quadrature needs at least one node")
    vol = volume(D, budget, seed + 1).value
    pts = sample_uniform(D, budget, seed)
    _, idx = kernels.nearest(pts, X, norm)
    counts = np.bincount(idx, minlength=X.shape[0])
    return vol * counts / budget, idx, vol


def voronoi_quadrature(D: Domain, X, values, norm: NormSpec = L2, budget: int = 200_000,
                       seed: int = 0) -> QuadratureResult:
    """``sum_i w_i f(x_i)`` with ``w_i`` the estimated volume of the Voronoi cell of ``x_i``."""
    w, idx, vol = voronoi_weights(D, X, norm, budget, seed)
    v = np.asarray(values, dtype=float)
    per_sample = v[idx]
    se = vol * float(per_sample.std(ddof=1)) / math.sqrt(budget) if budget > 1 else math.inf
    return QuadratureResult(float(w @ v), se, w, vol)
