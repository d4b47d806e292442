"""Norms, unit-ball volumes and covering-constant brackets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

INF = math.inf


def _parse_p(p) -> float:
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        p = float(p)
    p = float(p)
    if math.isnan(p) or p < 1:
        raise ValueError(f"norm exponent must satisfy p >= 1, got {p}")
    return p


@dataclass(frozen=True)
class NormSpec:
    """A weighted l_p norm ``||x||_B = ||(w_1 x_1, ..., w_d x_d)||_p``.

    ``p`` may be ``math.inf`` (or the string ``"inf"``); the max-norm is then
    handled by an exact code path, never approximated by a large exponent.
    ``weights=None`` means all weights are one.
    """

    p: float = 2.0
    weights: tuple[float, ...] | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "p", _parse_p(self.p))
        if self.weights is not None:
            w = tuple(float(v) for v in self.weights)
            if any(not (v > 0) or math.isinf(v) for v in w):
                raise ValueError("norm weights must be finite and positive")
            object.__setattr__(self, "weights", w)

    @property
    def is_inf(self) -> bool:
        return self.p == INF

    def weight_array(self, d: int) -> np.ndarray:
        if self.weights is None:
            return np.ones(d)
        if len(self.weights) != d:
            raise ValueError(f"norm has {len(self.weights)} weights, point dimension is {d}")
        return np.asarray(self.weights, dtype=float)

    def norm(self, v) -> np.ndarray:
        """Norm of the last axis of ``v``."""
        v = np.asarray(v, dtype=float)
        a = np.abs(v) * self.weight_array(v.shape[-1])
        if self.is_inf:
            return a.max(axis=-1)
        if self.p == 1:
            return a.sum(axis=-1)
        if self.p == 2:
            return np.sqrt((a * a).sum(axis=-1))
        m = a.max(axis=-1, keepdims=True)
        safe = np.where(m > 0, m, 1.0)
        return m[..., 0] * ((a / safe) ** self.p).sum(axis=-1) ** (1.0 / self.p)

    def to_json(self) -> dict:
        out: dict = {"p": "inf" if self.is_inf else self.p}
        if self.weights is not None:
            out["weights"] = list(self.weights)
        return out

    @classmethod
    def from_json(cls, obj) -> "NormSpec":
        if obj is None:
            return cls()
        if isinstance(obj, (int, float, str)):
            return cls(p=obj)
        w = obj.get("weights")
        return cls(p=obj.get("p", 2), weights=tuple(w) if w is not None else None)


L1 = NormSpec(1.0)
L2 = NormSpec(2.0)
LINF = NormSpec(INF)


def distance(x, y, norm: NormSpec = L2) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size == 0:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(norm.norm(x - y))


def _log_lp_ball_volume(d: int, p: float) -> float:
    if p == INF:
        return d * math.log(2.0)
    return d * math.log(2.0) + d * math.lgamma(1.0 + 1.0 / p) - math.lgamma(1.0 + d / p)


def log_unit_ball_volume(d: int, norm: NormSpec = L2) -> float:
    if d < 1:
        raise ValueError("dimension must be >= 1")
    lv = _log_lp_ball_volume(d, norm.p)
    if norm.weights is not None:
        lv -= float(np.log(norm.weight_array(d)).sum())
    return lv


def unit_ball_volume(d: int, norm: NormSpec = L2) -> float:
    """Lebesgue measure of ``{x : ||x||_B <= 1}`` in R^d (exact Gamma formula)."""
    return math.exp(log_unit_ball_volume(d, norm))


def unit_ball_volume_root(d: int, norm: NormSpec = L2) -> float:
    """``unit_ball_volume(d, norm) ** (1/d)`` without overflow for large d."""
    return math.exp(log_unit_ball_volume(d, norm) / d)


def ball_volume_root_asymptotic(d: int, p) -> float:
    """Large-d approximation ``2 Gamma(1+1/p) (p e)^(1/p) d^(-1/p)`` of vol(B_p^d)^(1/d)."""
    p = _parse_p(p)
    if p == INF:
        raise ValueError("p = inf has the exact value 2; the asymptotic form is for finite p")
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return 2.0 * math.gamma(1.0 + 1.0 / p) * (p * math.e) ** (1.0 / p) * d ** (-1.0 / p)


def lp_constant(p) -> float:
    """The constant ``c_p = 2 Gamma(1+1/p) (p e)^(1/p)``."""
    return ball_volume_root_asymptotic(1, p)


@dataclass(frozen=True)
class CoveringBracket:
    lower: float
    upper: float
    exact: bool
    log_base: str = "natural"

    def root(self, d: int) -> tuple[float, float]:
        return self.lower ** (1.0 / d), self.upper ** (1.0 / d)


def rogers_bound(d: int) -> float:
    return d * math.log(d) + d * math.log(math.log(d)) + 5 * d


def covering_constant_bracket(d: int, norm: NormSpec | None = None) -> CoveringBracket:
    """Bracket ``[1, d ln d + d ln ln d + 5d]`` for the covering density of R^d by B.

    Translates of the max-norm ball tile R^d, as does every ball in d = 1,
    so those cases collapse to ``[1, 1]``.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if d == 1 or (norm is not None and norm.is_inf):
        return CoveringBracket(1.0, 1.0, exact=True)
    return CoveringBracket(1.0, rogers_bound(d), exact=False)
