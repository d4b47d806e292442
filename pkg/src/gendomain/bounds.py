"""Closed-form error bounds and asymptotic constants.

Every function returns a :class:`BoundReport`.  Asymptotic statements
(``asymptotic=True``) describe the limit n -> infinity and carry no finite-n
guarantee; the uniform bounds (``valid_for_all_n=True``) hold for every n and
every domain of the given volume.  Formula ids follow the CLI names:
``asy1, lower2, upper1, asy3, lower4, curse, cr``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .geometry import L2, NormSpec, NormSpec as _NS, covering_constant_bracket, lp_constant, unit_ball_volume_root


@dataclass
class BoundReport:
    quantity: str
    lo: float
    hi: float
    formula: str
    inputs: dict
    asymptotic: bool = False
    valid_for_all_n: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.lo > self.hi * (1 + 1e-15):
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def value(self) -> float:
        """The point value; only meaningful when the interval collapsed."""
        return self.lo if self.lo == self.hi else 0.5 * (self.lo + self.hi)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def to_json(self) -> dict:
        out = asdict(self)
        out["value"] = self.value
        return out


def _check(n, d, vol):
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    if not vol > 0:
        raise ValueError("domain volume must be positive")


def _inputs(n, d, norm, vol):
    return {"n": n, "d": d, "norm": norm.to_json(), "vol": vol}


def _base(n, d, norm, vol):
    # (vol / vol(B))^(1/d) * n^(-1/d)
    return (vol ** (1.0 / d) / unit_ball_volume_root(d, norm)) * n ** (-1.0 / d)


def theta_root_bracket(d: int, norm: NormSpec) -> tuple[float, float]:
    br = covering_constant_bracket(d, norm)
    return br.root(d)


def linf_asymptote(n: int, d: int, norm: NormSpec = L2, vol: float = 1.0) -> BoundReport:
    """``Theta^(1/d) (vol/vol(B))^(1/d) n^(-1/d)`` with Theta replaced by its bracket."""
    _check(n, d, vol)
    t_lo, t_hi = theta_root_bracket(d, norm)
    b = _base(n, d, norm, vol)
    return BoundReport("e_n(APP_inf)", t_lo * b, t_hi * b, "asy1", _inputs(n, d, norm, vol), asymptotic=True,
                       extra={"theta_root": [t_lo, t_hi], "log": "natural"})


def linf_uniform_lower(n: int, d: int, norm: NormSpec = L2, vol: float = 1.0) -> BoundReport:
    """``vol(B)^(-1/d) vol^(1/d) n^(-1/d)``; sharp for n disjoint equal balls."""
    _check(n, d, vol)
    b = _base(n, d, norm, vol)
    return BoundReport("e_n(APP_inf) lower", b, b, "lower2", _inputs(n, d, norm, vol), valid_for_all_n=True)


def linf_boundary_zero_bracket(n: int, d: int, norm: NormSpec = L2, vol: float = 1.0) -> BoundReport:
    """Bracket for the worst domain when functions vanish on the boundary.

    ``[vol(B)^(-1/d) vol^(1/d) (n+1)^(-1/d), 2 vol(B)^(-1/d) vol^(1/d) n^(-1/d)]``.
    """
    _check(n, d, vol)
    return BoundReport("sup_D e_n(APP_inf, zero boundary)", _base(n + 1, d, norm, vol), 2.0 * _base(n, d, norm, vol),
                       "upper1", _inputs(n, d, norm, vol), valid_for_all_n=True)


def xi_bracket(d: int, norm: NormSpec) -> tuple[float, float]:
    t_lo, t_hi = theta_root_bracket(d, norm)
    k = d / (d + 1.0)
    return k * t_lo, k * t_hi


def int_asymptote(n: int, d: int, norm: NormSpec = L2, vol: float = 1.0) -> BoundReport:
    """``xi vol (vol/vol(B))^(1/d) n^(-1/d)`` with ``d/(d+1) <= xi <= d/(d+1) Theta^(1/d)``."""
    _check(n, d, vol)
    x_lo, x_hi = xi_bracket(d, norm)
    b = vol * _base(n, d, norm, vol)
    return BoundReport("e_n(INT)", x_lo * b, x_hi * b, "asy3", _inputs(n, d, norm, vol), asymptotic=True,
                       extra={"xi": [x_lo, x_hi], "log": "natural"})


def int_uniform_lower(n: int, d: int, norm: NormSpec = L2, vol: float = 1.0) -> BoundReport:
    """``d/(d+1) vol(B)^(-1/d) vol^((d+1)/d) n^(-1/d)``; sharp for n disjoint equal balls."""
    _check(n, d, vol)
    v = d / (d + 1.0) * vol * _base(n, d, norm, vol)
    return BoundReport("e_n(INT) lower", v, v, "lower4", _inputs(n, d, norm, vol), valid_for_all_n=True)


def kd_factor_bracket(d: int, norm: NormSpec | None = None) -> tuple[float, float]:
    """Range of the ratio between the normalised L_inf and integration asymptotes."""
    _, t_hi = theta_root_bracket(d, norm) if norm is not None else covering_constant_bracket(d).root(d)
    return 1.0, (d + 1.0) / d * t_hi


def asymptote_ratio_bracket(d: int, norm: NormSpec = L2) -> tuple[float, float]:
    """All values ``Theta^(1/d) / xi`` compatible with the two brackets (vol = 1)."""
    t_lo, t_hi = theta_root_bracket(d, norm)
    x_lo, x_hi = xi_bracket(d, norm)
    # xi <= d/(d+1) Theta^(1/d) for the same Theta, so the ratio is at least (d+1)/d * ... >= 1
    return max(1.0, t_lo / x_hi), t_hi / x_lo


@dataclass
class CurseReport:
    eps: float
    d: int
    p: float
    n_min: int
    log10_n_min: float
    coefficient: float
    coefficient_asymptotic: float
    coefficient_limit: float
    vacuous: bool

    def to_json(self) -> dict:
        out = asdict(self)
        out["p"] = "inf" if math.isinf(self.p) else self.p
        out["formula"] = "curse"
        return out


def curse_coefficient(d: int, p) -> float:
    """``d/(d+1) d^(-1/p) vol(B_p^d)^(-1/d)`` from the exact Gamma volume."""
    norm = _NS(p)
    return d / (d + 1.0) * d ** (-1.0 / norm.p) / unit_ball_volume_root(d, norm)


def curse_min_n(eps: float, d: int, p=2.0) -> CurseReport:
    """Minimal number of function values for integration error ``eps``.

    Functions are ``d^(-1/p)``-Lipschitz w.r.t. ``||.||_p`` on a domain of
    volume one; inverting the uniform integration lower bound gives
    ``n >= (c/eps)^d`` with ``c = curse_coefficient(d, p)``.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if d < 1:
        raise ValueError("d must be >= 1")
    norm = _NS(p)
    if norm.is_inf:
        raise ValueError("the curse bound is stated for finite p")
    c = curse_coefficient(d, norm.p)
    c_p = lp_constant(norm.p)
    c_asym = d / (d + 1.0) / c_p
    vacuous = eps >= c
    if vacuous:
        n, log10n = 1, 0.0
    else:
        log10n = d * math.log10(c / eps)
        n = math.ceil(10 ** log10n) if log10n < 300 else math.ceil(2 ** int(log10n / math.log10(2)))
    return CurseReport(eps, d, norm.p, int(n), log10n, c, c_asym, 1.0 / c_p, vacuous)


def cr_class_lower(n: int, d: int, r: int, c_r: float) -> BoundReport:
    """``min(1/2, c_r d n^(-r/d))`` for integration on the C^r class (``c_r`` is caller-supplied)."""
    if not c_r > 0:
        raise ValueError("c_r must be supplied and positive")
    if n < 1 or d < 1 or r < 1:
        raise ValueError("n, d, r must be >= 1")
    v = min(0.5, c_r * d * n ** (-r / d))
    return BoundReport("e_n(C^r, INT) lower", v, v, "cr", {"n": n, "d": d, "r": r, "c_r": c_r},
                       valid_for_all_n=True, extra={"clamped": v == 0.5})


FORMULAS = {
    "asy1": linf_asymptote,
    "lower2": linf_uniform_lower,
    "upper1": linf_boundary_zero_bracket,
    "asy3": int_asymptote,
    "lower4": int_uniform_lower,
}
