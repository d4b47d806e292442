"""Laplacian eigenvalues on masked grids and Weyl-type diagnostics.

Domains (d = 1 or 2) are discretised on a cell-centred grid of width h: a
cell belongs to the discrete domain iff its centre lies in the domain, so the
discrete domain is the union of included cells and its volume is
``cells * h**d``.  The 3-point / 5-point Laplacian closes at each exterior
cell face with a ghost value, odd (``u_ghost = -u``) for Dirichlet and even
(``u_ghost = u``) for Neumann.  Both conditions are therefore imposed on the
cell faces, which makes boxes aligned with the grid exact and gives the
classical closed-form spectrum ``(4/h^2) sin^2(j pi h / 2)`` on the interval.

The smallest eigenvalues are found by ARPACK in shift-invert mode about a
negative shift (the Neumann operator is singular).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .domains import Domain, EmptyDomainError, domain_to_json
from .geometry import L2, unit_ball_volume

RESIDUAL_TOL = 1e-8
DENSE_MAX = 1500
BCS = ("dirichlet", "neumann")


class SpectrumError(RuntimeError):
    pass


@dataclass
class GridDomain:
    h: float
    mask: np.ndarray
    lo: np.ndarray
    parent: Domain | None = field(default=None, repr=False)

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("h must be positive")
        if not self.mask.any():
            raise EmptyDomainError("no grid cell centre lies in the domain")

    @property
    def d(self) -> int:
        return self.mask.ndim

    @property
    def cells(self) -> int:
        return int(self.mask.sum())

    @property
    def volume(self) -> float:
        return self.cells * self.h ** self.d

    def centers(self) -> np.ndarray:
        axes = [self.lo[i] + (np.arange(s) + 0.5) * self.h for i, s in enumerate(self.mask.shape)]
        grids = np.meshgrid(*axes, indexing="ij")
        return np.stack([g[self.mask] for g in grids], axis=1)


def discretize(D: Domain, h: float) -> GridDomain:
    if D.d not in (1, 2):
        raise ValueError("spectral computations support d = 1 and d = 2 only")
    if not h > 0:
        raise ValueError("h must be positive")
    lo, hi = D.bbox()
    lo = np.asarray(lo, float)
    shape = tuple(max(1, int(math.ceil((b - a) / h - 1e-9))) for a, b in zip(lo, np.asarray(hi, float)))
    axes = [lo[i] + (np.arange(s) + 0.5) * h for i, s in enumerate(shape)]
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    mask = np.asarray(D.contains(pts), dtype=bool).reshape(shape)
    return GridDomain(float(h), mask, lo, D)


def laplacian(G: GridDomain, bc: str = "dirichlet") -> sp.csr_matrix:
    """Sparse symmetric positive (semi)definite matrix of ``-Laplace`` on the masked cells."""
    if bc not in BCS:
        raise ValueError(f"bc must be one of {BCS}")
    mask = G.mask
    idx = -np.ones(mask.shape, dtype=np.int64)
    idx[mask] = np.arange(G.cells)
    exterior = 2.0 if bc == "dirichlet" else 0.0
    diag = np.zeros(G.cells)
    rows, cols = [], []
    for axis in range(mask.ndim):
        for step in (-1, 1):
            # neighbour index for every cell, -1 when off-grid or outside the mask
            nb = np.full(mask.shape, -1, dtype=np.int64)
            src = [slice(None)] * mask.ndim
            dst = [slice(None)] * mask.ndim
            if step == 1:
                src[axis], dst[axis] = slice(1, None), slice(None, -1)
            else:
                src[axis], dst[axis] = slice(None, -1), slice(1, None)
            nb[tuple(dst)] = idx[tuple(src)]
            nb = nb[mask]
            inside = nb >= 0
            diag += np.where(inside, 1.0, exterior)
            rows.append(np.nonzero(inside)[0])
            cols.append(nb[inside])
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    A = sp.coo_matrix((-np.ones(r.size), (r, c)), shape=(G.cells, G.cells))
    A = (A + sp.diags(diag)).tocsr()
    return A / G.h ** 2


@dataclass
class Spectrum:
    eigenvalues: np.ndarray
    bc: str
    h: float
    d: int
    volume: float
    cells: int
    residual_max: float
    domain: dict | None = None

    def __post_init__(self):
        self.eigenvalues = np.asarray(self.eigenvalues, dtype=float)
        if np.any(np.diff(self.eigenvalues) < 0):
            raise ValueError("eigenvalues must be ascending")

    @property
    def k(self) -> int:
        return int(self.eigenvalues.size)

    def to_json(self) -> dict:
        out = asdict(self)
        out["eigenvalues"] = [float(v) for v in self.eigenvalues]
        out["k"] = self.k
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Spectrum":
        return cls(np.asarray(obj["eigenvalues"], float), obj["bc"], float(obj["h"]), int(obj["d"]),
                   float(obj["volume"]), int(obj["cells"]), float(obj.get("residual_max", 0.0)), obj.get("domain"))


def residual_tolerance(A) -> float:
    """``RESIDUAL_TOL``, raised to the rounding floor of ``A @ v`` for very fine grids."""
    norm_inf = float(abs(A).sum(axis=1).max())
    return max(RESIDUAL_TOL, 64 * np.finfo(float).eps * norm_inf)


def eigenvalues(G: GridDomain, bc: str = "dirichlet", k: int = 10, maxiter: int | None = None) -> Spectrum:
    """The ``k`` smallest eigenvalues, with a residual check on every eigenpair."""
    if not 1 <= k <= G.cells:
        raise ValueError(f"k must be in [1, {G.cells}]")
    A = laplacian(G, bc)
    if G.cells <= DENSE_MAX or k >= G.cells - 1:
        lam, vec = np.linalg.eigh(A.toarray())
        lam, vec = lam[:k], vec[:, :k]
    else:
        # shift below the spectrum: the shifted operator is positive definite for both conditions
        sigma = -1.0
        try:
            lam, vec = eigsh(A, k=k, sigma=sigma, which="LM", tol=0.0, maxiter=maxiter)
        except ArpackNoConvergence as exc:
            raise SpectrumError(f"eigensolver did not converge ({len(exc.eigenvalues)} of {k} pairs)") from exc
        order = np.argsort(lam)
        lam, vec = lam[order], vec[:, order]
    res = np.linalg.norm(A @ vec - vec * lam, axis=0) / np.linalg.norm(vec, axis=0)
    rmax = float(res.max())
    tol = residual_tolerance(A)
    if rmax > tol:
        raise SpectrumError(f"eigenpair residual {rmax:.3g} exceeds {tol:.3g}")
    if bc == "dirichlet" and lam[0] <= 0:
        raise SpectrumError("nonpositive Dirichlet eigenvalue")
    dom = None
    if G.parent is not None:
        try:
            dom = domain_to_json(G.parent)
        except ValueError:
            dom = None
    return Spectrum(lam, bc, G.h, G.d, G.volume, G.cells, rmax, dom)


def interval_dirichlet_closed_form(m: int, h: float) -> np.ndarray:
    """Discrete Dirichlet spectrum of ``m`` cells of width ``h``."""
    j = np.arange(1, m + 1)
    return 4.0 / h ** 2 * np.sin(j * math.pi * h / 2) ** 2


def counting(lams: np.ndarray, lam: float, rtol: float = 1e-9) -> int:
    return int(np.searchsorted(lams, lam * (1 + rtol), side="right"))


def weyl_ratio(S: Spectrum, volD: float | None = None, d: int | None = None) -> np.ndarray:
    """``N(lambda_k) (2 pi)^d / (omega_d vol lambda_k^(d/2))`` for every positive computed eigenvalue."""
    if S.k < 10:
        raise ValueError("need at least 10 eigenvalues")
    vol = S.volume if volD is None else volD
    d = S.d if d is None else d
    lam = S.eigenvalues
    out = np.full(lam.size, np.nan)
    wd = unit_ball_volume(d, L2)
    for i, v in enumerate(lam):
        if v > 1e-8 / S.h ** 2:
            out[i] = counting(lam, v) * (2 * math.pi) ** d / (wd * vol * v ** (d / 2))
    return out


# Li-Yau (Dirichlet, lower) and Kroger (Neumann, upper) bounds --------------

def li_yau_lower(k, vol: float, d: int) -> np.ndarray:
    """``lambda_k >= d/(d+2) * 4 pi^2 (k / (omega_d vol))^(2/d)``."""
    k = np.asarray(k, float)
    return d / (d + 2.0) * 4 * math.pi ** 2 * (k / (unit_ball_volume(d, L2) * vol)) ** (2.0 / d)


def kroger_upper(k, vol: float, d: int) -> np.ndarray:
    """``mu_{k+1} <= ((d+2)/2)^(2/d) * 4 pi^2 (k / (omega_d vol))^(2/d)`` (Neumann, ``mu_1 = 0``)."""
    k = np.asarray(k, float)
    return ((d + 2.0) / 2) ** (2.0 / d) * 4 * math.pi ** 2 * (k / (unit_ball_volume(d, L2) * vol)) ** (2.0 / d)


def polya_lower(k, vol: float, d: int) -> np.ndarray:
    """Polya's conjectured Dirichlet bound ``4 pi^2 (k / (omega_d vol))^(2/d)``."""
    k = np.asarray(k, float)
    return 4 * math.pi ** 2 * (k / (unit_ball_volume(d, L2) * vol)) ** (2.0 / d)


def analytic_box_spectrum(sides, bc: str, k: int) -> np.ndarray:
    """Smallest ``k`` eigenvalues of ``-Laplace`` on a box (continuum, exact)."""
    sides = np.asarray(sides, float)
    start = 1 if bc == "dirichlet" else 0
    m = start + int(math.ceil(math.sqrt(k) * 2 + 4)) if len(sides) > 1 else start + k
    grids = np.meshgrid(*[np.arange(start, m)] * len(sides), indexing="ij")
    vals = sum((math.pi * g / s) ** 2 for g, s in zip(grids, sides))
    return np.sort(vals.ravel())[:k]


def _gate_ok(lower: bool, bound, lam, rtol=1e-12) -> bool:
    # rtol only absorbs rounding: Polya's bound is attained on the interval
    if lower:
        return bool(np.all(lam >= bound * (1 - rtol)))
    return bool(np.all(lam <= bound * (1 + rtol)))


def confirm_bound_constants(k: int = 400) -> dict:
    """Confirmation gate for the bound constants, run against exact spectra.

    Each bound is checked on the unit interval and unit square, and on a
    2:1 rectangle, with the continuum eigenvalues.  Bounds that fail here are
    never used as assertions.
    """
    out = {}
    boxes = {"interval": (1.0,), "square": (1.0, 1.0), "rectangle": (2.0, 1.0)}
    ok_ly = ok_kr = True
    for name, sides in boxes.items():
        d, vol = len(sides), float(np.prod(sides))
        dl = analytic_box_spectrum(sides, "dirichlet", k)
        ks = np.arange(1, k + 1)
        ok_ly &= _gate_ok(True, li_yau_lower(ks, vol, d), dl)
        nl = analytic_box_spectrum(sides, "neumann", k + 1)
        ok_kr &= _gate_ok(False, kroger_upper(np.arange(1, k + 1), vol, d), nl[1:])
        ok_kr &= nl[0] == 0.0
    out["li_yau"] = bool(ok_ly)
    out["kroger"] = bool(ok_kr)
    # Polya's inequality is a theorem for tiling domains such as boxes
    out["polya_boxes"] = all(
        _gate_ok(True, polya_lower(np.arange(1, k + 1), float(np.prod(s)), len(s)),
                 analytic_box_spectrum(s, "dirichlet", k))
        for s in boxes.values())
    return out


_GATE: dict | None = None


def bound_gate() -> dict:
    global _GATE
    if _GATE is None:
        _GATE = confirm_bound_constants()
    return _GATE


@dataclass
class BoundCheck:
    bound: str
    enabled: bool
    ok: bool
    min_margin: float
    failures: list

    def to_json(self) -> dict:
        return asdict(self)


def eigenvalue_bound_check(S: Spectrum, volD: float | None = None, d: int | None = None,
                           kind: str | None = None) -> BoundCheck:
    """Per-k check of the Li-Yau (Dirichlet) or Kroger (Neumann) bound.

    ``kind`` may also be ``"polya"`` for the Dirichlet Polya form.  Each failure
    records ``k``, the eigenvalue, the bound and a discretisation error estimate
    ``(pi k h)^2 / 12`` relative to the eigenvalue.
    """
    vol = S.volume if volD is None else volD
    d = S.d if d is None else d
    if kind is None:
        kind = "li_yau" if S.bc == "dirichlet" else "kroger"
    if kind in ("li_yau", "polya") and S.bc != "dirichlet":
        raise ValueError(f"{kind} is a Dirichlet bound")
    if kind == "kroger" and S.bc != "neumann":
        raise ValueError("the Kroger bound is a Neumann bound")
    gate = bound_gate()
    enabled = gate["polya_boxes"] if kind == "polya" else gate[kind]
    lam = S.eigenvalues
    if kind == "kroger":
        ks = np.arange(1, S.k)  # mu_{k+1} against k
        bound = kroger_upper(ks, vol, d)
        vals = lam[1:]
        margin = 1 - vals / bound
    else:
        ks = np.arange(1, S.k + 1)
        bound = (li_yau_lower if kind == "li_yau" else polya_lower)(ks, vol, d)
        vals = lam
        margin = vals / bound - 1
    disc = vals * (math.pi * S.h) ** 2 * np.maximum(ks, 1) ** (2.0 / d) / 12
    failures = [{"k": int(k), "eigenvalue": float(v), "bound": float(b), "discretization_error": float(e)}
                for k, v, b, e, m in zip(ks, vals, bound, disc, margin) if m < 0]
    return BoundCheck(kind, bool(enabled), bool(enabled) and not failures,
                      float(margin.min()) if margin.size else math.inf, failures)


def approximation_numbers(S: Spectrum, r: int = 1) -> np.ndarray:
    """``sigma_{n+1} = (1 + lambda_{n+1})^(-1/2)``, singular values of ``H^1 -> L_2``."""
    if r != 1:
        raise NotImplementedError("only r = 1 is supported")
    return (1.0 + np.maximum(S.eigenvalues, 0.0)) ** -0.5


@dataclass
class WeylEstimate:
    value: float
    tail_start: int
    spread: float
    plateau: bool
    bc: str
    volume: float

    def to_json(self) -> dict:
        return asdict(self)


def weyl_constant_estimate(S: Spectrum, volD: float | None = None, d: int | None = None, r: int = 1,
                           tail: float = 0.25, plateau_tol: float = 0.05) -> WeylEstimate:
    """Tail median of ``sigma_{n+1} n^(r/d) vol^(-r/d)``.

    The tail is the last ``tail`` fraction of the available n; it counts as a
    plateau when its relative spread is below ``plateau_tol``.
    """
    vol = S.volume if volD is None else volD
    d = S.d if d is None else d
    sig = approximation_numbers(S, r)
    n = np.arange(1, S.k)
    vals = sig[1:] * n ** (r / d) * vol ** (-r / d)
    if vals.size < 4:
        raise ValueError("need at least 5 eigenvalues")
    start = int(vals.size * (1 - tail))
    t = vals[start:]
    med = float(np.median(t))
    spread = float((t.max() - t.min()) / med)
    return WeylEstimate(med, int(n[start]), spread, spread <= plateau_tol, S.bc, vol)


def weyl_limit(d: int, r: int = 1) -> float:
    """Leading-order value of the estimate, ``(2 pi)^(-r) omega_d^(r/d)`` from Weyl's law."""
    return (2 * math.pi) ** (-r) * unit_ball_volume(d, L2) ** (r / d)
