"""Bounded domains: boxes, unions of norm balls, and membership masks.

Domains are immutable.  Every variant provides ``contains`` (vectorised over
points), a finite bounding box, and the dimension.  Jordan measurability
cannot be checked from a membership oracle; callers assert it, and
:func:`boundary_shell_volume` is available as a diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .geometry import L2, NormSpec, unit_ball_volume

CHUNK = 1 << 16
THIN_ACCEPTANCE = 1e-6
THIN_PROBE = 1 << 20


class EmptyDomainError(ValueError):
    pass


class ThinDomainError(RuntimeError):
    pass


def _as_points(x, d):
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    if x.shape[-1] != d:
        raise ValueError(f"dimension mismatch: point has {x.shape[-1]} coordinates, domain has {d}")
    return x, single


@dataclass(frozen=True)
class Box:
    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lo)
        hi = tuple(float(v) for v in self.hi)
        if len(lo) != len(hi) or not lo:
            raise ValueError("box corners must have equal nonzero dimension")
        if any(not (h > l) for l, h in zip(lo, hi)):
            raise EmptyDomainError("box has an empty side")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def d(self) -> int:
        return len(self.lo)

    def bbox(self):
        return np.array(self.lo), np.array(self.hi)

    def contains(self, x):
        x, single = _as_points(x, self.d)
        inside = np.all((x >= self.lo) & (x <= self.hi), axis=1)
        return bool(inside[0]) if single else inside

    def exact_volume(self):
        return float(np.prod(np.subtract(self.hi, self.lo)))

    def scaled(self, s: float) -> "Box":
        return Box(tuple(s * v for v in self.lo), tuple(s * v for v in self.hi))

    def to_json(self):
        return {"kind": "box", "lo": list(self.lo), "hi": list(self.hi)}


@dataclass(frozen=True)
class BallUnion:
    centers: tuple[tuple[float, ...], ...]
    radii: tuple[float, ...]
    norm: NormSpec = L2
    disjoint: bool = True

    def __post_init__(self):
        c = tuple(tuple(float(v) for v in row) for row in self.centers)
        r = tuple(float(v) for v in self.radii)
        if not c or len(c) != len(r) or len({len(row) for row in c}) != 1:
            raise ValueError("ball union needs matching, nonempty centers and radii")
        if any(not (v > 0) for v in r):
            raise EmptyDomainError("ball radii must be positive")
        object.__setattr__(self, "centers", c)
        object.__setattr__(self, "radii", r)
        if self.disjoint and not self.is_disjoint():
            raise ValueError("balls flagged disjoint overlap")

    @property
    def d(self) -> int:
        return len(self.centers[0])

    @property
    def center_array(self):
        return np.array(self.centers)

    @property
    def radius_array(self):
        return np.array(self.radii)

    def is_disjoint(self) -> bool:
        c, r = self.center_array, self.radius_array
        for i in range(len(r)):
            gaps = self.norm.norm(c[i + 1:] - c[i]) - (r[i + 1:] + r[i])
            if np.any(gaps <= 0):
                return False
        return True

    def bbox(self):
        c, r = self.center_array, self.radius_array
        w = self.norm.weight_array(self.d)
        ext = r[:, None] / w[None, :]
        return (c - ext).min(axis=0), (c + ext).max(axis=0)

    def contains(self, x):
        x, single = _as_points(x, self.d)
        c, r = self.center_array, self.radius_array
        inside = np.zeros(len(x), dtype=bool)
        for k in range(len(r)):
            inside |= self.norm.norm(x - c[k]) <= r[k]
        return bool(inside[0]) if single else inside

    def exact_volume(self):
        if not self.disjoint:
            return None
        return float(np.sum(self.radius_array ** self.d)) * unit_ball_volume(self.d, self.norm)

    def scaled(self, s: float) -> "BallUnion":
        return BallUnion(tuple(tuple(s * v for v in row) for row in self.centers),
                         tuple(s * v for v in self.radii), self.norm, self.disjoint)

    def to_json(self):
        return {"kind": "ball_union", "centers": [list(c) for c in self.centers],
                "radii": list(self.radii), "norm": self.norm.to_json(), "disjoint": self.disjoint}


@dataclass(frozen=True)
class ImplicitMask:
    """Domain given by a vectorised membership predicate on ``(m, d)`` arrays."""

    predicate: Callable[[np.ndarray], np.ndarray] = field(compare=False)
    lo: tuple[float, ...]
    hi: tuple[float, ...]
    volume_hint: float | None = None
    name: str = "mask"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(float(v) for v in self.lo))
        object.__setattr__(self, "hi", tuple(float(v) for v in self.hi))
        if any(not (h > l) for l, h in zip(self.lo, self.hi)):
            raise ValueError("mask bounding box must have positive sides")

    @property
    def d(self) -> int:
        return len(self.lo)

    def bbox(self):
        return np.array(self.lo), np.array(self.hi)

    def contains(self, x):
        x, single = _as_points(x, self.d)
        inside = np.asarray(self.predicate(x), dtype=bool)
        inside &= np.all((x >= self.lo) & (x <= self.hi), axis=1)
        return bool(inside[0]) if single else inside

    def exact_volume(self):
        return self.volume_hint

    def to_json(self):
        if self.name not in BUILTIN_MASKS:
            raise ValueError("only builtin masks are serialisable")
        return {"kind": "mask", "builtin": self.name, "params": dict(self.params),
                "bbox": {"lo": list(self.lo), "hi": list(self.hi)}}


Domain = Union[Box, BallUnion, ImplicitMask]


# builtin mask corpus ------------------------------------------------------

def l_shape(scale: float = 1.0) -> ImplicitMask:
    """``s * ([0,1]^2 minus (1/2,1]^2)``, area ``0.75 s^2``."""
    s = float(scale)

    def pred(x):
        return ~((x[:, 0] > 0.5 * s) & (x[:, 1] > 0.5 * s))

    return ImplicitMask(pred, (0.0, 0.0), (s, s), 0.75 * s * s, "l_shape", {"scale": s})


def annulus(inner: float = 0.5, outer: float = 1.0) -> ImplicitMask:
    r0, r1 = float(inner), float(outer)
    if not 0 <= r0 < r1:
        raise ValueError("annulus needs 0 <= inner < outer")

    def pred(x):
        rr = np.einsum("ij,ij->i", x, x)
        return (rr >= r0 * r0) & (rr <= r1 * r1)

    return ImplicitMask(pred, (-r1, -r1), (r1, r1), math.pi * (r1 * r1 - r0 * r0),
                        "annulus", {"inner": r0, "outer": r1})


def disk(radius: float = 1.0) -> ImplicitMask:
    r = float(radius)

    def pred(x):
        return np.einsum("ij,ij->i", x, x) <= r * r

    return ImplicitMask(pred, (-r, -r), (r, r), math.pi * r * r, "disk", {"radius": r})


BUILTIN_MASKS = {"l_shape": l_shape, "annulus": annulus, "disk": disk}


def builtin_mask(name: str, **params) -> ImplicitMask:
    try:
        return BUILTIN_MASKS[name](**params)
    except KeyError:
        raise ValueError(f"unknown builtin mask {name!r}; known: {sorted(BUILTIN_MASKS)}") from None


def unit_volume_corpus() -> dict[str, Domain]:
    """Square, disk and L-shape, each of area one."""
    return {
        "square": Box((0.0, 0.0), (1.0, 1.0)),
        "disk": BallUnion(((0.0, 0.0),), (1.0 / math.sqrt(math.pi),), L2),
        "l_shape": l_shape(1.0 / math.sqrt(0.75)),
    }


# serialisation ------------------------------------------------------------

def domain_from_json(obj: dict) -> Domain:
    kind = obj.get("kind")
    if kind == "box":
        return Box(tuple(obj["lo"]), tuple(obj["hi"]))
    if kind == "ball_union":
        return BallUnion(tuple(tuple(c) for c in obj["centers"]), tuple(obj["radii"]),
                         NormSpec.from_json(obj.get("norm")), bool(obj.get("disjoint", True)))
    if kind == "mask":
        mask = builtin_mask(obj["builtin"], **obj.get("params", {}))
        bb = obj.get("bbox")
        if bb is not None and (tuple(bb["lo"]) != mask.lo or tuple(bb["hi"]) != mask.hi):
            mask = ImplicitMask(mask.predicate, tuple(bb["lo"]), tuple(bb["hi"]),
                                mask.volume_hint, mask.name, mask.params)
        return mask
    raise ValueError(f"unknown domain kind {kind!r}")


def domain_to_json(D: Domain) -> dict:
    return D.to_json()


# operations ---------------------------------------------------------------

def contains(D: Domain, x):
    return D.contains(x)


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    method: str  # "exact" | "monte-carlo"
    samples: int = 0
    stderr: float = 0.0
    seed: int | None = None

    def to_json(self):
        return {"value": self.value, "method": self.method, "samples": self.samples,
                "stderr": self.stderr, "seed": self.seed}


def _chunk_rng(seed, chunk):
    return np.random.default_rng([int(seed) & 0xFFFFFFFF, int(chunk)])


def _bbox_uniform(D, count, seed, chunk):
    lo, hi = D.bbox()
    return lo + (hi - lo) * _chunk_rng(seed, chunk).random((count, D.d))


def bbox_hit_fraction(D: Domain, budget: int, seed: int = 0, f=None):
    """Mean of ``1_D * f`` over ``budget`` uniform bounding-box points, with its stderr.

    Returns ``(mean, stderr)`` of the per-sample values; the caller scales by the
    bounding-box volume.
    """
    total = 0.0
    total2 = 0.0
    done = 0
    chunk = 0
    while done < budget:
        c = min(CHUNK, budget - done)
        x = _bbox_uniform(D, c, seed, chunk)
        v = D.contains(x).astype(float)
        if f is not None:
            v = v * np.where(v > 0, f(x), 0.0)
        total += v.sum()
        total2 += (v * v).sum()
        done += c
        chunk += 1
    mean = total / budget
    var = max(total2 / budget - mean * mean, 0.0)
    return mean, math.sqrt(var / max(budget - 1, 1))


def volume(D: Domain, budget: int = 10**6, seed: int = 0, method: str = "auto") -> VolumeEstimate:
    """Volume of ``D``: exact where a closed form exists, otherwise Monte Carlo.

    ``method="mc"`` forces the rejection estimate even when an exact value is
    known, which is how the estimator itself is tested.
    """
    if method not in ("auto", "mc", "exact"):
        raise ValueError(f"unknown volume method {method!r}")
    exact = D.exact_volume() if method != "mc" else None
    if exact is not None:
        return VolumeEstimate(float(exact), "exact")
    if method == "exact":
        raise ValueError("no exact volume available for this domain")
    if budget <= 0:
        raise ValueError("Monte-Carlo volume needs a positive sample budget")
    lo, hi = D.bbox()
    box_vol = float(np.prod(hi - lo))
    frac, se = bbox_hit_fraction(D, budget, seed)
    return VolumeEstimate(box_vol * frac, "monte-carlo", budget, box_vol * se, seed)


def sample_uniform(D: Domain, n: int, seed: int = 0) -> np.ndarray:
    """``n`` i.i.d. uniform points in ``D`` by rejection from the bounding box.

    Chunk ``k`` draws from a generator seeded with ``(seed, k)``, so the output
    is a deterministic function of ``(D, n, seed)``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    have = 0
    chunk = 0
    tried = 0
    while have < n:
        x = _bbox_uniform(D, CHUNK, seed, chunk)
        x = x[D.contains(x)]
        chunk += 1
        tried += CHUNK
        if x.size:
            out.append(x)
            have += len(x)
        if tried >= THIN_PROBE and have / tried < THIN_ACCEPTANCE:
            raise ThinDomainError(f"acceptance rate {have / tried:.2e} over {tried} bounding-box probes")
    if not out:
        return np.empty((0, D.d))
    return np.concatenate(out)[:n]


def _probe_directions(d: int, cap: int = 64) -> np.ndarray:
    dirs = []
    for k in range(d):
        e = np.zeros(d)
        e[k] = 1.0
        dirs += [e, -e]
    if d > 1:
        signs = np.array(np.meshgrid(*[[-1.0, 1.0]] * d, indexing="ij")).reshape(d, -1).T
        dirs += list(signs / math.sqrt(d))
    return np.array(dirs[:cap])


def shrink(D: Domain, eps: float) -> Domain:
    """The inner parallel set ``{x in D : dist(x, boundary) > eps}``.

    Exact for boxes (any unweighted l_p norm) and disjoint ball unions (in the
    union's own norm).  For masks the result tests membership of probe points
    ``x + t*eps*u`` for ``t in {1/2, 1}`` over a fixed direction set: it always
    lies inside ``D`` but may keep some points closer than ``eps`` to the
    boundary between probe directions.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if isinstance(D, Box):
        lo = tuple(v + eps for v in D.lo)
        hi = tuple(v - eps for v in D.hi)
        if any(not (h > l) for l, h in zip(lo, hi)):
            raise EmptyDomainError(f"shrinking by {eps} empties the box")
        return Box(lo, hi)
    if isinstance(D, BallUnion) and D.disjoint:
        keep = [(c, r - eps) for c, r in zip(D.centers, D.radii) if r - eps > 0]
        if not keep:
            raise EmptyDomainError(f"shrinking by {eps} empties every ball")
        return BallUnion(tuple(c for c, _ in keep), tuple(r for _, r in keep), D.norm, True)
    dirs = _probe_directions(D.d) * eps
    base = D

    def pred(x):
        ok = base.contains(x)
        for t in (0.5, 1.0):
            for u in dirs:
                if not ok.any():
                    return ok
                ok &= base.contains(x + t * u)
        return ok

    lo, hi = D.bbox()
    return ImplicitMask(pred, tuple(lo), tuple(hi), None, f"shrink({getattr(D, 'name', 'domain')})",
                        {"eps": eps})


def boundary_shell_volume(D: Domain, eps: float, budget: int = 10**6, seed: int = 0) -> VolumeEstimate:
    """Estimated volume of ``D minus shrink(D, eps)``; tends to 0 for Jordan-measurable ``D``."""
    inner = shrink(D, eps)

    def shell(x):
        return (~inner.contains(x)).astype(float)

    lo, hi = D.bbox()
    box_vol = float(np.prod(hi - lo))
    frac, se = bbox_hit_fraction(D, budget, seed, shell)
    return VolumeEstimate(box_vol * frac, "monte-carlo", budget, box_vol * se, seed)


def scale_domain(D: Domain, s: float) -> Domain:
    if isinstance(D, (Box, BallUnion)):
        return D.scaled(s)
    base = D

    def pred(x):
        return base.contains(x / s)

    return ImplicitMask(pred, tuple(s * v for v in D.lo), tuple(s * v for v in D.hi),
                        None if D.volume_hint is None else D.volume_hint * s ** D.d,
                        f"scaled({D.name})", {"scale": s})
