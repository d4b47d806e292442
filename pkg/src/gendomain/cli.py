"""Command-line interface and experiment harness.

Exit codes: 0 success, 1 invariant failure, 2 configuration error.  Reports
are JSON with sorted keys and no timestamps, so identical configurations give
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__, bounds, domains, pointopt, spectral, wce
from .geometry import L2, LINF, NormSpec, unit_ball_volume

EXIT_OK, EXIT_INVARIANT, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


# io helpers --------------------------------------------------------------------

def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(obj, out: str | None) -> None:
    text = dumps(obj)
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None


def load_domain(spec: str | None):
    """A domain JSON file, or ``corpus:<name>`` for the unit-area corpus."""
    if spec is None:
        raise ConfigError("--domain is required")
    if spec.startswith("corpus:"):
        corpus = domains.unit_volume_corpus()
        name = spec.split(":", 1)[1]
        if name not in corpus:
            raise ConfigError(f"unknown corpus domain {name!r}; known: {sorted(corpus)}")
        return corpus[name]
    try:
        return domains.domain_from_json(load_json(spec))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid domain in {spec}: {exc}") from None


def parse_norm(value: str | None) -> NormSpec:
    """``2``, ``inf``, inline NormSpec JSON, or a path to a NormSpec JSON file."""
    if value is None:
        return L2
    try:
        v = value.strip()
        if v.startswith("{"):
            return NormSpec.from_json(json.loads(v))
        if v.endswith(".json"):
            return NormSpec.from_json(load_json(v))
        return NormSpec(v)
    except (ValueError, TypeError, KeyError, json.JSONDecodeError) as exc:
        raise ConfigError(f"invalid norm {value!r}: {exc}") from None


def read_points(path: str, d: int | None = None) -> np.ndarray:
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    if rows and not _is_number(rows[0][0]):
        rows = rows[1:]
    try:
        X = np.array([[float(v) for v in r] for r in rows], dtype=float)
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    if X.size == 0:
        raise ConfigError(f"{path} contains no points")
    if d is not None and X.shape[1] != d:
        raise ConfigError(f"{path}: points have {X.shape[1]} coordinates, domain has {d}")
    return X


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def points_csv(X: np.ndarray) -> str:
    """One point per line, coordinates comma-separated, no header."""
    return "".join(",".join(repr(float(v)) for v in row) + "\n" for row in X)


def header(command: str, **extra) -> dict:
    return {"tool": "gendomain", "version": __version__, "command": command, **extra}


def parse_n_list(value: str) -> list[int]:
    try:
        ns = [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"--n must be a comma-separated list of integers, got {value!r}") from None
    if not ns or min(ns) < 1:
        raise ConfigError("--n values must be >= 1")
    return ns


# sweep -------------------------------------------------------------------------

def fit_loglog(ns, values):
    """Least-squares fit ``log v = log C + s log n``; returns ``(s, C)``."""
    x = np.log(np.asarray(ns, float))
    y = np.log(np.asarray(values, float))
    if len(x) < 2:
        return math.nan, math.nan
    s, c = np.polyfit(x, y, 1)
    return float(s), float(math.exp(c))


def sweep_item(args) -> dict:
    dom_json, norm_json, n, mode, seed, budget, iterations, restarts, samples_per_cell, tol = args
    D = domains.domain_from_json(dom_json)
    norm = NormSpec.from_json(norm_json)
    out = {"n": n, "seed": seed}
    try:
        if mode == "grid":
            m = round(n ** (1.0 / D.d))
            if m ** D.d != n:
                raise ValueError(f"n={n} is not a perfect {D.d}-th power")
            X = pointopt.make_grid_points(D, m)
        else:
            cfg = pointopt.OptimizerConfig(iterations=iterations, restarts=restarts,
                                           samples_per_cell=samples_per_cell, seed=seed)
            X = pointopt.optimize_nodes(D, n, norm, cfg, certify_tol=tol).points
        if isinstance(D, domains.ImplicitMask):
            cover = wce.mc_covering_radius(D, X, norm, budget, seed)
        else:
            cover = wce.certified_covering_radius(D, X, norm, tol=tol)
        integ = wce.wce_integration(D, X, norm, budget=budget, seed=seed + 1)
        vol = domains.volume(D, budget, seed + 2)
        la = bounds.linf_asymptote(n, D.d, norm, vol.value)
        ia = bounds.int_asymptote(n, D.d, norm, vol.value)
        out.update(cover=cover.to_json(), integration=integ.to_json(), volume=vol.to_json(),
                   linf_bracket=[la.lo, la.hi], int_bracket=[ia.lo, ia.hi],
                   linf_ratio=cover.value / la.lo, int_ratio=integ.value / ia.lo,
                   points=X.tolist(), ok=True)
    except Exception as exc:  # per-n failures are recorded, the sweep continues
        out.update(ok=False, error=f"{type(exc).__name__}: {exc}")
    return out


def run_sweep(D, norm: NormSpec, ns, mode="optimize", seed=0, budget=200_000, jobs=1,
              iterations=60, restarts=2, samples_per_cell=200, tol=1e-4) -> dict:
    items = [(D.to_json(), norm.to_json(), n, mode, seed + 7919 * i, budget, iterations, restarts,
              samples_per_cell, tol) for i, n in enumerate(ns)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(sweep_item, items))
    else:
        results = [sweep_item(it) for it in items]
    good = [r for r in results if r["ok"]]
    fits = {}
    if len(good) >= 2:
        gn = [r["n"] for r in good]
        s, c = fit_loglog(gn, [r["cover"]["value"] for r in good])
        si, ci = fit_loglog(gn, [r["integration"]["value"] for r in good])
        d = D.d
        fixed = float(np.exp(np.mean([math.log(r["cover"]["value"] * r["n"] ** (1 / d)) for r in good])))
        fits = {"cover": {"slope": s, "prefactor": c, "prefactor_fixed_slope": fixed},
                "integration": {"slope": si, "prefactor": ci}}
    return header("sweep", domain=D.to_json(), norm=norm.to_json(), mode=mode, seed=seed, budget=budget,
                  optimizer={"iterations": iterations, "restarts": restarts, "samples_per_cell": samples_per_cell},
                  tol=tol, formulas=["asy1", "asy3"], items=results, fit=fits,
                  failed=[r["n"] for r in results if not r["ok"]])


def sweep_csv(report: dict) -> str:
    cols = ["n", "ok", "cover", "cover_lo", "cover_hi", "integration", "integration_stderr",
            "linf_lo", "linf_hi", "int_lo", "int_hi", "linf_ratio", "int_ratio"]
    lines = [",".join(cols)]
    for r in report["items"]:
        if r["ok"]:
            c, i = r["cover"], r["integration"]
            row = [r["n"], 1, c["value"], c["lo"], c["hi"], i["value"], i["stderr"], *r["linf_bracket"],
                   *r["int_bracket"], r["linf_ratio"], r["int_ratio"]]
        else:
            row = [r["n"], 0] + [""] * (len(cols) - 2)
        lines.append(",".join("" if v is None else repr(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


# verify ------------------------------------------------------------------------

def _check(name, ok, **detail):
    return {"name": name, "ok": bool(ok), **detail}


def run_verify(seed: int = 0) -> dict:
    """Fixed-seed invariant suite covering every module."""
    checks = []
    rng = np.random.default_rng(seed)

    # geometry: closed-form ball volumes
    checks.append(_check("ball volume l2 d=2 is pi", abs(unit_ball_volume(2, L2) - math.pi) < 1e-12))
    checks.append(_check("ball volume l1 d=3 is 4/3", abs(unit_ball_volume(3, NormSpec(1)) - 4 / 3) < 1e-12))
    checks.append(_check("ball volume linf d=4 is 16", abs(unit_ball_volume(4, LINF) - 16) < 1e-12))

    # domains: Monte-Carlo volume of a disk
    disk = domains.disk(1.0)
    v = domains.volume(disk, 200_000, seed, method="mc")
    checks.append(_check("mc volume of unit disk", abs(v.value - math.pi) <= 4 * v.stderr,
                         value=v.value, stderr=v.stderr))

    # wce: grid covering identity
    sq = domains.Box((0.0, 0.0), (1.0, 1.0))
    r = wce.certified_covering_radius(sq, pointopt.make_grid_points(sq, 3), LINF)
    checks.append(_check("grid covering radius 1/6", abs(r.lo - 1 / 6) <= 1e-6 and abs(r.hi - 1 / 6) <= 1e-6,
                         lo=r.lo, hi=r.hi))

    # bounds: sharpness on extremal ball unions, volume measured independently
    for d, norm in ((1, L2), (2, L2), (2, LINF)):
        n, delta = 3, 0.7
        D, C = pointopt.make_extremal_ball_union(n, delta, d, norm)
        vol = domains.volume(D, 400_000, seed + d, method="mc")
        rc = wce.certified_covering_radius(D, C, norm)
        lb = bounds.linf_uniform_lower(n, d, norm, vol.value).value
        tol = 1e-6 + 3 * lb * vol.stderr / (d * vol.value)
        checks.append(_check(f"covering sharpness d={d} p={norm.p}", abs(rc.value - lb) <= tol,
                             measured=rc.value, bound=lb, tol=tol))
        ie = wce.wce_integration(D, C, norm, budget=200_000, seed=seed + 10 + d)
        il = bounds.int_uniform_lower(n, d, norm, vol.value).value
        tol = 3 * ie.stderr + 3 * il * vol.stderr * (d + 1) / (d * vol.value)
        checks.append(_check(f"integration sharpness d={d} p={norm.p}", abs(ie.value - il) <= tol,
                             measured=ie.value, bound=il, tol=tol))

    # bounds: homogeneity and ordering
    ok = True
    for d in (1, 2, 3):
        for s in (0.5, 2.0):
            a = bounds.linf_uniform_lower(5, d, L2, 1.3)
            b = bounds.linf_uniform_lower(5, d, L2, 1.3 * s ** d)
            c = bounds.int_uniform_lower(5, d, L2, 1.3)
            e = bounds.int_uniform_lower(5, d, L2, 1.3 * s ** d)
            ok &= math.isclose(b.value, s * a.value, rel_tol=1e-12)
            ok &= math.isclose(e.value, s ** (d + 1) * c.value, rel_tol=1e-12)
    checks.append(_check("bound homogeneity", ok))
    ok = True
    for d in range(1, 11):
        for p in (1, 2, math.inf):
            for n in (1, 7, 100):
                nm = NormSpec(p)
                lo = bounds.linf_uniform_lower(n, d, nm)
                a = bounds.linf_asymptote(n, d, nm)
                ok &= lo.value <= a.lo * (1 + 1e-12) and a.lo <= a.hi
    checks.append(_check("bound ordering", ok))
    cr = bounds.curse_min_n(0.1, 10, 2)
    checks.append(_check("curse coefficient d=10", abs(cr.coefficient - 0.2617) < 5e-4, coefficient=cr.coefficient))

    # lower bound never beaten by computed node sets
    worst = math.inf
    for _ in range(6):
        d = int(rng.integers(1, 3))
        side = rng.uniform(0.5, 2.0, d)
        B = domains.Box(tuple([0.0] * d), tuple(side))
        n = int(rng.integers(1, 9))
        norm = (L2, LINF, NormSpec(1))[int(rng.integers(0, 3))]
        X = pointopt.greedy_farthest_point(B, n, norm, seed=int(rng.integers(1 << 30)), pool=2000)
        rc = wce.certified_covering_radius(B, X, norm, tol=1e-5)
        lb = bounds.linf_uniform_lower(n, d, norm, B.exact_volume()).value
        worst = min(worst, rc.hi - lb + rc.width)
    checks.append(_check("covering radius >= uniform lower bound", worst >= 0, worst_slack=worst))

    # pointopt: fooling function vanishes on the grid
    f, cert = pointopt.fooling_function(sq, 4)
    checks.append(_check("fooling function certificate", cert.vanishes_at_nodes and cert.integral > 0 and cert.class_ok))

    # spectral: closed-form oracles and the bound gate
    G = spectral.discretize(domains.Box((0.0,), (1.0,)), 1 / 64)
    S = spectral.eigenvalues(G, "dirichlet", 10)
    err = float(np.abs(S.eigenvalues - spectral.interval_dirichlet_closed_form(64, 1 / 64)[:10]).max())
    checks.append(_check("1-d discrete Dirichlet spectrum", err <= 1e-8, max_error=err))
    gate = spectral.bound_gate()
    checks.append(_check("Li-Yau / Kroger constants confirmed", gate["li_yau"] and gate["kroger"], gate=gate))
    Gs = spectral.discretize(sq, 1 / 24)
    Gd = spectral.discretize(domains.disk(0.5), 1 / 24)
    ls = spectral.eigenvalues(Gs, "dirichlet", 8).eigenvalues
    ld = spectral.eigenvalues(Gd, "dirichlet", 8).eigenvalues
    checks.append(_check("Dirichlet domain monotonicity", bool(np.all(ld >= ls))))
    Sn = spectral.eigenvalues(Gs, "neumann", 4)
    checks.append(_check("Neumann ground state", abs(Sn.eigenvalues[0]) <= 1e-8 / Gs.h ** 2))

    return header("verify", seed=seed, checks=checks, ok=all(c["ok"] for c in checks),
                  failed=[c["name"] for c in checks if not c["ok"]])


# commands ----------------------------------------------------------------------

def cmd_volume(a):
    D = load_domain(a.domain)
    v = domains.volume(D, a.budget, a.seed, a.method)
    emit(header("volume", seed=a.seed, budget=a.budget, domain=D.to_json(), volume=v.to_json()), a.out)
    return EXIT_OK


def cmd_cover(a):
    D = load_domain(a.domain)
    if not a.points:
        raise ConfigError("--points is required")
    X = read_points(a.points, D.d)
    norm = parse_norm(a.norm_p)
    rep = wce.covering_radius(D, X, norm, a.mode, a.budget, a.seed, a.tol)
    emit(header("cover", seed=a.seed, budget=a.budget, norm=norm.to_json(), n=len(X), mode=a.mode,
                report=rep.to_json()), a.out)
    return EXIT_OK


def cmd_wce(a):
    D = load_domain(a.domain)
    if not a.points:
        raise ConfigError("--points is required")
    X = read_points(a.points, D.d)
    norm = parse_norm(a.norm_p)
    mode = "mc" if isinstance(D, domains.ImplicitMask) else "certified"
    linf = wce.wce_linf(D, X, norm, mode=mode, budget=a.budget, seed=a.seed, tol=a.tol)
    integ = wce.wce_integration(D, X, norm, budget=a.budget, seed=a.seed)
    emit(header("wce", seed=a.seed, budget=a.budget, norm=norm.to_json(), n=len(X),
                linf=linf.to_json(), integration=integ.to_json()), a.out)
    return EXIT_OK


def cmd_optimize(a):
    D = load_domain(a.domain)
    norm = parse_norm(a.norm_p)
    if a.n is None:
        raise ConfigError("--n is required")
    n = parse_n_list(a.n)
    if len(n) != 1:
        raise ConfigError("optimize takes a single --n")
    cfg = pointopt.OptimizerConfig(iterations=a.iterations, restarts=a.restarts,
                                   samples_per_cell=a.samples_per_cell, seed=a.seed, objective=a.objective)
    res = pointopt.optimize_nodes(D, n[0], norm, cfg)
    rep = header("optimize", seed=a.seed, norm=norm.to_json(), n=n[0], objective=res.objective,
                 config={"iterations": cfg.iterations, "restarts": cfg.restarts,
                         "samples_per_cell": cfg.samples_per_cell, "objective": cfg.objective},
                 certified=None if res.certified is None else res.certified.to_json(),
                 restarts=res.restarts, trace=res.trace, points=res.points.tolist())
    if a.out:
        write_atomic(a.out, points_csv(res.points))
    emit(rep, None)
    return EXIT_OK


def cmd_sweep(a):
    D = load_domain(a.domain)
    norm = parse_norm(a.norm_p)
    if a.n is None:
        raise ConfigError("--n is required")
    if a.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    rep = run_sweep(D, norm, parse_n_list(a.n), a.mode, a.seed, a.budget, a.jobs, a.iterations,
                    a.restarts, a.samples_per_cell, a.tol)
    if a.out:
        write_atomic(a.out + ".json", dumps(rep))
        write_atomic(a.out + ".csv", sweep_csv(rep))
    else:
        emit(rep, None)
    return EXIT_OK


def cmd_bounds(a):
    f = a.formula
    if f == "curse":
        if a.eps is None or a.d is None:
            raise ConfigError("curse needs --eps and --d")
        rep = bounds.curse_min_n(a.eps, a.d, a.p if a.p is not None else 2.0).to_json()
    elif f == "cr":
        if None in (a.n, a.d, a.c_r):
            raise ConfigError("cr needs --n, --d and --c-r")
        rep = bounds.cr_class_lower(int(a.n), a.d, a.r, a.c_r).to_json()
    else:
        if a.n is None or a.d is None:
            raise ConfigError(f"{f} needs --n and --d")
        norm = parse_norm(a.p if a.p is not None else "2")
        rep = bounds.FORMULAS[f](int(a.n), a.d, norm, a.vol).to_json()
    emit(header("bounds", formula=f, report=rep), a.out)
    return EXIT_OK


def cmd_spectrum(a):
    D = load_domain(a.domain)
    G = spectral.discretize(D, a.h)
    S = spectral.eigenvalues(G, a.bc, a.k)
    emit(header("spectrum", **S.to_json()), a.out)
    return EXIT_OK


def cmd_weyl(a):
    if not a.spectra or len(a.spectra) < 2:
        raise ConfigError("weyl needs at least two --spectra files")
    ests, dims = [], set()
    for path in a.spectra:
        obj = load_json(path)
        try:
            S = spectral.Spectrum.from_json(obj)
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError(f"{path} is not a spectrum: {exc}") from None
        dims.add(S.d)
        w = spectral.weyl_constant_estimate(S)
        r = spectral.weyl_ratio(S)
        ests.append({"file": os.path.basename(path), "bc": S.bc, "h": S.h, "k": S.k,
                     "estimate": w.to_json(), "weyl_ratio_tail": float(np.nanmean(r[-max(1, S.k // 4):]))})
    if len(dims) != 1:
        raise ConfigError("spectra must share the dimension")
    vals = [e["estimate"]["value"] for e in ests]
    spread = max(vals) / min(vals) - 1
    agree = spread <= a.tol
    emit(header("weyl", tol=a.tol, estimates=ests, relative_spread=spread, agree=agree,
                weyl_limit=spectral.weyl_limit(dims.pop())), a.out)
    return EXIT_OK if agree else EXIT_INVARIANT


def cmd_verify(a):
    rep = run_verify(a.seed)
    emit(rep, a.out)
    return EXIT_OK if rep["ok"] else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gendomain", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"gendomain {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, domain=True, points=False, norm=True, budget=True):
        if domain:
            p.add_argument("--domain", help="domain JSON file or corpus:<square|disk|l_shape>")
        if points:
            p.add_argument("--points", help="point set CSV")
        if norm:
            p.add_argument("--norm-p", default="2", help="p (number or inf) or NormSpec JSON")
        if budget:
            p.add_argument("--budget", type=int, default=200_000, help="Monte-Carlo sample budget")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("volume", help="domain volume")
    common(p, norm=False)
    p.add_argument("--method", choices=["auto", "mc", "exact"], default="auto")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("cover", help="covering radius of a point set")
    common(p, points=True)
    p.add_argument("--mode", choices=["certified", "mc"], default="certified")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("wce", help="worst-case L_inf and integration errors")
    common(p, points=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_wce)

    for name, func in (("optimize", cmd_optimize), ("sweep", cmd_sweep)):
        p = sub.add_parser(name, help="optimise nodes" if name == "optimize" else "n-sweep with fits")
        common(p)
        p.add_argument("--n", help="number of nodes" + (" (comma list)" if name == "sweep" else ""))
        p.add_argument("--iterations", type=int, default=60)
        p.add_argument("--restarts", type=int, default=2)
        p.add_argument("--samples-per-cell", type=int, default=200)
        if name == "optimize":
            p.add_argument("--objective", choices=list(pointopt.OBJECTIVES), default="covering")
        else:
            p.add_argument("--mode", choices=["optimize", "grid"], default="optimize")
            p.add_argument("--jobs", type=int, default=1)
            p.add_argument("--tol", type=float, default=1e-4)
        p.set_defaults(func=func)

    p = sub.add_parser("bounds", help="closed-form bounds")
    p.add_argument("--formula", required=True, choices=["lower2", "lower4", "upper1", "asy1", "asy3", "curse", "cr"])
    p.add_argument("--n", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--p", help="norm exponent (number or inf)")
    p.add_argument("--vol", type=float, default=1.0)
    p.add_argument("--eps", type=float)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--c-r", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("spectrum", help="Laplacian eigenvalues on a masked grid")
    p.add_argument("--domain")
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--bc", choices=list(spectral.BCS), default="dirichlet")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("weyl", help="compare Weyl constant estimates of spectra")
    p.add_argument("--spectra", nargs="+")
    p.add_argument("--tol", type=float, default=0.1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        return a.func(a)
    except ConfigError as exc:
        print(f"gendomain: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, TypeError, domains.EmptyDomainError, wce.UnsupportedDomainError) as exc:
        print(f"gendomain: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
