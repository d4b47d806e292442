"""Compiled vs numpy distance kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Times every kernel of every available backend on the same random inputs and
checks that the backends agree.
"""

import argparse
import json
import timeit

import numpy as np

from gendomain.geometry import L1, L2, LINF, NormSpec
from gendomain.kernels import available_backends

CASES = [
    # (name, number of query points, number of nodes, dimension)
    ("small", 20_000, 16, 2),
    ("medium", 50_000, 100, 2),
    ("wide", 20_000, 64, 6),
]
NORMS = {"l1": L1, "l2": L2, "linf": LINF, "l3": NormSpec(3)}


def inputs(m, n, d, seed=0):
    rng = np.random.default_rng(seed)
    P = rng.random((m, d))
    X = rng.random((n, d))
    half = np.full((m, d), 0.01)
    return P, X, half


def bench(repeat):
    backends = available_backends()
    rows = []
    for name, m, n, d in CASES:
        P, X, half = inputs(m, n, d)
        for nname, norm in NORMS.items():
            w = norm.weight_array(d)
            calls = {
                "nearest": lambda b: b.nearest(P, X, norm.p, w),
                "box_sup_bound": lambda b: b.box_sup_bound(P, half, X, norm.p, w),
                "max_dist": lambda b: b.max_dist(X, P[:5000], norm.p, w),
            }
            for kname, call in calls.items():
                ref = None
                times = {}
                for bname, b in backends.items():
                    out = call(b)
                    out = out[0] if isinstance(out, tuple) else out
                    if ref is None:
                        ref = out
                    elif not np.allclose(out, ref, rtol=1e-12, atol=1e-12):
                        raise AssertionError(f"backends disagree on {kname}/{nname}/{name}")
                    times[bname] = min(timeit.repeat(lambda: call(b), number=1, repeat=repeat))
                row = {"case": name, "m": m, "n": n, "d": d, "norm": nname, "kernel": kname, **times}
                if "compiled" in times:
                    row["speedup"] = times["python"] / times["compiled"]
                rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", help="write the rows as JSON")
    a = ap.parse_args()
    rows = bench(a.repeat)
    print(f"{'case':8s} {'norm':5s} {'kernel':14s} {'python[s]':>10s} {'compiled[s]':>12s} {'speedup':>8s}")
    for r in rows:
        c = r.get("compiled", float("nan"))
        print(f"{r['case']:8s} {r['norm']:5s} {r['kernel']:14s} {r['python']:10.4f} {c:12.4f} "
              f"{r.get('speedup', float('nan')):8.1f}")
    if a.json:
        with open(a.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
