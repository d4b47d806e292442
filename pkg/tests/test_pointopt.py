import math

import numpy as np
import pytest

from gendomain.domains import BallUnion, Box, disk, l_shape
from gendomain.geometry import L2, LINF, NormSpec, unit_ball_volume
from gendomain.pointopt import (OptimizerConfig, fooling_function, greedy_farthest_point, lloyd_descent,
                                make_extremal_ball_union, make_grid_points, optimize_nodes)
from gendomain.wce import certified_covering_radius, wce_integration

SQ = Box((0.0, 0.0), (1.0, 1.0))


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(iterations=0)
    with pytest.raises(ValueError):
        OptimizerConfig(objective="energy")


def test_grid_points_examples():
    X = make_grid_points(SQ, 2)
    assert sorted(map(tuple, X)) == [(0.25, 0.25), (0.25, 0.75), (0.75, 0.25), (0.75, 0.75)]
    assert certified_covering_radius(SQ, X, LINF).value == pytest.approx(0.25, abs=1e-9)
    for d in (1, 2, 3):
        cube = Box((0.0,) * d, (1.0,) * d)
        r = certified_covering_radius(cube, make_grid_points(cube, 1), L2)
        assert r.value == pytest.approx(0.5 * math.sqrt(d), abs=1e-6)
    big = Box((0.0, 0.0), (2.0, 2.0))
    assert certified_covering_radius(big, make_grid_points(big, 2), LINF).value == pytest.approx(0.5, abs=1e-9)
    with pytest.raises(TypeError):
        make_grid_points(disk(), 2)


def test_extremal_ball_union_examples():
    D, C = make_extremal_ball_union(3, 1.0, 2, L2)
    assert D.exact_volume() == pytest.approx(3 * math.pi)
    assert certified_covering_radius(D, C, L2).value == pytest.approx(1.0, abs=1e-6)
    for n in (1, 5):
        D, C = make_extremal_ball_union(n, 1.0, 2, L2)
        assert certified_covering_radius(D, C, L2).value == pytest.approx(1.0, abs=1e-6)
    lhs = 2 * math.pi * (3 * math.pi) ** -1.5
    rhs = (2 / 3) * math.pi ** -0.5 * 3 ** -0.5
    assert lhs == pytest.approx(rhs) and rhs == pytest.approx(0.2171, abs=1e-4)
    with pytest.raises(ValueError):
        make_extremal_ball_union(3, 1.0, 2, L2, spacing=2.0)


def test_greedy_examples():
    two = BallUnion(((0.0, 0.0), (5.0, 0.0)), (1.0, 1.0))
    X = greedy_farthest_point(two, 2, L2, seed=0)
    assert sorted(int(x[0] > 2.5) for x in X) == [0, 1]
    X = greedy_farthest_point(SQ, 4, LINF, seed=0, pool=10_000)
    r = certified_covering_radius(SQ, X, LINF).value
    # centre first, then three corners: the fourth corner stays at distance 1/2 = 2 * optimum
    assert r <= 2 * 0.25 + 0.02
    X = greedy_farthest_point(BallUnion(((0.0, 0.0),), (1.0,)), 1, L2, seed=0)
    assert np.linalg.norm(X[0]) <= 0.05


def test_greedy_two_approximation_on_pool():
    # every pool point is within twice the optimal covering radius, here bounded by the grid value
    X = greedy_farthest_point(SQ, 9, LINF, seed=1, pool=5000)
    assert certified_covering_radius(SQ, X, LINF).value <= 2 * (1 / 6) + 0.02


def test_lloyd_examples():
    X0 = np.random.default_rng(0).random((4, 2))
    cfg = OptimizerConfig(iterations=40, restarts=1, samples_per_cell=400, seed=1)
    res = lloyd_descent(SQ, X0, cfg, LINF)
    assert certified_covering_radius(SQ, res.points, LINF).value <= 0.27
    best = [t["best"] for t in res.trace]
    assert all(b2 <= b1 for b1, b2 in zip(best, best[1:]))
    q = OptimizerConfig(iterations=30, restarts=1, samples_per_cell=4000, seed=2, objective="quantization")
    ball = BallUnion(((0.0, 0.0),), (1.0,))
    res = lloyd_descent(ball, [[0.4, -0.3]], q, L2)
    assert np.linalg.norm(res.points[0]) <= 0.05


def test_lloyd_keeps_nodes_in_domain_and_reseeds():
    X0 = np.array([[0.1, 0.1], [0.1, 0.1 + 1e-9], [0.2, 0.1]])
    cfg = OptimizerConfig(iterations=5, restarts=1, samples_per_cell=100, seed=0)
    res = lloyd_descent(l_shape(), X0, cfg, L2)
    assert np.all(l_shape().contains(res.points))


@pytest.mark.parametrize("norm", [L2, NormSpec(1), NormSpec(3)])
def test_lloyd_other_norms(norm):
    X0 = greedy_farthest_point(SQ, 5, norm, seed=0, pool=2000)
    cfg = OptimizerConfig(iterations=8, restarts=1, samples_per_cell=100, seed=0)
    res = lloyd_descent(SQ, X0, cfg, norm)
    assert res.trace[res.best_iteration]["best"] <= res.trace[0]["best"]


@pytest.mark.parametrize("m", [2, 3, 4])
def test_optimized_within_15pct_of_grid(m):
    cfg = OptimizerConfig(iterations=60, restarts=3, samples_per_cell=300, seed=0)
    res = optimize_nodes(SQ, m * m, LINF, cfg)
    assert res.certified.hi <= 1.15 / (2 * m)


def test_greedy_then_lloyd_never_worse():
    X0 = greedy_farthest_point(SQ, 10, L2, seed=3, pool=5000)
    r0 = certified_covering_radius(SQ, X0, L2, tol=1e-5).hi
    res = lloyd_descent(SQ, X0, OptimizerConfig(iterations=20, restarts=1, seed=3), L2)
    r1 = certified_covering_radius(SQ, res.points, L2, tol=1e-5).hi
    assert r1 <= r0 + 0.02


def test_optimize_quantization_beats_lower_bound_never():
    cfg = OptimizerConfig(iterations=20, restarts=2, samples_per_cell=300, seed=0, objective="quantization")
    res = optimize_nodes(SQ, 4, L2, cfg)
    w = wce_integration(SQ, res.points, L2, budget=200_000, seed=1)
    lower = (2 / 3) * math.pi ** -0.5 * 4 ** -0.5
    assert w.value >= lower - 3 * w.stderr


def test_fooling_function_examples():
    f, cert = fooling_function(SQ, 4)
    assert cert.vanishes_at_nodes and np.all(f(make_grid_points(SQ, 4)) == 0.0)
    assert cert.integral > 0 and cert.class_ok
    f1, c1 = fooling_function(Box((0.0,), (1.0,)), 2)
    t = (np.arange(2_000_000) + 0.5) / 2_000_000
    assert c1.integral == pytest.approx(f1(t[:, None]).mean(), rel=1e-6)
    assert c1.integral == pytest.approx(0.5 * 0.5 ** 2 / 16)
    _, c2 = fooling_function(SQ, 2)
    _, c4 = fooling_function(SQ, 4)
    assert c2.integral / c4.integral == pytest.approx(4.0, rel=1e-12)
    with pytest.raises(TypeError):
        fooling_function(disk(), 2)


def test_fooling_function_class_constants():
    for d in (1, 2, 3):
        box = Box((0.0,) * d, (1.0,) * d)
        f, cert = fooling_function(box, 3)
        assert cert.lipschitz_d <= d ** -0.5 * (1 + 1e-3)
        assert cert.derivative_lipschitz_d <= (1 / d) * (1 + 1e-3)
        assert cert.max_abs <= 1
