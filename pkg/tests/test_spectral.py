import math

import numpy as np
import pytest

from gendomain import spectral
from gendomain.domains import Box, EmptyDomainError, disk, l_shape, unit_volume_corpus
from gendomain.spectral import (GridDomain, Spectrum, analytic_box_spectrum, approximation_numbers,
                                confirm_bound_constants, discretize, eigenvalue_bound_check, eigenvalues,
                                interval_dirichlet_closed_form, kroger_upper, laplacian, li_yau_lower,
                                polya_lower, weyl_constant_estimate, weyl_limit, weyl_ratio)

SQ = Box((0.0, 0.0), (1.0, 1.0))
UNIT = Box((0.0,), (1.0,))


@pytest.fixture(scope="module")
def square_fine():
    """Unit square, Dirichlet, h = 1/200, 200 eigenvalues (the spec resolution)."""
    return eigenvalues(discretize(SQ, 1 / 200), "dirichlet", 200)


@pytest.fixture(scope="module")
def corpus_medium():
    out = {}
    for name, D in unit_volume_corpus().items():
        out[name] = eigenvalues(discretize(D, 1 / 100), "dirichlet", 150)
    return out


def test_discretize_examples():
    G = discretize(SQ, 0.25)
    assert G.mask.shape == (4, 4) and G.mask.all()
    G = discretize(disk(), 0.01)
    assert abs(G.volume - math.pi) <= 0.02
    assert discretize(l_shape(), 0.5).cells == 3
    assert np.all(SQ.contains(discretize(SQ, 0.1).centers()))
    with pytest.raises(ValueError):
        discretize(Box((0, 0, 0), (1, 1, 1)), 0.5)
    with pytest.raises(ValueError):
        discretize(SQ, 0.0)
    with pytest.raises(EmptyDomainError):
        GridDomain(0.1, np.zeros((3, 3), bool), np.zeros(2))


def test_laplacian_structure():
    G = discretize(l_shape(), 1 / 8)
    for bc in ("dirichlet", "neumann"):
        A = laplacian(G, bc)
        assert abs(A - A.T).max() == 0
    An = laplacian(G, "neumann")
    assert np.allclose(An @ np.ones(G.cells), 0)
    with pytest.raises(ValueError):
        laplacian(G, "robin")


def test_interval_closed_form():
    for m in (10, 64, 3000):
        h = 1 / m
        S = eigenvalues(discretize(UNIT, h), "dirichlet", min(m, 12))
        ref = interval_dirichlet_closed_form(m, h)[: S.k]
        assert np.abs(S.eigenvalues - ref).max() <= 1e-8 * max(1.0, ref.max() * 1e-4)


def test_square_matches_fd_closed_form():
    h = 1 / 40
    S = eigenvalues(discretize(SQ, h), "dirichlet", 30)
    one = interval_dirichlet_closed_form(40, h)
    ref = np.sort((one[:, None] + one[None, :]).ravel())[:30]
    assert np.abs(S.eigenvalues - ref).max() <= 1e-8 * ref.max()


def test_square_first_eigenvalue(square_fine):
    assert square_fine.eigenvalues[0] == pytest.approx(2 * math.pi ** 2, rel=1e-2)
    assert square_fine.residual_max <= spectral.RESIDUAL_TOL


def test_neumann_square():
    S = eigenvalues(discretize(SQ, 1 / 50), "neumann", 4)
    assert abs(S.eigenvalues[0]) <= 1e-8 / S.h ** 2
    assert S.eigenvalues[1] == pytest.approx(math.pi ** 2, rel=2e-2)
    assert S.eigenvalues[2] == pytest.approx(math.pi ** 2, rel=2e-2)


def test_iterative_path_matches_dense():
    G = discretize(disk(0.5), 1 / 48)  # > dense threshold
    assert G.cells > spectral.DENSE_MAX
    S = eigenvalues(G, "dirichlet", 6)
    dense = np.linalg.eigvalsh(laplacian(G).toarray())[:6]
    assert np.allclose(S.eigenvalues, dense, rtol=1e-10)


def test_eigenvalue_errors():
    G = discretize(SQ, 0.25)
    with pytest.raises(ValueError):
        eigenvalues(G, "dirichlet", 17)
    with pytest.raises(ValueError):
        eigenvalues(G, "dirichlet", 0)
    with pytest.raises(ValueError):
        Spectrum(np.array([2.0, 1.0]), "dirichlet", 0.1, 2, 1.0, 2, 0.0)


def test_domain_monotonicity():
    h = 1 / 24
    ls = eigenvalues(discretize(SQ, h), "dirichlet", 12).eigenvalues
    for inner in (l_shape(), disk(0.5)):
        li = eigenvalues(discretize(inner, h), "dirichlet", 12).eigenvalues
        assert np.all(li >= ls)


def test_refinement_convergence():
    lam = [eigenvalues(discretize(SQ, 1 / m), "dirichlet", 10).eigenvalues for m in (16, 32, 64)]
    ratio = np.abs(lam[0] - lam[1]) / np.abs(lam[1] - lam[2])
    assert np.all((ratio > 3.5) & (ratio < 4.5))


def test_weyl_ratio_square(square_fine):
    r = weyl_ratio(square_fine, 1.0, 2)
    assert np.all((r[-50:] > 0.85) & (r[-50:] < 1.15))
    with pytest.raises(ValueError):
        weyl_ratio(Spectrum(np.arange(1.0, 6.0), "dirichlet", 0.1, 2, 1.0, 100, 0.0))


def test_weyl_ratio_interval():
    lam = (math.pi * np.arange(1, 2001)) ** 2
    S = Spectrum(lam, "dirichlet", 1e-4, 1, 1.0, 10 ** 4, 0.0)
    r = weyl_ratio(S, 1.0, 1)
    assert np.allclose(r, 1.0)


def test_weyl_ratio_shape_independence_and_drift(corpus_medium):
    tails = {}
    for name, S in corpus_medium.items():
        r = weyl_ratio(S, 1.0, 2)
        head, tail = np.nanmean(r[:50]), np.nanmean(r[-50:])
        assert abs(tail - 1) < abs(head - 1), name
        tails[name] = tail
    assert tails["square"] / tails["disk"] == pytest.approx(1.0, abs=0.1)


def test_gate_confirms_constants():
    g = confirm_bound_constants(k=200)
    assert g["li_yau"] and g["kroger"] and g["polya_boxes"]
    # the gate is able to reject: an inflated Li-Yau constant fails on the square
    lam = analytic_box_spectrum((1.0, 1.0), "dirichlet", 200)
    assert np.any(lam < 1.3 * polya_lower(np.arange(1, 201), 1.0, 2))
    mu = analytic_box_spectrum((1.0, 1.0), "neumann", 200)
    assert np.all(mu[1:] <= kroger_upper(np.arange(1, 200), 1.0, 2))


def test_analytic_box_spectrum():
    assert analytic_box_spectrum((1.0, 1.0), "dirichlet", 3) == pytest.approx([2 * math.pi ** 2, 5 * math.pi ** 2,
                                                                               5 * math.pi ** 2])
    assert analytic_box_spectrum((1.0,), "neumann", 3) == pytest.approx([0, math.pi ** 2, 4 * math.pi ** 2])


def test_bound_checks(square_fine, corpus_medium):
    c = eigenvalue_bound_check(square_fine, 1.0, 2)
    assert c.bound == "li_yau" and c.enabled and c.ok and c.min_margin >= 0.05
    c = eigenvalue_bound_check(corpus_medium["disk"], 1.0, 2)
    assert c.ok
    c = eigenvalue_bound_check(square_fine, 1.0, 2, kind="polya")
    assert c.ok and c.enabled
    Sn = eigenvalues(discretize(SQ, 1 / 50), "neumann", 60)
    c = eigenvalue_bound_check(Sn, 1.0, 2)
    assert c.bound == "kroger" and c.ok
    with pytest.raises(ValueError):
        eigenvalue_bound_check(Sn, 1.0, 2, kind="li_yau")
    with pytest.raises(ValueError):
        eigenvalue_bound_check(square_fine, 1.0, 2, kind="kroger")


def test_bound_check_reports_failures():
    # a deliberately too-small volume inflates the bound so that every k fails
    S = eigenvalues(discretize(SQ, 1 / 20), "dirichlet", 20)
    c = eigenvalue_bound_check(S, 0.05, 2)
    assert not c.ok and len(c.failures) == 20
    f = c.failures[0]
    assert set(f) == {"k", "eigenvalue", "bound", "discretization_error"} and f["bound"] > f["eigenvalue"]
    assert li_yau_lower(1, 1.0, 2) == pytest.approx(2 * math.pi)


def test_approximation_numbers(square_fine):
    Sn = eigenvalues(discretize(SQ, 1 / 20), "neumann", 5)
    assert approximation_numbers(Sn)[0] == pytest.approx(1.0, abs=1e-6)
    sig = approximation_numbers(square_fine)
    assert sig[0] == pytest.approx((1 + 2 * math.pi ** 2) ** -0.5, rel=1e-3)
    assert sig[0] == pytest.approx(0.2195, abs=2e-4)
    assert np.all(np.diff(sig) <= 0)
    with pytest.raises(NotImplementedError):
        approximation_numbers(square_fine, r=2)


def test_weyl_constant_estimate(corpus_medium):
    est = {k: weyl_constant_estimate(S, 1.0, 2) for k, S in corpus_medium.items()}
    vals = [e.value for e in est.values()]
    assert max(vals) / min(vals) <= 1.1
    for e in est.values():
        assert e.value == pytest.approx(weyl_limit(2), rel=0.1)
    assert weyl_limit(2) == pytest.approx(1 / (2 * math.sqrt(math.pi)))
    S = corpus_medium["square"]
    doubled = Spectrum(S.eigenvalues / 2, S.bc, S.h * math.sqrt(2), 2, 2.0, S.cells, 0.0)
    assert weyl_constant_estimate(doubled, 2.0, 2).value == pytest.approx(
        weyl_constant_estimate(S, 1.0, 2).value, rel=0.02)
    with pytest.raises(ValueError):
        weyl_constant_estimate(Spectrum(np.arange(1.0, 4.0), "dirichlet", 0.1, 2, 1.0, 9, 0.0))


def test_spectrum_json_roundtrip():
    S = eigenvalues(discretize(disk(0.5), 1 / 10), "neumann", 5)
    T = Spectrum.from_json(S.to_json())
    assert np.array_equal(S.eigenvalues, T.eigenvalues) and T.bc == "neumann" and T.k == 5
    assert S.to_json()["domain"]["kind"] == "mask"
