"""Spectra, constant indices and the singular set against closed forms."""

import math

import numpy as np
import pytest

from acmorse.config.models import ContinuationConfig
from acmorse.grid import MetricField, TorusGrid
from acmorse.solver import EventKind, continue_branch, newton_solve
from acmorse.spectrum import constant_index, hessian_inertia, laplacian_spectrum

pytestmark = pytest.mark.acceptance


@pytest.mark.timeout(5)
def test_index_of_zero_two_ways(make_circle_problem) -> None:
    prob = make_circle_problem(0.4, size=256)
    spectrum = laplacian_spectrum(prob.metric, 8, operator=prob.laplacian)

    from_spectrum = constant_index(prob, 0.0, spectrum)
    from_hessian = hessian_inertia(prob, np.zeros(prob.grid.node_count))

    assert (from_spectrum.index, from_spectrum.nullity) == (3, 0)
    assert (from_hessian.index, from_hessian.nullity) == (3, 0)


@pytest.mark.timeout(30)
def test_circle_spectrum_matches_continuum() -> None:
    grid = TorusGrid.circle(2 * math.pi, 256)
    spectrum = laplacian_spectrum(MetricField.euclidean(grid), 10)
    expected = np.array([0, 1, 1, 4, 4, 9, 9, 16, 16, 25], dtype=float)

    assert spectrum.eigenvalues[0] == pytest.approx(0.0, abs=1e-10)
    np.testing.assert_allclose(spectrum.eigenvalues[1:], expected[1:], rtol=1e-2)


@pytest.mark.timeout(30)
def test_square_torus_spectrum_matches_continuum() -> None:
    grid = TorusGrid((2 * math.pi, 2 * math.pi), (64, 64))
    spectrum = laplacian_spectrum(MetricField.euclidean(grid), 10)
    # |k|^2 for k in Z^2: one 0, four 1s, four 2s, then the 4s
    expected = np.array([0, 1, 1, 1, 1, 2, 2, 2, 2, 4], dtype=float)

    assert spectrum.method == "iterative"
    assert spectrum.eigenvalues[0] == pytest.approx(0.0, abs=1e-8)
    np.testing.assert_allclose(spectrum.eigenvalues[1:], expected[1:], rtol=1e-2)


@pytest.mark.timeout(30)
def test_second_order_convergence() -> None:
    errors = []
    for size in (32, 64, 128):
        grid = TorusGrid.circle(2 * math.pi, size)
        spectrum = laplacian_spectrum(MetricField.euclidean(grid), 6)
        errors.append(abs(spectrum.eigenvalues[5] - 9.0))
    for coarse, fine in zip(errors, errors[1:]):
        assert coarse / fine == pytest.approx(4.0, rel=0.2)


@pytest.mark.timeout(30)
def test_trivial_branch_brackets_singular_set(make_circle_problem) -> None:
    prob = make_circle_problem(1.2)
    lam = [v for v, _ in laplacian_spectrum(prob.metric, 8).clusters()][1:4]
    start = newton_solve(prob, np.zeros(prob.grid.node_count), tag="zero")

    branch = continue_branch(prob, start, -1, (0.1, 1.2), ContinuationConfig(max_step=0.05))

    located = sorted(e.epsilon for e in branch.events_of(EventKind.BRANCH_POINT))
    assert len(located) == 3
    np.testing.assert_allclose(located, sorted(1.0 / v for v in lam), atol=1e-6)
