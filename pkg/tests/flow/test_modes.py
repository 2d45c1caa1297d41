"""Tests for the mode-by-mode decay check."""

import numpy as np
import pytest

from acmorse.flow import BOUND_NOT_SATISFIED, mode_decay_check, space_constant_trajectory
from acmorse.grid import MetricField
from acmorse.operator import Problem
from acmorse.spectrum import flat_torus_eigenvalues, laplacian_spectrum


@pytest.fixture
def heteroclinic(cubic):
    return space_constant_trajectory(cubic, 0.0, 1.0)


class TestFlatTorusEigenvalues:
    def test_circle(self) -> None:
        values = flat_torus_eigenvalues((2 * np.pi,), 7)
        assert values == pytest.approx([0, 1, 1, 4, 4, 9, 9])

    def test_rectangle_multiplicity(self) -> None:
        values = flat_torus_eigenvalues((2 * np.pi, np.pi), 7)
        # (k1, k2) -> k1^2 + 4 k2^2
        assert values == pytest.approx([0, 1, 1, 4, 4, 4, 4])

    def test_count_must_be_positive(self) -> None:
        with pytest.raises(ValueError):
            flat_torus_eigenvalues((1.0,), 0)


class TestModeDecayCheck:
    def test_margin_above_bound(self, circle_problem, heteroclinic) -> None:
        prob = circle_problem.with_epsilon(3.0)
        report = mode_decay_check(prob, heteroclinic, 5)
        assert report.status == "checked"
        assert report.eigenvalue_source == "continuum"
        assert report.passed
        assert report.bound == pytest.approx(2.0)
        # f' reaches -1 at w = 0
        assert report.min_margin >= 2.0 - 1e-6
        assert [m.mode for m in report.margins] == [1, 2, 3, 4, 5]
        assert [m.eigenvalue for m in report.margins] == pytest.approx([1, 1, 4, 4, 9])
        assert all(m.monotone for m in report.margins)

    def test_grid_margins_reported(self, circle_problem, heteroclinic) -> None:
        prob = circle_problem.with_epsilon(3.0)
        discrete = laplacian_spectrum(prob.metric, 6).eigenvalues
        report = mode_decay_check(prob, heteroclinic, 5)
        for margin in report.margins:
            assert margin.discrete_eigenvalue == pytest.approx(discrete[margin.mode])
            # the second-order stencil underestimates every nonzero eigenvalue
            assert margin.discrete_eigenvalue < margin.eigenvalue
            assert margin.discrete_margin < margin.margin

    def test_curved_metric_uses_grid_spectrum(self, circle_problem, heteroclinic) -> None:
        grid = circle_problem.grid
        prob = Problem(3.0, grid, MetricField.conformal(grid, 1.2), circle_problem.potential)
        discrete = laplacian_spectrum(prob.metric, 6).eigenvalues
        report = mode_decay_check(prob, heteroclinic, 5)
        assert report.eigenvalue_source == "discrete"
        assert report.bound == pytest.approx(2.0 / discrete[1])
        assert report.margins[0].eigenvalue == pytest.approx(discrete[1])

    def test_below_bound(self, circle_problem, heteroclinic) -> None:
        prob = circle_problem.with_epsilon(1.0)
        report = mode_decay_check(prob, heteroclinic, 5)
        assert report.status == BOUND_NOT_SATISFIED
        assert report.passed is None
        assert not report.margins

    def test_no_modes(self, circle_problem, heteroclinic) -> None:
        report = mode_decay_check(circle_problem.with_epsilon(3.0), heteroclinic, 0)
        assert report.status == "empty"
        assert report.margins == []

    def test_negative_modes(self, circle_problem, heteroclinic) -> None:
        with pytest.raises(ValueError):
            mode_decay_check(circle_problem, heteroclinic, -1)
