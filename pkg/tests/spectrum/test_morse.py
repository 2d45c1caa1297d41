"""Tests for Morse index, constant solutions and the singular set."""

import numpy as np
import pytest

from acmorse.exceptions import NotAZeroError, SpectrumTruncatedError
from acmorse.grid import MetricField, TorusGrid
from acmorse.operator import Problem
from acmorse.potential import Potential
from acmorse.spectrum import (
    constant_index,
    hessian_inertia,
    index_of_zero,
    laplacian_spectrum,
    morse_index,
    singular_band_distance,
    singular_epsilons,
    within_singular_band,
)


@pytest.fixture
def circle_spectrum(circle_problem: Problem):
    return laplacian_spectrum(circle_problem.metric, 10)


class TestMorseIndex:
    def test_index_of_zero_on_circle(self, circle_problem: Problem, circle_spectrum) -> None:
        # eps * lam < 1 for lam in {0, 1, 1} at eps = 0.4
        assert index_of_zero(circle_problem, circle_spectrum) == 3

    def test_ldl_agrees_with_eigensolve(self, circle_problem: Problem) -> None:
        u = np.zeros(circle_problem.grid.node_count)
        by_ldl = hessian_inertia(circle_problem, u)
        by_eigs = hessian_inertia(circle_problem, u, dense_threshold=1)
        assert by_ldl.method == "ldl"
        assert by_eigs.method == "eigensolve"
        assert by_ldl.as_tuple() == by_eigs.as_tuple() == (3, 0)
        assert by_eigs.warnings

    def test_constant_formula_matches_hessian(
        self, circle_problem: Problem, circle_spectrum
    ) -> None:
        for zero in circle_problem.potential.zeros:
            u = np.full(circle_problem.grid.node_count, zero.value)
            from_spectrum = constant_index(circle_problem, zero.value, circle_spectrum)
            assert from_spectrum.as_tuple() == hessian_inertia(circle_problem, u).as_tuple()

    def test_stable_zero_has_index_zero(self, circle_problem: Problem, circle_spectrum) -> None:
        assert constant_index(circle_problem, 1.0, circle_spectrum).index == 0

    def test_nullity_at_singular_epsilon(self, circle: TorusGrid) -> None:
        metric = MetricField.euclidean(circle)
        spectrum = laplacian_spectrum(metric, 10)
        eps = 1.0 / spectrum.eigenvalues[1]
        prob = Problem(eps, circle, metric, Potential.cubic())
        inertia = constant_index(prob, 0.0, spectrum)
        assert inertia.as_tuple() == (1, 2)
        assert hessian_inertia(prob, np.zeros(circle.node_count)).as_tuple() == (1, 2)

    def test_not_a_zero(self, circle_problem: Problem, circle_spectrum) -> None:
        with pytest.raises(NotAZeroError):
            constant_index(circle_problem, 0.5, circle_spectrum)

    def test_truncated_spectrum(self, circle: TorusGrid) -> None:
        metric = MetricField.euclidean(circle)
        prob = Problem(0.01, circle, metric, Potential.cubic())
        with pytest.raises(SpectrumTruncatedError):
            constant_index(prob, 0.0, laplacian_spectrum(metric, 3))

    def test_zero_tol_must_be_positive(self, circle_problem: Problem) -> None:
        with pytest.raises(ValueError):
            morse_index(circle_problem.hessian(np.zeros(circle_problem.grid.node_count)), 0.0)


class TestSingularSet:
    def test_cubic_on_circle(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum(MetricField.euclidean(circle), 6)
        singular = singular_epsilons(spectrum, Potential.cubic(), (0.5, 1.5))
        assert len(singular) == 1
        assert singular[0].epsilon == pytest.approx(1.0 / spectrum.eigenvalues[1])
        assert singular[0].multiplicity == 2
        assert singular[0].zero == pytest.approx(0.0, abs=1e-12)

    def test_quintic_has_two_unstable_zeros(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum(MetricField.euclidean(circle), 10)
        singular = singular_epsilons(spectrum, Potential.quintic(), (0.5, 2.0))
        # f'(+-1) = 1.5, so eps = 1.5 / lam for both zeros, deduplicated
        assert [s.epsilon for s in singular] == pytest.approx([1.5 / spectrum.eigenvalues[1]])

    def test_truncation_detected(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum(MetricField.euclidean(circle), 6)
        with pytest.raises(SpectrumTruncatedError):
            singular_epsilons(spectrum, Potential.cubic(), (0.1, 1.5))

    def test_invalid_range(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum(MetricField.euclidean(circle), 6)
        with pytest.raises(ValueError):
            singular_epsilons(spectrum, Potential.cubic(), (1.0, 0.5))

    def test_band(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum(MetricField.euclidean(circle), 6)
        singular = singular_epsilons(spectrum, Potential.cubic(), (0.5, 1.5))
        eps = singular[0].epsilon
        assert within_singular_band(eps * (1 + 1e-6), singular)
        assert not within_singular_band(eps * 1.01, singular)
        assert singular_band_distance(0.7, []) == float("inf")
