"""Tests for the eigen solvers."""

import math

import numpy as np
import pytest

from acmorse.grid import MetricField, TorusGrid, assemble_laplace_beltrami
from acmorse.spectrum import (
    eigen_solve,
    gershgorin_lower_bound,
    laplacian_spectrum,
    laplacian_spectrum_reaching,
)


class TestLaplacianSpectrum:
    def test_circle_matches_integer_squares(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum(MetricField.euclidean(circle), 7)
        expected = [0, 1, 1, 4, 4, 9, 9]
        assert spectrum.eigenvalues[0] == pytest.approx(0.0, abs=1e-10)
        for value, exact in zip(spectrum.eigenvalues[1:], expected[1:]):
            assert value == pytest.approx(exact, rel=1e-2)

    def test_circle_matches_discrete_formula(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum(MetricField.euclidean(circle), 5)
        h = circle.spacings[0]
        k = np.array([0, 1, 1, 2, 2])
        exact = 4 / h**2 * np.sin(np.pi * k / circle.node_count) ** 2
        assert np.allclose(spectrum.eigenvalues, exact, atol=1e-10)

    def test_eigenvectors_are_w_orthonormal(self, conformal_problem) -> None:
        spectrum = laplacian_spectrum(conformal_problem.metric, 6)
        v = spectrum.eigenvectors
        gram = v.T @ (v * spectrum.weights[:, None])
        assert np.allclose(gram, np.eye(6), atol=1e-10)

    def test_next_eigenvalue_reported(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum(MetricField.euclidean(circle), 4)
        assert len(spectrum) == 4
        # the fifth eigenvalue is the second copy of k = 2
        assert spectrum.next_eigenvalue == pytest.approx(spectrum.eigenvalues[3])

    def test_iterative_agrees_with_dense(self, circle: TorusGrid) -> None:
        metric = MetricField.with_cosine_perturbation(circle, 0.2, (1,))
        dense = laplacian_spectrum(metric, 6)
        iterative = laplacian_spectrum(metric, 6, dense_threshold=10)
        assert iterative.method == "iterative"
        assert np.allclose(dense.eigenvalues, iterative.eigenvalues, atol=1e-8)

    def test_reaching_threshold(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum_reaching(
            MetricField.euclidean(circle), 30.0, initial_count=2
        )
        assert spectrum.next_eigenvalue > 30.0


class TestEigenSolve:
    def test_count_bounds(self, circle: TorusGrid) -> None:
        op = assemble_laplace_beltrami(circle, MetricField.euclidean(circle))
        with pytest.raises(ValueError, match="count"):
            eigen_solve(op, 0)
        with pytest.raises(ValueError, match="count"):
            eigen_solve(op, circle.node_count + 1)

    def test_hessian_of_zero_shifted(self, circle_problem) -> None:
        u = np.zeros(circle_problem.grid.node_count)
        spectrum = eigen_solve(circle_problem.hessian(u), 3)
        assert spectrum.eigenvalues[0] == pytest.approx(-1.0)
        # eps lam - 1 for the doubly degenerate k = 1 pair
        assert spectrum.eigenvalues[1] == pytest.approx(spectrum.eigenvalues[2])
        assert spectrum.eigenvalues[1] == pytest.approx(-0.6, rel=1e-2)

    def test_gershgorin_bound(self, circle_problem) -> None:
        op = circle_problem.hessian(np.zeros(circle_problem.grid.node_count))
        assert gershgorin_lower_bound(op) <= -1.0 + 1e-12


class TestClusters:
    def test_circle_pairs(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum(MetricField.euclidean(circle), 5)
        assert spectrum.cluster_ids() == [0, 1, 1, 2, 2]
        assert [m for _, m in spectrum.clusters()] == [1, 2, 2]
        assert spectrum.is_simple(0)
        assert not spectrum.is_simple(1)

    def test_incomplete_last_cluster(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum(MetricField.euclidean(circle), 4)
        assert not spectrum.last_cluster_complete()
        assert spectrum.multiplicity(3) == 2

    def test_eigenfield_grid(self, circle: TorusGrid) -> None:
        spectrum = laplacian_spectrum(MetricField.euclidean(circle), 3)
        phi = spectrum.eigenfield(1)
        assert phi.grid == circle
        assert len(spectrum.eigenfields) == 3
        assert float(np.sum(phi.values**2 * spectrum.weights)) == pytest.approx(1.0)
        assert math.isfinite(spectrum.next_eigenvalue)
