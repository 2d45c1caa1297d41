"""Tests for Laplace-Beltrami assembly."""

import math

import numpy as np
import pytest

from acmorse.grid import (
    MetricField,
    ScalarField,
    SymTensorField,
    TorusGrid,
    apply_perturbed_laplacian,
    assemble_laplace_beltrami,
    weighted_inner,
    weighted_integral,
    weighted_norm,
)


@pytest.fixture
def conformal_metric(torus_2d: TorusGrid) -> MetricField:
    return MetricField.with_cosine_perturbation(torus_2d, 0.3, (1, 1))


class TestAssembly:
    def test_annihilates_constants(self, conformal_metric: MetricField) -> None:
        op = assemble_laplace_beltrami(conformal_metric.grid, conformal_metric)
        ones = np.ones(op.node_count)
        assert np.abs(op.apply(ones)).max() < 1e-10

    def test_stiffness_symmetric(self, conformal_metric: MetricField) -> None:
        op = assemble_laplace_beltrami(conformal_metric.grid, conformal_metric)
        assert abs(op.stiffness - op.stiffness.T).max() < 1e-12

    def test_negative_semidefinite(
        self, conformal_metric: MetricField, rng: np.random.Generator
    ) -> None:
        op = assemble_laplace_beltrami(conformal_metric.grid, conformal_metric)
        for _ in range(5):
            u = rng.normal(size=op.node_count)
            assert op.quadratic_form(u) <= 1e-12

    def test_self_adjoint_in_weighted_product(
        self, conformal_metric: MetricField, rng: np.random.Generator
    ) -> None:
        op = assemble_laplace_beltrami(conformal_metric.grid, conformal_metric)
        u = rng.normal(size=op.node_count)
        v = rng.normal(size=op.node_count)
        left = weighted_inner(op.apply(u), v, conformal_metric)
        right = weighted_inner(u, op.apply(v), conformal_metric)
        assert left == pytest.approx(right, rel=1e-10)

    def test_second_order_on_smooth_function(self) -> None:
        grid = TorusGrid.circle(2 * math.pi, 128)
        metric = MetricField.euclidean(grid)
        op = assemble_laplace_beltrami(grid, metric)
        u = ScalarField.from_function(grid, lambda x: np.sin(2 * x))
        assert np.abs(op.apply(u.values) + 4 * u.values).max() < 1e-2

    def test_row_sum_bound_dominates_spectrum(self, circle: TorusGrid) -> None:
        op = assemble_laplace_beltrami(circle, MetricField.euclidean(circle))
        largest = np.abs(np.linalg.eigvalsh(op.symmetric_dense())).max()
        assert op.row_sum_bound() >= largest - 1e-9


class TestWeightedQuantities:
    def test_integral_of_one_is_volume(self, conformal_metric: MetricField) -> None:
        ones = np.ones(conformal_metric.grid.node_count)
        assert weighted_integral(ones, conformal_metric) == pytest.approx(
            conformal_metric.volume
        )

    def test_norm(self, circle: TorusGrid) -> None:
        metric = MetricField.euclidean(circle)
        u = ScalarField.from_function(circle, np.sin)
        assert weighted_norm(u, metric) == pytest.approx(math.sqrt(math.pi), rel=1e-10)


class TestPerturbedLaplacian:
    def test_quadratic_form_matches_stencil_sum(
        self, torus_2d: TorusGrid, rng: np.random.Generator
    ) -> None:
        metric = MetricField.euclidean(torus_2d)
        a = SymTensorField.diagonal(torus_2d, [1.0, -1.0])
        phi = rng.normal(size=torus_2d.node_count)
        result = apply_perturbed_laplacian(a, phi, metric)
        # for A = diag(1, -1) the form splits into the two axis difference energies
        shaped = phi.reshape(torus_2d.shape)
        dx = (np.roll(shaped, -1, axis=0) - shaped) / torus_2d.spacings[0]
        dy = (np.roll(shaped, -1, axis=1) - shaped) / torus_2d.spacings[1]
        expected = (np.sum(dx * dx) - np.sum(dy * dy)) * torus_2d.cell_volume
        assert weighted_inner(phi, result, metric) == pytest.approx(expected, rel=1e-10)

    def test_requires_trace_free(self, torus_2d: TorusGrid) -> None:
        from acmorse.exceptions import TraceFreeError

        metric = MetricField.euclidean(torus_2d)
        with pytest.raises(TraceFreeError):
            apply_perturbed_laplacian(
                SymTensorField.diagonal(torus_2d, [1.0, 1.0]),
                np.zeros(torus_2d.node_count),
                metric,
            )
