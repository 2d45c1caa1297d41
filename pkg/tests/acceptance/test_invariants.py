"""Randomized gradient and self-adjointness checks on perturbed tori."""

import math

import numpy as np
import pytest

from acmorse.grid import MetricField, TorusGrid
from acmorse.operator import Problem
from acmorse.potential import Potential

pytestmark = pytest.mark.acceptance

TRIALS = 100


@pytest.fixture
def random_problems():
    rng = np.random.default_rng(99)
    grid = TorusGrid((2 * math.pi, 3.0), (8, 6))
    potentials = [Potential.cubic(), Potential.quintic()]

    def _problems():
        for trial in range(TRIALS):
            factor = 1.0 + 0.5 * rng.uniform(size=grid.node_count)
            yield rng, Problem(
                float(rng.uniform(0.05, 3.0)),
                grid,
                MetricField.conformal(grid, factor),
                potentials[trial % 2],
            )

    return _problems


@pytest.mark.timeout(60)
def test_residual_is_weighted_gradient_of_energy(random_problems) -> None:
    t = 1e-5
    for rng, prob in random_problems():
        t0 = prob.potential.t0
        u = rng.uniform(-t0, t0, size=prob.grid.node_count)
        v = rng.normal(size=prob.grid.node_count)
        difference = (prob.energy_value(u + t * v) - prob.energy_value(u - t * v)) / (2 * t)
        assert difference == pytest.approx(prob.inner(prob.residual_values(u), v), rel=1e-6, abs=1e-8)


@pytest.mark.timeout(60)
def test_hessian_is_derivative_of_residual(random_problems) -> None:
    t = 1e-6
    for rng, prob in random_problems():
        u = rng.uniform(-1.0, 1.0, size=prob.grid.node_count)
        v = rng.normal(size=prob.grid.node_count)
        difference = (prob.residual_values(u + t * v) - prob.residual_values(u - t * v)) / (2 * t)
        applied = prob.hessian_stiffness(u) @ v / prob.weights
        assert prob.norm(difference - applied) <= 1e-6 * (1.0 + prob.norm(applied))


@pytest.mark.timeout(60)
def test_hessian_self_adjoint_in_weighted_product(random_problems) -> None:
    for rng, prob in random_problems():
        u = rng.uniform(-1.0, 1.0, size=prob.grid.node_count)
        hessian = prob.hessian(u)
        v, z = rng.normal(size=(2, prob.grid.node_count))
        hv = hessian.stiffness @ v / hessian.weights
        hz = hessian.stiffness @ z / hessian.weights
        assert prob.inner(hv, z) == pytest.approx(prob.inner(v, hz), rel=1e-10, abs=1e-10)
