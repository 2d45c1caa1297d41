"""Fixtures shared by the solver tests."""

import math

import numpy as np
import pytest

from acmorse.grid import MetricField, ScalarField, TorusGrid
from acmorse.operator import Problem
from acmorse.potential import Potential
from acmorse.solver import SolutionPoint


@pytest.fixture
def small_circle() -> TorusGrid:
    return TorusGrid.circle(2 * math.pi, 32)


@pytest.fixture
def make_problem(small_circle: TorusGrid):
    metric = MetricField.euclidean(small_circle)
    base = Problem(1.0, small_circle, metric, Potential.cubic())

    def _make(epsilon: float) -> Problem:
        return base.with_epsilon(epsilon)

    return _make


@pytest.fixture
def make_point(small_circle: TorusGrid):
    def _make(values, tag: str = "p", **kwargs) -> SolutionPoint:
        field = ScalarField(small_circle, np.broadcast_to(values, (small_circle.node_count,)))
        defaults = dict(epsilon=1.0, residual_norm=0.0, index=0, nullity=0, energy=0.0)
        defaults.update(kwargs)
        return SolutionPoint(u=field, tag=tag, **defaults)

    return _make


@pytest.fixture
def cos_x(small_circle: TorusGrid) -> np.ndarray:
    return np.cos(small_circle.coordinates()[0])
