"""Desk-scale problems on the Euclidean circle of length 2 pi."""

import math

import pytest

from acmorse.grid import MetricField, TorusGrid
from acmorse.operator import Problem
from acmorse.potential import Potential


@pytest.fixture
def make_circle_problem():
    def _make(epsilon: float, size: int = 64, potential: Potential | None = None) -> Problem:
        grid = TorusGrid.circle(2 * math.pi, size)
        return Problem(
            epsilon, grid, MetricField.euclidean(grid), potential or Potential.cubic()
        )

    return _make
