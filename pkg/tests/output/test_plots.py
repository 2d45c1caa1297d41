"""Unit tests for bifurcation diagrams."""

import math

import numpy as np
import pytest
from matplotlib.figure import Figure

from acmorse.grid import ScalarField, TorusGrid
from acmorse.output import bifurcation_figure, close_figure, signed_amplitude
from acmorse.solver import Branch, BranchEvent, EventKind, SolutionPoint


@pytest.fixture
def grid() -> TorusGrid:
    return TorusGrid.circle(2 * math.pi, 16)


def _point(grid: TorusGrid, values: np.ndarray, epsilon: float, index: int) -> SolutionPoint:
    return SolutionPoint(
        epsilon=epsilon,
        u=ScalarField(grid, values),
        residual_norm=0.0,
        index=index,
        nullity=0,
        energy=0.0,
        tag=f"p{epsilon}",
    )


def test_signed_amplitude_follows_projection(grid: TorusGrid) -> None:
    x = grid.coordinates()[0]
    phi = np.cos(x)
    weights = np.full(grid.node_count, grid.cell_volume)

    positive = _point(grid, 0.5 * np.cos(x), 1.0, 1)
    negative = _point(grid, -0.5 * np.cos(x), 1.0, 1)

    assert signed_amplitude(positive, phi, weights) == pytest.approx(0.5)
    assert signed_amplitude(negative, phi, weights) == pytest.approx(-0.5)


def test_signed_amplitude_falls_back_to_mean(grid: TorusGrid) -> None:
    phi = np.cos(grid.coordinates()[0])
    weights = np.full(grid.node_count, grid.cell_volume)

    assert signed_amplitude(_point(grid, np.full(16, -1.0), 1.0, 0), phi, weights) == -1.0
    assert signed_amplitude(_point(grid, np.zeros(16), 1.0, 1), phi, weights) == 0.0


def test_bifurcation_figure(grid: TorusGrid) -> None:
    x = grid.coordinates()[0]
    phi = np.cos(x)
    weights = np.full(grid.node_count, grid.cell_volume)
    trivial = Branch(
        "trivial",
        [_point(grid, np.zeros(16), e, k) for e, k in ((1.2, 1), (1.0, 1), (0.8, 3))],
        [0.0, 0.2, 0.4],
        [BranchEvent(kind=EventKind.BRANCH_POINT, arclength=0.2, epsilon=1.0)],
    )
    bent = Branch("b0", [_point(grid, 0.3 * np.cos(x), 0.9, 1)], [0.0])

    fig = bifurcation_figure([trivial, bent], phi, weights, title="test")
    try:
        assert isinstance(fig, Figure)
        ax = fig.axes[0]
        assert ax.get_title() == "test"
        labels = [t.get_text() for t in ax.get_legend().get_texts()]
        assert labels == ["index 1", "index 3"]
    finally:
        close_figure(fig)
