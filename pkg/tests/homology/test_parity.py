"""Tests for the parity check."""

import numpy as np
import pytest

from acmorse.grid import ScalarField, TorusGrid
from acmorse.homology import parity_report
from acmorse.solver import SolutionPoint, Verdict


@pytest.fixture
def point():
    grid = TorusGrid.circle(1.0, 4)

    def _make(tag: str, index: int, values) -> SolutionPoint:
        return SolutionPoint(
            epsilon=1.0,
            u=ScalarField(grid, np.broadcast_to(values, (4,))),
            residual_norm=0.0,
            index=index,
            nullity=0,
            energy=0.0,
            tag=tag,
        )

    return _make


def test_pass_for_symmetric_set(point) -> None:
    report = parity_report(
        [point("minus", 0, -1.0), point("zero", 1, 0.0), point("plus", 0, 1.0)], 1
    )
    assert report.verdict is Verdict.PASS
    assert report.counts == {0: 2, 1: 1}


def test_unpaired_witness(point) -> None:
    report = parity_report([point("zero", 1, 0.0), point("plus", 0, 1.0)], 1)
    assert report.verdict is Verdict.FAIL
    assert report.unpaired == "plus"


def test_odd_count_in_wrong_degree(point) -> None:
    report = parity_report(
        [point("minus", 0, -1.0), point("zero", 1, 0.0), point("plus", 0, 1.0)], 2
    )
    assert report.verdict is Verdict.FAIL
    assert report.mismatched == [1, 2]
    assert report.counts == {0: 2, 1: 1, 2: 0}


@pytest.fixture
def small_epsilon_set(point):
    """Constants and two nonconstant pairs, shaped like the circle set at eps = 0.4."""
    k1 = 0.87 * np.array([1.0, 0.0, -1.0, 0.0])
    k2 = 0.5 * np.array([1.0, -1.0, 1.0, -1.0])
    return [
        point("minus", 0, -1.0),
        point("plus", 0, 1.0),
        point("k1", 1, k1),
        point("-k1", 1, -k1),
        point("k2", 2, k2),
        point("-k2", 2, -k2),
        point("zero", 3, 0.0),
    ]


def test_small_epsilon_set_passes(small_epsilon_set) -> None:
    report = parity_report(small_epsilon_set, 3)
    assert report.verdict is Verdict.PASS
    assert report.counts == {0: 2, 1: 2, 2: 2, 3: 1}


def test_removing_zero_fails(small_epsilon_set) -> None:
    without_zero = [p for p in small_epsilon_set if p.tag != "zero"]
    report = parity_report(without_zero, 3)
    assert report.verdict is Verdict.FAIL
    # every remaining solution is paired, so the failure is the parity of degree 3
    assert report.unpaired is None
    assert report.mismatched == [3]
    assert report.counts == {0: 2, 1: 2, 2: 2, 3: 0}
