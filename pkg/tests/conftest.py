"""Common test fixtures."""

import logging
import math
from pathlib import Path

import numpy as np
import pytest

from acmorse.grid import MetricField, TorusGrid
from acmorse.observability.logging import clear_log_context
from acmorse.operator import Problem
from acmorse.potential import Potential

TWO_PI = 2 * math.pi


@pytest.fixture(autouse=True)
def _clean_log_context():
    clear_log_context()
    yield
    clear_log_context()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def circle() -> TorusGrid:
    return TorusGrid.circle(TWO_PI, 64)


@pytest.fixture
def circle_256() -> TorusGrid:
    return TorusGrid.circle(TWO_PI, 256)


@pytest.fixture
def torus_2d() -> TorusGrid:
    return TorusGrid((TWO_PI, TWO_PI), (16, 16))


@pytest.fixture
def cubic() -> Potential:
    return Potential.cubic()


@pytest.fixture
def quintic() -> Potential:
    return Potential.quintic()


@pytest.fixture
def circle_problem(circle: TorusGrid, cubic: Potential) -> Problem:
    """Cubic Allen-Cahn on the Euclidean circle of length 2 pi, eps = 0.4."""
    return Problem(0.4, circle, MetricField.euclidean(circle), cubic)


@pytest.fixture
def conformal_problem(torus_2d: TorusGrid, cubic: Potential) -> Problem:
    metric = MetricField.with_cosine_perturbation(torus_2d, 0.3, (1, 1))
    return Problem(0.5, torus_2d, metric, cubic)


@pytest.fixture
def test_config_dir(tmp_path: Path) -> Path:
    """Create a temporary directory for test configuration files."""
    config_dir = tmp_path / "config"
    config_dir.mkdir()
    return config_dir


@pytest.fixture
def test_config_file(test_config_dir: Path, tmp_path: Path) -> Path:
    """A small circle run: cubic f, eps = 2, a few deflation seeds."""
    config_file = test_config_dir / "acmorse.yaml"
    config_file.write_text(
        f"""
grid:
  dim: 1
  lengths: [6.283185307179586]
  sizes: [32]
potential: cubic
epsilon: 2.0
epsilon_window: [0.5, 1.5]
deflation:
  seeds: 4
spectrum:
  count: 6
output:
  directory: {tmp_path / "out"}
observability:
  logging:
    level: WARNING
seed: 7
"""
    )
    return config_file


@pytest.fixture
def isolated_runtime(monkeypatch: pytest.MonkeyPatch, tmp_path: Path):
    """Restore env vars and root logging that Application setup touches."""
    monkeypatch.setenv("PROJECT_DIR", str(tmp_path))
    monkeypatch.setenv("RUN_ID", "")
    root = logging.getLogger()
    saved_handlers, saved_level = root.handlers[:], root.level
    yield
    root.handlers[:] = saved_handlers
    root.setLevel(saved_level)
