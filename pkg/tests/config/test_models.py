"""Tests for configuration models."""

from pathlib import Path

import pytest
from pydantic import ValidationError

from acmorse.config.models import (
    ContinuationConfig,
    GridConfig,
    MetricConfig,
    PotentialConfig,
    RunConfig,
)


class TestGridConfig:
    def test_defaults_are_the_circle(self) -> None:
        config = GridConfig()
        assert config.dim == 1
        assert config.sizes == [256]

    def test_shape_must_match_dim(self) -> None:
        with pytest.raises(ValidationError, match="2 entries"):
            GridConfig(dim=2, lengths=[1.0], sizes=[8])

    def test_small_axes_rejected(self) -> None:
        with pytest.raises(ValidationError):
            GridConfig(sizes=[3])

    def test_dimension_bounds(self) -> None:
        with pytest.raises(ValidationError):
            GridConfig(dim=4, lengths=[1.0] * 4, sizes=[8] * 4)


class TestPotentialConfig:
    def test_shorthand(self) -> None:
        config = RunConfig.model_validate({"potential": "quintic"})
        assert config.potential.kind == "quintic"

    def test_coeffs_imply_polynomial(self) -> None:
        config = PotentialConfig.model_validate({"coeffs": [0, -1, 0, 1]})
        assert config.kind == "polynomial"

    def test_polynomial_needs_coeffs(self) -> None:
        with pytest.raises(ValidationError, match="coeffs"):
            PotentialConfig(kind="polynomial")


class TestMetricConfig:
    def test_conformal_needs_file(self) -> None:
        with pytest.raises(ValidationError, match="field file"):
            MetricConfig(kind="conformal")

    def test_missing_file_rejected(self, tmp_path: Path) -> None:
        with pytest.raises(ValidationError, match="not found"):
            MetricConfig(kind="tensor", tensor_file=str(tmp_path / "g.csv"))


class TestRunConfig:
    def test_window_ordering(self) -> None:
        with pytest.raises(ValidationError, match="epsilon_window"):
            RunConfig(epsilon_window=(1.0, 0.5))

    def test_epsilon_positive(self) -> None:
        with pytest.raises(ValidationError):
            RunConfig(epsilon=0.0)

    def test_frozen(self) -> None:
        config = RunConfig()
        with pytest.raises(ValidationError):
            config.seed = 3  # type: ignore[misc]

    def test_step_bounds(self) -> None:
        with pytest.raises(ValidationError, match="min_step"):
            ContinuationConfig(initial_step=1.0, max_step=0.5)


class TestLoggingConfig:
    def test_custom_levels_accepted(self) -> None:
        from acmorse.config.models import LoggingConfig

        assert LoggingConfig(level="TRACE").level == "TRACE"
        assert LoggingConfig(level="event_log").level == "event_log"

    def test_unknown_level_rejected(self) -> None:
        from acmorse.config.models import LoggingConfig

        with pytest.raises(ValidationError, match="Unknown log level"):
            LoggingConfig(level="LOUD")
