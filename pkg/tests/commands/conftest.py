"""Fixtures for running commands against small circle configurations."""

import math
from pathlib import Path

import pytest

from acmorse.commands import CommandContext
from acmorse.config.models import RunConfig
from acmorse.output import OutputWriter


@pytest.fixture
def make_context(tmp_path: Path):
    """Build a CommandContext for a cubic run on a 32-node circle."""

    def _make(**overrides: object) -> CommandContext:
        data: dict[str, object] = {
            "grid": {"dim": 1, "lengths": [2 * math.pi], "sizes": [32]},
            "potential": "cubic",
            "deflation": {"seeds": 4},
            "spectrum": {"count": 6},
            "output": {"directory": str(tmp_path / "out")},
            "seed": 7,
        }
        output = overrides.pop("output", {})
        data.update(overrides)
        data["output"] = {**data["output"], **output}  # type: ignore[dict-item]
        config = RunConfig.model_validate(data)
        return CommandContext(config, OutputWriter(config.output.directory), "test-run")

    return _make
