"""Tests for log formatters: text, color and JSON."""

from __future__ import annotations

import json
import logging
import sys

import numpy as np

from acmorse.observability.logging.formatters import (
    ColorFormatter,
    JsonFormatter,
    TextFormatter,
)
from acmorse.observability.logging.levels import EVENT_LOG, TRACE


def _make_record(
    msg: str = "hello", level: int = logging.INFO, name: str = "test", **extra: object
) -> logging.LogRecord:
    record = logging.LogRecord(name, level, "test.py", 10, msg, (), None)
    for k, v in extra.items():
        setattr(record, k, v)
    return record


class TestTextFormatter:
    def test_default_format(self):
        output = TextFormatter().format(_make_record())
        assert "hello" in output
        assert "INFO" in output

    def test_custom_format(self):
        output = TextFormatter(fmt="%(message)s - %(levelname)s").format(_make_record())
        assert output == "hello - INFO"


class TestColorFormatter:
    def test_error_is_red(self):
        output = ColorFormatter().format(_make_record(level=logging.ERROR))
        assert output.startswith("\x1b[31")
        assert output.endswith("\x1b[0m")

    def test_custom_levels_colored(self):
        assert "\x1b[34" in ColorFormatter().format(_make_record(level=TRACE))
        assert "\x1b[35" in ColorFormatter().format(_make_record(level=EVENT_LOG))

    def test_unknown_level_no_color(self):
        output = ColorFormatter().format(_make_record(level=99))
        assert "\x1b[" not in output


class TestJsonFormatter:
    def test_basic_json_output(self):
        data = json.loads(JsonFormatter().format(_make_record()))
        assert data["message"] == "hello"
        assert data["level"] == "INFO"
        assert data["logger"] == "test"
        assert "timestamp" in data

    def test_includes_context_and_extra(self):
        record = _make_record(run_id="r1", command="solve", residual=1e-11)
        data = json.loads(JsonFormatter().format(record))
        assert data["run_id"] == "r1"
        assert data["command"] == "solve"
        assert data["residual"] == 1e-11

    def test_numpy_values_serialized(self):
        record = _make_record(index=np.int64(3), values=np.array([0.5, 1.0]))
        data = json.loads(JsonFormatter().format(record))
        assert data["index"] == 3
        assert data["values"] == [0.5, 1.0]

    def test_includes_exception_info(self):
        try:
            raise ValueError("boom")
        except ValueError:
            record = _make_record()
            record.exc_info = sys.exc_info()
        data = json.loads(JsonFormatter().format(record))
        assert "boom" in data["exc_info"]
