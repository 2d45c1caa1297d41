"""Tests for trace_action and trace_span."""

from __future__ import annotations

from unittest.mock import MagicMock, patch

import pytest

from acmorse.observability.tracing.decorators import trace_action, trace_span
from acmorse.observability.tracing.disabled import DisabledSpan

MODULE = "acmorse.observability.tracing.decorators"


def _mock_tracer():
    span = MagicMock()
    tracer = MagicMock()
    tracer.start_as_current_span.return_value.__enter__.return_value = span
    tracer.start_as_current_span.return_value.__exit__.return_value = False
    return tracer, span


class TestTraceAction:
    def test_disabled_calls_through(self):
        @trace_action("solve")
        def solve(x: int) -> int:
            return x + 1

        with patch(f"{MODULE}.is_tracing_enabled", return_value=False):
            assert solve(1) == 2

    def test_enabled_creates_span_with_attributes(self):
        tracer, _ = _mock_tracer()

        @trace_action("newton_solve", extract_attrs={"tag": "tag", "eps": "epsilon"})
        def newton(epsilon: float, *, tag: str = "x") -> str:
            return tag

        with (
            patch(f"{MODULE}.is_tracing_enabled", return_value=True),
            patch(f"{MODULE}.get_tracer", return_value=tracer),
        ):
            assert newton(0.4, tag="seed-1") == "seed-1"
        tracer.start_as_current_span.assert_called_once_with(
            "newton_solve", attributes={"tag": "seed-1", "eps": 0.4}
        )

    def test_non_scalar_attributes_stringified(self):
        tracer, _ = _mock_tracer()

        @trace_action("run", extract_attrs={"window": "window"})
        def run(window: tuple[float, float]) -> None:
            return None

        with (
            patch(f"{MODULE}.is_tracing_enabled", return_value=True),
            patch(f"{MODULE}.get_tracer", return_value=tracer),
        ):
            run((0.5, 1.5))
        _, kwargs = tracer.start_as_current_span.call_args
        assert kwargs["attributes"] == {"window": "(0.5, 1.5)"}

    def test_exception_recorded(self):
        tracer, span = _mock_tracer()

        @trace_action("fail")
        def fail() -> None:
            raise ValueError("boom")

        with (
            patch(f"{MODULE}.is_tracing_enabled", return_value=True),
            patch(f"{MODULE}.get_tracer", return_value=tracer),
            pytest.raises(ValueError, match="boom"),
        ):
            fail()
        span.record_exception.assert_called_once()

    def test_preserves_name(self):
        @trace_action("x")
        def named() -> None:
            pass

        assert named.__name__ == "named"


class TestTraceSpan:
    def test_disabled_yields_local_span(self):
        with patch(f"{MODULE}.is_tracing_enabled", return_value=False):
            with trace_span("command", {"epsilon": 0.4}) as span:
                assert isinstance(span, DisabledSpan)
                assert span.name == "command"
                assert span.attributes == {"epsilon": 0.4}

    def test_enabled_yields_span(self):
        tracer, span = _mock_tracer()
        with (
            patch(f"{MODULE}.is_tracing_enabled", return_value=True),
            patch(f"{MODULE}.get_tracer", return_value=tracer),
        ):
            with trace_span("command", {"name": "solve"}) as inner:
                assert inner is span
        tracer.start_as_current_span.assert_called_once_with(
            "command", attributes={"name": "solve"}
        )
