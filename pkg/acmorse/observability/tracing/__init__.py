"""Tracing subsystem for acmorse observability."""

from acmorse.observability.tracing.decorators import trace_action, trace_span
from acmorse.observability.tracing.disabled import DisabledSpan, DisabledTracer
from acmorse.observability.tracing.setup import (
    get_tracer,
    is_tracing_enabled,
    setup_tracing,
)

__all__ = [
    "DisabledSpan",
    "DisabledTracer",
    "get_tracer",
    "is_tracing_enabled",
    "setup_tracing",
    "trace_action",
    "trace_span",
]
