"""Unified observability for acmorse: logging + tracing."""

import logging as _logging

from acmorse.observability.logging import (
    EVENT_LOG,
    METRIC_LOG,
    TRACE,
    init_logging,
    log_context,
    set_log_context,
)
from acmorse.observability.setup import init_run_observability
from acmorse.observability.tracing import (
    get_tracer,
    is_tracing_enabled,
    setup_tracing,
    trace_action,
    trace_span,
)


def get_logger(name: str, prefix: str = "acmorse") -> _logging.Logger:
    """Get a named logger under the acmorse hierarchy."""
    full_name = f"{prefix}.{name}" if prefix else name
    return _logging.getLogger(full_name)


__all__ = [
    "EVENT_LOG",
    "METRIC_LOG",
    "TRACE",
    "get_logger",
    "get_tracer",
    "init_logging",
    "init_run_observability",
    "is_tracing_enabled",
    "log_context",
    "set_log_context",
    "setup_tracing",
    "trace_action",
    "trace_span",
]
