"""Logging subsystem for acmorse observability."""

from acmorse.observability.logging.context import (
    clear_log_context,
    get_log_context,
    log_context,
    set_log_context,
)
from acmorse.observability.logging.filters import ContextFilter
from acmorse.observability.logging.formatters import (
    ColorFormatter,
    JsonFormatter,
    TextFormatter,
)
from acmorse.observability.logging.levels import (
    EVENT_LOG,
    METRIC_LOG,
    TRACE,
    level_number,
    register_runtime_levels,
)
from acmorse.observability.logging.setup import init_logging

__all__ = [
    "ColorFormatter",
    "ContextFilter",
    "EVENT_LOG",
    "JsonFormatter",
    "METRIC_LOG",
    "TRACE",
    "TextFormatter",
    "clear_log_context",
    "get_log_context",
    "init_logging",
    "level_number",
    "log_context",
    "register_runtime_levels",
    "set_log_context",
]
