"""Logging initialisation for acmorse."""

from __future__ import annotations

import logging

from acmorse.config.models import LoggingConfig
from acmorse.observability.logging.filters import ContextFilter
from acmorse.observability.logging.formatters import (
    ColorFormatter,
    JsonFormatter,
    TextFormatter,
)
from acmorse.observability.logging.levels import level_number, register_runtime_levels


def init_logging(config: LoggingConfig) -> None:
    """Configure Python logging from the observability.logging section."""
    if not config.enabled:
        return

    register_runtime_levels()
    log_level = level_number(config.level)

    root_logger = logging.getLogger()
    if not root_logger.handlers:
        handler = logging.StreamHandler()
        if config.format == "json":
            handler.setFormatter(JsonFormatter())
        elif config.format == "color":
            handler.setFormatter(ColorFormatter())
        else:
            handler.setFormatter(TextFormatter())
        handler.setLevel(log_level)

        if config.context.enabled:
            handler.addFilter(ContextFilter())

        logging.basicConfig(level=log_level, handlers=[handler])

    root_logger.setLevel(log_level)

    for logger_name, logger_level in config.loggers.items():
        logging.getLogger(logger_name).setLevel(level_number(logger_level))
