"""Per-run observability: logging, the run id in every record, optional tracing."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from acmorse.config.models import ObservabilityConfig

# matplotlib's font discovery logs at DEBUG on first use
QUIET_LOGGERS = ("matplotlib", "PIL")


def init_run_observability(config: ObservabilityConfig, run_id: str = "") -> None:
    """Configure logging and tracing for one run and bind ``run_id`` to log records."""
    from acmorse.observability.logging.context import set_log_context
    from acmorse.observability.logging.setup import init_logging

    init_logging(config.logging)
    for name in QUIET_LOGGERS:
        if name not in config.logging.loggers:
            logging.getLogger(name).setLevel(logging.WARNING)
    if run_id:
        set_log_context(run_id=run_id)

    if config.tracing.enabled:
        from acmorse.observability.tracing.setup import setup_tracing

        setup_tracing(config.tracing)
