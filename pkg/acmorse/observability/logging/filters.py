"""Logging filters: run context injection."""

from __future__ import annotations

import logging

import numpy as np

from acmorse.observability.logging.context import get_log_context


class ContextFilter(logging.Filter):
    """Copies the run context (run_id, command, epsilon, ...) onto each record.

    numpy scalars, in the context or passed through ``extra``, become Python
    numbers so the text and JSON formatters render them alike.
    """

    def filter(self, record: logging.LogRecord) -> bool:
        for key, value in get_log_context().items():
            if value is not None and not hasattr(record, key):
                setattr(record, key, value)
        for key, value in list(vars(record).items()):
            if isinstance(value, np.generic):
                setattr(record, key, value.item())
        return True
