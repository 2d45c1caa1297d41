"""Run-scoped log context held in a ContextVar.

Worker threads started through ``parallel_map`` copy the caller's context, so
fields such as ``run_id`` or ``epsilon`` follow the work item.
"""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Any

_LOG_CONTEXT: ContextVar[dict[str, Any] | None] = ContextVar(
    "_LOG_CONTEXT", default=None
)


def get_log_context() -> dict[str, Any]:
    return dict(_LOG_CONTEXT.get() or {})


def set_log_context(**fields: Any) -> None:
    context = get_log_context()
    context.update({key: value for key, value in fields.items() if value is not None})
    _LOG_CONTEXT.set(context)


def clear_log_context(*keys: str) -> None:
    if keys:
        context = get_log_context()
        for key in keys:
            context.pop(key, None)
        _LOG_CONTEXT.set(context)
        return
    _LOG_CONTEXT.set({})


@contextmanager
def log_context(**fields: Any) -> Iterator[None]:
    """Temporarily add fields (e.g. ``epsilon=0.4``) to every log record."""
    token = _LOG_CONTEXT.set(
        {**get_log_context(), **{k: v for k, v in fields.items() if v is not None}}
    )
    try:
        yield
    finally:
        _LOG_CONTEXT.reset(token)
