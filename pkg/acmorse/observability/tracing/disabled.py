"""Span and tracer stand-ins used while tracing is off.

Commands and solvers tag spans with epsilon, seeds and iteration counts
whether or not a tracer is configured. Without one those attributes stay on
the span object, where tests and debugging can still read them, and nothing
is exported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class DisabledSpan:
    name: str = ""
    attributes: dict[str, Any] = field(default_factory=dict)

    def set_attribute(self, key: str, value: object) -> None:
        self.attributes[key] = value

    def set_status(self, *args: object, **kwargs: object) -> None:
        pass

    def record_exception(self, exception: BaseException) -> None:
        pass

    def add_event(self, name: str, attributes: dict[str, Any] | None = None) -> None:
        pass

    def is_recording(self) -> bool:
        return False

    def __enter__(self) -> DisabledSpan:
        return self

    def __exit__(self, *args: object) -> None:
        pass


class DisabledTracer:
    """Hands out a fresh DisabledSpan per call."""

    def start_as_current_span(
        self, name: str, *, attributes: dict[str, Any] | None = None, **kwargs: object
    ) -> DisabledSpan:
        return DisabledSpan(name, dict(attributes or {}))
