"""Single-writer persistence of command outputs.

Every file a command produces goes through one OutputWriter, which keeps the
list of written paths and serializes writes from worker threads.
"""

from __future__ import annotations

import csv
import json
import logging
import threading
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from acmorse.grid import ScalarField
from acmorse.grid.io import write_scalar_field

logger = logging.getLogger(__name__)


def format_cell(value: Any) -> str:
    """CSV cell text; floats use the shortest round-trip representation."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    if value is None:
        return ""
    if hasattr(value, "item"):
        return format_cell(value.item())
    return str(value)


class OutputWriter:
    """Writes CSV, JSON, text and SVG files below one output directory."""

    def __init__(self, directory: Path | str) -> None:
        self._directory = Path(directory)
        self._written: list[Path] = []
        self._lock = threading.Lock()

    @property
    def directory(self) -> Path:
        return self._directory

    @property
    def written(self) -> list[str]:
        with self._lock:
            return [str(p.relative_to(self._directory)) for p in self._written]

    def path(self, name: str) -> Path:
        return self._directory / name

    def _prepare(self, name: str) -> Path:
        target = self.path(name)
        target.parent.mkdir(parents=True, exist_ok=True)
        return target

    def _record(self, target: Path) -> None:
        self._written.append(target)
        logger.debug("Wrote output file", extra={"path": str(target)})

    def write_csv(
        self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> Path:
        with self._lock:
            target = self._prepare(name)
            with target.open("w", newline="") as handle:
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(header)
                writer.writerows([format_cell(v) for v in row] for row in rows)
            self._record(target)
        return target

    def write_json(self, name: str, payload: BaseModel | dict[str, Any]) -> Path:
        if isinstance(payload, BaseModel):
            text = payload.model_dump_json(indent=2)
        else:
            text = json.dumps(payload, indent=2, sort_keys=True)
        return self.write_text(name, text + "\n")

    def write_text(self, name: str, text: str) -> Path:
        with self._lock:
            target = self._prepare(name)
            target.write_text(text)
            self._record(target)
        return target

    def write_field(self, name: str, field: ScalarField) -> Path:
        with self._lock:
            target = self._prepare(name)
            write_scalar_field(target, field, name="u")
            self._record(target)
        return target

    def write_svg(self, name: str, figure: Any) -> Path:
        """Save a matplotlib figure as SVG without timestamp metadata."""
        import matplotlib

        with self._lock:
            target = self._prepare(name)
            with matplotlib.rc_context({"svg.hashsalt": "acmorse"}):
                figure.savefig(target, format="svg", metadata={"Date": None})
            self._record(target)
        return target
