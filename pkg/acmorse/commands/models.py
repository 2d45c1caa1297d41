"""Command outcome models."""

from enum import StrEnum
from typing import Any

from pydantic import BaseModel, Field


class CommandStatus(StrEnum):
    """How a command ended; each status maps to a process exit code."""

    SUCCESS = "success"
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"

    @property
    def exit_code(self) -> int:
        return {
            CommandStatus.SUCCESS: 0,
            CommandStatus.PASS: 0,
            CommandStatus.FAIL: 2,
            CommandStatus.ERROR: 1,
        }[self]


class CommandResult(BaseModel):
    """Outcome of one subcommand run."""

    command: str
    status: CommandStatus
    message: str = ""
    outputs: list[str] = Field(default_factory=list)
    data: dict[str, Any] = Field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return self.status.exit_code
