"""Base command class and the context commands run in."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar

from acmorse.config.models import RunConfig
from acmorse.exceptions import ConfigurationError
from acmorse.observability.logging import log_context
from acmorse.observability.tracing import trace_span
from acmorse.operator import Problem
from acmorse.output import OutputWriter

from .models import CommandResult, CommandStatus
from .registry import derive_command_name


@dataclass(frozen=True)
class CommandContext:
    """Validated configuration plus the run's single output writer."""

    config: RunConfig
    writer: OutputWriter
    run_id: str

    @property
    def threads(self) -> int:
        return self.config.threads

    def epsilon(self) -> float:
        if self.config.epsilon is None:
            raise ConfigurationError("this command needs a value", key="epsilon")
        return self.config.epsilon

    def window(self) -> tuple[float, float]:
        if self.config.epsilon_window is None:
            raise ConfigurationError("this command needs a range", key="epsilon_window")
        return self.config.epsilon_window

    def problem(self, epsilon: float | None = None) -> Problem:
        return Problem.from_config(self.config, epsilon)


class Command(ABC):
    """A subcommand of the ``acmorse`` CLI.

    Subclasses implement ``run``; ``execute`` adds the log context and a
    tracing span and fills in the list of files written.
    """

    description: ClassVar[str] = ""

    def __init__(self, name: str | None = None) -> None:
        self._name = name or derive_command_name(self.__class__)
        self._logger: logging.Logger | None = None

    @property
    def name(self) -> str:
        return self._name

    @property
    def logger(self) -> logging.Logger:
        if self._logger is None:
            self._logger = logging.getLogger(f"acmorse.commands.{self.name}")
        return self._logger

    @abstractmethod
    def run(self, context: CommandContext) -> CommandResult:
        """Do the work and report the outcome."""

    def result(
        self,
        status: CommandStatus = CommandStatus.SUCCESS,
        message: str = "",
        **data: object,
    ) -> CommandResult:
        return CommandResult(command=self.name, status=status, message=message, data=data)

    def execute(self, context: CommandContext) -> CommandResult:
        with log_context(command=self.name), trace_span(f"command.{self.name}"):
            self.logger.info(f"Running {self.name}")
            result = self.run(context)
        return result.model_copy(update={"outputs": context.writer.written})
