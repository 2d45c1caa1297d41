"""Application object that runs one subcommand against a validated config."""

from __future__ import annotations

import asyncio
import logging
from typing import Any

from acmorse.commands import CommandContext, CommandResult, CommandStatus, get_command_class
from acmorse.config import load_config
from acmorse.config.models import RunConfig
from acmorse.environment import setup_environment
from acmorse.exceptions import AcMorseError, ConfigurationError
from acmorse.observability.logging import METRIC_LOG
from acmorse.output import OutputWriter


class Application:
    """Owns the configuration, the output writer and the command lifecycle.

    Initialization flow:
    1. Load RunConfig from YAML, environment and CLI overrides
    2. Setup environment (project dir, run ID)
    3. Init observability (logging + tracing)
    4. Create the output writer
    """

    def __init__(self, config: RunConfig) -> None:
        self._config = config
        self._initialized = False
        self._lock = asyncio.Lock()
        self._run_id = ""
        self._writer: OutputWriter | None = None

    @classmethod
    async def create(cls, config_file: str | None = None, **overrides: Any) -> Application:
        config = await load_config(config_file, **overrides)
        return cls(config)

    # === Properties ===

    @property
    def config(self) -> RunConfig:
        return self._config

    @property
    def is_initialized(self) -> bool:
        return self._initialized

    @property
    def run_id(self) -> str:
        return self._run_id

    @property
    def writer(self) -> OutputWriter:
        if self._writer is None:
            raise RuntimeError("Application not initialized")
        return self._writer

    @property
    def logger(self) -> logging.Logger:
        return logging.getLogger("acmorse.app")

    # === Lifecycle ===

    async def initialize(self) -> None:
        async with self._lock:
            if self._initialized:
                return

            # 1. Environment
            self._run_id = setup_environment(self._config)

            # 2. Observability
            from acmorse.observability.setup import init_run_observability

            init_run_observability(self._config.observability, self._run_id)

            # 3. Output
            self._writer = OutputWriter(self._config.output.directory)
            self._initialized = True
            self.logger.info(
                "Application initialized",
                extra={"output": self._config.output.directory, "threads": self._config.threads},
            )

    async def run(self, command_name: str) -> CommandResult:
        """Run a subcommand in a worker thread and write ``run.json``.

        Any exception raised by the command becomes an ERROR result rather
        than propagating, so the caller always gets an exit code and a
        run.json. Unexpected ones are logged with their traceback.
        """
        if not self._initialized:
            await self.initialize()
        command_class = get_command_class(command_name)
        if command_class is None:
            raise ConfigurationError(f"unknown command '{command_name}'", key="command")

        command = command_class()
        context = CommandContext(self._config, self.writer, self._run_id)
        try:
            result = await asyncio.to_thread(command.execute, context)
        except AcMorseError as e:
            self.logger.error(f"{command_name} failed: {e}")
            result = CommandResult(
                command=command_name,
                status=CommandStatus.ERROR,
                message=str(e),
                outputs=self.writer.written,
            )
        except Exception as e:
            self.logger.error(f"{command_name} crashed: {e}", exc_info=True)
            result = CommandResult(
                command=command_name,
                status=CommandStatus.ERROR,
                message=f"unexpected {type(e).__name__}: {e}",
                outputs=self.writer.written,
            )
        self.writer.write_json("run.json", result)
        self.logger.log(
            METRIC_LOG,
            "Command finished",
            extra={"command": command_name, "status": str(result.status)},
        )
        return result
