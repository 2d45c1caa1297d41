"""Command-line interface: ``acmorse <command> [--config FILE] [options]``."""

from __future__ import annotations

import argparse
import asyncio
import logging
import sys
from collections.abc import Sequence

from acmorse.application import Application
from acmorse.commands import CommandStatus, get_available_commands
from acmorse.config.models import LoggingConfig
from acmorse.exceptions import AcMorseError
from acmorse.observability.logging import init_logging

logger = logging.getLogger("acmorse.cli")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acmorse",
        description="Allen-Cahn solutions, Morse indices and Z2 Morse homology on flat tori",
    )
    commands = get_available_commands()
    parser.add_argument(
        "command",
        choices=sorted(commands),
        help="; ".join(f"{name}: {cls.description}" for name, cls in sorted(commands.items())),
    )
    parser.add_argument("--config", help="YAML run configuration")
    parser.add_argument("--out", help="output directory (overrides output.directory)")
    parser.add_argument("--seed", type=int, help="random seed (overrides seed)")
    parser.add_argument("--threads", type=int, help="worker threads (overrides threads)")
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, object]:
    overrides: dict[str, object] = {"seed": args.seed, "threads": args.threads}
    if args.out is not None:
        overrides["output"] = {"directory": args.out}
    return overrides


async def _run(args: argparse.Namespace) -> int:
    app = await Application.create(args.config, **_overrides(args))
    await app.initialize()
    result = await app.run(args.command)
    stream = sys.stderr if result.status is CommandStatus.ERROR else sys.stdout
    print(f"{result.command}: {result.status}  {result.message}".rstrip(), file=stream)
    return result.exit_code


def run_command(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and run the subcommand; returns the process exit code.

    0 on success or PASS, 2 on a verification FAIL, 1 on any error
    including usage errors and malformed configuration.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return 0 if exit_.code in (0, None) else 1

    try:
        return asyncio.run(_run(args))
    except AcMorseError as e:
        init_logging(LoggingConfig())
        logger.error(str(e))
        return CommandStatus.ERROR.exit_code
    except Exception as e:
        init_logging(LoggingConfig())
        logger.error(f"{args.command} crashed: {e}", exc_info=True)
        return CommandStatus.ERROR.exit_code
