"""Command class registry for acmorse."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .base import Command

# Subcommand name -> command class
AVAILABLE_COMMANDS: dict[str, type[Command]] = {}


def derive_command_name(cls: type) -> str:
    """Lowercase class name without the 'command' suffix."""
    return cls.__name__.lower().removesuffix("command")


def register_command(command_class: type[Command]) -> type[Command]:
    """Decorator to register a subcommand.

    Usage::

        @register_command
        class SpectrumCommand(Command):
            ...
    """
    AVAILABLE_COMMANDS[derive_command_name(command_class)] = command_class
    return command_class


def get_available_commands() -> dict[str, type[Command]]:
    return AVAILABLE_COMMANDS


def get_command_class(name: str) -> type[Command] | None:
    return AVAILABLE_COMMANDS.get(name)
