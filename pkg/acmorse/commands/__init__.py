"""CLI subcommands; importing this package registers all of them."""

from . import continuation, flow, homology, solve, spectrum, verify
from .base import Command, CommandContext
from .models import CommandResult, CommandStatus
from .registry import (
    AVAILABLE_COMMANDS,
    derive_command_name,
    get_available_commands,
    get_command_class,
    register_command,
)

__all__ = [
    "AVAILABLE_COMMANDS",
    "Command",
    "CommandContext",
    "CommandResult",
    "CommandStatus",
    "continuation",
    "derive_command_name",
    "flow",
    "get_available_commands",
    "get_command_class",
    "homology",
    "register_command",
    "solve",
    "spectrum",
    "verify",
]
