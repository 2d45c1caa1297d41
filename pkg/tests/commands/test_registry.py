"""Unit tests for the command registry."""

from acmorse.commands import (
    AVAILABLE_COMMANDS,
    Command,
    CommandContext,
    CommandResult,
    derive_command_name,
    get_available_commands,
    get_command_class,
    register_command,
)


class RegistryTestCommand(Command):
    """A concrete command used only in registry tests."""

    description = "does nothing"

    def run(self, context: CommandContext) -> CommandResult:
        return self.result(message="ok")


def test_builtin_commands_registered() -> None:
    assert {"spectrum", "solve", "sweep", "continue", "verify", "flow", "homology"} <= set(
        AVAILABLE_COMMANDS
    )


def test_derive_command_name() -> None:
    assert derive_command_name(RegistryTestCommand) == "registrytest"


def test_register_command() -> None:
    key = "registrytest"
    AVAILABLE_COMMANDS.pop(key, None)

    result = register_command(RegistryTestCommand)

    assert result is RegistryTestCommand
    assert AVAILABLE_COMMANDS[key] is RegistryTestCommand

    AVAILABLE_COMMANDS.pop(key, None)


def test_get_command_class_found() -> None:
    assert get_command_class("verify") is AVAILABLE_COMMANDS["verify"]


def test_get_command_class_not_found() -> None:
    assert get_command_class("nonexistent_command_xyz") is None


def test_get_available_commands() -> None:
    assert get_available_commands() is AVAILABLE_COMMANDS


def test_command_name_defaults_to_derived() -> None:
    assert RegistryTestCommand().name == "registrytest"
    assert RegistryTestCommand("custom").name == "custom"
    assert RegistryTestCommand().logger.name == "acmorse.commands.registrytest"
