"""Configuration manager for acmorse."""

from collections.abc import Mapping
from typing import Any

from pydantic import ValidationError

from acmorse.exceptions import ConfigurationError

from .models import RunConfig
from .providers import FileProvider, apply_env_overrides

__all__ = ["load_config"]


async def load_config(
    config_file: str | None = None,
    environ: Mapping[str, str] | None = None,
    **overrides: Any,
) -> RunConfig:
    """Load RunConfig from a YAML file, environment and explicit overrides.

    Args:
        config_file: Path to acmorse.yaml. If None, returns defaults + overrides.
        environ: Environment mapping for ``ACMORSE_`` overrides (os.environ if None).
        **overrides: Top-level keys to override (e.g. ``seed=3``).

    Returns:
        Validated RunConfig instance.

    Raises:
        ConfigurationError: naming the offending key when validation fails.
    """
    data: dict[str, Any] = {}

    if config_file:
        provider = FileProvider(config_file)
        try:
            data = await provider.load()
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from exc

    data = apply_env_overrides(data, environ)

    # Merge overrides (shallow merge at top level)
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict) and isinstance(data.get(key), dict):
            data[key] = {**data[key], **value}
        else:
            data[key] = value

    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = ".".join(str(part) for part in first["loc"]) or None
        raise ConfigurationError(first["msg"], key=key) from exc
