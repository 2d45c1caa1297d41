"""Tests for configuration providers."""

from pathlib import Path

import pytest
import yaml

from acmorse.config.providers import (
    ConfigurationProvider,
    FileProvider,
    apply_env_overrides,
    replace_env_tokens,
)


class TestReplaceEnvTokens:
    """Tests for the replace_env_tokens helper."""

    def test_plain_string_unchanged(self) -> None:
        assert replace_env_tokens("hello world") == "hello world"

    def test_non_string_passthrough(self) -> None:
        assert replace_env_tokens(42) == 42
        assert replace_env_tokens(None) is None

    def test_env_var_substitution(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("TEST_AC_DIR", "/data/fields")
        assert replace_env_tokens("${TEST_AC_DIR}/g.csv") == "/data/fields/g.csv"

    def test_env_var_with_default_uses_default(
        self, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.delenv("TEST_AC_MISSING", raising=False)
        assert replace_env_tokens("${TEST_AC_MISSING:-out}") == "out"

    def test_env_var_missing_no_default_raises(
        self, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.delenv("TEST_AC_MISSING", raising=False)
        with pytest.raises(ValueError, match="not set and no default"):
            replace_env_tokens("${TEST_AC_MISSING}")

    def test_nested_recursion(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("TEST_AC_KEY", "val")
        result = replace_env_tokens({"a": ["${TEST_AC_KEY}", "y"], "b": "plain"})
        assert result == {"a": ["val", "y"], "b": "plain"}


class TestApplyEnvOverrides:
    def test_nested_key(self) -> None:
        result = apply_env_overrides(
            {"solver": {"max_iterations": 10}},
            {"ACMORSE_SOLVER__TOLERANCE": "1e-12"},
        )
        assert result == {"solver": {"max_iterations": 10, "tolerance": 1e-12}}

    def test_values_parsed_as_yaml(self) -> None:
        result = apply_env_overrides({}, {"ACMORSE_GRID__SIZES": "[64, 64]"})
        assert result["grid"]["sizes"] == [64, 64]

    def test_foreign_variables_ignored(self) -> None:
        assert apply_env_overrides({"seed": 1}, {"HOME": "/root"}) == {"seed": 1}

    def test_does_not_mutate_input(self) -> None:
        data = {"solver": {"tolerance": 1e-10}}
        apply_env_overrides(data, {"ACMORSE_SOLVER__TOLERANCE": "1e-8"})
        assert data == {"solver": {"tolerance": 1e-10}}


class TestConfigurationProviderABC:
    def test_cannot_instantiate(self) -> None:
        with pytest.raises(TypeError):
            ConfigurationProvider()  # type: ignore[abstract]


class TestFileProvider:
    @pytest.mark.asyncio
    async def test_load_missing_file_returns_empty(self, tmp_path: Path) -> None:
        assert await FileProvider(tmp_path / "nonexistent.yaml").load() == {}

    @pytest.mark.asyncio
    async def test_load_valid_yaml(self, tmp_path: Path) -> None:
        cfg_file = tmp_path / "config.yaml"
        cfg_file.write_text(yaml.safe_dump({"grid": {"dim": 2}, "epsilon": 0.4}))
        result = await FileProvider(cfg_file).load()
        assert result == {"grid": {"dim": 2}, "epsilon": 0.4}

    @pytest.mark.asyncio
    async def test_load_empty_yaml_returns_empty(self, tmp_path: Path) -> None:
        cfg_file = tmp_path / "empty.yaml"
        cfg_file.write_text("")
        assert await FileProvider(cfg_file).load() == {}

    @pytest.mark.asyncio
    async def test_non_mapping_rejected(self, tmp_path: Path) -> None:
        cfg_file = tmp_path / "list.yaml"
        cfg_file.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError, match="mapping"):
            await FileProvider(cfg_file).load()

    @pytest.mark.asyncio
    async def test_save_creates_file(self, tmp_path: Path) -> None:
        cfg_file = tmp_path / "sub" / "config.yaml"
        await FileProvider(cfg_file).save({"seed": 3})
        assert yaml.safe_load(cfg_file.read_text()) == {"seed": 3}
