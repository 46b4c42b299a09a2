"""Settings loading from .env and the environment."""

from __future__ import annotations

import os

import pytest

from planarflow import config
from planarflow.config import EnvConfigStore, Settings, get_settings, override_settings


@pytest.fixture()
def clean_env(tmp_path, monkeypatch):
    """No PLANARFLOW_ variables and a .env path inside tmp_path."""
    for key in list(os.environ):
        if key.startswith(config.ENV_PREFIX):
            monkeypatch.delenv(key)
    monkeypatch.setattr(config, "ENV_PATH", tmp_path / ".env")
    return tmp_path


def test_defaults_without_env(clean_env) -> None:
    assert EnvConfigStore().load() == Settings()


def test_environment_values(clean_env, monkeypatch) -> None:
    monkeypatch.setenv("PLANARFLOW_BASE_CUTOFF", "16")
    monkeypatch.setenv("PLANARFLOW_DEBUG_ASSERTS", "true")
    monkeypatch.setenv("PLANARFLOW_LOG_LEVEL", "info")
    monkeypatch.setenv("PLANARFLOW_HOLE_BUDGET", "")
    settings = EnvConfigStore().load()
    assert settings.base_cutoff == 16
    assert settings.debug_asserts is True
    assert settings.log_level == "INFO"
    assert settings.hole_budget == Settings().hole_budget


def test_env_file_is_read_and_environment_wins(clean_env, monkeypatch) -> None:
    (clean_env / ".env").write_text("PLANARFLOW_LEAF_CUTOFF=8\nPLANARFLOW_BRUTE_CAP=50\nOTHER=1\n")
    monkeypatch.setenv("PLANARFLOW_BRUTE_CAP", "70")
    settings = EnvConfigStore().load()
    assert settings.leaf_cutoff == 8
    assert settings.brute_cap == 70


@pytest.mark.parametrize(
    "key, value",
    [("PLANARFLOW_LOG_LEVEL", "loud"), ("PLANARFLOW_BASE_CUTOFF", "1"), ("PLANARFLOW_LEAF_CUTOFF", "many")],
)
def test_invalid_values_raise(clean_env, monkeypatch, key: str, value: str) -> None:
    monkeypatch.setenv(key, value)
    with pytest.raises(ValueError, match="invalid planarflow settings"):
        EnvConfigStore().load()


def test_override_restores_previous() -> None:
    before = get_settings()
    with override_settings(leaf_cutoff=5, debug_asserts=True) as inner:
        assert get_settings() is inner
        assert inner.leaf_cutoff == 5
    assert get_settings() is before
