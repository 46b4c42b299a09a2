"""Runtime settings. Read from .env and the process environment."""

from __future__ import annotations

import logging
import os
from contextlib import contextmanager
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Iterator, Protocol

from pydantic import BaseModel, Field, ValidationError

logger = logging.getLogger(__name__)

ENV_PATH = Path(".env")
ENV_PREFIX = "PLANARFLOW_"


@dataclass(frozen=True)
class Settings:
    debug_asserts: bool = False
    base_cutoff: int = 128     # Bellman-Ford below this many vertices
    hole_budget: int = 12
    leaf_cutoff: int = 32
    brute_cap: int = 2000
    log_level: str = "WARNING"
    overflow_bits: int = 120


class SettingsModel(BaseModel):
    """Validated view of the raw environment strings."""

    model_config = {"extra": "ignore"}

    debug_asserts: bool = False
    base_cutoff: int = Field(default=128, ge=2)
    hole_budget: int = Field(default=12, ge=1)
    leaf_cutoff: int = Field(default=32, ge=2)
    brute_cap: int = Field(default=2000, ge=1)
    log_level: str = Field(default="WARNING", pattern=r"^(DEBUG|INFO|WARNING|ERROR|CRITICAL)$")
    overflow_bits: int = Field(default=120, ge=16)


class ConfigStore(Protocol):
    """Interface for loading settings."""

    def load(self) -> Settings:
        """Load settings. Returns defaults for missing keys."""
        ...


def _load_env() -> dict[str, str]:
    from dotenv import dotenv_values
    values: dict[str, str] = {}
    if ENV_PATH.exists():
        values.update({k: (v or "") for k, v in dotenv_values(ENV_PATH).items()})
    values.update({k: v for k, v in os.environ.items() if k.startswith(ENV_PREFIX)})
    return values


class EnvConfigStore:
    """Config store backed by .env with process environment overrides."""

    def load(self) -> Settings:
        env = _load_env()
        raw = {
            f.name: env[ENV_PREFIX + f.name.upper()]
            for f in fields(Settings)
            if ENV_PREFIX + f.name.upper() in env and env[ENV_PREFIX + f.name.upper()] != ""
        }
        if "log_level" in raw:
            raw["log_level"] = raw["log_level"].upper()
        try:
            model = SettingsModel.model_validate(raw)
        except ValidationError as exc:
            raise ValueError(f"invalid planarflow settings: {exc}") from exc
        return Settings(**model.model_dump())


_current: Settings | None = None


def get_settings() -> Settings:
    """Return the process-wide settings, loading them on first use."""
    global _current
    if _current is None:
        _current = EnvConfigStore().load()
        logger.debug("loaded settings %s", _current)
    return _current


@contextmanager
def override_settings(**changes: object) -> Iterator[Settings]:
    """Temporarily replace individual settings."""
    global _current
    previous = get_settings()
    _current = replace(previous, **changes)
    try:
        yield _current
    finally:
        _current = previous
