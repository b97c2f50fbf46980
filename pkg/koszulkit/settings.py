"""Runtime configuration sourced from environment variables."""
from __future__ import annotations

import logging.config
import os
from typing import Any, Final

import sentry_sdk

from koszulkit import __version__
from koszulkit.errors import ConfigurationError


def _get_env(name: str) -> str | None:
    """Return the raw value for ``name`` if it exists."""

    return os.getenv(name)


def get_env_bool(name: str, default: bool = False) -> bool:
    """Return a boolean for an environment variable."""

    value = _get_env(name)
    if value is None:
        return default
    return value.lower() in {"1", "true", "yes", "on"}


def get_env_int(name: str, default: int) -> int:
    """Return an integer for ``name`` or ``default`` if unset."""

    value = _get_env(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigurationError(f"Environment variable {name} must be an integer.") from exc


def _get_sample_rate(name: str, default: float) -> float:
    """Fetch a float configuration value from the environment."""

    value = _get_env(name)
    if value is None:
        return default

    try:
        return float(value)
    except ValueError:
        return default


RANDOM_SEED: Final[int] = get_env_int("KOSZULKIT_SEED", 42)
RESOURCE_CAP: Final[int] = get_env_int("KOSZULKIT_RESOURCE_CAP", 100_000)
USE_BAREISS: Final[bool] = get_env_bool("KOSZULKIT_BAREISS", False)
AUDIT_SCALARS: Final[bool] = get_env_bool("KOSZULKIT_AUDIT", False)
DEFAULT_MAX_P: Final[int] = get_env_int("KOSZULKIT_MAX_P", 6)
DEFAULT_MAX_WEIGHT: Final[int] = get_env_int("KOSZULKIT_MAX_WEIGHT", 6)
DEFAULT_TRIALS: Final[int] = get_env_int("KOSZULKIT_TRIALS", 20)
# Top-weight detection gives up past this weight and treats A as infinite.
SEARCH_WEIGHT: Final[int] = get_env_int("KOSZULKIT_SEARCH_WEIGHT", 12)
LOG_LEVEL: Final[str] = os.getenv("KOSZULKIT_LOG_LEVEL", "WARNING").upper()


LOGGING: Final[dict[str, Any]] = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "%(levelname)s %(name)s %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "simple",
            "stream": "ext://sys.stderr",
        },
    },
    "loggers": {
        "koszulkit": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
}


def configure_logging(verbose: bool = False) -> None:
    """Apply :data:`LOGGING`, optionally lowering koszulkit to DEBUG."""

    config = {**LOGGING, "loggers": {name: dict(value) for name, value in LOGGING["loggers"].items()}}
    if verbose:
        config["loggers"]["koszulkit"]["level"] = "DEBUG"
    logging.config.dictConfig(config)


def init_sentry() -> bool:
    """Configure Sentry crash reporting when a DSN is available."""

    dsn = _get_env("KOSZULKIT_SENTRY_DSN") or _get_env("SENTRY_DSN")
    if not dsn:
        return False

    environment = (
        _get_env("SENTRY_ENVIRONMENT")
        or _get_env("KOSZULKIT_ENV")
        or "development"
    )

    sentry_sdk.init(
        dsn=dsn,
        environment=environment,
        release=f"koszulkit@{__version__}",
        send_default_pii=False,
        traces_sample_rate=_get_sample_rate("SENTRY_TRACES_SAMPLE_RATE", 0.0),
    )
    sentry_sdk.set_tag("environment", environment)
    return True
