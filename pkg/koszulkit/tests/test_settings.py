import logging

import pytest

from koszulkit import settings
from koszulkit.errors import ConfigurationError, InputError, PresentationError


def test_get_env_int_reads_the_environment(monkeypatch):
    monkeypatch.setenv("KOSZULKIT_TEST_INT", "7")

    assert settings.get_env_int("KOSZULKIT_TEST_INT", 3) == 7
    assert settings.get_env_int("KOSZULKIT_TEST_MISSING", 3) == 3


def test_get_env_int_rejects_garbage(monkeypatch):
    monkeypatch.setenv("KOSZULKIT_TEST_INT", "seven")

    with pytest.raises(ConfigurationError, match="KOSZULKIT_TEST_INT"):
        settings.get_env_int("KOSZULKIT_TEST_INT", 3)


@pytest.mark.parametrize("raw, expected", [("1", True), ("yes", True), ("off", False), ("", False)])
def test_get_env_bool(monkeypatch, raw, expected):
    monkeypatch.setenv("KOSZULKIT_TEST_FLAG", raw)

    assert settings.get_env_bool("KOSZULKIT_TEST_FLAG") is expected


def test_verbose_logging_lowers_the_package_level():
    settings.configure_logging(verbose=True)
    assert logging.getLogger("koszulkit").level == logging.DEBUG

    settings.configure_logging()
    assert logging.getLogger("koszulkit").level == logging.getLevelName(settings.LOG_LEVEL)


def test_sentry_stays_off_without_a_dsn(monkeypatch, mocker):
    monkeypatch.delenv("SENTRY_DSN", raising=False)
    monkeypatch.delenv("KOSZULKIT_SENTRY_DSN", raising=False)
    init = mocker.patch("koszulkit.settings.sentry_sdk.init")

    assert settings.init_sentry() is False
    init.assert_not_called()


def test_sentry_is_configured_from_the_dsn(monkeypatch, mocker):
    monkeypatch.setenv("SENTRY_DSN", "https://key@example.ingest.sentry.io/1")
    init = mocker.patch("koszulkit.settings.sentry_sdk.init")
    mocker.patch("koszulkit.settings.sentry_sdk.set_tag")

    assert settings.init_sentry() is True
    assert init.call_args.kwargs["send_default_pii"] is False


def test_presentation_errors_carry_the_line():
    error = PresentationError("unknown generator 'z'", 4)

    assert isinstance(error, InputError)
    assert error.line == 4
    assert str(error) == "line 4: unknown generator 'z'"
