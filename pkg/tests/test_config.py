import pytest
from pydantic import ValidationError

from app.config import DEFAULT_CAP, Settings


def test_defaults():
    settings = Settings()
    assert settings.cap == DEFAULT_CAP
    assert settings.output_format == "json"


def test_environment_is_ignored(monkeypatch):
    monkeypatch.setenv("CAP", "3")
    assert Settings().cap == DEFAULT_CAP
    assert Settings(cap=3).cap == 3


def test_cap_must_be_positive():
    with pytest.raises(ValidationError):
        Settings(cap=0)


def test_unknown_output_format():
    with pytest.raises(ValidationError):
        Settings(output_format="yaml")


def test_unknown_log_level():
    with pytest.raises(ValidationError):
        Settings(log_level="LAUT")
