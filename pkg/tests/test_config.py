import os

import pytest

from catkit.config import AppConfig, load_env
from catkit.core.errors import ConfigError, StructuralError


def test_defaults(monkeypatch) -> None:
    for key in ("CATKIT_MAX_OBJECTS", "CATKIT_WORKERS", "CATKIT_LOG_LEVEL", "CATKIT_CORPUS", "CATKIT_MIN_CORRUPTIONS"):
        monkeypatch.delenv(key, raising=False)
    assert AppConfig.from_env() == AppConfig()


def test_from_env(monkeypatch) -> None:
    monkeypatch.setenv("CATKIT_WORKERS", "3")
    monkeypatch.setenv("CATKIT_LOG_LEVEL", " DEBUG ")
    cfg = AppConfig.from_env()
    assert cfg.workers == 3
    assert cfg.log_level == "debug"
    cfg.validate()


def test_bad_integer(monkeypatch) -> None:
    monkeypatch.setenv("CATKIT_MAX_OBJECTS", "many")
    with pytest.raises(ConfigError):
        AppConfig.from_env()


def test_validate_rejects_bad_values(tmp_path) -> None:
    with pytest.raises(ConfigError):
        AppConfig(workers=0).validate()
    with pytest.raises(ConfigError):
        AppConfig(log_level="loud").validate()
    with pytest.raises(ConfigError):
        AppConfig(corpus_file=str(tmp_path / "missing.yaml")).validate()


def test_load_env_does_not_override(tmp_path, monkeypatch) -> None:
    env = tmp_path / "test.env"
    env.write_text("CATKIT_WORKERS=7\nCATKIT_MAX_OBJECTS=5\n", encoding="utf-8")
    monkeypatch.setenv("CATKIT_ENV_PATH", str(env))
    monkeypatch.setenv("CATKIT_WORKERS", "2")
    monkeypatch.setenv("CATKIT_MAX_OBJECTS", "")
    monkeypatch.delenv("CATKIT_MAX_OBJECTS")
    assert load_env() == str(env.resolve())
    assert os.environ["CATKIT_WORKERS"] == "2"
    assert os.environ["CATKIT_MAX_OBJECTS"] == "5"


def test_config_errors_are_structural() -> None:
    assert issubclass(ConfigError, StructuralError)
