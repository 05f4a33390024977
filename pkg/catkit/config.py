from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from catkit.core.errors import ConfigError


def load_env(path: str = ".env") -> Optional[str]:
    """
    Loads environment variables from a .env file without overriding existing ones.

    Search order:
    1) CATKIT_ENV_PATH (if set)
    2) explicit `path` as provided (relative to CWD or absolute)
    3) project root (parent of the catkit package directory)
    4) current working directory

    Returns the resolved .env path used, or None if not found.
    """
    candidates: List[Path] = []
    override = os.getenv("CATKIT_ENV_PATH")
    if override:
        candidates.append(Path(override).expanduser())

    p = Path(path).expanduser()
    candidates.append(p if p.is_absolute() else (Path.cwd() / p))
    candidates.append(Path(__file__).resolve().parent.parent / ".env")
    candidates.append(Path.cwd() / ".env")

    seen = set()
    for c in candidates:
        try:
            c = c.resolve()
        except OSError:
            pass
        if str(c) in seen:
            continue
        seen.add(str(c))
        if c.is_file():
            load_dotenv(c, override=False)
            return str(c)
    return None


def _env_int(name: str, default: int) -> int:
    raw = (os.getenv(name) or "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer (got {raw!r}).") from None


@dataclass(frozen=True)
class AppConfig:
    max_objects: int = 8
    workers: int = 1
    log_level: str = "info"
    corpus_file: Optional[str] = None
    min_corruptions: int = 100

    @classmethod
    def from_env(cls) -> "AppConfig":
        return cls(
            max_objects=_env_int("CATKIT_MAX_OBJECTS", 8),
            workers=_env_int("CATKIT_WORKERS", 1),
            log_level=(os.getenv("CATKIT_LOG_LEVEL") or "info").strip().lower(),
            corpus_file=(os.getenv("CATKIT_CORPUS") or "").strip() or None,
            min_corruptions=_env_int("CATKIT_MIN_CORRUPTIONS", 100),
        )

    def validate(self) -> None:
        if self.max_objects < 1:
            raise ConfigError("max_objects must be positive (CATKIT_MAX_OBJECTS or --max-objects).")
        if self.workers < 1:
            raise ConfigError("workers must be positive (CATKIT_WORKERS or --workers).")
        if self.min_corruptions < 1:
            raise ConfigError("min_corruptions must be positive (CATKIT_MIN_CORRUPTIONS or --min-corruptions).")
        if self.log_level not in ("debug", "info", "warning", "error"):
            raise ConfigError(f"Unknown log level: {self.log_level}")
        if self.corpus_file and not Path(self.corpus_file).is_file():
            raise ConfigError(f"Corpus file not found: {self.corpus_file}")
