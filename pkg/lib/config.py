"""Configuration management for carpetcalc."""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from lib.errors import UsageError

load_dotenv()

REPO_ROOT = Path(__file__).resolve().parents[1]


def _flag(name: str) -> bool:
    return bool(os.getenv(name, "").strip())


def _positive_int(raw: str) -> Optional[int]:
    """The integer in raw when it is at least 1, else None."""
    try:
        value = int(raw.strip())
    except ValueError:
        return None
    return value if value >= 1 else None


class Config:
    """Configuration settings read from the environment (and .env)."""

    # Output
    NO_COLOR = _flag("CARPETCALC_NO_COLOR")
    LOG_LEVEL = os.getenv("CARPETCALC_LOG_LEVEL", "WARNING")

    # Sweeps
    SWEEP_WORKERS_RAW = os.getenv("CARPETCALC_SWEEP_WORKERS", "4")
    SWEEP_WORKERS = _positive_int(SWEEP_WORKERS_RAW)
    SCROLL_RANGE_MAX = 12
    JOIN_RANGE_MAX = 8

    # Report schema
    SCHEMA_VERSION = "1"
    SCHEMA_PATH = Path(os.getenv("CARPETCALC_SCHEMA_PATH", str(REPO_ROOT / "schema" / "report.v1.json")))

    @classmethod
    def reload(cls):
        """Re-read the environment. Used by tests after monkeypatching env vars."""
        cls.NO_COLOR = _flag("CARPETCALC_NO_COLOR")
        cls.LOG_LEVEL = os.getenv("CARPETCALC_LOG_LEVEL", "WARNING")
        cls.SWEEP_WORKERS_RAW = os.getenv("CARPETCALC_SWEEP_WORKERS", "4")
        cls.SWEEP_WORKERS = _positive_int(cls.SWEEP_WORKERS_RAW)
        cls.SCHEMA_PATH = Path(os.getenv("CARPETCALC_SCHEMA_PATH", str(REPO_ROOT / "schema" / "report.v1.json")))

    @classmethod
    def validate(cls):
        """Raise UsageError for settings that cannot be used."""
        if cls.SWEEP_WORKERS is None:
            raise UsageError(
                f"CARPETCALC_SWEEP_WORKERS must be a positive integer, got '{cls.SWEEP_WORKERS_RAW}'"
            )
