"""Shared pytest fixtures for carpetcalc."""
import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from lib.config import Config

GOLDEN_DIR = Path(__file__).resolve().parent / "tests" / "golden"

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption(
        "--update-goldens",
        action="store_true",
        default=False,
        help="Rewrite tests/golden/ from the current output instead of comparing",
    )


@pytest.fixture(autouse=True)
def _plain_environment(monkeypatch):
    """Tests see no color and the default sweep settings, whatever the shell exports."""
    monkeypatch.setenv("CARPETCALC_NO_COLOR", "1")
    monkeypatch.delenv("CARPETCALC_SCHEMA_PATH", raising=False)
    monkeypatch.delenv("CARPETCALC_SWEEP_WORKERS", raising=False)
    monkeypatch.delenv("CARPETCALC_LOG_LEVEL", raising=False)
    Config.reload()
    yield
    Config.reload()


def _updating(request) -> bool:
    return request.config.getoption("--update-goldens") or bool(os.getenv("CARPETCALC_UPDATE_GOLDENS", "").strip())


@pytest.fixture
def golden(request):
    """
    Compare text with tests/golden/<name> byte for byte. A missing golden is
    a failure; run with --update-goldens (or CARPETCALC_UPDATE_GOLDENS=1) to
    write the files from the current output.
    """
    update = _updating(request)

    def check(name: str, text: str) -> None:
        path = GOLDEN_DIR / name
        if update:
            GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            return
        if not path.exists():
            pytest.fail(f"missing golden file {path.name}; rerun with --update-goldens to create it")
        assert text == path.read_text(encoding="utf-8")
    return check
