"""Paths to fixture files and golden outputs."""

from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GOLDEN = FIXTURES / "golden"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def golden_text(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")
