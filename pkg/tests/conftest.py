"""Shared fixtures: fixture files, loaded example models and settings isolation."""

import pytest

from src.config import configure, get_settings
from src.models.modelfile import load_model

from .support import fixture_text


@pytest.fixture(autouse=True)
def restore_settings():
    """Tests may call configure(); every test starts from the same settings."""
    snapshot = get_settings().model_dump()
    yield
    configure(**snapshot)


@pytest.fixture
def example2():
    return load_model(fixture_text("example2.mod"))


@pytest.fixture
def plus_model():
    return load_model(fixture_text("plus.mod"))


@pytest.fixture
def conj_model():
    return load_model(fixture_text("conj.mod"))


@pytest.fixture
def closure_model():
    return load_model(fixture_text("closure.mod"))


@pytest.fixture
def nonfactive_model():
    return load_model(fixture_text("nonfactive.mod"))
