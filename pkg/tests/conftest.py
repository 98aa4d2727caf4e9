from __future__ import annotations

import pytest

from loiterwatch.fuzzy import FuzzyEngine, default_config


@pytest.fixture(scope="session")
def config():
    return default_config()


@pytest.fixture(scope="session")
def engine(config):
    return FuzzyEngine(config)
