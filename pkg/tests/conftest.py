"""Shared fixtures"""
from pathlib import Path

import pytest

from conreal.bars import DecidableBar
from strategies import FUNCTIONS

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_path():
    return FIXTURES


@pytest.fixture
def two_level_bar():
    return DecidableBar.from_file(FIXTURES / "bars" / "two-level.txt")


@pytest.fixture(params=sorted(FUNCTIONS))
def modulated_fn(request):
    return FUNCTIONS[request.param]()
