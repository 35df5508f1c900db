import sys
from pathlib import Path

import pytest

from catnorm import parse_schema

DATA = Path(__file__).parent / "data"

sys.path.insert(0, str(Path(__file__).parent))


def load(name: str):
    return parse_schema((DATA / name).read_text(encoding="utf-8"))


@pytest.fixture
def fig5():
    return load("fig5.json")


@pytest.fixture
def fig6():
    return load("fig6.json")


@pytest.fixture
def data_dir():
    return DATA
