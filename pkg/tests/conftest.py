from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def fixture_path():
    def _path(name: str) -> str:
        return str(FIXTURES / name)

    return _path


@pytest.fixture
def golden_path():
    def _path(name: str) -> Path:
        return GOLDEN / name

    return _path


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
