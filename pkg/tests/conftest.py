"""Shared fixtures: the curve spec files shipped with the package."""

from pathlib import Path

import pytest

import imagmult
from imagmult.specfile import CurveSpec, load_spec


DATA_DIR = Path(imagmult.__file__).parent / "data"


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="rewrite the golden record and survivor files instead of comparing against them",
    )


@pytest.fixture
def update_golden(request: pytest.FixtureRequest) -> bool:
    return bool(request.config.getoption("--update-golden"))


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def d1_spec() -> CurveSpec:
    return load_spec(DATA_DIR / "d1.json")


@pytest.fixture
def d2_spec() -> CurveSpec:
    return load_spec(DATA_DIR / "d2.json")


@pytest.fixture
def d3_spec() -> CurveSpec:
    return load_spec(DATA_DIR / "d3.json")


@pytest.fixture
def d7_spec() -> CurveSpec:
    return load_spec(DATA_DIR / "d7.json")
