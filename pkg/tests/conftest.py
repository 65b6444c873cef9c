import pytest

from tilecoh.fixtures import load_fixtures
from tilecoh.pipeline import Pipeline
from tilecoh.tiling import pinwheel_triangle_system, square_system


@pytest.fixture(scope="session")
def ref():
    return load_fixtures()


@pytest.fixture(scope="session")
def kr():
    """Full pinwheel run on the kite-rectangle system; stages are cached."""
    return Pipeline()


@pytest.fixture(scope="session")
def square():
    return Pipeline(square_system())


@pytest.fixture(scope="session")
def triangle():
    return Pipeline(pinwheel_triangle_system())
