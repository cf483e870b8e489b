import pytest

from app.linkage.resources.config import LinkerConfig
from app.linkage.tournament import Tournament, from_matrix, rotational, sample_min_degree, transitive

# Reduced constants for desk-scale runs. The degree floor covers
# guarantee_floor(k) == 188k, but a single bridge per pair is a heuristic
# setting: selection can fail when special vertices block every bridge.
COMPACT = LinkerConfig(connectivity_factor=190, dominating_factor=22, linkage_factor=1)


@pytest.fixture
def compact_config() -> LinkerConfig:
    return COMPACT


@pytest.fixture
def cyclic_triangle() -> Tournament:
    return from_matrix(3, ["010", "001", "100"])


@pytest.fixture
def transitive_triangle() -> Tournament:
    return from_matrix(3, ["011", "001", "000"])


@pytest.fixture
def transitive4() -> Tournament:
    return transitive(4)


@pytest.fixture
def rotational7() -> Tournament:
    return rotational(7)


@pytest.fixture(scope="session")
def dense500() -> Tournament:
    """500 vertices, min in/out-degree at least the compact floor for k=1."""
    tournament, _ = sample_min_degree(500, seed=1, floor=COMPACT.required_connectivity(1))
    return tournament


@pytest.fixture(scope="session")
def dense900() -> Tournament:
    tournament, _ = sample_min_degree(900, seed=11, floor=COMPACT.required_connectivity(2))
    return tournament

