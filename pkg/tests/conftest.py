from pathlib import Path

import pytest

from cospectral.conjugator import RegularRationalOrthogonal, rational_matrix
from graph.graph_io import load_signed_graph
from graph.signed_graph import SignedGraph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixture_dir() -> Path:
    return FIXTURES


@pytest.fixture
def load_fixture():
    def _load(name: str) -> SignedGraph:
        return load_signed_graph(FIXTURES / name)

    return _load


@pytest.fixture
def k2() -> SignedGraph:
    return SignedGraph.from_edges(2, [(0, 1, 1)])


@pytest.fixture
def triangle() -> SignedGraph:
    return SignedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


@pytest.fixture
def path3() -> SignedGraph:
    return SignedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1)])


@pytest.fixture
def c4() -> SignedGraph:
    return SignedGraph.from_edges(4, [(0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)])


@pytest.fixture
def p4_signed() -> SignedGraph:
    return SignedGraph.from_edges(4, [(0, 1, -1), (1, 2, 1), (2, 3, 1)])


@pytest.fixture
def householder3() -> RegularRationalOrthogonal:
    """(1/3)(2J - 3I), level 3."""
    return RegularRationalOrthogonal.from_matrix(rational_matrix([[-1, 2, 2], [2, -1, 2], [2, 2, -1]], 3))


@pytest.fixture
def half4() -> RegularRationalOrthogonal:
    """Level-2 regular orthogonal matrix on 4 points."""
    return RegularRationalOrthogonal.from_matrix(
        rational_matrix([[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]], 2)
    )
