"""Shared fixtures: small canonical graphs and operators."""

import numpy as np
import pytest

from nodal_morse import build_graph, build_operator


@pytest.fixture
def path3():
    return build_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def path3_laplacian(path3):
    m = np.array(
        [
            [1.0, -1.0, 0.0],
            [-1.0, 2.0, -1.0],
            [0.0, -1.0, 1.0],
        ]
    )
    return build_operator(path3, m)


@pytest.fixture
def triangle():
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def cycle4():
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def cycle4_laplacian(cycle4):
    m = 2.0 * np.eye(4)
    for lo, hi in cycle4.edges:
        m[lo, hi] = -1.0
        m[hi, lo] = -1.0
    return build_operator(cycle4, m)


TWO_TRIANGLE_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]

TWO_TRIANGLE_MATRIX = -np.array(
    [
        [1.0, 1.0, 1.0, 0.0, 0.0],
        [1.0, 1.0, 2.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 1.0, 2.0],
        [0.0, 0.0, 1.0, 1.0, 1.0],
        [0.0, 0.0, 2.0, 1.0, 1.0],
    ]
)


@pytest.fixture
def two_triangles():
    """Two 3-cycles sharing vertex 2; cycle dimension 2."""
    return build_graph(5, TWO_TRIANGLE_EDGES)


@pytest.fixture
def two_triangle_operator(two_triangles):
    """Mirror-symmetric operator whose 4th eigenvalue is 0 with an
    eigenvector vanishing only at the shared vertex."""
    return build_operator(two_triangles, TWO_TRIANGLE_MATRIX)
