import numpy as np
import pytest

from nodal_morse import build_operator, quadratic_form, random_operator
from nodal_morse.errors import InvalidRange, NotInOG, NotSymmetric
from nodal_morse.operators import shift_diagonal
from tests.conftest import TWO_TRIANGLE_MATRIX


def test_laplacian_potential_vanishes(path3_laplacian):
    assert np.allclose(path3_laplacian.potential, 0.0)


def test_positive_edge_weight_rejected(triangle):
    m = -np.ones((3, 3))
    m[0, 1] = m[1, 0] = 1.0
    with pytest.raises(NotInOG):
        build_operator(triangle, m)


def test_nonzero_off_edge_rejected(path3):
    m = np.array([[0.0, -1.0, 0.5], [-1.0, 0.0, -1.0], [0.5, -1.0, 0.0]])
    with pytest.raises(NotInOG):
        build_operator(path3, m)


def test_asymmetric_rejected(path3):
    m = np.array([[0.0, -1.0, 0.0], [-2.0, 0.0, -1.0], [0.0, -1.0, 0.0]])
    with pytest.raises(NotSymmetric):
        build_operator(path3, m)


def test_two_triangle_matrix_accepted(two_triangle_operator):
    assert two_triangle_operator.matrix.shape == (5, 5)
    assert np.allclose(two_triangle_operator.matrix, TWO_TRIANGLE_MATRIX)


def test_quadratic_form_of_constant_in_kernel(path3_laplacian):
    assert quadratic_form(path3_laplacian, np.ones(3)) == pytest.approx(0.0)


def test_quadratic_form_top_eigenvector(path3_laplacian):
    f = np.array([1.0, -2.0, 1.0])
    # top eigenvalue 3 times |f|^2 = 18
    assert quadratic_form(path3_laplacian, f) == pytest.approx(18.0, rel=1e-12)


def test_quadratic_form_of_zero(two_triangle_operator):
    assert quadratic_form(two_triangle_operator, np.zeros(5)) == 0.0


def test_quadratic_form_matches_matrix_product(two_triangle_operator):
    rng = np.random.default_rng(3)
    m = two_triangle_operator.matrix
    for _ in range(100):
        f = rng.normal(size=5)
        direct = float(f @ m @ f)
        assert quadratic_form(two_triangle_operator, f) == pytest.approx(
            direct, rel=1e-10, abs=1e-12
        )


def test_random_operator_sign_pattern(triangle):
    op = random_operator(triangle, seed=1)
    for lo, hi in triangle.edges:
        assert op.matrix[lo, hi] < 0


def test_random_operator_deterministic(triangle):
    a = random_operator(triangle, seed=42)
    b = random_operator(triangle, seed=42)
    assert np.array_equal(a.matrix, b.matrix)
    c = random_operator(triangle, seed=43)
    assert not np.array_equal(a.matrix, c.matrix)


def test_random_operator_validates(path3):
    op = random_operator(path3, seed=7)
    rebuilt = build_operator(path3, op.matrix)
    assert np.array_equal(rebuilt.matrix, op.matrix)
    assert np.array_equal(rebuilt.potential, op.potential)


def test_random_operator_rejects_positive_range(triangle):
    with pytest.raises(InvalidRange):
        random_operator(triangle, seed=0, weight_range=(-1.0, 0.5))


def test_potential_recomputes_exactly(two_triangle_operator):
    op = two_triangle_operator
    v = np.diag(op.matrix).copy()
    for lo, hi in op.graph.edges:
        v[lo] += op.matrix[lo, hi]
        v[hi] += op.matrix[lo, hi]
    assert np.array_equal(v, op.potential)


def test_shift_diagonal(two_triangle_operator):
    shifted = shift_diagonal(two_triangle_operator, 0.5)
    assert np.allclose(
        np.diag(shifted.matrix), np.diag(two_triangle_operator.matrix) - 0.5
    )
    off = shifted.matrix - np.diag(np.diag(shifted.matrix))
    off0 = two_triangle_operator.matrix - np.diag(
        np.diag(two_triangle_operator.matrix)
    )
    assert np.array_equal(off, off0)
