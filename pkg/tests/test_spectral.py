import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodal_morse import check_hypotheses, eig_hermitian, eig_symmetric
from nodal_morse import _kernels_py, backend
from nodal_morse.errors import NotSymmetric
from nodal_morse.spectral import hermitian_eigenvalues

KERNELS = [_kernels_py]
if backend.COMPILED:
    KERNELS.append(backend._impl)


@pytest.mark.parametrize("kernel", KERNELS, ids=lambda k: k.__name__.split(".")[-1])
def test_jacobi_against_numpy(kernel):
    rng = np.random.default_rng(0)
    for n in (1, 2, 5, 13, 30):
        a = rng.normal(size=(n, n))
        a = a + a.T
        w, v, converged = kernel.jacobi_eigh(a)
        assert converged
        assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-11 * (1 + np.abs(w).max()))
        assert np.max(np.abs(a @ v - v * w)) < 1e-11 * (1 + np.abs(w).max())


@pytest.mark.parametrize("kernel", KERNELS, ids=lambda k: k.__name__.split(".")[-1])
def test_jacobi_values_only(kernel):
    rng = np.random.default_rng(1)
    a = rng.normal(size=(9, 9))
    a = a + a.T
    w, v, _ = kernel.jacobi_eigh(a, vectors=False)
    assert v is None
    assert np.allclose(w, np.linalg.eigvalsh(a))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=2, max_value=12))
def test_jacobi_random_property(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    a = a + a.T
    w, v, converged = backend.jacobi_eigh(a)
    assert converged
    assert np.all(np.diff(w) >= 0)
    assert np.allclose(v.T @ v, np.eye(n), atol=1e-10)
    assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-10 * (1 + np.abs(w).max()))


def test_diagonal_matrix_spectrum():
    pairs = eig_symmetric(np.diag([3.0, 1.0, 2.0]))
    assert [p.value for p in pairs] == pytest.approx([1.0, 2.0, 3.0])
    assert np.allclose(np.abs(pairs[0].vector), [0, 1, 0])
    assert np.allclose(np.abs(pairs[1].vector), [0, 0, 1])
    assert np.allclose(np.abs(pairs[2].vector), [1, 0, 0])
    assert all(p.simple for p in pairs)


def test_path_laplacian_spectrum(path3_laplacian):
    pairs = eig_symmetric(path3_laplacian.matrix)
    assert [p.value for p in pairs] == pytest.approx([0.0, 1.0, 3.0], abs=1e-12)
    top = pairs[2].vector
    expected = np.array([1.0, -2.0, 1.0]) / np.sqrt(6.0)
    assert min(np.linalg.norm(top - expected), np.linalg.norm(top + expected)) < 1e-10


def test_two_triangle_fourth_eigenpair(two_triangle_operator):
    pairs = eig_symmetric(two_triangle_operator.matrix)
    assert abs(pairs[3].value) < 1e-12
    assert pairs[3].simple
    vec = np.real(pairs[3].vector)
    expected = np.array([1.0, -1.0, 0.0, -1.0, 1.0]) / 2.0
    assert min(np.linalg.norm(vec - expected), np.linalg.norm(vec + expected)) < 1e-10


def test_phase_convention_positive_pivot():
    pairs = eig_symmetric(np.diag([2.0, 1.0]))
    for p in pairs:
        pivot = p.vector[np.argmax(np.abs(p.vector) >= 0.5 * np.abs(p.vector).max())]
        assert pivot > 0


def test_hermitian_real_input_matches_symmetric(two_triangle_operator):
    m = two_triangle_operator.matrix
    sym = [p.value for p in eig_symmetric(m)]
    herm = [p.value for p in eig_hermitian(m.astype(complex))]
    assert herm == pytest.approx(sym, abs=1e-10)


def test_hermitian_pauli_like():
    m = np.array([[0.0, 1j], [-1j, 0.0]])
    pairs = eig_hermitian(m)
    assert [p.value for p in pairs] == pytest.approx([-1.0, 1.0], abs=1e-12)
    for p in pairs:
        assert np.linalg.norm(m @ p.vector - p.value * p.vector) < 1e-12


def test_hermitian_magnetic_cycle_circulant():
    # 4-cycle Laplacian with flux alpha on one edge: spectrum
    # 2 - 2 cos((2 pi k + alpha) / 4)
    alpha = 0.83
    m = 2.0 * np.eye(4, dtype=complex)
    for i in range(4):
        j = (i + 1) % 4
        m[i, j] = -1.0
        m[j, i] = -1.0
    m[3, 0] = -np.exp(1j * alpha)
    m[0, 3] = np.conj(m[3, 0])
    got = [p.value for p in eig_hermitian(m)]
    expected = sorted(2.0 - 2.0 * np.cos((2.0 * np.pi * k + alpha) / 4.0) for k in range(4))
    assert got == pytest.approx(expected, abs=1e-10)


def test_hermitian_random_residuals_and_orthonormality():
    rng = np.random.default_rng(7)
    for _ in range(100):
        n = rng.integers(2, 9)
        a = rng.normal(size=(n, n))
        b = rng.normal(size=(n, n))
        m = (a + a.T) + 1j * (b - b.T)
        pairs = eig_hermitian(m)
        vs = np.column_stack([p.vector for p in pairs])
        assert np.max(np.abs(vs.conj().T @ vs - np.eye(n))) < 1e-9
        norm = max(abs(pairs[0].value), abs(pairs[-1].value))
        for p in pairs:
            assert np.linalg.norm(m @ p.vector - p.value * p.vector) < 1e-9 * (1 + norm)


def test_trace_identity():
    rng = np.random.default_rng(9)
    a = rng.normal(size=(8, 8))
    a = a + a.T
    pairs = eig_symmetric(a)
    tr = np.trace(a)
    assert sum(p.value for p in pairs) == pytest.approx(tr, abs=1e-9 * (1 + abs(tr)))


def test_conjugation_symmetry():
    rng = np.random.default_rng(21)
    a = rng.normal(size=(6, 6))
    b = rng.normal(size=(6, 6))
    m = (a + a.T) + 1j * (b - b.T)
    w1 = hermitian_eigenvalues(m)
    w2 = hermitian_eigenvalues(np.conj(m))
    assert np.max(np.abs(w1 - w2)) < 1e-10


def test_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        eig_symmetric(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(NotSymmetric):
        eig_hermitian(np.array([[0.0, 1j], [1j, 0.0]]))


def test_hypotheses_path_middle_vanishes(path3_laplacian):
    report = check_hypotheses(path3_laplacian, 2)
    assert report.simple
    assert not report.nonvanishing
    assert report.vanishing_vertex == 1
    assert not report.ok


def test_hypotheses_path_top_ok(path3_laplacian):
    report = check_hypotheses(path3_laplacian, 3)
    assert report.ok
    assert report.gap == pytest.approx(2.0, abs=1e-10)


def test_hypotheses_two_triangles(two_triangle_operator):
    report = check_hypotheses(two_triangle_operator, 4)
    assert report.simple
    assert not report.nonvanishing
    assert report.vanishing_vertex == 2
