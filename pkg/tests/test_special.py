import numpy as np
import pytest

from nodal_morse import build_graph, build_operator, eig_symmetric, random_operator
from nodal_morse.errors import (
    HypothesesViolated,
    NotBipartite,
    NotSingleVanishing,
)
from nodal_morse.special import (
    bipartite_check,
    determinant_index_check,
    two_coloring,
    vanishing_analysis,
)


def test_two_triangle_vanishing_report(two_triangle_operator):
    rep = vanishing_analysis(two_triangle_operator, 4)
    assert rep.x0 == 2
    assert (rep.n_plus, rep.n_minus) == (2, 2)
    assert rep.nullity_bound == 0
    assert rep.fd_nullity == 2
    assert rep.hessian.shape == (2, 2)


def test_path_vanishing_report(path3_laplacian):
    rep = vanishing_analysis(path3_laplacian, 2)
    assert rep.x0 == 1
    assert (rep.n_plus, rep.n_minus) == (1, 1)
    assert rep.nullity_bound == 0
    assert rep.hessian.shape == (0, 0)
    assert rep.fd_nullity == 0


def test_rejects_nonvanishing_vector(path3_laplacian):
    with pytest.raises(NotSingleVanishing):
        vanishing_analysis(path3_laplacian, 3)


def balanced_star_operator(seed):
    """Star with a kernel vector vanishing at the hub and neighbor
    imbalance two; the cycle count is zero, so zero must be degenerate."""
    g = build_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    rng = np.random.default_rng(seed)
    h = -rng.uniform(0.5, 2.0, 4)
    d = -(h[0] + h[1] + h[2]) / h[3]
    assert d < 0
    m = np.zeros((5, 5))
    for i in range(4):
        m[0, i + 1] = m[i + 1, 0] = h[i]
    m[0, 0] = rng.uniform(-1, 1)
    op = build_operator(g, m)
    phi = np.array([0.0, 1.0, 1.0, 1.0, d])
    assert np.max(np.abs(m @ phi)) < 1e-12
    return op


def test_imbalance_above_cycles_forces_degeneracy():
    # neighbor imbalance 2 with no cycles: the zero eigenvalue cannot be simple
    for seed in range(10):
        op = balanced_star_operator(seed)
        values = np.array([p.value for p in eig_symmetric(op.matrix)])
        assert np.sum(np.abs(values) < 1e-9) >= 2


def unbalanced_kite_operator(seed):
    """One cycle, a kernel vector vanishing at the hub, imbalance one."""
    g = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    rng = np.random.default_rng(seed)
    h01, h02, h03, h12 = -rng.uniform(0.5, 2.0, 4)
    p = rng.uniform(0.5, 2.0)
    q = -(h01 + h02 * p) / h03
    assert q < 0
    m = np.zeros((4, 4))
    m[0, 1] = m[1, 0] = h01
    m[0, 2] = m[2, 0] = h02
    m[0, 3] = m[3, 0] = h03
    m[1, 2] = m[2, 1] = h12
    m[1, 1] = -h12 * p
    m[2, 2] = -h12 / p
    m[0, 0] = rng.uniform(-1, 1)
    op = build_operator(g, m)
    phi = np.array([0.0, 1.0, p, q])
    assert np.max(np.abs(m @ phi)) < 1e-12
    return op


def test_nullity_bound_saturates_on_kite():
    checked = 0
    for seed in range(10):
        op = unbalanced_kite_operator(seed)
        pairs = eig_symmetric(op.matrix)
        values = np.array([p.value for p in pairs])
        n = int(np.argmin(np.abs(values))) + 1
        if not pairs[n - 1].simple:
            continue
        rep = vanishing_analysis(op, n)
        assert rep.nullity_bound == 1
        # one cycle: the bound forces the whole Hessian to vanish
        assert rep.fd_nullity >= rep.nullity_bound
        assert rep.fd_nullity <= op.graph.beta
        checked += 1
    assert checked >= 5


def test_two_coloring_even_cycle(cycle4):
    color = two_coloring(cycle4)
    for lo, hi in cycle4.edges:
        assert color[lo] * color[hi] == -1


def test_two_coloring_rejects_triangle(triangle):
    with pytest.raises(NotBipartite):
        two_coloring(triangle)


def test_bipartite_even_cycle(cycle4_laplacian):
    rep = bipartite_check(cycle4_laplacian)
    assert rep.spectra_mirrored
    assert rep.top_hessian_index == 1  # beta of the 4-cycle
    assert rep.top_hessian_nullity == 0
    assert rep.top_sign_changes == 4
    assert rep.euler_identity
    assert rep.ok


def test_bipartite_tree():
    g = build_graph(5, [(0, 1), (0, 2), (1, 3), (1, 4)])
    op = random_operator(g, seed=3)
    rep = bipartite_check(op)
    assert rep.beta == 0
    assert rep.euler_identity  # (5 - 1) + 0 == 4
    assert rep.ok


def test_bipartite_k23():
    g = build_graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    op = random_operator(g, seed=4)
    rep = bipartite_check(op)
    assert rep.beta == 2
    assert rep.euler_identity  # (5 - 1) + 2 == 6
    assert rep.top_hessian_index == 2
    assert rep.top_sign_changes == 6
    assert rep.ok


def test_determinant_tree(path3_laplacian):
    rep = determinant_index_check(path3_laplacian, 3)
    assert rep.sign_ok
    assert rep.det_index == rep.eigenvalue_index == 0


def test_determinant_triangle(triangle):
    op = random_operator(triangle, seed=5)
    rep = determinant_index_check(op, 2)
    assert rep.sign_ok
    assert rep.indices_agree
    assert rep.det_index == 1  # the defect of level two on a 3-cycle
    assert rep.factor_agreement < 1e-6


def test_determinant_rejects_bad_hypotheses(path3_laplacian):
    with pytest.raises(HypothesesViolated):
        determinant_index_check(path3_laplacian, 2)


def test_determinant_random_instances():
    g = build_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    from nodal_morse.spectral import check_hypotheses

    checked = 0
    for seed in range(12):
        op = random_operator(g, seed=seed)
        for n in range(1, 6):
            if not check_hypotheses(op, n).ok:
                continue
            rep = determinant_index_check(op, n)
            assert rep.sign_ok
            assert rep.indices_agree
            assert rep.factor_agreement < 1e-6
            checked += 1
    assert checked >= 30
