"""Schrodinger operators on a graph.

A valid operator is a real symmetric matrix that is strictly negative on
edges, exactly zero on non-edges, and arbitrary on the diagonal.  The
derived potential is ``V_x = h_xx + sum of h_xy over neighbors y``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidRange, NotInOG, NotSymmetric
from .graphs import Graph

SYMMETRY_TOL = 1e-12


@dataclass
class SchrodingerOperator:
    graph: Graph
    matrix: np.ndarray
    potential: np.ndarray


def build_operator(g: Graph, matrix) -> SchrodingerOperator:
    """Validate the sign pattern and symmetry, then symmetrize and store.

    Off-pattern entries within the symmetry tolerance of zero are clamped
    to exact zeros so that file round-trips cannot smuggle in spurious
    couplings.
    """
    m = np.asarray(matrix, dtype=float)
    n = g.num_vertices
    if m.shape != (n, n):
        raise DimensionMismatch(f"expected a {n}x{n} matrix, got {m.shape}")
    scale = 1.0 + np.max(np.abs(m)) if m.size else 1.0
    if np.max(np.abs(m - m.T)) > SYMMETRY_TOL * scale:
        raise NotSymmetric("matrix is not symmetric to 1e-12")
    m = 0.5 * (m + m.T)

    edge_set = set(g.edges)
    for x in range(n):
        for y in range(x + 1, n):
            if (x, y) in edge_set:
                if not m[x, y] < 0.0:
                    raise NotInOG(f"edge ({x}, {y}) weight {m[x, y]} is not < 0")
            elif m[x, y] != 0.0:
                if abs(m[x, y]) > SYMMETRY_TOL * scale:
                    raise NotInOG(f"non-edge ({x}, {y}) has entry {m[x, y]}")
                m[x, y] = 0.0
                m[y, x] = 0.0

    potential = np.diag(m).copy()
    for lo, hi in g.edges:
        potential[lo] += m[lo, hi]
        potential[hi] += m[lo, hi]
    return SchrodingerOperator(graph=g, matrix=m, potential=potential)


def quadratic_form(op: SchrodingerOperator, f) -> float:
    """Edge-difference expansion of <Hf, f>:
    -sum over edges of h_xy (f(x) - f(y))^2 + sum of V_x f(x)^2."""
    f = np.asarray(f, dtype=float)
    if f.shape != (op.graph.num_vertices,):
        raise DimensionMismatch(
            f"expected {op.graph.num_vertices} values, got shape {f.shape}"
        )
    g = op.graph
    diffs = f[g._lo] - f[g._hi]
    weights = op.matrix[g._lo, g._hi]
    return float(-np.sum(weights * diffs**2) + np.sum(op.potential * f**2))


def random_operator(
    g: Graph,
    seed: int,
    weight_range=(-2.0, -0.5),
    diagonal_range=(-1.0, 1.0),
) -> SchrodingerOperator:
    """Seeded random operator with the required sign pattern.

    Defaults keep instances in generic position (simple eigenvalues,
    nonvanishing eigenvectors with high probability).  The weight range
    must lie strictly below zero.
    """
    lo, hi = float(weight_range[0]), float(weight_range[1])
    if not (lo <= hi < 0.0):
        raise InvalidRange(f"weight range {weight_range} must sit below zero")
    dlo, dhi = float(diagonal_range[0]), float(diagonal_range[1])
    if not dlo <= dhi:
        raise InvalidRange(f"bad diagonal range {diagonal_range}")
    rng = np.random.default_rng(seed)
    # draw edge weights first, then the diagonal: fixed order keeps the
    # instance a deterministic function of (graph, seed)
    weights = rng.uniform(lo, hi, g.num_edges)
    diagonal = rng.uniform(dlo, dhi, g.num_vertices)
    m = np.zeros((g.num_vertices, g.num_vertices))
    for e, (x, y) in enumerate(g.edges):
        m[x, y] = weights[e]
        m[y, x] = weights[e]
    m[np.diag_indices_from(m)] = diagonal
    return build_operator(g, m)


def shift_diagonal(op: SchrodingerOperator, amount: float) -> SchrodingerOperator:
    """Operator with ``amount`` subtracted from the diagonal (H - amount*I)."""
    m = op.matrix.copy()
    m[np.diag_indices_from(m)] -= amount
    return build_operator(op.graph, m)
