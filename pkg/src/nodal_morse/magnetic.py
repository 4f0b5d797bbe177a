"""Magnetic deformations of a graph operator and their flux derivatives.

A magnetic field multiplies each off-diagonal entry by a unit phase
``exp(i * angle)`` taken from a 1-form of angles.  Gauge transforms shift
the angle form by a differential and conjugate the operator by diagonal
phases, so only the beta chord angles of a spanning tree matter; those
are the flux coordinates used for all finite differences.

Convention note: ``flux_hessian`` returns the matrix of second partial
derivatives of the eigenvalue in the chord angles.  The matching analytic
object is twice the Gram matrix of the edge quadratic form in the
projected chord basis (see :mod:`nodal_morse.hodge`).
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DimensionMismatch, GraphMismatch, IllConditioned, SimplicityLost
from .graphs import Graph, OneForm, differential
from .operators import SchrodingerOperator
from .spectral import GAP_FACTOR, eig_symmetric, hermitian_eigenvalues

FD_STEP = 1e-3
CROSS_CHECK_FACTOR = 1e-4  # step-halving disagreement that flags IllConditioned


@dataclass
class MagneticField:
    """Unit phases on oriented edges, stored as the angle 1-form."""

    angles: OneForm

    @property
    def phases(self) -> np.ndarray:
        """exp(i * angle) on each canonically oriented edge."""
        return np.exp(1j * self.angles.values)


@dataclass
class FluxCoordinates:
    """One angle per chord of the spanning tree; tree edges carry none."""

    graph: Graph
    theta: np.ndarray

    def __post_init__(self):
        self.theta = np.asarray(self.theta, dtype=float)
        if self.theta.shape != (self.graph.beta,):
            raise DimensionMismatch(
                f"expected {self.graph.beta} chord angles, got {self.theta.shape}"
            )

    def to_one_form(self) -> OneForm:
        values = np.zeros(self.graph.num_edges)
        values[self.graph.chords] = self.theta
        return OneForm(self.graph, values)


def magnetic_operator(op: SchrodingerOperator, field: MagneticField) -> np.ndarray:
    """Complex Hermitian matrix with phased off-diagonal entries."""
    if not field.angles.graph.same_structure(op.graph):
        raise GraphMismatch("field defined on a different graph")
    return _phased_matrix(op, field.angles.values)


def _phased_matrix(op: SchrodingerOperator, angle_values: np.ndarray) -> np.ndarray:
    g = op.graph
    h = np.diag(np.diag(op.matrix)).astype(complex)
    weights = op.matrix[g._lo, g._hi]
    phased = weights * np.exp(1j * angle_values)
    h[g._lo, g._hi] = phased
    h[g._hi, g._lo] = np.conj(phased)
    return h


def gauge_transform(field: MagneticField, f) -> MagneticField:
    """Shift the angle form by df; the operator conjugates by diag phases."""
    df = differential(field.angles.graph, f)
    return MagneticField(OneForm(field.angles.graph, field.angles.values + df.values))


def reduce_to_flux(g: Graph, form: OneForm) -> FluxCoordinates:
    """Gauge away the tree angles; what is left on the chords is the flux.

    Solves f(0) = 0, f(child) = f(parent) + angle along each tree edge, and
    returns the chord values of ``form - df``.
    """
    if not form.graph.same_structure(g):
        raise GraphMismatch("form defined on a different graph")
    f = np.zeros(g.num_vertices)
    known = [False] * g.num_vertices
    known[0] = True
    pending = list(g.spanning_tree)
    while pending:
        rest = []
        for e in pending:
            lo, hi = g.edges[e]
            if known[lo]:
                f[hi] = f[lo] + form.values[e]
                known[hi] = True
            elif known[hi]:
                f[lo] = f[hi] - form.values[e]
                known[lo] = True
            else:
                rest.append(e)
        pending = rest
    reduced = form.values - differential(g, f).values
    return FluxCoordinates(g, reduced[g.chords])


def _as_theta(op: SchrodingerOperator, theta) -> np.ndarray:
    if isinstance(theta, FluxCoordinates):
        if not theta.graph.same_structure(op.graph):
            raise GraphMismatch("flux coordinates belong to a different graph")
        return theta.theta
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (op.graph.beta,):
        raise DimensionMismatch(
            f"expected {op.graph.beta} flux angles, got shape {theta.shape}"
        )
    return theta


def _flux_values(op: SchrodingerOperator, theta: np.ndarray) -> np.ndarray:
    angles = np.zeros(op.graph.num_edges)
    angles[op.graph.chords] = theta
    return hermitian_eigenvalues(_phased_matrix(op, angles))


def flux_eigenvalue(op: SchrodingerOperator, n: int, theta) -> float:
    """n-th eigenvalue of the operator at the given chord fluxes."""
    if not 1 <= n <= op.graph.num_vertices:
        raise IndexError(f"eigenvalue index {n} out of range")
    return float(_flux_values(op, _as_theta(op, theta))[n - 1])


class _FluxEigenvalue:
    """Eigenvalue-at-flux evaluator that raises once simplicity is lost."""

    def __init__(self, op: SchrodingerOperator, n: int):
        self.op = op
        self.n = n
        scale = np.max(np.abs(op.matrix)) if op.matrix.size else 0.0
        self.gap_threshold = GAP_FACTOR * (1.0 + scale)

    def __call__(self, theta: np.ndarray) -> float:
        values = _flux_values(self.op, theta)
        i = self.n - 1
        gap = np.inf
        if i > 0:
            gap = values[i] - values[i - 1]
        if i + 1 < len(values):
            gap = min(gap, values[i + 1] - values[i])
        if gap <= self.gap_threshold:
            raise SimplicityLost(
                f"eigenvalue {self.n} has gap {gap:.3e} at flux {theta}"
            )
        return float(values[i])


def fd_gradient_of(func, dim: int, step: float) -> np.ndarray:
    """Central-difference gradient of a scalar function of dim angles at 0."""
    grad = np.empty(dim)
    for j in range(dim):
        e = np.zeros(dim)
        e[j] = step
        grad[j] = (func(e) - func(-e)) / (2.0 * step)
    return grad


def fd_hessian_of(func, dim: int, step: float) -> np.ndarray:
    """Second-order central-difference Hessian of a scalar function at 0."""
    hess = np.empty((dim, dim))
    if dim == 0:
        return hess
    center = func(np.zeros(dim))
    for j in range(dim):
        e = np.zeros(dim)
        e[j] = step
        hess[j, j] = (func(e) - 2.0 * center + func(-e)) / step**2
    for j, k in combinations(range(dim), 2):
        e = np.zeros(dim)
        e[j] = step
        e[k] = step
        pp = func(e)
        e[k] = -step
        pm = func(e)
        e[j] = -step
        mm = func(e)
        e[k] = step
        mp = func(e)
        hess[j, k] = hess[k, j] = (pp - pm - mp + mm) / (4.0 * step**2)
    return hess


def flux_gradient(op: SchrodingerOperator, n: int, step: float = FD_STEP) -> np.ndarray:
    """Central-difference gradient of the eigenvalue in the chord angles.

    Vanishes identically at zero flux (the eigenvalue is even in the
    angles), so the result is a numerical-hygiene check.
    """
    func = _FluxEigenvalue(op, n)
    func(np.zeros(op.graph.beta))  # refuse degenerate eigenvalues up front
    return fd_gradient_of(func, op.graph.beta, step)


def flux_hessian(
    op: SchrodingerOperator,
    n: int,
    step: float = FD_STEP,
    cross_check: bool = True,
) -> np.ndarray:
    """Finite-difference Hessian of the eigenvalue at zero flux.

    With ``cross_check`` the stencil is repeated at twice the step; a
    disagreement beyond 1e-4 relative to the Hessian scale raises
    IllConditioned (eigensolver noise or nearby level crossing).  The
    1e-4 budget is calibrated for the default step and widens with the
    second-order truncation when a coarser step is requested.
    """
    func = _FluxEigenvalue(op, n)
    func(np.zeros(op.graph.beta))
    hess = fd_hessian_of(func, op.graph.beta, step)
    if cross_check and op.graph.beta:
        coarse = fd_hessian_of(func, op.graph.beta, 2.0 * step)
        scale = 1.0 + np.max(np.abs(hess))
        budget = CROSS_CHECK_FACTOR * max(1.0, (step / FD_STEP) ** 2)
        disagreement = np.max(np.abs(hess - coarse))
        if disagreement > budget * scale:
            raise IllConditioned(
                f"step-halving check moved the Hessian by {disagreement:.3e} "
                f"(scale {scale:.3e})"
            )
    return hess


def morse_index(matrix, tol: float) -> tuple:
    """(negative count, near-zero count) of a symmetric matrix's spectrum."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return (0, 0)
    values = np.array([p.value for p in eig_symmetric(matrix)])
    negative = int(np.sum(values < -tol))
    null = int(np.sum(np.abs(values) <= tol))
    return (negative, null)
