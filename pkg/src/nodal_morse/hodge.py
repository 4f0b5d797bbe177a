"""The edge quadratic form of an eigenvector and its Hodge-type splitting.

For a shifted operator (working eigenvalue zero) with eigenvector phi, the
form on edge 1-forms is diagonal in the canonical edge basis:

    Q(w) = sum over edges {x, y} of a_xy * w({x,y})^2,
    a_xy = -h_xy * phi(x) * phi(y),

one term per unoriented edge.  Its coefficient is negative exactly on the
sign-change edges of phi.  The codifferential of the associated indefinite
product is realized as the matrix ``incidence(g).T @ diag(a)``; with the
canonical orientation low -> high this gives row x of edge e = {x, y} the
entry -a_e when x is the low endpoint and +a_e when it is the high one.

Gradients of vertex functions and the codifferential kernel split the
1-form space orthogonally for this product, with the kernel of dimension
beta.  Restricting the form to the two parts splits its Morse index into
(n - 1) plus the nodal defect, and the kernel restriction is the analytic
counterpart of the flux Hessian: since the eigenvalue's second derivative
doubles the quadratic Taylor coefficient, the matrix compared entrywise
against :func:`nodal_morse.magnetic.flux_hessian` is 2 B^T diag(a) B in a
common basis B of the quotient by gradients.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    NotShifted,
    RankDeficientBasis,
    SplitFailure,
    VanishingVertex,
)
from .graphs import OneForm, incidence
from .magnetic import flux_hessian, morse_index
from .operators import SchrodingerOperator, quadratic_form, shift_diagonal
from .spectral import VANISH_FACTOR, eig_symmetric

SHIFT_TOL = 1e-8
NULLSPACE_FACTOR = 1e-10
INDEX_TOL_FACTOR = 1e-9
HESSIAN_TOL_FACTOR = 1e-5
MARGINAL_FACTOR = 10.0  # analytic clearance required of the FD counting band


@dataclass
class EdgeForm:
    """Diagonal quadratic form on 1-forms with one coefficient per edge."""

    graph: object
    coefficients: np.ndarray

    @property
    def gram(self) -> np.ndarray:
        return np.diag(self.coefficients)

    def value(self, omega) -> float:
        w = omega.values if isinstance(omega, OneForm) else np.asarray(omega, float)
        return float(np.sum(self.coefficients * w**2))

    def bilinear(self, w1, w2) -> float:
        w1 = w1.values if isinstance(w1, OneForm) else np.asarray(w1, float)
        w2 = w2.values if isinstance(w2, OneForm) else np.asarray(w2, float)
        return float(np.sum(self.coefficients * w1 * w2))


@dataclass
class HodgeSplit:
    grad_basis: np.ndarray  # (num_edges, num_vertices - 1)
    kernel_basis: np.ndarray  # (num_edges, beta), orthonormal columns
    dstar: np.ndarray  # (num_vertices, num_edges)


def edge_quadratic_form(op: SchrodingerOperator, phi) -> EdgeForm:
    """Build the edge form of an eigenvector of a shifted operator.

    The vector is normalized internally, so the coefficients match the
    flux-Hessian scale of a unit eigenvector.  Raises NotShifted unless
    H phi is numerically zero, and VanishingVertex if any component is.
    """
    g = op.graph
    phi = np.asarray(phi, dtype=float)
    amax = np.max(np.abs(phi))
    if amax == 0.0 or np.any(np.abs(phi) <= VANISH_FACTOR * amax):
        vertex = int(np.argmin(np.abs(phi)))
        raise VanishingVertex(f"eigenvector vanishes at vertex {vertex}")
    phi = phi / np.linalg.norm(phi)
    residual = np.max(np.abs(op.matrix @ phi))
    if residual > SHIFT_TOL:
        raise NotShifted(
            f"|H phi| = {residual:.3e}; shift the diagonal by the eigenvalue first"
        )
    weights = op.matrix[g._lo, g._hi]
    return EdgeForm(graph=g, coefficients=-weights * phi[g._lo] * phi[g._hi])


def codifferential_matrix(form: EdgeForm) -> np.ndarray:
    """Adjoint of the differential for the form's indefinite product."""
    return incidence(form.graph).T * form.coefficients


def _nullspace(matrix: np.ndarray, tol_factor: float = NULLSPACE_FACTOR) -> np.ndarray:
    """Nullspace basis by full-pivot Gaussian elimination.

    Pivots are the largest remaining entries in absolute value; elimination
    stops when they drop below tol_factor times the largest entry of the
    input.  The basis is orthonormalized for conditioning.
    """
    a = np.array(matrix, dtype=float, copy=True)
    rows, cols = a.shape
    scale = np.max(np.abs(a)) if a.size else 0.0
    threshold = tol_factor * scale
    pivot_cols: list = []
    pivot_rows: list = []
    free_rows = list(range(rows))
    free_cols = list(range(cols))
    while free_rows and free_cols:
        sub = np.abs(a[np.ix_(free_rows, free_cols)])
        r_loc, c_loc = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[r_loc, c_loc] <= threshold:
            break
        r, c = free_rows[r_loc], free_cols[c_loc]
        pivot_rows.append(r)
        pivot_cols.append(c)
        for rr in range(rows):
            if rr != r and a[rr, c] != 0.0:
                a[rr, :] -= (a[rr, c] / a[r, c]) * a[r, :]
                a[rr, c] = 0.0
        free_rows.remove(r)
        free_cols.remove(c)
    non_pivot = [c for c in range(cols) if c not in pivot_cols]
    if not non_pivot:
        return np.zeros((cols, 0))
    basis = np.zeros((cols, len(non_pivot)))
    for k, c_free in enumerate(non_pivot):
        basis[c_free, k] = 1.0
        for r, c in zip(pivot_rows, pivot_cols):
            basis[c, k] = -a[r, c_free] / a[r, c]
    q, _ = np.linalg.qr(basis)
    return q


def _rank(matrix: np.ndarray, tol_factor: float = NULLSPACE_FACTOR) -> int:
    return matrix.shape[1] - _nullspace(matrix, tol_factor).shape[1]


def hodge_split(form: EdgeForm) -> HodgeSplit:
    """Split 1-forms into gradients plus the codifferential kernel.

    Raises SplitFailure when the kernel dimension is not beta or the two
    pieces fail to fill the space; either signals a degenerate or
    vanishing input outside the splitting hypotheses.
    """
    g = form.graph
    dstar = codifferential_matrix(form)
    kernel = _nullspace(dstar)
    if kernel.shape[1] != g.beta:
        raise SplitFailure(
            f"codifferential kernel has dimension {kernel.shape[1]}, expected {g.beta}"
        )
    grad = incidence(g)[:, 1:]
    stacked = np.hstack([grad, kernel])
    if _rank(stacked) != g.num_edges:
        raise SplitFailure("gradients and kernel do not span the 1-forms")
    # orthogonality for the indefinite product holds by construction;
    # guard against elimination noise anyway
    cross = grad.T @ (form.coefficients[:, None] * kernel)
    limit = 1e-9 * (1.0 + np.max(np.abs(form.coefficients), initial=0.0))
    if cross.size and np.max(np.abs(cross)) > limit:
        raise SplitFailure("splitting is not orthogonal for the edge form")
    return HodgeSplit(grad_basis=grad, kernel_basis=kernel, dstar=dstar)


def index_on_subspace(form: EdgeForm, basis: np.ndarray) -> tuple:
    """(Morse index, nullity) of the form restricted to the basis's span."""
    basis = np.asarray(basis, dtype=float)
    if basis.shape[1] == 0:
        return (0, 0)
    if _rank(basis) != basis.shape[1]:
        raise RankDeficientBasis("basis columns are linearly dependent")
    gram = basis.T @ (form.coefficients[:, None] * basis)
    values = np.array([p.value for p in eig_symmetric(gram)])
    tol = INDEX_TOL_FACTOR * (1.0 + np.max(np.abs(values)))
    return (int(np.sum(values < -tol)), int(np.sum(np.abs(values) <= tol)))


def conjugated_form(op: SchrodingerOperator, phi, f) -> float:
    """Quadratic form of the operator at the pointwise product phi * f.

    Equals the edge form evaluated at df, which is what turns vertex
    variations into edge variations.
    """
    phi = np.asarray(phi, dtype=float)
    f = np.asarray(f, dtype=float)
    return quadratic_form(op, phi * f)


def chord_flux_basis(form: EdgeForm, split: HodgeSplit) -> np.ndarray:
    """Chord indicator forms projected onto the kernel along gradients.

    Columns give, in the canonical edge basis, the kernel representative
    of each flux coordinate direction; this is the common basis in which
    the analytic and finite-difference Hessians are compared.
    """
    g = form.graph
    beta = g.beta
    if beta == 0:
        return np.zeros((g.num_edges, 0))
    full = np.hstack([split.grad_basis, split.kernel_basis])
    chords = np.zeros((g.num_edges, beta))
    chords[g.chords, np.arange(beta)] = 1.0
    coords = np.linalg.solve(full, chords)
    return split.kernel_basis @ coords[g.num_vertices - 1 :, :]


def curvature_matrix(form: EdgeForm, basis: np.ndarray) -> np.ndarray:
    """Second-derivative matrix of the eigenvalue along the basis columns:
    twice the Gram matrix of the edge form."""
    return 2.0 * basis.T @ (form.coefficients[:, None] * basis)


@dataclass
class HessianComparison:
    n: int
    eigenvalue: float
    beta: int
    index_grad: int
    nullity_grad: int
    index_kernel: int
    nullity_kernel: int
    fd_index: int
    fd_nullity: int
    analytic: np.ndarray  # curvature matrix in the projected chord basis
    fd: np.ndarray  # finite-difference Hessian in flux coordinates
    max_discrepancy: float  # max |analytic - fd| / (1 + max |analytic|)

    @property
    def indices_agree(self) -> bool:
        return (self.index_kernel, self.nullity_kernel) == (
            self.fd_index,
            self.fd_nullity,
        )

    @property
    def fd_resolvable(self) -> bool:
        """Whether FD index counting can be trusted on this instance.

        Eigenvectors that nearly vanish at a vertex push analytic Hessian
        eigenvalues arbitrarily close to zero; once one falls inside the
        FD counting band the sign decision is noise.  The guard demands a
        ten-fold clearance of that band from the (exact) analytic side.
        """
        if self.analytic.size == 0:
            return True
        values = np.array([p.value for p in eig_symmetric(self.analytic)])
        band = HESSIAN_TOL_FACTOR * (1.0 + np.max(np.abs(values)))
        return bool(np.min(np.abs(values)) > MARGINAL_FACTOR * band)


def compare_hessians(
    op: SchrodingerOperator, n: int, step: float = 1e-3, eigs=None
) -> HessianComparison:
    """Run the analytic and finite-difference Hessian pipelines and diff them."""
    if eigs is None:
        eigs = eig_symmetric(op.matrix)
    pair = eigs[n - 1]
    phi = np.real(pair.vector)
    shifted = shift_diagonal(op, pair.value)
    form = edge_quadratic_form(shifted, phi)
    split = hodge_split(form)
    index_grad, nullity_grad = index_on_subspace(form, split.grad_basis)
    index_kernel, nullity_kernel = index_on_subspace(form, split.kernel_basis)
    analytic = curvature_matrix(form, chord_flux_basis(form, split))
    fd = flux_hessian(op, n, step=step)
    scale = 1.0 + np.max(np.abs(fd), initial=0.0)
    fd_index, fd_nullity = morse_index(fd, tol=HESSIAN_TOL_FACTOR * scale)
    if analytic.size:
        discrepancy = float(
            np.max(np.abs(analytic - fd)) / (1.0 + np.max(np.abs(analytic)))
        )
    else:
        discrepancy = 0.0
    return HessianComparison(
        n=n,
        eigenvalue=pair.value,
        beta=op.graph.beta,
        index_grad=index_grad,
        nullity_grad=nullity_grad,
        index_kernel=index_kernel,
        nullity_kernel=nullity_kernel,
        fd_index=fd_index,
        fd_nullity=fd_nullity,
        analytic=analytic,
        fd=fd,
        max_discrepancy=discrepancy,
    )
