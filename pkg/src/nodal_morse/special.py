"""Structured special cases: vanishing vertices, bipartite graphs, and the
determinant's flux Hessian.

``vanishing_analysis`` measures the flux-Hessian nullity when the
eigenvector is zero at exactly one vertex and bounds it below by the
imbalance between positive and negative neighbors.  ``bipartite_check``
verifies the sign-flip conjugation that sends the top eigenvalue to minus
the bottom one and turns the top level's Morse data into the Euler
formula.  ``determinant_index_check`` verifies that, after shifting the
working eigenvalue to zero, the signed determinant has the same flux
Morse index as the eigenvalue itself.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateEigenvalue,
    HypothesesViolated,
    NotBipartite,
    NotSingleVanishing,
)
from .graphs import OneForm
from .hodge import HESSIAN_TOL_FACTOR
from .magnetic import (
    MagneticField,
    fd_hessian_of,
    flux_hessian,
    magnetic_operator,
    morse_index,
)
from .nodal import sign_changes
from .operators import SchrodingerOperator, build_operator, shift_diagonal
from .spectral import (
    VANISH_FACTOR,
    check_hypotheses,
    eig_symmetric,
    hermitian_eigenvalues,
)


@dataclass
class VanishingReport:
    x0: int  # the unique vanishing vertex
    n_plus: int  # neighbors with positive eigenvector value
    n_minus: int  # neighbors with negative eigenvector value
    nullity_bound: int  # |n_plus - n_minus|
    fd_nullity: int
    fd_index: int
    hessian: np.ndarray


def vanishing_analysis(
    op: SchrodingerOperator, n: int, step: float = 1e-3, eigs=None
) -> VanishingReport:
    """Neighbor sign counts and measured Hessian nullity at one vanishing vertex."""
    if eigs is None:
        eigs = eig_symmetric(op.matrix)
    pair = eigs[n - 1]
    if not pair.simple:
        raise DegenerateEigenvalue(f"eigenvalue {n} has gap {pair.gap:.3e}")
    phi = np.real(pair.vector)
    amax = np.max(np.abs(phi))
    vanishing = np.flatnonzero(np.abs(phi) <= VANISH_FACTOR * amax)
    if len(vanishing) != 1:
        raise NotSingleVanishing(
            f"expected exactly one vanishing vertex, found {vanishing.tolist()}"
        )
    x0 = int(vanishing[0])
    neighbor_values = np.array([phi[y] for y in op.graph.neighbors(x0)])
    if np.any(np.abs(neighbor_values) <= VANISH_FACTOR * amax):
        raise NotSingleVanishing(f"a neighbor of vertex {x0} also vanishes")
    n_plus = int(np.sum(neighbor_values > 0))
    n_minus = int(np.sum(neighbor_values < 0))
    hessian = flux_hessian(op, n, step=step)
    tol = HESSIAN_TOL_FACTOR * (1.0 + np.max(np.abs(hessian), initial=0.0))
    fd_index, fd_nullity = morse_index(hessian, tol)
    return VanishingReport(
        x0=x0,
        n_plus=n_plus,
        n_minus=n_minus,
        nullity_bound=abs(n_plus - n_minus),
        fd_nullity=fd_nullity,
        fd_index=fd_index,
        hessian=hessian,
    )


def two_coloring(graph) -> np.ndarray:
    """+-1 per vertex splitting the parts of a bipartite graph.

    Vertex 0 gets +1; raises NotBipartite when an odd cycle shows up.
    """
    color = np.zeros(graph.num_vertices, dtype=int)
    color[0] = 1
    queue = [0]
    while queue:
        x = queue.pop(0)
        for y in graph.neighbors(x):
            if color[y] == 0:
                color[y] = -color[x]
                queue.append(y)
            elif color[y] == color[x]:
                raise NotBipartite(f"odd cycle through edge ({x}, {y})")
    return color


@dataclass
class BipartiteReport:
    coloring: np.ndarray
    beta: int
    num_edges: int
    spectra_mirrored: bool  # spectrum of H_B = minus reversed spectrum of H'_B
    top_hessian_index: int
    top_hessian_nullity: int
    top_sign_changes: int
    euler_identity: bool  # (num_vertices - 1) + beta == num_edges

    @property
    def ok(self) -> bool:
        return bool(
            self.spectra_mirrored
            and self.euler_identity
            and self.top_hessian_index == self.beta
            and self.top_hessian_nullity == 0
            and self.top_sign_changes == self.num_edges
        )


def bipartite_check(op: SchrodingerOperator, seed: int = 0, trials: int = 5) -> BipartiteReport:
    """Verify the sign-flip conjugation and the top level's Morse data."""
    g = op.graph
    color = two_coloring(g)
    u = np.diag(color.astype(float))
    conjugate = build_operator(g, -u @ op.matrix @ u)  # stays in the valid class

    rng = np.random.default_rng(seed)
    mirrored = True
    for _ in range(trials):
        field = MagneticField(OneForm(g, rng.uniform(-np.pi, np.pi, g.num_edges)))
        w = hermitian_eigenvalues(magnetic_operator(op, field))
        w_conj = hermitian_eigenvalues(magnetic_operator(conjugate, field))
        if np.max(np.abs(w + w_conj[::-1])) > 1e-10:
            mirrored = False

    top = g.num_vertices
    hessian = flux_hessian(op, top)
    tol = HESSIAN_TOL_FACTOR * (1.0 + np.max(np.abs(hessian), initial=0.0))
    index, nullity = morse_index(hessian, tol)

    ground = eig_symmetric(conjugate.matrix)[0]
    phi1 = np.real(ground.vector)
    phi1 = phi1 * np.sign(phi1[np.argmax(np.abs(phi1))])  # everywhere positive
    top_vec = color * phi1
    nu_top = sign_changes(op, top_vec)

    return BipartiteReport(
        coloring=color,
        beta=g.beta,
        num_edges=g.num_edges,
        spectra_mirrored=mirrored,
        top_hessian_index=index,
        top_hessian_nullity=nullity,
        top_sign_changes=nu_top,
        euler_identity=(g.num_vertices - 1) + g.beta == g.num_edges,
    )


@dataclass
class DeterminantReport:
    n: int
    sign_ok: bool  # (-1)^(n-1) times the product of the other eigenvalues > 0
    det_index: int
    det_nullity: int
    eigenvalue_index: int
    eigenvalue_nullity: int
    factor_agreement: float  # worst relative error of det/lambda_n vs product

    @property
    def indices_agree(self) -> bool:
        return self.det_index == self.eigenvalue_index


def determinant_index_check(
    op: SchrodingerOperator, n: int, step: float = 1e-3, eigs=None
) -> DeterminantReport:
    """Compare the flux Morse index of the signed determinant with the
    eigenvalue's, after shifting the working eigenvalue to zero."""
    if eigs is None:
        eigs = eig_symmetric(op.matrix)
    hyp = check_hypotheses(op, n, eigs=eigs)
    if not hyp.ok:
        raise HypothesesViolated(
            f"eigenvalue {n}: simple={hyp.simple} nonvanishing={hyp.nonvanishing}"
        )
    shifted = shift_diagonal(op, eigs[n - 1].value)
    shifted_values = np.array([p.value for p in eigs]) - eigs[n - 1].value
    others = np.delete(shifted_values, n - 1)
    sign_factor = 1.0 if (n - 1) % 2 == 0 else -1.0
    product = float(np.prod(others))
    sign_ok = sign_factor * product > 0.0

    g = op.graph

    def signed_det(theta: np.ndarray) -> float:
        angles = np.zeros(g.num_edges)
        angles[g.chords] = theta
        field = MagneticField(OneForm(g, angles))
        values = hermitian_eigenvalues(magnetic_operator(shifted, field))
        return sign_factor * float(np.prod(values))

    det_hessian = fd_hessian_of(signed_det, g.beta, step)
    det_tol = HESSIAN_TOL_FACTOR * (1.0 + np.max(np.abs(det_hessian), initial=0.0))
    det_index, det_nullity = morse_index(det_hessian, det_tol)

    lam_hessian = flux_hessian(shifted, n, step=step)
    lam_tol = HESSIAN_TOL_FACTOR * (1.0 + np.max(np.abs(lam_hessian), initial=0.0))
    lam_index, lam_nullity = morse_index(lam_hessian, lam_tol)

    # the determinant factors through the eigenvalue: at each stencil point
    # det / lambda_n equals the product of the other eigenvalues there, and
    # the ratio stays continuous through lambda_n(0) = 0
    worst = 0.0
    for j in range(g.beta):
        for direction in (step, -step):
            theta = np.zeros(g.beta)
            theta[j] = direction
            angles = np.zeros(g.num_edges)
            angles[g.chords] = theta
            field = MagneticField(OneForm(g, angles))
            values = hermitian_eigenvalues(magnetic_operator(shifted, field))
            det_val = float(np.prod(values))
            lam_val = float(values[n - 1])
            ratio = det_val / lam_val
            others_here = float(np.prod(np.delete(values, n - 1)))
            worst = max(
                worst, abs(ratio - others_here) / (1.0 + abs(others_here))
            )

    return DeterminantReport(
        n=n,
        sign_ok=sign_ok,
        det_index=det_index,
        det_nullity=det_nullity,
        eigenvalue_index=lam_index,
        eigenvalue_nullity=lam_nullity,
        factor_agreement=worst,
    )
