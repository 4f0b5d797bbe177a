"""Sign changes, nodal domains, and the nodal defect of an eigenvector."""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, HypothesesViolated, VanishingVertex
from .graphs import Graph
from .operators import SchrodingerOperator
from .spectral import VANISH_FACTOR, check_hypotheses, eig_symmetric


@dataclass
class NodalReport:
    n: int
    nu: int  # edges where the eigenvector changes sign
    mu: int  # connected components after deleting those edges
    beta: int
    defect: int  # nu - (n - 1)
    nu_in_bounds: bool  # n - 1 <= nu <= n - 1 + beta
    mu_in_bounds: bool  # n - beta <= mu <= n

    @property
    def bounds_ok(self) -> bool:
        return self.nu_in_bounds and self.mu_in_bounds


def _checked_signs(phi: np.ndarray, num_vertices: int) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (num_vertices,):
        raise DimensionMismatch(
            f"expected {num_vertices} vertex values, got shape {phi.shape}"
        )
    amax = np.max(np.abs(phi))
    small = np.abs(phi) <= VANISH_FACTOR * amax
    if amax == 0.0 or np.any(small):
        vertex = int(np.argmax(small)) if amax else 0
        raise VanishingVertex(f"vector vanishes at vertex {vertex}")
    return np.sign(phi)


def sign_changes(op: SchrodingerOperator, phi, signature=None) -> int:
    """Count edges with sign * phi(x) * phi(y) < 0.

    ``signature`` is an optional +-1 per edge generalizing the plain count
    to sign-decorated couplings; it defaults to all +1.
    """
    g = op.graph
    signs = _checked_signs(phi, g.num_vertices)
    if signature is None:
        signature = np.ones(g.num_edges)
    else:
        signature = np.asarray(signature, dtype=float)
        if signature.shape != (g.num_edges,):
            raise DimensionMismatch(
                f"expected {g.num_edges} signature entries, "
                f"got shape {signature.shape}"
            )
        if not np.all(np.abs(signature) == 1.0):
            raise ValueError("signature entries must be +1 or -1")
    return int(np.sum(signature * signs[g._lo] * signs[g._hi] < 0))


def nodal_domains(g: Graph, phi) -> int:
    """Components of the graph after removing the sign-change edges."""
    signs = _checked_signs(phi, g.num_vertices)

    parent = list(range(g.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lo, hi in g.edges:
        if signs[lo] == signs[hi]:
            parent[find(lo)] = find(hi)
    return len({find(x) for x in range(g.num_vertices)})


def nodal_report(op: SchrodingerOperator, n: int, eigs=None) -> NodalReport:
    """Assemble counts, defect, and bound flags for eigenvalue n."""
    if eigs is None:
        eigs = eig_symmetric(op.matrix)
    hyp = check_hypotheses(op, n, eigs=eigs)
    if not hyp.ok:
        raise HypothesesViolated(
            f"eigenvalue {n}: simple={hyp.simple} nonvanishing={hyp.nonvanishing}"
            + (
                f" (vertex {hyp.vanishing_vertex})"
                if hyp.vanishing_vertex is not None
                else ""
            )
        )
    phi = np.real(eigs[n - 1].vector)
    nu = sign_changes(op, phi)
    mu = nodal_domains(op.graph, phi)
    beta = op.graph.beta
    return NodalReport(
        n=n,
        nu=nu,
        mu=mu,
        beta=beta,
        defect=nu - (n - 1),
        nu_in_bounds=bool(n - 1 <= nu <= n - 1 + beta),
        mu_in_bounds=bool(n - beta <= mu <= n),
    )
