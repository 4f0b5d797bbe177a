"""Dense eigensolvers with normalization, phase fixing, and gap reporting.

Real symmetric matrices go straight to the cyclic-Jacobi kernel.  Complex
Hermitian matrices are solved through the real embedding
``[[Re m, -Im m], [Im m, Re m]]`` whose spectrum doubles every eigenvalue;
the doubled values are paired greedily and complex eigenvectors are
reassembled from the embedded ones.

Phase convention: let x0 be the smallest index whose component reaches
half the max modulus; the vector is rotated (or sign-flipped) so that the
x0 component is real and positive.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import (
    EmbeddingPairingFailure,
    NoConvergence,
    NotSymmetric,
)
from .operators import SchrodingerOperator

GAP_FACTOR = 1e-8  # relative gap below which an eigenvalue counts as degenerate
VANISH_FACTOR = 1e-8  # relative size below which a component counts as zero
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass
class Eigenpair:
    n: int  # 1-based position in the ascending spectrum
    value: float
    vector: np.ndarray  # unit norm, phase fixed
    simple: bool
    gap: float  # distance to the nearest neighboring eigenvalue


@dataclass
class HypothesisReport:
    """Simplicity and nonvanishing status of one eigenpair."""

    n: int
    eigenvalue: float
    simple: bool
    nonvanishing: bool
    gap: float
    min_component: float  # min |phi(x)| / max |phi(x)|
    vanishing_vertex: int | None

    @property
    def ok(self) -> bool:
        return self.simple and self.nonvanishing


def _phase_fix(vec: np.ndarray) -> np.ndarray:
    amax = np.max(np.abs(vec))
    if amax == 0.0:
        return vec
    x0 = int(np.argmax(np.abs(vec) >= 0.5 * amax))
    if np.iscomplexobj(vec):
        pivot = vec[x0]
        vec = vec * (np.conj(pivot) / abs(pivot))
        # drop the now-zero imaginary part at x0 exactly
        vec[x0] = vec[x0].real
    elif vec[x0] < 0.0:
        vec = -vec
    return vec


def _make_pairs(values: np.ndarray, vectors: list, gap_threshold: float) -> list:
    count = len(values)
    pairs = []
    for i in range(count):
        gap = np.inf
        if i > 0:
            gap = values[i] - values[i - 1]
        if i + 1 < count:
            gap = min(gap, values[i + 1] - values[i])
        pairs.append(
            Eigenpair(
                n=i + 1,
                value=float(values[i]),
                vector=vectors[i],
                simple=bool(gap > gap_threshold),
                gap=float(gap),
            )
        )
    return pairs


def eig_symmetric(m, gap_threshold: float | None = None) -> list:
    """Full ascending spectrum of a real symmetric matrix."""
    m = np.asarray(m, dtype=float)
    scale = 1.0 + (np.max(np.abs(m)) if m.size else 0.0)
    if m.size and np.max(np.abs(m - m.T)) > 1e-10 * scale:
        raise NotSymmetric("input is not symmetric to 1e-10")
    w, v, converged = backend.jacobi_eigh(
        m, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS, vectors=True
    )
    if not converged:
        raise NoConvergence(f"Jacobi sweeps exceeded {JACOBI_MAX_SWEEPS}")
    if gap_threshold is None:
        norm = max(np.abs(w), default=0.0)
        gap_threshold = GAP_FACTOR * (1.0 + norm)
    vectors = []
    for i in range(len(w)):
        col = v[:, i]
        col = col / np.linalg.norm(col)
        vectors.append(_phase_fix(col))
    return _make_pairs(w, vectors, gap_threshold)


def _embed(m: np.ndarray) -> np.ndarray:
    re, im = m.real, m.imag
    return np.block([[re, -im], [im, re]])


def _paired_values(w: np.ndarray, scale: float) -> np.ndarray:
    """Collapse the doubled embedded spectrum, averaging each pair."""
    if len(w) % 2:
        raise EmbeddingPairingFailure("odd embedded spectrum size")
    tol = 1e-8 * (1.0 + scale)
    even, odd = w[0::2], w[1::2]
    if np.max(np.abs(even - odd), initial=0.0) > tol:
        raise EmbeddingPairingFailure(
            "doubled eigenvalues do not match within tolerance"
        )
    return 0.5 * (even + odd)


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending eigenvalues of a complex Hermitian matrix (values only).

    Fast path used by the finite-difference stencils; skips eigenvector
    accumulation entirely.
    """
    m = np.asarray(m, dtype=complex)
    w, _, converged = backend.jacobi_eigh(
        _embed(m), tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS, vectors=False
    )
    if not converged:
        raise NoConvergence(f"Jacobi sweeps exceeded {JACOBI_MAX_SWEEPS}")
    scale = max(np.abs(w), default=0.0)
    return _paired_values(w, scale)


def eig_hermitian(m, gap_threshold: float | None = None) -> list:
    """Full ascending spectrum of a complex Hermitian matrix.

    Eigenvectors are reassembled from the embedded ones as top + i*bottom;
    within a group of numerically equal eigenvalues the reassembled
    candidates are Gram-Schmidt filtered, because both embedded partners
    of one pair collapse to the same complex direction.
    """
    m = np.asarray(m, dtype=complex)
    scale = 1.0 + (np.max(np.abs(m)) if m.size else 0.0)
    if m.size and np.max(np.abs(m - m.conj().T)) > 1e-10 * scale:
        raise NotSymmetric("input is not Hermitian to 1e-10")
    n = m.shape[0]
    w, v, converged = backend.jacobi_eigh(
        _embed(m), tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS, vectors=True
    )
    if not converged:
        raise NoConvergence(f"Jacobi sweeps exceeded {JACOBI_MAX_SWEEPS}")
    norm = max(np.abs(w), default=0.0)
    values = _paired_values(w, norm)
    if gap_threshold is None:
        gap_threshold = GAP_FACTOR * (1.0 + norm)

    # group deduped positions whose values cannot be told apart
    pair_tol = 1e-8 * (1.0 + norm)
    groups = []
    start = 0
    for i in range(1, n + 1):
        if i == n or values[i] - values[i - 1] > pair_tol:
            groups.append((start, i))
            start = i

    vectors: list = [None] * n
    for lo, hi in groups:
        want = hi - lo
        accepted = []
        for k in range(2 * lo, 2 * hi):
            if len(accepted) == want:
                break
            z = v[:n, k] + 1j * v[n:, k]
            for u in accepted:
                z = z - np.vdot(u, z) * u
            nz = np.linalg.norm(z)
            if nz > 0.1:
                accepted.append(z / nz)
        if len(accepted) != want:
            raise EmbeddingPairingFailure(
                f"could not reassemble {want} independent eigenvectors "
                f"for the eigenvalue group near {values[lo]}"
            )
        for offset, z in enumerate(accepted):
            vectors[lo + offset] = _phase_fix(z)

    return _make_pairs(values, vectors, gap_threshold)


def check_hypotheses(
    op: SchrodingerOperator,
    n: int,
    gap_threshold: float | None = None,
    vanish_threshold: float = VANISH_FACTOR,
    eigs: list | None = None,
) -> HypothesisReport:
    """Report whether eigenvalue n is simple and its eigenvector nowhere zero."""
    if not 1 <= n <= op.graph.num_vertices:
        raise IndexError(f"eigenvalue index {n} out of range")
    pairs = eigs if eigs is not None else eig_symmetric(op.matrix, gap_threshold)
    pair = pairs[n - 1]
    phi = np.real(pair.vector)
    amax = np.max(np.abs(phi))
    rel = np.abs(phi) / amax
    worst = int(np.argmin(rel))
    nonvanishing = bool(rel[worst] > vanish_threshold)
    return HypothesisReport(
        n=n,
        eigenvalue=pair.value,
        simple=pair.simple,
        nonvanishing=nonvanishing,
        gap=pair.gap,
        min_component=float(rel[worst]),
        vanishing_vertex=None if nonvanishing else worst,
    )
