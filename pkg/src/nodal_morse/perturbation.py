"""First and second derivatives of a simple eigenvalue along a matrix curve.

For a C^2 curve A(t) of Hermitian matrices with a simple eigenvalue at
t = 0 and unit eigenvector phi0:

    lam'(0)  = <A'(0) phi0, phi0>
    lam''(0) = <A''(0) phi0, phi0> + 2 <phi'(0), A'(0) phi0>,

valid when lam'(0) = 0, where phi'(0) solves
(A(0) - lam(0)) phi'(0) = -A'(0) phi0.  The solver fixes the free
component of phi'(0) along phi0 to zero, which does not affect the value.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NotCritical, NotEigenvector, SolveFailure
from .spectral import eig_hermitian

RESIDUAL_TOL = 1e-8
CRITICAL_TOL = 1e-8
GAP_REL_TOL = 1e-6


@dataclass
class MatrixCurve:
    """Hermitian curve with caller-supplied derivatives at t = 0."""

    value: Callable[[float], np.ndarray]
    derivative: np.ndarray  # A'(0)
    second_derivative: np.ndarray  # A''(0)


def _checked_eigvec(a0: np.ndarray, phi0: np.ndarray) -> float:
    phi0 = np.asarray(phi0)
    scale = 1.0 + np.max(np.abs(a0))
    lam0 = float(np.real(np.vdot(phi0, a0 @ phi0)))
    residual = np.linalg.norm(a0 @ phi0 - lam0 * phi0)
    if residual > RESIDUAL_TOL * scale:
        raise NotEigenvector(f"residual {residual:.3e} exceeds {RESIDUAL_TOL:.0e}*scale")
    return lam0


def eigenvalue_first_derivative(curve: MatrixCurve, phi0) -> float:
    """Directional derivative of the tracked eigenvalue at t = 0."""
    phi0 = np.asarray(phi0, dtype=complex)
    phi0 = phi0 / np.linalg.norm(phi0)
    _checked_eigvec(np.asarray(curve.value(0.0), dtype=complex), phi0)
    val = complex(np.vdot(phi0, np.asarray(curve.derivative, dtype=complex) @ phi0))
    if abs(val.imag) >= 1e-12 * (1.0 + abs(val.real)):
        raise ValueError(f"first derivative has imaginary part {val.imag:.3e}")
    return val.real


def eigenvalue_second_derivative(curve: MatrixCurve, phi0) -> float:
    """Second derivative at a critical point of the tracked eigenvalue."""
    phi0 = np.asarray(phi0, dtype=complex)
    phi0 = phi0 / np.linalg.norm(phi0)
    a0 = np.asarray(curve.value(0.0), dtype=complex)
    a1 = np.asarray(curve.derivative, dtype=complex)
    a2 = np.asarray(curve.second_derivative, dtype=complex)
    lam0 = _checked_eigvec(a0, phi0)
    first = float(np.real(np.vdot(phi0, a1 @ phi0)))
    if abs(first) > CRITICAL_TOL:
        raise NotCritical(f"first derivative is {first:.3e}, not zero")

    rhs = -(a1 @ phi0)
    if np.linalg.norm(rhs) == 0.0:
        # the correction term vanishes identically
        val = complex(np.vdot(phi0, a2 @ phi0))
        return val.real

    pairs = eig_hermitian(a0)
    values = np.array([p.value for p in pairs])
    scale = 1.0 + np.max(np.abs(values))
    n0 = int(np.argmin(np.abs(values - lam0)))
    gaps = np.abs(values - lam0)
    gaps[n0] = np.inf
    if np.min(gaps) < GAP_REL_TOL * scale:
        raise SolveFailure("eigenvalue too close to degenerate to invert")

    phi_dot = np.zeros_like(phi0)
    for j, pair in enumerate(pairs):
        if j == n0:
            continue  # component along phi0 fixed to zero
        phi_dot += (np.vdot(pair.vector, rhs) / (pair.value - lam0)) * pair.vector

    val = complex(np.vdot(phi0, a2 @ phi0)) + 2.0 * complex(np.vdot(phi_dot, a1 @ phi0))
    if abs(val.imag) >= 1e-10 * (1.0 + abs(val.real)):
        raise ValueError(f"second derivative has imaginary part {val.imag:.3e}")
    return val.real
