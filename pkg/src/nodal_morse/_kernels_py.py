"""Pure-NumPy kernels.

Same call signatures and semantics as the compiled module
``nodal_morse._kernels_cy``; one of the two is picked in
:mod:`nodal_morse.backend`.  Rotations here are vectorized row/column
updates, so the fallback is usable for tests and small problems but is
one to two orders of magnitude slower than the extension on the hot
paths (see ``benchmarks/bench_kernels.py``).
"""

import numpy as np


def jacobi_eigh(a, tol=1e-12, max_sweeps=100, vectors=True):
    """Cyclic-Jacobi eigendecomposition of a real symmetric matrix.

    Sweeps every strict upper-triangle pair in row order, rotating the
    (p, q) plane to annihilate ``a[p, q]``, until the off-diagonal
    Frobenius norm drops below ``tol`` times the Frobenius norm of the
    input.  Returns ``(values, vecs, converged)`` with eigenvalues
    ascending and eigenvectors as the columns of ``vecs`` (``None`` when
    ``vectors`` is false).
    """
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    if n == 0:
        return np.empty(0), (np.empty((0, 0)) if vectors else None), True
    v = np.eye(n) if vectors else None
    target = tol * np.linalg.norm(a)
    skip = target / (n * n)
    converged = False
    for _ in range(max_sweeps):
        upper = a[np.triu_indices(n, 1)]
        if np.sqrt(2.0) * np.linalg.norm(upper) <= target:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # two-sided rotation: A <- J^T A J with J the (p,q) rotation
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                if vectors:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq
    else:
        converged = np.sqrt(2.0) * np.linalg.norm(a[np.triu_indices(n, 1)]) <= target
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    if vectors:
        v = v[:, order]
    return w, v, converged


def monodromy_rk4(q_samples, lambdas, h):
    """Fundamental 2x2 system of ``y'' = (q - lam) y`` across one period.

    ``q_samples`` holds the potential on the step grid interleaved with
    the step midpoints (length 2n+1 for n RK4 steps of size ``h``).
    Returns an array of shape (len(lambdas), 2, 2); row layout is
    ``[[y1, y2], [y1', y2']]`` evaluated at the end of the period, for
    the two solutions normalized to the identity at the start.
    """
    q = np.asarray(q_samples, dtype=np.float64)
    lam = np.atleast_1d(np.asarray(lambdas, dtype=np.float64))
    n = (q.shape[0] - 1) // 2
    nlam = lam.shape[0]
    m11 = np.ones(nlam)
    m12 = np.zeros(nlam)
    m21 = np.zeros(nlam)
    m22 = np.ones(nlam)
    half = 0.5 * h
    sixth = h / 6.0
    for k in range(n):
        qa = q[2 * k] - lam
        qm = q[2 * k + 1] - lam
        qb = q[2 * k + 2] - lam
        # derivative of (y, y') is (y', (q - lam) y)
        k1t1, k1t2 = m21, m22
        k1b1, k1b2 = qa * m11, qa * m12
        t11 = m11 + half * k1t1
        t12 = m12 + half * k1t2
        t21 = m21 + half * k1b1
        t22 = m22 + half * k1b2
        k2t1, k2t2 = t21, t22
        k2b1, k2b2 = qm * t11, qm * t12
        t11 = m11 + half * k2t1
        t12 = m12 + half * k2t2
        t21 = m21 + half * k2b1
        t22 = m22 + half * k2b2
        k3t1, k3t2 = t21, t22
        k3b1, k3b2 = qm * t11, qm * t12
        t11 = m11 + h * k3t1
        t12 = m12 + h * k3t2
        t21 = m21 + h * k3b1
        t22 = m22 + h * k3b2
        k4t1, k4t2 = t21, t22
        k4b1, k4b2 = qb * t11, qb * t12
        m11 = m11 + sixth * (k1t1 + 2.0 * (k2t1 + k3t1) + k4t1)
        m12 = m12 + sixth * (k1t2 + 2.0 * (k2t2 + k3t2) + k4t2)
        m21 = m21 + sixth * (k1b1 + 2.0 * (k2b1 + k3b1) + k4b1)
        m22 = m22 + sixth * (k1b2 + 2.0 * (k2b2 + k3b2) + k4b2)
    out = np.empty((nlam, 2, 2))
    out[:, 0, 0] = m11
    out[:, 0, 1] = m12
    out[:, 1, 0] = m21
    out[:, 1, 1] = m22
    return out
