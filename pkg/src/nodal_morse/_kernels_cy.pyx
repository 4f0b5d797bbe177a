# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: cyclic-Jacobi eigensolver and RK4 monodromy.

Twin of ``nodal_morse._kernels_py``; see that module for the contracts.
"""

import numpy as np

from libc.math cimport fabs, sqrt


def jacobi_eigh(a_in, double tol=1e-12, int max_sweeps=100, bint vectors=True):
    a_arr = np.array(a_in, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = a_arr.shape[0]
    if n == 0:
        return np.empty(0), (np.empty((0, 0)) if vectors else None), True
    v_arr = np.eye(n) if vectors else None
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] v = v_arr if vectors else a_arr
    cdef double fro = 0.0, off2
    cdef Py_ssize_t i, j, p, q, sweep
    cdef double apq, tau, t, c, s, tmp1, tmp2
    cdef double target, skip
    cdef bint converged = False

    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    fro = sqrt(fro)
    target = tol * fro
    skip = target / (n * n)

    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off2 += a[i, j] * a[i, j]
        if sqrt(2.0 * off2) <= target:
            converged = True
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if fabs(apq) <= skip:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    tmp1 = a[i, p]
                    tmp2 = a[i, q]
                    a[i, p] = c * tmp1 - s * tmp2
                    a[i, q] = s * tmp1 + c * tmp2
                for i in range(n):
                    tmp1 = a[p, i]
                    tmp2 = a[q, i]
                    a[p, i] = c * tmp1 - s * tmp2
                    a[q, i] = s * tmp1 + c * tmp2
                a[p, q] = 0.0
                a[q, p] = 0.0
                if vectors:
                    for i in range(n):
                        tmp1 = v[i, p]
                        tmp2 = v[i, q]
                        v[i, p] = c * tmp1 - s * tmp2
                        v[i, q] = s * tmp1 + c * tmp2

    w = np.diagonal(a_arr).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    if vectors:
        return w, v_arr[:, order], converged
    return w, None, converged


def monodromy_rk4(q_samples, lambdas, double h):
    q_arr = np.ascontiguousarray(q_samples, dtype=np.float64)
    lam_arr = np.atleast_1d(np.ascontiguousarray(lambdas, dtype=np.float64))
    cdef double[::1] q = q_arr
    cdef double[::1] lams = lam_arr
    cdef Py_ssize_t n = (q.shape[0] - 1) // 2
    cdef Py_ssize_t nlam = lams.shape[0]
    out_arr = np.empty((nlam, 2, 2))
    cdef double[:, :, ::1] out = out_arr
    cdef Py_ssize_t j, k
    cdef double lam, qa, qm, qb
    cdef double m11, m12, m21, m22
    cdef double k1t1, k1t2, k1b1, k1b2
    cdef double k2t1, k2t2, k2b1, k2b2
    cdef double k3t1, k3t2, k3b1, k3b2
    cdef double k4t1, k4t2, k4b1, k4b2
    cdef double t11, t12, t21, t22
    cdef double half = 0.5 * h, sixth = h / 6.0

    for j in range(nlam):
        lam = lams[j]
        m11 = 1.0
        m12 = 0.0
        m21 = 0.0
        m22 = 1.0
        for k in range(n):
            qa = q[2 * k] - lam
            qm = q[2 * k + 1] - lam
            qb = q[2 * k + 2] - lam
            k1t1 = m21
            k1t2 = m22
            k1b1 = qa * m11
            k1b2 = qa * m12
            t11 = m11 + half * k1t1
            t12 = m12 + half * k1t2
            t21 = m21 + half * k1b1
            t22 = m22 + half * k1b2
            k2t1 = t21
            k2t2 = t22
            k2b1 = qm * t11
            k2b2 = qm * t12
            t11 = m11 + half * k2t1
            t12 = m12 + half * k2t2
            t21 = m21 + half * k2b1
            t22 = m22 + half * k2b2
            k3t1 = t21
            k3t2 = t22
            k3b1 = qm * t11
            k3b2 = qm * t12
            t11 = m11 + h * k3t1
            t12 = m12 + h * k3t2
            t21 = m21 + h * k3b1
            t22 = m22 + h * k3b2
            k4t1 = t21
            k4t2 = t22
            k4b1 = qb * t11
            k4b2 = qb * t12
            m11 = m11 + sixth * (k1t1 + 2.0 * (k2t1 + k3t1) + k4t1)
            m12 = m12 + sixth * (k1t2 + 2.0 * (k2t2 + k3t2) + k4t2)
            m21 = m21 + sixth * (k1b1 + 2.0 * (k2b1 + k3b1) + k4b1)
            m22 = m22 + sixth * (k1b2 + 2.0 * (k2b2 + k3b2) + k4b2)
        out[j, 0, 0] = m11
        out[j, 0, 1] = m12
        out[j, 1, 0] = m21
        out[j, 1, 1] = m22
    return out_arr
