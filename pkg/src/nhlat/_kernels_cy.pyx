# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot numeric kernels.

Same call signatures as ``_kernels_py``; selected at import time by
``nhlat.kernels`` when the extension has been built.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


cdef double complex _lu_det_inplace(double complex[:, ::1] a) nogil:
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t i, j, k, p
    cdef double best, mag
    cdef double complex det = 1.0, piv, factor, tmp
    for k in range(m - 1):
        p = k
        best = a[k, k].real * a[k, k].real + a[k, k].imag * a[k, k].imag
        for i in range(k + 1, m):
            mag = a[i, k].real * a[i, k].real + a[i, k].imag * a[i, k].imag
            if mag > best:
                best = mag
                p = i
        if p != k:
            for j in range(k, m):
                tmp = a[k, j]
                a[k, j] = a[p, j]
                a[p, j] = tmp
            det = -det
        piv = a[k, k]
        if piv == 0.0:
            return 0.0
        det = det * piv
        for i in range(k + 1, m):
            factor = a[i, k] / piv
            for j in range(k + 1, m):
                a[i, j] = a[i, j] - factor * a[k, j]
    return det * a[m - 1, m - 1]


def lu_det(a):
    """Determinant of a square complex matrix via partial-pivot elimination."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] work = np.array(a, dtype=np.complex128, order="C")
    return complex(_lu_det_inplace(work))


def theta_phi(alpha, beta, z, lam):
    """Leading/trailing continuants; see the python backend for the layout."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] al = np.ascontiguousarray(alpha, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] be = np.ascontiguousarray(beta, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t n = zz.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] theta = np.empty(n + 2, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] phi = np.empty(n + 2, dtype=np.complex128)
    cdef double complex lc = lam
    cdef double complex hop
    cdef Py_ssize_t i
    theta[0] = 0.0
    theta[1] = 1.0
    for i in range(1, n + 1):
        hop = al[i - 2] * be[i - 2] if i >= 2 else 0.0
        theta[i + 1] = (lc - zz[i - 1]) * theta[i] - hop * theta[i - 1]
    phi[n + 1] = 0.0
    phi[n] = 1.0
    for i in range(n, 0, -1):
        hop = al[i - 1] * be[i - 1] if i <= n - 1 else 0.0
        phi[i - 1] = (lc - zz[i - 1]) * phi[i] - hop * phi[i + 1]
    return theta, phi


def charpoly_dets(alpha, beta, z, lams):
    """det(lam*I - H) of the corner-perturbed family at each lam."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] al = np.ascontiguousarray(alpha, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] be = np.ascontiguousarray(beta, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] zz = np.ascontiguousarray(z, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ls = np.ascontiguousarray(lams, dtype=np.complex128)
    cdef Py_ssize_t n = zz.shape[0]
    cdef Py_ssize_t nl = ls.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] dets = np.empty(nl, dtype=np.complex128)
    cdef double complex ca = al[n - 1], cb = be[n - 1]
    cdef double complex lam, tm1, t0, tnew, mm1, m0, hop, pa, pb
    cdef Py_ssize_t i, k
    cdef bint corners = (ca != 0.0) or (cb != 0.0)
    if n == 2:
        for k in range(nl):
            lam = ls[k]
            dets[k] = (lam - zz[0]) * (lam - zz[1]) - (be[0] + ca) * (al[0] + cb)
        return dets
    pa = 1.0
    pb = 1.0
    if corners:
        for i in range(n - 1):
            pa = pa * al[i]
            pb = pb * be[i]
    for k in range(nl):
        lam = ls[k]
        tm1 = 0.0
        t0 = 1.0
        for i in range(1, n + 1):
            hop = al[i - 2] * be[i - 2] if i >= 2 else 0.0
            tnew = (lam - zz[i - 1]) * t0 - hop * tm1
            tm1 = t0
            t0 = tnew
        if corners:
            mm1 = 0.0
            m0 = 1.0
            for i in range(2, n):
                hop = al[i - 2] * be[i - 2] if i >= 3 else 0.0
                tnew = (lam - zz[i - 1]) * m0 - hop * mm1
                mm1 = m0
                m0 = tnew
            t0 = t0 - ca * cb * m0 - ca * pa - cb * pb
        dets[k] = t0
    return dets


def dense_charpoly_dets(h, lams):
    """det(lam*I - H) of a general matrix at each lam (LU per node)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] hh = np.ascontiguousarray(h, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ls = np.ascontiguousarray(lams, dtype=np.complex128)
    cdef Py_ssize_t n = hh.shape[0]
    cdef Py_ssize_t nl = ls.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] dets = np.empty(nl, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] work = np.empty((n, n), dtype=np.complex128)
    cdef Py_ssize_t i, j, k
    for k in range(nl):
        for i in range(n):
            for j in range(n):
                work[i, j] = -hh[i, j]
            work[i, i] = work[i, i] + ls[k]
        dets[k] = _lu_det_inplace(work)
    return dets


def sylvester_resultant(f, g):
    """Resultant of two polynomials (coefficients lowest-degree first)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ff = np.ascontiguousarray(f, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] gg = np.ascontiguousarray(g, dtype=np.complex128)
    cdef Py_ssize_t df = ff.shape[0] - 1, dg = gg.shape[0] - 1
    cdef Py_ssize_t size = df + dg
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] s = np.zeros((size, size), dtype=np.complex128)
    cdef Py_ssize_t i, j
    for i in range(dg):
        for j in range(df + 1):
            s[i, i + j] = ff[df - j]
    for i in range(df):
        for j in range(dg + 1):
            s[dg + i, i + j] = gg[dg - j]
    return complex(_lu_det_inplace(s))


def batch_disc(coeffs):
    """Discriminants of a batch of same-degree polynomials (lowest first)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] cc = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t m = cc.shape[0]
    cdef Py_ssize_t d = cc.shape[1] - 1
    cdef Py_ssize_t size = 2 * d - 1
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(m, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] s = np.empty((size, size), dtype=np.complex128)
    cdef double sign = 1.0 if (d * (d - 1) // 2) % 2 == 0 else -1.0
    cdef Py_ssize_t p, i, j
    cdef double complex res
    for p in range(m):
        for i in range(size):
            for j in range(size):
                s[i, j] = 0.0
        for i in range(d - 1):
            for j in range(d + 1):
                s[i, i + j] = cc[p, d - j]
        for i in range(d):
            for j in range(d):
                s[d - 1 + i, i + j] = (d - j) * cc[p, d - j]
        res = _lu_det_inplace(s)
        out[p] = sign * res / cc[p, d]
    return out
