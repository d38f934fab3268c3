"""Pure-NumPy reference implementations of the hot numeric kernels.

The compiled extension ``_kernels_cy`` exposes the same callables; either
backend can serve :mod:`nhlat.kernels`.  Everything here is expressed with
vectorised NumPy so the fallback stays usable for full analyses.
"""

import numpy as np

BACKEND = "python"


def lu_det(a):
    """Determinant of a square complex matrix via partial-pivot elimination."""
    a = np.array(a, dtype=complex)
    m = a.shape[0]
    det = 1.0 + 0.0j
    for k in range(m - 1):
        p = k + np.argmax(np.abs(a[k:, k]))
        if p != k:
            a[[k, p]] = a[[p, k]]
            det = -det
        piv = a[k, k]
        if piv == 0.0:
            return 0.0 + 0.0j
        det *= piv
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k] / piv, a[k, k + 1:])
    return det * a[m - 1, m - 1]


def theta_phi(alpha, beta, z, lam):
    """Leading/trailing continuants of ``lam*I - H`` for an open chain.

    Returns ``(theta, phi)`` with ``theta[i+1] = theta_i`` for
    ``i = -1..n`` and ``phi[i-1] = phi_i`` for ``i = 1..n+2``.
    """
    n = len(z)
    theta = np.empty(n + 2, dtype=complex)
    phi = np.empty(n + 2, dtype=complex)
    theta[0] = 0.0
    theta[1] = 1.0
    for i in range(1, n + 1):
        hop = alpha[i - 2] * beta[i - 2] if i >= 2 else 0.0
        theta[i + 1] = (lam - z[i - 1]) * theta[i] - hop * theta[i - 1]
    phi[n + 1] = 0.0
    phi[n] = 1.0
    for i in range(n, 0, -1):
        hop = alpha[i - 1] * beta[i - 1] if i <= n - 1 else 0.0
        phi[i - 1] = (lam - z[i - 1]) * phi[i] - hop * phi[i + 1]
    return theta, phi


def charpoly_dets(alpha, beta, z, lams):
    """``det(lam*I - H)`` of the corner-perturbed family at each ``lam``.

    Vectorised over ``lams``; corners enter through the two cyclic
    permutation terms and the double-corner middle continuant.
    """
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    z = np.asarray(z, dtype=complex)
    lams = np.asarray(lams, dtype=complex)
    n = len(z)
    ca, cb = alpha[n - 1], beta[n - 1]
    if n == 2:
        # super/sub entries and corners overlap at n = 2
        return (lams - z[0]) * (lams - z[1]) - (beta[0] + ca) * (alpha[0] + cb)
    tm1 = np.zeros_like(lams)
    t0 = np.ones_like(lams)
    for i in range(1, n + 1):
        hop = alpha[i - 2] * beta[i - 2] if i >= 2 else 0.0
        tm1, t0 = t0, (lams - z[i - 1]) * t0 - hop * tm1
    dets = t0
    if ca != 0.0 or cb != 0.0:
        # continuant of the interior block, sites 2..n-1
        mm1 = np.zeros_like(lams)
        m0 = np.ones_like(lams)
        for i in range(2, n):
            hop = alpha[i - 2] * beta[i - 2] if i >= 3 else 0.0
            mm1, m0 = m0, (lams - z[i - 1]) * m0 - hop * mm1
        dets = dets - ca * cb * m0 - ca * np.prod(alpha[: n - 1]) - cb * np.prod(beta[: n - 1])
    return dets


def dense_charpoly_dets(h, lams):
    """``det(lam*I - H)`` of a general matrix at each ``lam`` (LU per node)."""
    h = np.asarray(h, dtype=complex)
    lams = np.asarray(lams, dtype=complex)
    n = h.shape[0]
    eye = np.eye(n)
    return np.array([lu_det(lam * eye - h) for lam in lams])


def sylvester_resultant(f, g):
    """Resultant of two polynomials (coefficients lowest-degree first)."""
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    df, dg = len(f) - 1, len(g) - 1
    s = np.zeros((df + dg, df + dg), dtype=complex)
    fr, gr = f[::-1], g[::-1]
    for i in range(dg):
        s[i, i:i + df + 1] = fr
    for i in range(df):
        s[dg + i, i:i + dg + 1] = gr
    return lu_det(s)


def batch_disc(coeffs):
    """Discriminants of a batch of same-degree polynomials.

    ``coeffs`` has shape ``(m, d+1)``, lowest-degree first.  Uses one
    stacked LAPACK determinant over the Sylvester matrices.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    m, width = coeffs.shape
    d = width - 1
    deriv = coeffs[:, 1:] * np.arange(1, d + 1)
    size = 2 * d - 1
    s = np.zeros((m, size, size), dtype=complex)
    fr = coeffs[:, ::-1]
    gr = deriv[:, ::-1]
    for i in range(d - 1):
        s[:, i, i:i + d + 1] = fr
    for i in range(d):
        s[:, d - 1 + i, i:i + d] = gr
    res = np.linalg.det(s)
    sign = (-1.0) ** (d * (d - 1) // 2)
    return sign * res / coeffs[:, -1]
