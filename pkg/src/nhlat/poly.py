"""Univariate complex polynomials, Chebyshev families, resultants and roots.

Coefficients are stored lowest-degree first.  The resultant is the exact
Sylvester determinant with partial pivoting; past degree 25 it falls back
to evaluation over the companion-matrix roots, where the determinant's
conditioning gives out.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .errors import DegenerateInput, NotConverged, UnsupportedIndex

DROP_TOL = 1e-13          # relative trailing-coefficient drop tolerance
RESULTANT_DET_MAX_DEG = 25
NEWTON_STEPS = 5


class ChebKind(Enum):
    """The four Chebyshev families T, U, V, W."""

    First = "T"
    Second = "U"
    Third = "V"
    Fourth = "W"


# seeds (P_0, P_1) of the shared recurrence P_k = 2x P_{k-1} - P_{k-2}
_CHEB_SEEDS = {
    ChebKind.First: ((1.0,), (0.0, 1.0)),
    ChebKind.Second: ((1.0,), (0.0, 2.0)),
    ChebKind.Third: ((1.0,), (-1.0, 2.0)),
    ChebKind.Fourth: ((1.0,), (1.0, 2.0)),
}


def _trim(coeffs):
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        return np.zeros(1, dtype=complex)
    keep = np.nonzero(np.abs(c) > DROP_TOL * scale)[0]
    return c[: keep[-1] + 1].copy() if keep.size else np.zeros(1, dtype=complex)


@dataclass(frozen=True)
class ComplexPoly:
    """Dense univariate polynomial over complex scalars, lowest degree first."""

    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(1, dtype=complex))

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return self.degree == 0 and self.coeffs[0] == 0.0

    def __call__(self, x):
        out = np.zeros_like(np.asarray(x, dtype=complex))
        for c in self.coeffs[::-1]:
            out = out * x + c
        return out if out.ndim else complex(out)

    def deriv(self):
        if self.degree == 0:
            return ComplexPoly(np.zeros(1))
        return ComplexPoly(self.coeffs[1:] * np.arange(1, self.degree + 1))

    def monic(self):
        return ComplexPoly(self.coeffs / self.coeffs[-1])

    def __mul__(self, other):
        if isinstance(other, ComplexPoly):
            return ComplexPoly(np.convolve(self.coeffs, other.coeffs))
        return ComplexPoly(self.coeffs * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, ComplexPoly):
            other = ComplexPoly([other])
        k = max(len(self.coeffs), len(other.coeffs))
        c = np.zeros(k, dtype=complex)
        c[: len(self.coeffs)] += self.coeffs
        c[: len(other.coeffs)] += other.coeffs
        return ComplexPoly(c)

    def __sub__(self, other):
        if not isinstance(other, ComplexPoly):
            other = ComplexPoly([other])
        return self + (-1.0) * other


def cheb_eval(kind, n, x):
    """Evaluate a Chebyshev polynomial by forward recurrence.

    The recurrence is used even for real |x| <= 1 so complex arguments
    never touch arccos/arccosh branch cuts.  The Second kind admits
    n = -1 (value 0); all other kinds require n >= 0.
    """
    nmin = -1 if kind == ChebKind.Second else 0
    if n < nmin:
        raise UnsupportedIndex(f"{kind.name} kind needs n >= {nmin}, got {n}")
    if kind == ChebKind.Second and n == -1:
        return 0.0 + 0.0j
    x = complex(x)
    p0 = 1.0 + 0.0j
    if n == 0:
        return p0
    seed1 = _CHEB_SEEDS[kind][1]
    p1 = seed1[0] + seed1[1] * x
    for _ in range(n - 1):
        p0, p1 = p1, 2.0 * x * p1 - p0
    return p1


def cheb_as_poly(kind, n):
    """Coefficient form of a Chebyshev polynomial of degree n >= 0."""
    if n < 0:
        raise UnsupportedIndex(f"need n >= 0, got {n}")
    p0 = np.array(_CHEB_SEEDS[kind][0], dtype=complex)
    if n == 0:
        return ComplexPoly(p0)
    p1 = np.array(_CHEB_SEEDS[kind][1], dtype=complex)
    for _ in range(n - 1):
        nxt = np.zeros(len(p1) + 1, dtype=complex)
        nxt[1:] = 2.0 * p1
        nxt[: len(p0)] -= p0
        p0, p1 = p1, nxt
    return ComplexPoly(p1)


def resultant(f, g):
    """Resultant of two polynomials via the Sylvester determinant.

    Degrees above RESULTANT_DET_MAX_DEG use lc(f)^deg(g) * prod g(roots(f))
    instead; the determinant's conditioning degrades there.
    """
    if f.degree < 1 or g.degree < 1 or f.is_zero or g.is_zero:
        raise DegenerateInput("resultant needs two nonconstant polynomials")
    if max(f.degree, g.degree) > RESULTANT_DET_MAX_DEG:
        r = roots(f, tol=1e-9)
        return complex(f.coeffs[-1] ** g.degree * np.prod([g(x) for x in r]))
    return complex(kernels.sylvester_resultant(f.coeffs, g.coeffs))


def discriminant(f):
    """Discriminant: (-1)^{d(d-1)/2} Res(f, f') / lc(f)."""
    d = f.degree
    if d < 2:
        raise DegenerateInput("discriminant needs degree >= 2")
    res = resultant(f, f.deriv())
    return complex((-1.0) ** (d * (d - 1) // 2) * res / f.coeffs[-1])


def _eval_scale(coeffs, r):
    """Magnitude bound of the evaluation, used as backward-error scale."""
    powers = np.maximum(1.0, abs(r)) ** np.arange(len(coeffs))
    return float(np.sum(np.abs(coeffs) * powers))


def roots(f, tol=1e-9):
    """All roots (with multiplicity) via companion-matrix eigenvalues.

    LAPACK balances the companion matrix internally; each root then gets
    up to NEWTON_STEPS Newton corrections, kept only while improving.
    Raises NotConverged if any residual stays above tol * coefficient scale.
    """
    if f.degree < 1 or f.is_zero:
        raise DegenerateInput("roots needs degree >= 1")
    raw = np.roots(f.coeffs[::-1])
    df = f.deriv()
    polished = []
    for r in raw:
        val = f(r)
        for _ in range(NEWTON_STEPS):
            dval = df(r)
            if dval == 0.0:
                break
            step = r - val / dval
            sval = f(step)
            if abs(sval) >= abs(val):
                break
            r, val = step, sval
        polished.append(r)
        if abs(val) > tol * _eval_scale(f.coeffs, r):
            raise NotConverged(f"root residual {abs(val):.3e} above tolerance at {r}")
    return np.array(polished)
