"""Corner-perturbed tridiagonal matrix families and their closed forms.

The family is H[i,j] = alpha_j d(i,j+1) + beta_i d(j,i+1) + z_i d(i,j)
plus corners alpha_n at (1,n) and beta_n at (n,1), all indices 1-based.
Open boundary conditions mean both corners vanish.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from . import kernels
from .errors import (BoundaryViolation, DimensionMismatch, IndexOutOfRange,
                     NotEigenvalue, NotIrreducible, PeriodicityViolation,
                     Singular)
from .poly import ChebKind, ComplexPoly, cheb_eval

_EPS = 1e-14


@dataclass(frozen=True)
class LatticeSpec:
    """The triple (alpha, beta, z) plus size n; alpha_n/beta_n are corners."""

    n: int
    alpha: np.ndarray
    beta: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        for name in ("alpha", "beta", "z"):
            v = np.atleast_1d(np.asarray(getattr(self, name), dtype=complex))
            if len(v) != self.n:
                raise DimensionMismatch(f"{name} has length {len(v)}, expected n={self.n}")
            object.__setattr__(self, name, v)
        if self.n < 2:
            raise DimensionMismatch("need n >= 2")

    @property
    def scale(self):
        return max(float(np.max(np.abs(v))) for v in (self.alpha, self.beta, self.z)) or 1.0

    @property
    def open_boundary(self):
        tol = _EPS * max(1.0, self.scale)
        return abs(self.alpha[-1]) <= tol and abs(self.beta[-1]) <= tol

    @property
    def irreducible(self):
        hop = np.concatenate([self.alpha[:-1], self.beta[:-1]])
        return bool(np.all(np.abs(hop) > _EPS * max(1.0, self.scale)))


def build_matrix(spec):
    """Dense matrix of the family; corners add onto (1,n) and (n,1)."""
    n = spec.n
    h = np.zeros((n, n), dtype=complex)
    for i in range(n):
        h[i, i] = spec.z[i]
    for j in range(n - 1):
        h[j + 1, j] = spec.alpha[j]
        h[j, j + 1] = spec.beta[j]
    h[0, n - 1] += spec.alpha[n - 1]
    h[n - 1, 0] += spec.beta[n - 1]
    return h


# ---------------------------------------------------------------- presets

@dataclass(frozen=True)
class UniformChain:
    """Open chain, uniform hopping t, defects z_m and z_mbar at m and n-m+1."""

    n: int
    m: int
    t: complex = 1.0
    z_m: complex = 0.0
    z_mbar: complex = 0.0

    def to_spec(self):
        if not 1 <= self.m <= self.n // 2:
            raise IndexOutOfRange(f"need 1 <= m <= n/2, got m={self.m}, n={self.n}")
        alpha = np.full(self.n, self.t, dtype=complex)
        alpha[-1] = 0.0
        z = np.zeros(self.n, dtype=complex)
        z[self.m - 1] = self.z_m
        z[self.n - self.m] = self.z_mbar
        return LatticeSpec(self.n, alpha, alpha.copy(), z)


@dataclass(frozen=True)
class NearestNeighbourDefect:
    """PT chain of even size with gain/loss Delta +- i*gamma at the centre.

    t is the vector of n-1 hoppings t_j (alpha_j = t_j, beta_j = conj(t_{n-j}));
    z_side holds the optional real parity-symmetric potential on sites 1..m-1.
    """

    n: int
    t: np.ndarray
    delta: float = 0.0
    gamma: float = 0.0
    z_side: np.ndarray | None = None

    def to_spec(self):
        n, m = self.n, self.n // 2
        if n % 2 or n < 2:
            raise DimensionMismatch("nearest-neighbour model needs even n >= 2")
        t = np.atleast_1d(np.asarray(self.t, dtype=complex))
        if t.size == 1:
            t = np.full(n - 1, t[0])
        if len(t) != n - 1:
            raise DimensionMismatch(f"need {n - 1} hoppings, got {len(t)}")
        alpha = np.zeros(n, dtype=complex)
        beta = np.zeros(n, dtype=complex)
        alpha[: n - 1] = t
        beta[: n - 1] = np.conj(t[::-1])
        z = np.zeros(n, dtype=complex)
        if self.z_side is not None:
            side = np.atleast_1d(np.asarray(self.z_side, dtype=float))
            if len(side) != m - 1:
                raise DimensionMismatch(f"z_side needs length {m - 1}")
            z[: m - 1] = side
            z[m + 1:] = side[::-1]
        z[m - 1] = self.delta + 1j * self.gamma
        z[m] = self.delta - 1j * self.gamma
        return LatticeSpec(n, alpha, beta, z)


@dataclass(frozen=True)
class SshEdgeDefect:
    """2-periodic chain with corner couplings tL, tR and edge defects z1, zn."""

    n: int
    t1: float
    t2: float
    tL: complex = 0.0
    tR: complex = 0.0
    z1: complex = 0.0
    zn: complex = 0.0

    def to_spec(self):
        n = self.n
        alpha = np.zeros(n, dtype=complex)
        for j in range(n - 1):
            alpha[j] = self.t1 if j % 2 == 0 else self.t2
        beta = alpha.copy()
        alpha[-1] = self.tL
        beta[-1] = self.tR
        z = np.zeros(n, dtype=complex)
        z[0] = self.z1
        z[-1] = self.zn
        return LatticeSpec(n, alpha, beta, z)


@dataclass(frozen=True)
class Qubit:
    """Two-site gain/loss model [[i w, t], [t, -i w]]."""

    omega: float
    t: float = 1.0

    def to_spec(self):
        return LatticeSpec(2, [self.t, 0.0], [self.t, 0.0],
                           [1j * self.omega, -1j * self.omega])


@dataclass(frozen=True)
class Ring:
    """Uniform unit-hopping chain closed by corner couplings."""

    n: int
    alpha_n: complex = 1.0
    beta_n: complex = 1.0

    def to_spec(self):
        alpha = np.ones(self.n, dtype=complex)
        beta = np.ones(self.n, dtype=complex)
        alpha[-1] = self.alpha_n
        beta[-1] = self.beta_n
        return LatticeSpec(self.n, alpha, beta, np.zeros(self.n))


# ------------------------------------------------------------ continuants

def continuants(spec, lam):
    """Leading and trailing principal-minor continuants of lam*I - H.

    Returns (theta, phi), each length n+2, with theta[i+1] = theta_i for
    i = -1..n and phi[i-1] = phi_i for i = 1..n+2; theta_n = phi_1 = det.
    """
    if not spec.open_boundary:
        raise BoundaryViolation("continuants require open boundary conditions")
    return kernels.theta_phi(spec.alpha, spec.beta, spec.z, complex(lam))


def charpoly_values(spec, lams):
    """det(lam*I - H) at each lam, via continuants plus corner expansion."""
    return kernels.charpoly_dets(spec.alpha, spec.beta, spec.z,
                                 np.atleast_1d(np.asarray(lams, dtype=complex)))


def _node_scale(spec):
    # spectral radius keeps the node-value dynamic range small, which the
    # monomial conversion needs at n ~ 12 and beyond
    rho = np.max(np.abs(np.linalg.eigvals(build_matrix(spec))))
    return float(max(1.0, rho)) * 1.05


def _fit_charpoly(values, nodes_x, scale):
    """Monic power-basis coefficients from values at scale*nodes_x."""
    n = len(nodes_x) - 1
    cheb_c = np.polynomial.chebyshev.chebfit(nodes_x, values, n)
    power = np.polynomial.chebyshev.cheb2poly(cheb_c)
    if len(power) < n + 1:
        power = np.pad(power, (0, n + 1 - len(power)))
    power = power / scale ** np.arange(n + 1)
    return ComplexPoly(power / power[-1])


def char_poly(spec):
    """Monic characteristic polynomial of the family.

    A closed-form evaluator is used when the spec matches one of the
    solved families; otherwise det(lam*I - H) is interpolated at n+1
    Chebyshev nodes scaled to the Gershgorin radius.
    """
    n = spec.n
    scale = _node_scale(spec)
    nodes = np.cos(np.pi * (np.arange(n + 1) + 0.5) / (n + 1))
    closed = closed_form_charpoly(spec)
    if closed is not None:
        values = np.array([closed(scale * x) for x in nodes])
    else:
        values = charpoly_values(spec, scale * nodes)
    return _fit_charpoly(values, nodes, scale)


# ------------------------------------------------- closed-form char polys

def _match_uniform_defects(spec):
    """(t, m, z_m, z_mbar) when spec is an open uniform chain with a
    parity-symmetric defect pair, else None."""
    n = spec.n
    if not spec.open_boundary:
        return None
    hop = spec.alpha[: n - 1]
    t = hop[0]
    tol = 1e-12 * max(1.0, spec.scale)
    if abs(t) <= tol:
        return None
    if np.max(np.abs(hop - t)) > tol or np.max(np.abs(spec.beta[: n - 1] - t)) > tol:
        return None
    nz = np.nonzero(np.abs(spec.z) > tol)[0]
    if len(nz) == 0:
        return t, 1, 0.0 + 0.0j, 0.0 + 0.0j
    if len(nz) > 2:
        return None
    m = int(nz[0]) + 1
    if m > n - m + 1:
        return None
    mbar = n - m + 1
    expect = {m - 1, mbar - 1}
    if not set(nz.tolist()) <= expect:
        return None
    return t, m, complex(spec.z[m - 1]), complex(spec.z[mbar - 1])


def _match_two_periodic_edges(spec):
    """(p, q, prod_alpha, prod_beta, z1, zn, ca, cb) for 2-periodic
    hoppings with diagonal supported on sites 1 and n, else None."""
    n = spec.n
    if n < 3:
        return None
    tol = 1e-12 * max(1.0, spec.scale)
    a, b = spec.alpha[: n - 1], spec.beta[: n - 1]
    if np.max(np.abs(a[2:] - a[:-2]), initial=0.0) > tol:
        return None
    if np.max(np.abs(b[2:] - b[:-2]), initial=0.0) > tol:
        return None
    if np.max(np.abs(spec.z[1:-1]), initial=0.0) > tol:
        return None
    a2 = a[1] if n - 1 >= 2 else 0.0
    b2 = b[1] if n - 1 >= 2 else 0.0
    p, q = complex(a[0] * b[0]), complex(a2 * b2)
    if abs(p) <= tol * tol or abs(q) <= tol * tol:
        return None
    nb = n - 1
    n1, n2 = (nb + 1) // 2, nb // 2
    prod_alpha = complex(a[0] ** n1 * a2 ** n2)
    prod_beta = complex(b[0] ** n1 * b2 ** n2)
    return (p, q, prod_alpha, prod_beta, complex(spec.z[0]), complex(spec.z[-1]),
            complex(spec.alpha[-1]), complex(spec.beta[-1]))


def _open_2periodic_det(nsites, p, q):
    """Evaluator of det(lam*I - H) for the z=0 open 2-periodic chain whose
    first bond product is p, second q."""
    w = np.sqrt(p * q)

    def f(lam):
        if nsites <= 0:
            return 1.0 + 0.0j
        if nsites == 1:
            return complex(lam)
        k = nsites // 2
        big_q = (lam * lam - p - q) / (2.0 * w)
        if nsites % 2 == 0:
            return w ** k * cheb_eval(ChebKind.Second, k, big_q) \
                + q * w ** (k - 1) * cheb_eval(ChebKind.Second, k - 1, big_q)
        return w ** k * lam * cheb_eval(ChebKind.Second, k, big_q)

    return f


def closed_form_charpoly(spec):
    """Closed-form evaluator lam -> det(lam*I - H), or None.

    Families: the open uniform chain with a parity defect pair
    (Chebyshev-U combination) and 2-periodic chains with edge defects
    and perturbed corners (corner expansion over even/odd chain
    determinants); the uniform ring is the a1 = a2 case of the latter.
    """
    uni = _match_uniform_defects(spec)
    if uni is not None:
        t, m, zm, zmb = uni
        n = spec.n

        def f(lam, _U=cheb_eval):
            x = lam / (2.0 * t)
            um1 = _U(ChebKind.Second, m - 1, x)
            val = _U(ChebKind.Second, n, x) \
                - (zm + zmb) / t * _U(ChebKind.Second, n - m, x) * um1 \
                + (zm * zmb) / t ** 2 * _U(ChebKind.Second, n - 2 * m, x) * um1 ** 2
            return t ** n * val

        return f

    per = _match_two_periodic_edges(spec)
    if per is not None:
        p, q, prod_a, prod_b, z1, zn, ca, cb = per
        n = spec.n
        d_n = _open_2periodic_det(n, p, q)
        d_n1_s1 = _open_2periodic_det(n - 1, p, q)
        d_n1_s2 = _open_2periodic_det(n - 1, q, p)
        d_n2_s2 = _open_2periodic_det(n - 2, q, p)

        def f(lam):
            return (d_n(lam) - z1 * d_n1_s2(lam) - zn * d_n1_s1(lam)
                    + (z1 * zn - ca * cb) * d_n2_s2(lam)
                    - ca * prod_a - cb * prod_b)

        return f
    return None


# -------------------------------------------------- eigenvectors, inverse

def eigvec_from_minors(spec, lam, tol=1e-8):
    """Eigenvector psi_i = theta_{i-1}(lam) / prod(beta_1..beta_{i-1})."""
    if not spec.open_boundary:
        raise BoundaryViolation("minor eigenvectors require open boundaries")
    if not spec.irreducible:
        raise NotIrreducible("interior hopping vanishes")
    theta, _ = continuants(spec, lam)
    if abs(theta[spec.n + 1]) > tol * np.max(np.abs(theta[1:])):
        raise NotEigenvalue(f"theta_n(lam) = {theta[spec.n + 1]:.3e} not negligible")
    psi = np.empty(spec.n, dtype=complex)
    acc = 1.0 + 0.0j
    for i in range(spec.n):
        psi[i] = theta[i + 1] / acc
        acc *= spec.beta[i]
    return psi


def tridiag_inverse(spec):
    """Inverse from the continuant product formula, open boundaries only."""
    if not spec.open_boundary:
        raise BoundaryViolation("inverse formula requires open boundaries")
    n = spec.n
    theta, phi = continuants(spec, 0.0)
    det = theta[n + 1]
    if abs(det) <= 1e-12 * np.max(np.abs(theta)):
        raise Singular("theta_n(0) vanishes")
    inv = np.empty((n, n), dtype=complex)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i <= j:
                hop = np.prod(spec.beta[i - 1:j - 1]) if j > i else 1.0
                inv[i - 1, j - 1] = -theta[i] * phi[j] * hop / det
            else:
                hop = np.prod(spec.alpha[j - 1:i - 1])
                inv[i - 1, j - 1] = -theta[j] * phi[i] * hop / det
    return inv


# ------------------------------------------------------------- similarity

class SimKind(Enum):
    StaggerSign = "stagger"
    Parity = "parity"
    Shift = "shift"
    DiagonalSymmetrize = "symmetrize"


def similarity(spec, kind):
    """Similarity transform S with S H(spec) S^-1 = H(transformed spec)."""
    n = spec.n
    if kind == SimKind.StaggerSign:
        s = np.diag([(-1.0) ** i for i in range(1, n + 1)]).astype(complex)
        sn = np.ones(n)
        sn[-1] = (-1.0) ** n
        new = replace(spec, alpha=-sn * spec.alpha, beta=-sn * spec.beta)
        return s, new
    if kind == SimKind.Parity:
        s = np.eye(n)[::-1].astype(complex)
        alpha = np.empty(n, dtype=complex)
        beta = np.empty(n, dtype=complex)
        alpha[: n - 1] = spec.beta[: n - 1][::-1]
        beta[: n - 1] = spec.alpha[: n - 1][::-1]
        alpha[-1] = spec.beta[-1]
        beta[-1] = spec.alpha[-1]
        return s, replace(spec, alpha=alpha, beta=beta, z=spec.z[::-1].copy())
    if kind == SimKind.Shift:
        s = np.zeros((n, n), dtype=complex)
        for i in range(n):
            s[(i + 1) % n, i] = 1.0
        return s, replace(spec, alpha=np.roll(spec.alpha, 1), beta=np.roll(spec.beta, 1),
                          z=np.roll(spec.z, 1))
    if kind == SimKind.DiagonalSymmetrize:
        if not spec.irreducible:
            raise NotIrreducible("diagonal symmetrization needs nonzero hoppings")
        d = symmetrizer(spec)
        s = np.diag(1.0 / d)  # S = D^-1, so S H S^-1 is transpose symmetric
        alpha = np.append(spec.alpha[: n - 1] * d[: n - 1] / d[1:], spec.alpha[-1] * d[-1])
        beta = np.append(spec.beta[: n - 1] * d[1:] / d[: n - 1], spec.beta[-1] / d[-1])
        return s, replace(spec, alpha=alpha, beta=beta)
    raise ValueError(f"unknown similarity kind {kind!r}")


def symmetrizer(spec):
    """Diagonal D (principal branch) with D^-1 H D transpose symmetric."""
    d = np.ones(spec.n, dtype=complex)
    for i in range(1, spec.n):
        d[i] = d[i - 1] * np.sqrt(spec.alpha[i - 1] / spec.beta[i - 1])
    return d


# ------------------------------------------------------------ chiral lift

def chiral_lift(spec):
    """Spectrum/eigenvector lift from the zero-diagonal spec (2-periodic z).

    Returns (lift, pairs) where lift(lam, u) gives the two lifted
    eigenpairs and pairs is the list of lifted eigenvalue pairs over the
    dense spectrum of H(alpha, beta, 0).
    """
    n = spec.n
    tol = 1e-12 * max(1.0, spec.scale)
    z1, z2 = spec.z[0], spec.z[1] if n > 1 else spec.z[0]
    twoper = np.max(np.abs(spec.z[2:] - spec.z[:-2]), initial=0.0) <= tol
    if not twoper:
        raise PeriodicityViolation("z must be 2-periodic for the chiral lift")
    if not spec.open_boundary and n % 2:
        raise PeriodicityViolation("corner-perturbed lift needs even n")
    mean = 0.5 * (z1 + z2)
    half = 0.5 * (z1 - z2)
    e = np.array([(-1.0) ** i for i in range(1, n + 1)])

    def lift(lam, u):
        root = np.sqrt(lam ** 2 + half ** 2)
        out = []
        for sign in (+1.0, -1.0):
            v = (lam + sign * root) * u + (z2 - z1) / 2.0 * (e * u)
            out.append((mean + sign * root, v))
        return out

    h0 = build_matrix(replace(spec, z=np.zeros(n)))
    w = np.linalg.eigvals(h0)
    pairs = [(mean + s * np.sqrt(lam ** 2 + half ** 2)) for lam in w for s in (+1.0, -1.0)]
    return lift, pairs


def chiral_lift_spectrum(spec):
    """Lifted eigenvalue multiset (n values) using chiral +-lam pairing.

    Each chiral pair (lam, -lam) of the zero-diagonal spectrum yields the
    same two lifted values; a leftover near-zero mode (odd open chains)
    contributes a single value fixed by the parity of its eigenvector.
    """
    lift, _ = chiral_lift(spec)
    n = spec.n
    z1, z2 = spec.z[0], spec.z[1]
    mean, half = 0.5 * (z1 + z2), 0.5 * (z1 - z2)
    h0 = build_matrix(replace(spec, z=np.zeros(n)))
    w = np.linalg.eigvals(h0)
    used = np.zeros(n, dtype=bool)
    out = []
    leftover = []
    match_tol = 1e-6 * max(1.0, float(np.max(np.abs(w))))
    for idx in np.argsort(-np.abs(w)):
        if used[idx]:
            continue
        used[idx] = True
        free = np.flatnonzero(~used)
        j = free[np.argmin(np.abs(w[free] + w[idx]))] if free.size else None
        if j is not None and abs(w[j] + w[idx]) <= match_tol:
            used[j] = True
            root = np.sqrt(w[idx] ** 2 + half ** 2)
            out.extend([mean + root, mean - root])
        else:
            leftover.append(idx)
    for idx in leftover:
        lam = w[idx]
        _, _, vh = np.linalg.svd(h0 - lam * np.eye(n))
        u = vh[-1].conj()
        e = np.array([(-1.0) ** i for i in range(1, n + 1)])
        s = np.sign(np.real(np.vdot(u, e * u)))
        out.append(mean + lam + s * (z2 - z1) / 2.0)
    return np.array(out[:n])


# ---------------------------------------------- spectra in closed form

def constant_eigenvalues(n, m):
    """Defect-independent eigenvalues of the uniform chain with a parity
    defect pair at (m, n-m+1): {2 cos(pi r / g)} with g = gcd(n+1, m)."""
    if not (isinstance(n, (int, np.integer)) and isinstance(m, (int, np.integer))):
        raise IndexOutOfRange("n, m must be integers")
    if not 1 <= m <= n // 2:
        raise IndexOutOfRange(f"need 1 <= m <= floor(n/2), got m={m}, n={n}")
    g = math.gcd(n + 1, m)
    return {2.0 * math.cos(math.pi * r / g) for r in range(1, g)}


class _NotClosedForm:
    def __repr__(self):
        return "NotClosedForm"

    def __bool__(self):
        return False


NotClosedForm = _NotClosedForm()

_REL = 1e-12  # structural predicate tolerance for family detection


def _close(a, b, scale):
    return abs(a - b) <= _REL * max(1.0, scale)


def closed_form_spectrum(preset):
    """Closed-form eigenvalue multiset of a solved family, else NotClosedForm.

    Detection uses exact structural predicates on the preset parameters;
    no fuzzy matching.  Returned arrays carry algebraic multiplicity.
    """
    if isinstance(preset, SshEdgeDefect):
        n, k = preset.n, preset.n // 2
        t1, t2 = preset.t1, preset.t2
        sc = max(abs(t1), abs(t2), abs(preset.z1), abs(preset.zn), 1.0)
        if n % 2 == 0 and _close(preset.tL, -preset.tR, sc) and \
                _close(t2 ** 2, preset.z1 * preset.zn - preset.tL * preset.tR, sc ** 2):
            mu = [abs(t1 + t2 * np.exp(2j * np.pi * j / n)) for j in range(1, k)]
            zsum = (preset.z1 + preset.zn) / 2.0
            root = np.sqrt(t1 ** 2 - t2 ** 2 + zsum ** 2 + 0j)
            vals = mu + [-m for m in mu] + [zsum + root, zsum - root]
            return np.array(vals, dtype=complex)
        return NotClosedForm
    if not isinstance(preset, UniformChain):
        return NotClosedForm

    n, m, t = preset.n, preset.m, preset.t
    z1, z2 = complex(preset.z_m), complex(preset.z_mbar)
    sc = max(abs(t), abs(z1), abs(z2), 1.0)
    cos = np.cos
    if _close(z1, 0.0, sc) and _close(z2, 0.0, sc):
        return 2.0 * t * cos(np.arange(1, n + 1) * np.pi / (n + 1))
    if m == 1:
        if _close(z1 * z2, t ** 2, sc ** 2):
            bulk = 2.0 * t * cos(np.arange(1, n) * np.pi / n)
            return np.append(bulk, z1 + z2)
        for sgn in (+1.0, -1.0):
            if (_close(z1, sgn * t, sc) and _close(z2, 0.0, sc)) or \
                    (_close(z2, sgn * t, sc) and _close(z1, 0.0, sc)):
                return -sgn * 2.0 * t * cos(2.0 * np.arange(1, n + 1) * np.pi / (2 * n + 1))
        if (_close(z1, t, sc) and _close(z2, -t, sc)) or \
                (_close(z1, -t, sc) and _close(z2, t, sc)):
            return 2.0 * t * cos((2.0 * np.arange(1, n + 1) - 1.0) * np.pi / (2 * n))
    if n == 2 * m and _close(z2, np.conj(z1), sc):
        u_roots = 2.0 * t * cos(np.arange(1, m + 1) * np.pi / (m + 1))
        v_roots = 2.0 * t * cos((2.0 * np.arange(1, m + 1) - 1.0) * np.pi / (2 * m + 1))
        w_roots = 2.0 * t * cos(2.0 * np.arange(1, m + 1) * np.pi / (2 * m + 1))
        for sgn in (+1.0, -1.0):
            if _close(z1, sgn * 1j * t, sc):
                return np.repeat(u_roots, 2)
            if _close(z1, np.exp(sgn * 1j * np.pi / 3.0) * t, sc):
                return np.concatenate([u_roots, v_roots])
            if _close(z1, np.exp(sgn * 2j * np.pi / 3.0) * t, sc):
                return np.concatenate([u_roots, w_roots])
            if _close(z1, (1.0 + sgn * 1j) * t, sc):
                return np.repeat(v_roots, 2)
            if _close(z1, (-1.0 + sgn * 1j) * t, sc):
                return np.repeat(w_roots, 2)
    return NotClosedForm
