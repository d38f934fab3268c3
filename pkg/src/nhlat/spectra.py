"""Dense spectral analysis: multiplicities, PT class, inclusion regions.

Algebraic multiplicities come from single-linkage clustering of the raw
eigenvalues (exceptional points force close-but-distinct numerics);
geometric multiplicities from the numerical rank of lam*I - H.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotConverged, SingularS, ZeroVector

CLUSTER_FACTOR = 1e-7  # default single-linkage radius, times ||H||

_SIGMA = [np.array([[0, 1], [1, 0]], dtype=complex),
          np.array([[0, -1j], [1j, 0]], dtype=complex),
          np.array([[1, 0], [0, -1]], dtype=complex)]


@dataclass
class EigenEntry:
    value: complex
    algebraic_mult: int
    geometric_mult: int


@dataclass
class SpectralReport:
    """Eigenvalues with multiplicities, representative vectors, PT class."""

    eigenvalues: list
    eigenvectors: np.ndarray
    max_residual: float
    pt_class: str
    broken_pairs: list = field(default_factory=list)

    @property
    def values(self):
        """Flat eigenvalue multiset (algebraic multiplicity expanded)."""
        return np.concatenate([[e.value] * e.algebraic_mult for e in self.eigenvalues])


def _cluster(values, radius):
    """Single-linkage clusters; returns list of index arrays."""
    m = len(values)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if abs(values[i] - values[j]) <= radius:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def is_centrohermitian(h, tol=1e-10):
    """A[i,j] == conj(A[n-i+1, n-j+1]) within tol * ||H||."""
    h = np.asarray(h, dtype=complex)
    scale = np.linalg.norm(h) or 1.0
    return np.max(np.abs(h - np.conj(h[::-1, ::-1]))) <= tol * scale


def eig(h, tol=1e-8, cluster_radius=None):
    """Dense eigen-decomposition with multiplicity estimation.

    cluster_radius defaults to CLUSTER_FACTOR * ||H||_2; geometric
    multiplicity is n minus the rank of lam*I - H with singular values
    below tol * ||H||_2 counted as zero.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    try:
        w = np.linalg.eigvals(h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NotConverged(str(exc)) from exc
    norm = float(np.linalg.norm(h, 2)) or 1.0
    radius = CLUSTER_FACTOR * norm if cluster_radius is None else cluster_radius
    entries = []
    vectors = []
    max_res = 0.0
    for group in _cluster(w, radius):
        lam = complex(np.mean(w[group]))
        shifted = lam * np.eye(n) - h
        svals = np.linalg.svd(shifted, compute_uv=False)
        rank = int(np.sum(svals > tol * norm))
        _, _, vh = np.linalg.svd(shifted)
        v = vh[-1].conj()
        res = float(np.linalg.norm(h @ v - lam * v) / norm)
        max_res = max(max_res, res)
        entries.append(EigenEntry(lam, len(group), max(1, n - rank)))
        vectors.append(v)
    entries, vectors = zip(*sorted(zip(entries, vectors),
                                   key=lambda ev: (ev[0].value.real, ev[0].value.imag)))
    pt, pairs = _pt_of_values(h, np.array([e.value for e in entries for _ in range(e.algebraic_mult)]), tol)
    return SpectralReport(list(entries), np.column_stack(vectors), max_res, pt, pairs)


def _pt_of_values(h, values, tol):
    if not is_centrohermitian(h, tol):
        return "NotApplicable", []
    norm = float(np.linalg.norm(h, 2)) or 1.0
    complex_vals = values[np.abs(values.imag) > tol * norm]
    if complex_vals.size == 0:
        return "Unbroken", []
    pairs = []
    vals = sorted(complex_vals[complex_vals.imag > 0], key=lambda v: (v.real, v.imag))
    for v in vals:
        pairs.append((v, np.conj(v)))
    return "Broken", pairs


def pt_classify(h, tol=1e-8):
    """PT class of a matrix: Unbroken, Broken, or NotApplicable."""
    h = np.asarray(h, dtype=complex)
    if not is_centrohermitian(h, tol):
        return "NotApplicable", []
    return _pt_of_values(h, np.linalg.eigvals(h), tol)


# ------------------------------------------------------ inclusion regions

@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def contains(self, w, slack=0.0):
        return abs(w - self.center) <= self.radius + slack


@dataclass(frozen=True)
class CassiniOval:
    focus1: complex
    focus2: complex
    b: float

    def contains(self, w, slack=0.0):
        return abs(w - self.focus1) * abs(w - self.focus2) <= self.b + slack


def gershgorin(h):
    """Gershgorin disks centred at the diagonal entries."""
    h = np.asarray(h, dtype=complex)
    radii = np.abs(h).sum(axis=1) - np.abs(np.diag(h))
    return [Disk(complex(h[i, i]), float(radii[i])) for i in range(h.shape[0])]


def brauer_cassini(h):
    """Brauer-Cassini ovals over unordered pairs of diagonal entries."""
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    if n < 2:
        raise DimensionMismatch("Cassini ovals need n >= 2")
    radii = np.abs(h).sum(axis=1) - np.abs(np.diag(h))
    return [CassiniOval(complex(h[i, i]), complex(h[j, j]), float(radii[i] * radii[j]))
            for i in range(n) for j in range(i + 1, n)]


def in_union(regions, w, slack=0.0):
    return any(r.contains(w, slack) for r in regions)


def bauer_fike(h0, h1, s, same_intertwiner=False):
    """Bauer-Fike disks for the perturbed spectrum of h0 + h1.

    Returns (radius, disks, real_spectrum_certificate).  The certificate
    additionally requires the caller-asserted flag that h0 and h1 are
    simultaneously pseudo-Hermitian with one intertwiner; that premise is
    not checkable at this level.
    """
    h0 = np.asarray(h0, dtype=complex)
    h1 = np.asarray(h1, dtype=complex)
    s = np.asarray(s, dtype=complex)
    svals = np.linalg.svd(s, compute_uv=False)
    if svals[-1] <= 1e-14 * svals[0]:
        raise SingularS("eigenvector matrix is numerically singular")
    diag = np.linalg.solve(s, h0 @ s)
    lams = np.diag(diag).copy()
    off = diag - np.diag(lams)
    if np.max(np.abs(off)) > 1e-8 * max(1.0, float(np.max(np.abs(diag)))):
        raise SingularS("S does not diagonalize H0 within 1e-8")
    kappa = float(svals[0] / svals[-1])
    radius = kappa * float(np.linalg.norm(h1, 2))
    disks = [Disk(complex(l), radius) for l in lams]
    gaps = [abs(a - b) for i, a in enumerate(lams) for b in lams[i + 1:]]
    min_gap = min(gaps) if gaps else np.inf
    certificate = bool(same_intertwiner
                       and np.linalg.norm(h1, 2) < min_gap / (2.0 * kappa))
    return radius, disks, certificate


def bloch(v):
    """Bloch-sphere image of span{v} for nonzero v in C^2."""
    v = np.asarray(v, dtype=complex).ravel()
    nrm = float(np.vdot(v, v).real)
    if nrm <= 0.0:
        raise ZeroVector("bloch needs a nonzero vector")
    return np.array([np.vdot(v, s @ v).real / nrm for s in _SIGMA])
