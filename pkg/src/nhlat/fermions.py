"""Second quantization at desk scale and locality of quasi-Hermitian observables.

Occupation words index the 2^n Fock basis: site i is bit i-1, and
|S> = prod_{i in S, ascending} adag_i |0> coincides with the word basis
state under the Jordan-Wigner sign convention used here.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.sparse as sp

from .errors import NotPositive, SizeLimit
from .metric import far_defect_metric

JW_MAX = 12
METRIC_MAX = 10
SUBSET_MAX = 14
KERNEL_TOL = 1e-10  # SVD nullity threshold, relative to sigma_max


def jordan_wigner(n):
    """Annihilation/creation matrices on the 2^n occupation basis.

    a_j carries the string of Z factors over sites k < j, realised here
    through the parity sign of the occupied sites below j.
    """
    if not 1 <= n <= JW_MAX:
        raise SizeLimit(f"jordan_wigner supports 1 <= n <= {JW_MAX}")
    dim = 1 << n
    a_ops = []
    for i in range(1, n + 1):
        bit = 1 << (i - 1)
        cols = np.array([w for w in range(dim) if w & bit], dtype=np.int64)
        rows = cols ^ bit
        signs = np.array([(-1.0) ** bin(int(w) & (bit - 1)).count("1") for w in cols])
        a_ops.append(sp.csr_matrix((signs, (rows, cols)), shape=(dim, dim)))
    return a_ops, [op.conj().T.tocsr() for op in a_ops]


def dGamma(h):
    """Number-conserving second quantization sum_ij h_ij adag_i a_j."""
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    if n > JW_MAX:
        raise SizeLimit(f"dGamma supports n <= {JW_MAX}")
    a_ops, adag_ops = jordan_wigner(n)
    out = sp.csr_matrix((1 << n, 1 << n), dtype=complex)
    for i in range(n):
        for j in range(n):
            if h[i, j] != 0.0:
                out = out + h[i, j] * (adag_ops[i] @ a_ops[j])
    return out


def number_operator(n):
    return dGamma(np.eye(n))


def second_quantized_metric(m):
    """Second-quantized metric with entries <S|eta|S'> = det M_{S S'}.

    Block diagonal over particle number; equals exp(dGamma(log M)) for
    positive-definite M.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if n > METRIC_MAX:
        raise SizeLimit(f"second_quantized_metric supports n <= {METRIC_MAX}")
    w = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    if w.min() <= 0.0:
        raise NotPositive("first-quantized metric must be positive definite")
    dim = 1 << n
    eta = np.zeros((dim, dim), dtype=complex)
    eta[0, 0] = 1.0
    for k in range(1, n + 1):
        sector = list(combinations(range(1, n + 1), k))
        words = [sum(1 << (i - 1) for i in s) for s in sector]
        for s, ws in zip(sector, words):
            rows = [i - 1 for i in s]
            for sp_, wsp in zip(sector, words):
                cols = [j - 1 for j in sp_]
                eta[ws, wsp] = np.linalg.det(m[np.ix_(rows, cols)])
    return eta


@dataclass
class SecondQuantizedResiduals:
    hamiltonian_residual: float
    number_residual: float


def intertwines_second_quantized(h, m):
    """Residuals of eta = Gamma(log M) against dGamma(h) and the number op."""
    h = np.asarray(h, dtype=complex)
    eta = second_quantized_metric(m)
    big_h = dGamma(h).toarray()
    num = number_operator(h.shape[0]).toarray()

    def rel(a, b):
        return float(np.linalg.norm(a @ b - b.conj().T @ a)
                     / (np.linalg.norm(a) * np.linalg.norm(b)))

    return SecondQuantizedResiduals(rel(eta, big_h), rel(eta, num))


# ------------------------------------------------------------- locality

@dataclass
class LocalityReport:
    subsystem: tuple
    K: int
    kernel_basis: np.ndarray
    extensively_local: bool | None = None
    rule_class: str | None = None


def _kernel_dim(m, a_sites, n):
    """Nullity and kernel basis of the block M^{A^c A}."""
    a_idx = [i - 1 for i in a_sites]
    c_idx = [i - 1 for i in range(1, n + 1) if i not in a_sites]
    if not a_idx:
        return 0, np.zeros((0, 0))
    if not c_idx:
        return len(a_idx), np.eye(len(a_idx), dtype=complex)
    block = m[np.ix_(c_idx, a_idx)]
    u, s, vh = np.linalg.svd(block)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > KERNEL_TOL * smax)) if smax > 0.0 else 0
    basis = vh[rank:].conj().T
    return len(a_idx) - rank, basis


def local_kernel(m, a_sites):
    """K(A) = dim ker M^{A^c A} with a kernel basis in span{e_i : i in A}."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    a_sites = tuple(sorted(set(a_sites)))
    k, basis = _kernel_dim(m, a_sites, n)
    return LocalityReport(a_sites, k, basis)


def _involution_of(m):
    """Associated involution f when M has only 1x1/2x2 blocks, else None."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    tol = 1e-12 * (np.max(np.abs(m)) or 1.0)
    f = {}
    for i in range(1, n + 1):
        off = [j for j in range(1, n + 1)
               if j != i and abs(m[i - 1, j - 1]) > tol]
        if len(off) > 1:
            return None
        f[i] = off[0] if off else i
    if any(f[f[i]] != i for i in f):
        return None
    return f


def extensively_local(m, a_sites):
    """True iff K(A) exceeds K(S) for every proper subset S of A.

    Kernel monotonicity under enlargement reduces the test to the
    one-site-removed subsets; 2x2-block metrics short-circuit to the
    involution-symmetry test f(A) = A.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    a_sites = tuple(sorted(set(a_sites)))
    if not a_sites:
        return False
    f = _involution_of(m)
    if f is not None:
        return all(f[i] in a_sites for i in a_sites)
    if len(a_sites) > SUBSET_MAX:
        raise SizeLimit(f"subset test limited to |A| <= {SUBSET_MAX}")
    k_full, _ = _kernel_dim(m, a_sites, n)
    if k_full == 0:
        return False
    for drop in a_sites:
        sub = tuple(s for s in a_sites if s != drop)
        k_sub, _ = _kernel_dim(m, sub, n) if sub else (0, None)
        if k_sub >= k_full:
            return False
    return True


# ------------------------------------- far-impurity subsystem classifier

def _components(a_sites):
    comps, cur = [], []
    for s in sorted(a_sites):
        if cur and s == cur[-1] + 1:
            cur.append(s)
        else:
            if cur:
                comps.append(tuple(cur))
            cur = [s]
    if cur:
        comps.append(tuple(cur))
    return comps


def rule_far_impurity(n, a_sites, unit_circle):
    """Rule-based extensively-local test for the edge-defect uniform chain."""
    a = set(a_sites)
    if not a:
        return False
    comps = _components(a)
    if unit_circle:
        # extensively local iff no single-site components, or the only
        # singletons are the endpoint pair mechanism {1} / {n} with the
        # opposite endpoint also present
        singles = [c for c in comps if len(c) == 1]
        if not singles:
            return True
        if not all(c in ((1,), (n,)) for c in singles):
            return False
        return 1 in a and n in a
    for comp in comps:
        if comp == (1, 2) or comp == (n - 1, n):
            continue
        if len(comp) == 1:
            i = comp[0]
            if a == set(comp):
                return False
            if i == min(a) and i != 1:
                return False
            if i == max(a) and i != n:
                return False
            if i - 2 >= 1 and i - 2 not in a:
                return False
            if i + 2 <= n and i + 2 not in a:
                return False
        elif len(comp) == 2:
            if a == set(comp):
                return False
            i = comp[0]
            left = i - 2 >= 1 and i - 2 in a
            right = i + 3 <= n and i + 3 in a
            if not (left or right):
                return False
    return True


def subsets_in_order(n, max_card=None):
    """Nonempty subsets ordered by cardinality then word value."""
    out = []
    for k in range(1, (max_card or n) + 1):
        sector = sorted(combinations(range(1, n + 1), k),
                        key=lambda s: sum(1 << (i - 1) for i in s))
        out.extend(sector)
    return out


def classify_subsystems(n, delta, gamma, t=1.0, mode="RuleBased", unit_circle=None):
    """Subsystems of the far-impurity chain carrying extensively local
    observables, as LocalityReport entries in canonical subset order."""
    if mode not in ("RuleBased", "BruteForce"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "BruteForce" and n > SUBSET_MAX:
        raise SizeLimit(f"brute force limited to n <= {SUBSET_MAX}")
    z = (delta + 1j * gamma) / t
    if unit_circle is None:
        unit_circle = abs(abs(z) - 1.0) <= 1e-12
    reports = []
    if mode == "RuleBased":
        for a_sites in subsets_in_order(n):
            if rule_far_impurity(n, a_sites, unit_circle):
                reports.append(LocalityReport(a_sites, -1, np.zeros((0, 0)),
                                              True, "RuleBased"))
        return reports
    m = far_defect_metric(n, delta, gamma, t).eta
    kdims = {(): 0}
    for a_sites in subsets_in_order(n):
        kdims[a_sites], _ = _kernel_dim(m, a_sites, n)
    for a_sites in subsets_in_order(n):
        k = kdims[a_sites]
        if k == 0:
            continue
        if all(kdims[tuple(s for s in a_sites if s != drop)] < k for drop in a_sites):
            reports.append(LocalityReport(a_sites, k, np.zeros((0, 0)),
                                          True, "BruteForce"))
    return reports
