"""Exceptional-point loci as discriminant zero sets in a parameter plane.

The locus is traced with marching squares on sign(Re D) plus bisection
refinement along crossing edges; D is the discriminant of the
characteristic polynomial, evaluated in batch through the kernels with
the polynomial variable rescaled for conditioning.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels, lattice
from .errors import FitRejected, OutOfRegime


GRID_DEFAULT = 256
REFINE_ABS_TOL = 1e-9      # |D| <= tol * grid scale at refined points
REFINE_STEPS = 70          # bisection also shrinks the interval to ~1e-21 span
GAP_VERIFY = 1e-4          # refined point must host an eigenvalue pair this close
CIRCLE_RADIUS = 1e-3       # classification circle around singular candidates
CIRCLE_SAMPLES = 64
GENERIC_DIRECTIONS = (0.123, 1.817, 2.511)  # angles avoiding special tangents


@dataclass
class ParamFamily:
    """Map from a 2-parameter point to a LatticeSpec or a raw matrix."""

    fn: callable
    box: tuple
    label: str = ""

    def matrix(self, point):
        out = self.fn(tuple(point))
        if isinstance(out, lattice.LatticeSpec):
            return lattice.build_matrix(out)
        return np.asarray(out, dtype=complex)

    def in_box(self, point):
        (x0, x1), (y0, y1) = self.box
        return x0 <= point[0] <= x1 and y0 <= point[1] <= y1


def qubit_family(box=((0.0, 2.0), (0.05, 2.0))):
    """(omega, t) -> the two-site gain/loss matrix."""
    def fn(pt):
        w, t = pt
        return np.array([[1j * w, t], [t, -1j * w]], dtype=complex)
    return ParamFamily(fn, box, "qubit")


def uniform_defect_family(n, m=1, t=1.0, box=((-3.0, 3.0), (-3.0, 3.0))):
    """(Delta, gamma) -> open uniform chain with defects at m and n-m+1."""
    def fn(pt):
        d, g = pt
        return lattice.UniformChain(n, m, t, d + 1j * g, d - 1j * g).to_spec()
    return ParamFamily(fn, box, f"uniform(n={n},m={m})")


def nn_defect_family(n, t=1.0, box=((-3.0, 3.0), (-3.0, 3.0))):
    """(Delta, gamma) -> nearest-neighbour defect chain."""
    def fn(pt):
        d, g = pt
        return lattice.NearestNeighbourDefect(n, t, d, g).to_spec()
    return ParamFamily(fn, box, f"nn(n={n})")


def tactics4x4_family(box=((0.05, 4.0), (0.0, 3.0))):
    """(t, gamma) -> the representation-generated 4x4 matrix."""
    def fn(pt):
        t, g = pt
        return np.array([[1j * g, t, 0, 1], [t, g, -1j, 0],
                         [0, 1j, g, t], [1, 0, t, -1j * g]], dtype=complex)
    return ParamFamily(fn, box, "tactics4x4")


# ----------------------------------------------------- discriminant field

class _DiscEvaluator:
    """Batched D(point) for one family, with a fixed node scale."""

    def __init__(self, family):
        self.family = family
        probe = family.fn(self._center(family))
        self.is_spec = isinstance(probe, lattice.LatticeSpec)
        self.n = probe.n if self.is_spec else np.asarray(probe).shape[0]
        self.scale = self._node_scale()
        nodes_x = np.cos(np.pi * (np.arange(self.n + 1) + 0.5) / (self.n + 1))
        self.nodes = self.scale * nodes_x
        self.fit = self._fit_matrix(nodes_x)
        # Disc(p) = Disc(p(scale*.)/scale^n) * scale^(n(n-1))
        self.disc_factor = float(self.scale) ** (self.n * (self.n - 1))

    @staticmethod
    def _center(family):
        (x0, x1), (y0, y1) = family.box
        return (0.5 * (x0 + x1), 0.5 * (y0 + y1))

    def _node_scale(self):
        (x0, x1), (y0, y1) = self.family.box
        best = 1.0
        for px in (x0, x1):
            for py in (y0, y1):
                h = self.family.matrix((px, py))
                best = max(best, float(np.max(np.abs(h).sum(axis=1))))
        return 1.05 * best

    def _fit_matrix(self, nodes_x):
        n = self.n
        eye = np.eye(n + 1)
        cols = []
        for k in range(n + 1):
            cheb = np.polynomial.chebyshev.chebfit(nodes_x, eye[:, k], n)
            power = np.polynomial.chebyshev.cheb2poly(cheb)
            if len(power) < n + 1:
                power = np.pad(power, (0, n + 1 - len(power)))
            cols.append(power)
        return np.column_stack(cols)

    def coeffs(self, points):
        """Monic coefficients of det(x*I - H/scale)-style scaled polynomials."""
        vals = np.empty((len(points), self.n + 1), dtype=complex)
        for i, pt in enumerate(points):
            item = self.family.fn(tuple(pt))
            if self.is_spec:
                vals[i] = kernels.charpoly_dets(item.alpha, item.beta, item.z, self.nodes)
            else:
                vals[i] = kernels.dense_charpoly_dets(np.asarray(item, dtype=complex),
                                                      self.nodes)
        coeffs = vals @ self.fit.T
        coeffs /= coeffs[:, -1:]
        return coeffs

    def disc(self, points):
        """True-scale discriminants at an (m, 2) array of points."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return kernels.batch_disc(self.coeffs(points)) * self.disc_factor

    def disc_roots(self, points):
        """Same discriminant via the eigenvalue product; used for sign
        bisection where a detuning-sized root starves the Sylvester
        determinant of precision.  One stacked eigensolve per batch."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        stack = np.empty((len(points), self.n, self.n), dtype=complex)
        for i, pt in enumerate(points):
            stack[i] = self.family.matrix(pt)
        w = np.linalg.eigvals(stack)
        iu = np.triu_indices(self.n, 1)
        diff = w[:, :, None] - w[:, None, :]
        return np.prod(diff[:, iu[0], iu[1]] ** 2, axis=1)


def discriminant_surface(family, point):
    """Discriminant of the characteristic polynomial at one parameter point."""
    return complex(_DiscEvaluator(family).disc([point])[0])


# ------------------------------------------------------------ locus trace

@dataclass
class SingularPoint:
    point: tuple
    kind: str            # Cusp | Acnode | Crunode
    ep_order: int


@dataclass
class EPContour:
    """Sampled discriminant zero set with classified singular points."""

    segments: list
    points: np.ndarray
    abs_disc: np.ndarray
    grid: tuple
    grid_resolution: int
    singular_points: list = field(default_factory=list)
    dropped: int = 0


def _bisect_edges(ev, lo, hi, flo):
    """Vectorised sign bisection of Re D along point pairs lo -> hi."""
    lo = lo.copy()
    hi = hi.copy()
    dval = np.zeros(len(lo), dtype=complex)
    for _ in range(REFINE_STEPS):
        mid = 0.5 * (lo + hi)
        dval = ev.disc_roots(mid)
        upper = np.sign(dval.real) == np.sign(flo)
        lo[upper] = mid[upper]
        hi[~upper] = mid[~upper]
    return 0.5 * (lo + hi), dval


def bisect_crossing(family, p_lo, p_hi):
    """Refine one sign change of Re D along the segment p_lo -> p_hi."""
    ev = _DiscEvaluator(family)
    flo = np.sign(ev.disc_roots([p_lo])[0].real)
    pts, _ = _bisect_edges(ev, np.array([p_lo], float), np.array([p_hi], float),
                           np.array([flo]))
    return tuple(pts[0])


_EDGE_OFFSETS = {  # cell-local edge id -> (corner a, corner b)
    0: ((0, 0), (1, 0)),  # bottom
    1: ((1, 0), (1, 1)),  # right
    2: ((0, 1), (1, 1)),  # top
    3: ((0, 0), (0, 1)),  # left
}


def ep_locus(family, resolution=GRID_DEFAULT, verify=True):
    """Trace the exceptional-point locus of a family over its box.

    Marching squares on sign(Re D) with per-edge bisection refinement;
    each refined point is optionally verified to host an eigenvalue pair
    closer than GAP_VERIFY * ||H||; failures are dropped and counted.
    """
    if resolution < 16:
        raise ValueError("resolution must be >= 16")
    ev = _DiscEvaluator(family)
    (x0, x1), (y0, y1) = family.box
    xs = np.linspace(x0, x1, resolution + 1)
    ys = np.linspace(y0, y1, resolution + 1)
    pts = np.array([(x, y) for y in ys for x in xs])
    field_d = ev.disc(pts).reshape(len(ys), len(xs))
    sgn = np.where(field_d.real >= 0.0, 1.0, -1.0)

    # collect crossing edges: (iy, ix, horizontal?) keyed for reuse by cells
    edge_index = {}
    lo_list, hi_list, flo_list = [], [], []

    def add_edge(key, pa, pb, fa):
        if key not in edge_index:
            edge_index[key] = len(lo_list)
            lo_list.append(pa)
            hi_list.append(pb)
            flo_list.append(fa)
        return edge_index[key]

    for iy in range(len(ys)):
        for ix in range(len(xs) - 1):
            if sgn[iy, ix] != sgn[iy, ix + 1]:
                add_edge(("h", iy, ix), (xs[ix], ys[iy]), (xs[ix + 1], ys[iy]), sgn[iy, ix])
    for iy in range(len(ys) - 1):
        for ix in range(len(xs)):
            if sgn[iy, ix] != sgn[iy + 1, ix]:
                add_edge(("v", iy, ix), (xs[ix], ys[iy]), (xs[ix], ys[iy + 1]), sgn[iy, ix])

    if not lo_list:
        return EPContour([], np.empty((0, 2)), np.empty(0), (xs, ys, field_d),
                         resolution)
    refined, dvals = _bisect_edges(ev, np.array(lo_list, float), np.array(hi_list, float),
                                   np.array(flo_list))
    ok = np.ones(len(refined), dtype=bool)
    scale = float(np.max(np.abs(field_d.real))) or 1.0
    ok &= np.abs(dvals) <= max(REFINE_ABS_TOL * scale, 1e3 * np.finfo(float).tiny)
    if verify:
        for i, pt in enumerate(refined):
            if not ok[i]:
                continue
            h = family.matrix(pt)
            w = np.linalg.eigvals(h)
            gaps = np.abs(w[:, None] - w[None, :]) + np.diag([np.inf] * len(w))
            ok[i] = gaps.min() <= GAP_VERIFY * max(1.0, np.linalg.norm(h, 2))
    dropped = int(np.sum(~ok))

    # per-cell connectivity -> polyline chaining
    def cell_edges(iy, ix):
        keys = [("h", iy, ix), ("v", iy, ix + 1), ("h", iy + 1, ix), ("v", iy, ix)]
        return [edge_index[k] for k in keys if k in edge_index and ok[edge_index[k]]]

    links = {}
    for iy in range(len(ys) - 1):
        for ix in range(len(xs) - 1):
            ids = cell_edges(iy, ix)
            if len(ids) == 2:
                pairs = [tuple(ids)]
            elif len(ids) == 4:
                # saddle cell: disambiguate with the centre sample
                centre = ((xs[ix] + xs[ix + 1]) / 2, (ys[iy] + ys[iy + 1]) / 2)
                csgn = 1.0 if ev.disc([centre])[0].real >= 0 else -1.0
                corner = sgn[iy, ix]
                b, r, t, l = (edge_index.get(k) for k in
                              (("h", iy, ix), ("v", iy, ix + 1), ("h", iy + 1, ix), ("v", iy, ix)))
                pairs = ([(b, r), (t, l)] if csgn == corner else [(b, l), (t, r)])
                pairs = [p for p in pairs if p[0] is not None and p[1] is not None
                         and ok[p[0]] and ok[p[1]]]
            else:
                pairs = []
            for a, b in pairs:
                links.setdefault(a, set()).add(b)
                links.setdefault(b, set()).add(a)

    segments = []
    seen = set()
    # starting at degree-1 endpoints first keeps open arcs in one piece
    nodes = sorted(links, key=lambda i: len(links[i]))
    for start in nodes:
        if start in seen:
            continue
        chain = [start]
        seen.add(start)
        while True:
            nxt = [v for v in links[chain[-1]] if v not in seen]
            if not nxt:
                break
            chain.append(nxt[0])
            seen.add(nxt[0])
        if len(chain) > 1:
            segments.append(refined[chain])
    return EPContour(segments, refined[ok], np.abs(dvals[ok]), (xs, ys, field_d),
                     resolution, dropped=dropped)


# --------------------------------------------------------- singular points

def _grad(ev, pt, h):
    px, py = pt
    dx = (ev.disc([(px + h, py)])[0] - ev.disc([(px - h, py)])[0]) / (2 * h)
    dy = (ev.disc([(px, py + h)])[0] - ev.disc([(px, py - h)])[0]) / (2 * h)
    return np.array([dx.real, dy.real])


def _nelder_mead(fun, x0, step, iters=220):
    simplex = [np.asarray(x0, float)]
    simplex += [x0 + step * e for e in np.eye(2)]
    vals = [fun(p) for p in simplex]
    for _ in range(iters):
        order = np.argsort(vals)
        simplex = [simplex[i] for i in order]
        vals = [vals[i] for i in order]
        centroid = (simplex[0] + simplex[1]) / 2.0
        refl = centroid + (centroid - simplex[2])
        fr = fun(refl)
        if fr < vals[0]:
            exp = centroid + 2.0 * (centroid - simplex[2])
            fe = fun(exp)
            simplex[2], vals[2] = (exp, fe) if fe < fr else (refl, fr)
        elif fr < vals[1]:
            simplex[2], vals[2] = refl, fr
        else:
            contr = centroid + 0.5 * (simplex[2] - centroid)
            fc = fun(contr)
            if fc < vals[2]:
                simplex[2], vals[2] = contr, fc
            else:
                simplex[1] = simplex[0] + 0.5 * (simplex[1] - simplex[0])
                simplex[2] = simplex[0] + 0.5 * (simplex[2] - simplex[0])
                vals[1], vals[2] = fun(simplex[1]), fun(simplex[2])
        if np.max(np.abs(np.array(simplex[1:]) - simplex[0])) < 1e-12:
            break
    best = int(np.argmin(vals))
    return simplex[best], vals[best]


def _classify_circle(ev, pt, radius):
    angles = 2 * np.pi * np.arange(CIRCLE_SAMPLES) / CIRCLE_SAMPLES
    ring = np.column_stack([pt[0] + radius * np.cos(angles),
                            pt[1] + radius * np.sin(angles)])
    vals = ev.disc(ring).real
    sign = np.where(vals >= 0, 1, -1)
    flips = np.nonzero(sign != np.roll(sign, -1))[0]
    if len(flips) == 0:
        return "Acnode", []
    cross_angles = angles[(flips + 1) % CIRCLE_SAMPLES]
    if len(flips) == 2:
        dphi = abs(cross_angles[0] - cross_angles[1])
        dphi = min(dphi, 2 * np.pi - dphi)
        return ("Cusp" if dphi < 0.5 * np.pi else "Regular"), cross_angles
    return "Crunode", cross_angles


def singular_points(family, contour, grad_rel=0.05, circle_radius=CIRCLE_RADIUS):
    """Locate and classify singular points of the traced locus.

    Candidates: contour points whose finite-difference gradient of Re D is
    anomalously small, plus grid local minima of |D| away from the contour
    (acnodes never produce sign changes).  Each candidate is polished by
    Nelder-Mead on |D|^2 + (h |grad D|)^2 and classified by counting sign
    changes of Re D on a small circle.
    """
    ev = _DiscEvaluator(family)
    xs, ys, field_d = contour.grid
    h = max(xs[1] - xs[0], ys[1] - ys[0])
    scale_d = float(np.max(np.abs(field_d.real))) or 1.0

    candidates = []
    if len(contour.points):
        grads = np.array([np.linalg.norm(_grad(ev, pt, h)) for pt in contour.points])
        gscale = np.median(grads) or 1.0
        candidates += [tuple(pt) for pt, g in zip(contour.points, grads)
                       if g <= grad_rel * gscale]
    # interior |D| minima without sign change nearby: acnode candidates
    absd = np.abs(field_d.real)
    for iy in range(1, len(ys) - 1):
        for ix in range(1, len(xs) - 1):
            patch = absd[iy - 1:iy + 2, ix - 1:ix + 2]
            if absd[iy, ix] == patch.min() and absd[iy, ix] <= 1e-2 * scale_d:
                sgn_patch = np.sign(field_d.real[iy - 1:iy + 2, ix - 1:ix + 2])
                if np.all(sgn_patch == sgn_patch[1, 1]):
                    candidates.append((xs[ix], ys[iy]))

    def objective(p):
        d = ev.disc([p])[0]
        g = _grad(ev, p, 1e-5 * max(1.0, h))
        return abs(d) ** 2 + (h * np.linalg.norm(g)) ** 2

    found = []
    for cand in candidates:
        pt, val = _nelder_mead(objective, np.asarray(cand, float), 0.5 * h)
        if np.sqrt(val) > 1e-7 * scale_d or not family.in_box(pt):
            continue
        if any(np.hypot(pt[0] - q.point[0], pt[1] - q.point[1]) < 2 * circle_radius
               for q in found):
            continue
        kind, _ = _classify_circle(ev, pt, circle_radius)
        if kind == "Regular":
            continue
        order = 2
        if kind == "Cusp":
            for ang in GENERIC_DIRECTIONS:
                try:
                    order, _ = puiseux_fit(family, pt, (np.cos(ang), np.sin(ang)))
                except FitRejected:
                    continue
                if order >= 3:
                    break
        found.append(SingularPoint(tuple(pt), kind, order))
    contour.singular_points = found
    return found


# ------------------------------------------------------------ Puiseux fit

def puiseux_fit(family, point, direction, theta_min=1e-6, theta_max=1e-3,
                samples=8, slope_tol=0.05):
    """Puiseux exponent k and leading coefficient along a parameter ray.

    Samples the one-sided Hausdorff distance between the perturbed and
    base spectra at geometric step sizes, fits the log-log slope, and
    accepts the nearest integer exponent within slope_tol.
    """
    u = np.asarray(direction, float)
    u = u / np.linalg.norm(u)
    point = np.asarray(point, float)
    w0 = np.linalg.eigvals(family.matrix(point))
    thetas = np.geomspace(theta_min, theta_max, samples)
    deltas = []
    for th in thetas:
        w = np.linalg.eigvals(family.matrix(point + th * u))
        deltas.append(float(np.max(np.min(np.abs(w[:, None] - w0[None, :]), axis=1))))
    deltas = np.array(deltas)
    if np.any(deltas <= 0.0):
        raise FitRejected("spectrum insensitive along this direction")
    slope = np.polyfit(np.log(thetas), np.log(deltas), 1)[0]
    if slope <= 0:
        raise FitRejected(f"nonpositive slope {slope:.3f}")
    k = int(round(1.0 / slope))
    if not 1 <= k <= 6 or abs(slope - 1.0 / k) > slope_tol:
        raise FitRejected(f"slope {slope:.4f} matches no integer exponent in [1, 6]")
    coeff = float(np.exp(np.mean(np.log(deltas) - np.log(thetas) / k)))
    return k, coeff


def ep_asymptote(n, delta, t=1.0):
    """Large-detuning estimate gamma_EP = t^(n-1) / Delta^(n-2), m = 1."""
    if n == 2:
        return float(t)
    if n < 3:
        raise OutOfRegime("need n >= 2")
    if delta / t < 5.0:
        raise OutOfRegime(f"Delta/t = {delta / t:.2f} below validity regime 5")
    return float(t ** (n - 1) / delta ** (n - 2))
