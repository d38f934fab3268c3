"""Discriminant surfaces, locus tracing, singular points, Puiseux fits."""

import numpy as np
import pytest

from nhlat import exceptional as ep
from nhlat.errors import OutOfRegime
from nhlat.spectra import eig

rng = np.random.default_rng(55)


class TestDiscriminantSurface:
    def test_qubit_vanishes_at_ep(self):
        fam = ep.qubit_family()
        assert abs(ep.discriminant_surface(fam, (1.0, 1.0))) < 1e-10

    def test_three_site_origin_value(self):
        fam = ep.uniform_defect_family(3, 1)
        assert ep.discriminant_surface(fam, (0.0, 0.0)) == pytest.approx(32.0, abs=1e-8)

    def test_three_site_polynomial_surface(self):
        # Disc = 32 - 48 g^2 + 24 g^4 - 4 g^6 + 4 d^2 - 40 g^2 d^2
        #        - 8 g^4 d^2 - 4 g^2 d^4
        fam = ep.uniform_defect_family(3, 1)
        for _ in range(10):
            d, g = rng.normal(size=2)
            want = (32 - 48 * g**2 + 24 * g**4 - 4 * g**6 + 4 * d**2
                    - 40 * g**2 * d**2 - 8 * g**4 * d**2 - 4 * g**2 * d**4)
            got = ep.discriminant_surface(fam, (d, g))
            assert abs(got - want) <= 1e-9 * max(1.0, abs(want))

    def test_matches_root_difference_product(self):
        fam = ep.uniform_defect_family(5, 2)
        for _ in range(5):
            pt = rng.uniform(-1.5, 1.5, size=2)
            w = np.linalg.eigvals(fam.matrix(pt))
            want = np.prod([(w[i] - w[j]) ** 2
                            for i in range(5) for j in range(i + 1, 5)])
            got = ep.discriminant_surface(fam, pt)
            assert abs(got - want) <= 1e-7 * max(1.0, abs(want))

    def test_imaginary_part_noise_level(self):
        fam = ep.uniform_defect_family(6, 1)
        for _ in range(5):
            d = ep.discriminant_surface(fam, rng.uniform(-2, 2, size=2))
            assert abs(d.imag) <= 1e-9 * max(1.0, abs(d))


class TestEpLocus:
    def test_qubit_lines(self):
        fam = ep.qubit_family(box=((0.0, 2.0), (0.1, 2.0)))
        contour = ep.ep_locus(fam, resolution=48)
        assert len(contour.points) > 10
        for w, t in contour.points:
            assert abs(w - t) < 1e-7 or abs(w + t) < 1e-7

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_uniform_chain_axis_crossing_odd(self, n):
        # odd chains cross the axis at sqrt((n+1)/(n-1)), a zero mode of
        # algebraic multiplicity three
        fam = ep.uniform_defect_family(n, 1, box=((-0.2, 0.2), (0.9, 1.5)))
        contour = ep.ep_locus(fam, resolution=32)
        on_axis = [g for d, g in contour.points if abs(d) < 1e-9]
        assert on_axis
        want = np.sqrt((n + 1.0) / (n - 1.0))
        assert min(abs(g - want) for g in on_axis) < 1e-6

    def test_nn_defect_threshold_delta_independent(self):
        fam = ep.nn_defect_family(6, t=1.2, box=((-1.5, 1.5), (0.5, 2.0)))
        contour = ep.ep_locus(fam, resolution=32)
        assert len(contour.points) > 10
        for d, g in contour.points:
            assert abs(g - 1.2) < 1e-7

    def test_locus_points_have_small_gaps_and_defect(self):
        fam = ep.uniform_defect_family(4, 1, box=((-1.5, 1.5), (0.3, 1.8)))
        contour = ep.ep_locus(fam, resolution=32)
        assert len(contour.points) > 5
        for pt in contour.points[:: max(1, len(contour.points) // 10)]:
            h = fam.matrix(pt)
            rep = eig(h, cluster_radius=1e-3 * np.linalg.norm(h, 2))
            w = np.linalg.eigvals(h)
            gaps = np.abs(w[:, None] - w[None, :]) + np.diag([np.inf] * len(w))
            assert gaps.min() <= 1e-3 * np.linalg.norm(h, 2)
            assert any(e.algebraic_mult - e.geometric_mult >= 1
                       for e in rep.eigenvalues)

    def test_symmetry_of_locus(self):
        fam = ep.uniform_defect_family(4, 1, box=((-1.5, 1.5), (-1.8, 1.8)))
        contour = ep.ep_locus(fam, resolution=48)
        pts = contour.points
        assert len(pts) > 10
        for pt in pts[:: max(1, len(pts) // 12)]:
            for refl in ((pt[0], -pt[1]), (-pt[0], pt[1])):
                assert abs(ep.discriminant_surface(fam, refl)) < 1e-6 * max(
                    1.0, np.max(np.abs(contour.grid[2].real)))

    def test_resolution_guard(self):
        with pytest.raises(ValueError):
            ep.ep_locus(ep.qubit_family(), resolution=8)


class TestSingularPoints:
    def test_three_site_cusps(self):
        fam = ep.uniform_defect_family(3, 1, box=((-3.0, 3.0), (-3.0, 3.0)))
        contour = ep.ep_locus(fam, resolution=96)
        singular = ep.singular_points(fam, contour)
        got = sorted([s.point for s in singular], key=lambda p: p[1])
        want = [(0.0, -np.sqrt(2.0)), (0.0, np.sqrt(2.0))]
        assert len(got) == 2
        for g, w in zip(got, want):
            assert np.hypot(g[0] - w[0], g[1] - w[1]) < 1e-5
        assert all(s.kind == "Cusp" for s in singular)
        assert all(s.ep_order == 3 for s in singular)

    def test_five_two_crunode_acnode(self):
        fam = ep.uniform_defect_family(5, 2, box=((-1.0, 1.0), (0.2, 3.2)))
        contour = ep.ep_locus(fam, resolution=96)
        singular = ep.singular_points(fam, contour)
        kinds = {s.kind: s.point for s in singular}
        assert "Crunode" in kinds and "Acnode" in kinds
        cr, ac = kinds["Crunode"], kinds["Acnode"]
        assert np.hypot(cr[0], cr[1] - (np.sqrt(3) - 1)) < 1e-5
        assert np.hypot(ac[0], ac[1] - (np.sqrt(3) + 1)) < 1e-5
        # zero is an eigenvalue at both singular points
        for pt in (cr, ac):
            w = np.linalg.eigvals(fam.matrix(pt))
            assert np.min(np.abs(w)) < 1e-8

    def test_qubit_has_no_singular_points(self):
        fam = ep.qubit_family(box=((0.2, 1.8), (0.2, 1.8)))
        contour = ep.ep_locus(fam, resolution=48)
        assert ep.singular_points(fam, contour) == []


class TestPuiseuxFit:
    def test_qubit_ep2(self):
        t = 1.3
        fam = ep.qubit_family()
        k, coeff = ep.puiseux_fit(fam, (t, t), (1.0, 0.0))
        assert k == 2
        assert coeff == pytest.approx(np.sqrt(2 * t), rel=0.02)

    def test_hermitian_interior_linear(self):
        fam = ep.qubit_family()
        k, _ = ep.puiseux_fit(fam, (0.3, 1.0), (1.0, 0.0))
        assert k == 1

    def test_three_site_cusp_order(self):
        fam = ep.uniform_defect_family(3, 1)
        k, _ = ep.puiseux_fit(fam, (0.0, np.sqrt(2.0)), (np.cos(0.3), np.sin(0.3)))
        assert k == 3

    def test_cusp_coefficient_stable_over_radii(self):
        fam = ep.uniform_defect_family(3, 1)
        _, c1 = ep.puiseux_fit(fam, (0.0, np.sqrt(2.0)), (1.0, 0.0),
                               theta_min=1e-6, theta_max=1e-5)
        _, c2 = ep.puiseux_fit(fam, (0.0, np.sqrt(2.0)), (1.0, 0.0),
                               theta_min=1e-4, theta_max=1e-3)
        assert c1 == pytest.approx(c2, rel=0.05)


class TestAsymptote:
    def test_three_site_form(self):
        assert ep.ep_asymptote(3, 10.0, 1.0) == pytest.approx(0.1)
        assert ep.ep_asymptote(3, 10.0, 2.0) == pytest.approx(0.4)

    def test_two_site_limit(self):
        assert ep.ep_asymptote(2, 50.0, 0.7) == pytest.approx(0.7)

    def test_out_of_regime(self):
        with pytest.raises(OutOfRegime):
            ep.ep_asymptote(4, 2.0, 1.0)

    def test_n4_matches_traced_locus(self):
        n, t, delta = 4, 1.0, 20.0
        est = ep.ep_asymptote(n, delta, t)
        fam = ep.uniform_defect_family(n, 1, t, box=((0.0, 25.0), (0.0, 1.0)))
        crossing = ep.bisect_crossing(fam, (delta, 0.2 * est), (delta, 5.0 * est))
        assert abs(est - crossing[1]) / crossing[1] < 0.05


class TestCuspCorrespondence:
    def test_m1_family_orders(self):
        # every detected cusp fits k = 3, every regular locus sample k = 2
        fam = ep.uniform_defect_family(4, 1, box=((-2.5, 2.5), (0.1, 2.0)))
        contour = ep.ep_locus(fam, resolution=64)
        singular = ep.singular_points(fam, contour)
        for s in singular:
            assert s.kind == "Cusp"
            assert s.ep_order == 3
        spts = np.array([s.point for s in singular]) if singular else np.empty((0, 2))
        count = 0
        for pt in contour.points[:: max(1, len(contour.points) // 12)]:
            if len(spts) and np.min(np.hypot(*(spts - pt).T)) < 0.15:
                continue
            k, _ = ep.puiseux_fit(fam, pt, (np.cos(0.21), np.sin(0.21)))
            assert k == 2
            count += 1
        assert count >= 5

    def test_cusp_count_conjecture_report(self):
        # reported, not asserted: n - 2 cusps in the upper half plane
        for n in (3, 4):
            fam = ep.uniform_defect_family(n, 1, box=((-2.8, 2.8), (0.05, 2.2)))
            contour = ep.ep_locus(fam, resolution=96)
            singular = ep.singular_points(fam, contour)
            cusps = [s for s in singular if s.kind == "Cusp" and s.point[1] > 0]
            status = "pass" if len(cusps) == n - 2 else "FAIL"
            print(f"cusp-count conjecture n={n}: found {len(cusps)}, "
                  f"expected {n - 2} [{status}]")
