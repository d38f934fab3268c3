"""Intertwiner construction, positivity verdicts, generation tactics."""

import numpy as np
import pytest

from nhlat import metric
from nhlat.errors import (AnticommutationViolation, NotIntertwiner,
                          NotInvolution, NotPositive, NotQuasiHermitian,
                          OrthogonalityViolation, ParamViolation)
from nhlat.lattice import (NearestNeighbourDefect, Qubit, UniformChain,
                           build_matrix, symmetrizer)
from nhlat.metric import (commuting_inclusion, equiv_hermitian,
                          far_defect_metric, general_metric_family,
                          intertwiner_family, make_report, nn_c_symmetry,
                          nn_defect_metric, pencil_metric, pencil_spectrum,
                          qubit_intertwiner, rep_generate, sqrtm_posdef)

rng = np.random.default_rng(303)


def rand_nn(n, complex_t=False, delta=None, gamma_frac=0.5):
    mags = rng.uniform(0.5, 2.0, size=n - 1)
    if complex_t:
        phases = rng.uniform(0, 2 * np.pi, size=n - 1)
        for j in range(1, n):
            phases[n - j - 1] = phases[j - 1]
        t = mags * np.exp(1j * phases)
    else:
        t = mags.astype(complex)
    tm = abs(t[n // 2 - 1])
    delta = rng.normal() if delta is None else delta
    side = rng.normal(size=n // 2 - 1)
    return NearestNeighbourDefect(n, t, delta, gamma_frac * tm, side).to_spec(), tm


def assert_multisets(a, b, tol=1e-8):
    b = list(np.asarray(b, complex))
    for x in np.asarray(a, complex):
        j = int(np.argmin(np.abs(np.array(b) - x)))
        assert abs(b[j] - x) < tol
        b.pop(j)
    assert not b


class TestGeneralMetricFamily:
    def test_hermitian_identity_weights(self):
        a = rng.normal(size=(5, 5))
        h = a + a.T
        rep = general_metric_family(h, np.ones(5))
        assert np.allclose(rep.eta, np.eye(5), atol=1e-9)

    def test_qubit_unbroken(self):
        h = build_matrix(Qubit(0.5, 1.0).to_spec())
        rep = general_metric_family(h, np.ones(2))
        assert rep.hermiticity_residual <= 1e-10
        assert rep.intertwining_residual <= 1e-9
        assert rep.min_eigenvalue > 0
        assert rep.positivity == "PositiveDefinite"

    def test_qubit_broken_rejected(self):
        h = build_matrix(Qubit(2.0, 1.0).to_spec())
        with pytest.raises(NotQuasiHermitian):
            general_metric_family(h, np.ones(2))

    def test_defective_rejected(self):
        h = build_matrix(Qubit(1.0, 1.0).to_spec())
        with pytest.raises(NotQuasiHermitian):
            general_metric_family(h, np.ones(2))


class TestIntertwinerFamily:
    def test_hermitian_powers(self):
        a = rng.normal(size=(4, 4))
        h = a + a.T
        for k in range(4):
            rep = intertwiner_family(np.eye(4), h, k)
            assert rep.hermiticity_residual <= 1e-10
            assert rep.intertwining_residual <= 1e-8

    def test_nn_second_family_member(self):
        spec, tm = rand_nn(6)
        h = build_matrix(spec)
        eta0 = nn_defect_metric(spec, 1j * spec.z[2].imag).eta
        rep = intertwiner_family(eta0, h, 1)
        assert rep.hermiticity_residual <= 1e-10
        assert rep.intertwining_residual <= 1e-8

    def test_hermitian_times_metric_products(self):
        # H = G eta with G Hermitian is eta-pseudo-Hermitian by construction
        for _ in range(10):
            n = 5
            g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            g = g + g.conj().T
            x = rng.normal(size=(n, n))
            eta0 = x @ x.T + n * np.eye(n)
            h = g @ eta0
            for k in (0, 1, 2):
                rep = intertwiner_family(eta0, h, k)
                assert rep.intertwining_residual <= 1e-8

    def test_rejects_non_intertwiner(self):
        with pytest.raises(NotIntertwiner):
            intertwiner_family(np.eye(2), build_matrix(Qubit(0.5, 1.0).to_spec()), 1)


class TestQubitIntertwiner:
    def test_beta_zero_scalar(self):
        a = np.array([0.3, -1.0, 0.4])
        rep = qubit_intertwiner(a, np.zeros(3), 0.0, 1.0)
        assert np.allclose(rep.eta, (a @ a) * np.eye(2))
        assert rep.positivity == "PositiveDefinite"

    @pytest.mark.parametrize("w,t", [(0.5, 1.0), (0.9, 1.0), (1.4, 1.0)])
    def test_qubit_positivity_boundary(self, w, t):
        rep = qubit_intertwiner([t, 0, 0], [0, 0, w], 0.0, 1.0)
        assert rep.intertwining_residual <= 1e-12
        want_positive = t * t > w * w
        assert (rep.positivity == "PositiveDefinite") == want_positive
        assert rep.extras["analytic_positive"] == want_positive

    def test_boundary_semidefinite(self):
        rep = qubit_intertwiner([1.0, 0, 0], [0, 0, 1.0], 0.0, 1.0)
        assert abs(rep.min_eigenvalue) <= 1e-10
        assert rep.positivity == "PositiveSemidefinite"

    def test_orthogonality_enforced(self):
        with pytest.raises(OrthogonalityViolation):
            qubit_intertwiner([1, 0, 0], [1, 0, 1], 0.0, 1.0)

    def test_verdict_matches_inequality_random(self):
        for _ in range(30):
            a = rng.normal(size=3)
            b = rng.normal(size=3)
            b -= (a @ b) / (a @ a) * a
            zeta, xi = rng.normal(size=2)
            if abs(xi) < 1e-3:
                continue
            rep = qubit_intertwiner(a, b, zeta, xi)
            analytic = xi > 0 and (a @ a - b @ b) * xi ** 2 > zeta ** 2
            if abs((a @ a - b @ b) * xi ** 2 - zeta ** 2) > 1e-10:
                assert (rep.positivity == "PositiveDefinite") == analytic
                assert rep.extras["analytic_positive"] == analytic


class TestNnDefectMetric:
    def test_zero_z_diagonal(self):
        spec, tm = rand_nn(6, gamma_frac=0.0)
        rep = nn_defect_metric(spec, 0.0)
        assert np.allclose(rep.eta, np.diag(np.diag(rep.eta)))
        assert rep.positivity == "PositiveDefinite"

    def test_boundary_kernel_dimension(self):
        for n in (4, 6, 8):
            spec, tm = rand_nn(n, gamma_frac=1.0)
            rep = nn_defect_metric(spec, 1j * tm)
            assert rep.positivity == "PositiveSemidefinite"
            assert rep.kernel_dim == n // 2
            assert rep.intertwining_residual <= 1e-10

    @pytest.mark.parametrize("complex_t", [False, True])
    def test_random_admissible_positive(self, complex_t):
        for _ in range(5):
            spec, tm = rand_nn(8, complex_t=complex_t, gamma_frac=0.6)
            z = rng.normal() * 0.3 + 1j * spec.z[3].imag
            if abs(z) >= tm:
                continue
            rep = nn_defect_metric(spec, z)
            assert rep.hermiticity_residual <= 1e-10
            assert rep.intertwining_residual <= 1e-10
            assert rep.positivity == "PositiveDefinite"

    def test_rejects_wrong_imaginary_part(self):
        spec, _ = rand_nn(6)
        with pytest.raises(ParamViolation):
            nn_defect_metric(spec, 1j * (spec.z[2].imag + 0.5))

    def test_rejects_non_model_spec(self):
        spec = UniformChain(6, 1, 1.0, 1j, -1j).to_spec()
        with pytest.raises(ParamViolation):
            nn_defect_metric(spec, 1j)


class TestEquivHermitian:
    def test_hermitian_limit_is_symmetrized(self):
        spec, _ = rand_nn(6, gamma_frac=0.0)
        h, _ = equiv_hermitian(spec, 0.0)
        d = symmetrizer(spec)
        want = np.diag(1 / d) @ build_matrix(spec) @ np.diag(d)
        assert np.max(np.abs(h - want)) < 1e-9

    def test_imaginary_z_real_central_hopping(self):
        spec, tm = rand_nn(8, gamma_frac=0.5)
        h, _ = equiv_hermitian(spec, 1j * spec.z[3].imag)
        assert abs(h[3, 4].imag) < 1e-10
        assert np.linalg.norm(h - h.conj().T) <= 1e-9 * np.linalg.norm(h)

    def test_isospectral_tridiagonal(self):
        for _ in range(5):
            spec, tm = rand_nn(8, complex_t=True, gamma_frac=0.4)
            h, omega = equiv_hermitian(spec, 1j * spec.z[3].imag)
            big = build_matrix(spec)
            assert np.linalg.norm(h - h.conj().T) <= 1e-9 * np.linalg.norm(h)
            assert_multisets(np.linalg.eigvalsh(0.5 * (h + h.conj().T)),
                             np.linalg.eigvals(big), tol=1e-8)
            assert np.max(np.abs(np.triu(h, 2))) <= 1e-12 * np.linalg.norm(h)
            assert np.max(np.abs(np.tril(h, -2))) <= 1e-12 * np.linalg.norm(h)

    def test_rejects_broken_regime(self):
        spec, tm = rand_nn(6, gamma_frac=1.5)
        with pytest.raises(NotPositive):
            equiv_hermitian(spec, 1j * spec.z[2].imag)


class TestFarDefectMetric:
    def test_hermitian_limit(self):
        rep = far_defect_metric(7, 0.4, 0.0, 1.1)
        assert np.allclose(rep.eta, np.eye(7))

    def test_boundary_spectrum(self):
        for n in (6, 10):
            rep = far_defect_metric(n, 0.0, 1.0, 1.0)
            w = np.sort(np.linalg.eigvalsh(rep.eta))
            assert np.max(np.abs(w[:-1])) < 1e-8
            assert abs(w[-1] - n) < 1e-8

    def test_positive_inside_axis(self):
        rep = far_defect_metric(10, 0.0, 0.5, 1.0)
        assert rep.positivity == "PositiveDefinite"

    def test_intertwines_family(self):
        for _ in range(5):
            n = int(rng.integers(4, 11))
            rep = far_defect_metric(n, rng.normal(), rng.normal(), rng.uniform(0.5, 2))
            assert rep.intertwining_residual <= 1e-9

    def test_spectrum_reflection_symmetries(self):
        n = 8
        d, g = 0.7, 0.4
        base = np.sort(np.linalg.eigvalsh(far_defect_metric(n, d, g).eta))
        for dd, gg in ((d, -g), (-d, g), (-d, -g)):
            w = np.sort(np.linalg.eigvalsh(far_defect_metric(n, dd, gg).eta))
            assert np.allclose(w, base, atol=1e-10)


class TestPencil:
    def toeplitz(self, n):
        j = np.zeros((n, n), complex)
        for k in range(n - 1):
            j[k + 1, k] = j[k, k + 1] = 1.0
        return j

    def stagger(self, n):
        return np.diag([(-1.0) ** i for i in range(1, n + 1)]).astype(complex)

    def test_gamma_zero(self):
        n = 6
        rep = pencil_metric(self.toeplitz(n), self.stagger(n), 0.0)
        assert np.allclose(rep.eta, np.eye(n))

    def test_toeplitz_sine_formula(self):
        for n in (6, 8):
            j, e = self.toeplitz(n), self.stagger(n)
            g = 0.37
            rep = pencil_metric(j, e, g)
            assert rep.hermiticity_residual <= 1e-12
            assert rep.intertwining_residual <= 1e-9
            want = np.eye(n, dtype=complex)
            for a in range(1, n + 1):
                for b in range(1, n + 1):
                    want[a - 1, b - 1] += (-1.0) ** (n // 2 + a + b) * (-1.0) ** b \
                        * 1j * g * np.sin(min(a, b) * np.pi / 2) \
                        * np.sin((n - max(a, b) + 1) * np.pi / 2)
            assert np.max(np.abs(rep.eta - want)) < 1e-12

    def test_hatano_nelson_weighted_formula(self):
        n = 6
        a, b = 1.3, 0.6
        j = np.zeros((n, n), complex)
        for k in range(n - 1):
            j[k + 1, k] = a
            j[k, k + 1] = b
        e = self.stagger(n)
        g = 0.31
        eta0 = np.diag([(b / a) ** (k - 1) for k in range(1, n + 1)]).astype(complex)
        rep = pencil_metric(j, e, g, eta0)
        assert rep.intertwining_residual <= 1e-9
        want = np.zeros((n, n), complex)
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                core = (1.0 if p == q else 0.0) \
                    + (-1.0) ** (n // 2 + p + q) * (-1.0) ** q * 1j * g \
                    * np.sin(min(p, q) * np.pi / 2) \
                    * np.sin((n - max(p, q) + 1) * np.pi / 2) / np.sqrt(a * b)
                want[p - 1, q - 1] = core * (b / a) ** ((p - 1) / 2) \
                    * (b / a) ** ((q - 1) / 2)
        assert np.max(np.abs(rep.eta - want)) < 1e-12

    def test_bounds_reported(self):
        n = 6
        rep = pencil_metric(self.toeplitz(n), self.stagger(n), 0.2)
        assert rep.extras["stated_bound"] > 0
        assert rep.extras["neumann_bound"] > 0

    def test_anticommutation_enforced(self):
        with pytest.raises(AnticommutationViolation):
            pencil_metric(np.eye(4), self.stagger(4), 0.1)

    def test_qubit_pencil_spectrum(self):
        t, g = 1.2, 0.5
        j = t * np.array([[0, 1], [1, 0]], dtype=complex)
        e = np.diag([1.0, -1.0]).astype(complex)
        vals, lifted = pencil_spectrum(j, e, g)
        assert_multisets(vals, [np.sqrt(t * t - g * g), -np.sqrt(t * t - g * g)])
        h = j + 1j * g * e
        for val, vec in lifted:
            assert np.linalg.norm(h @ vec - val * vec) <= \
                1e-8 * np.linalg.norm(h) * np.linalg.norm(vec)

    def test_toeplitz_pencil_vs_dense(self):
        n = 6
        j, e = self.toeplitz(n), self.stagger(n)
        g = 0.8
        vals, lifted = pencil_spectrum(j, e, g)
        h = j + 1j * g * e
        assert_multisets(vals, np.linalg.eigvals(h), tol=1e-8)
        for val, vec in lifted:
            assert np.linalg.norm(h @ vec - val * vec) <= \
                1e-8 * np.linalg.norm(h) * np.linalg.norm(vec)

    def test_involution_enforced(self):
        with pytest.raises(NotInvolution):
            pencil_spectrum(self.toeplitz(4), 2 * self.stagger(4), 0.1)


class TestRepGenerate:
    def test_shi_model(self):
        n = 5
        kappa = rng.normal(size=n)
        gsq = 0.7
        a = rng.normal(size=(n, n))
        j = a + a.T
        h_list = [k * np.array([[0, 1], [gsq, 0]]) for k in kappa]
        m2 = np.diag([gsq, 1.0])
        big_a = np.block([[j, np.zeros((n, n))], [np.zeros((n, n)), j]])
        h, eta, rep = rep_generate(np.eye(n), h_list, m2, big_a)
        want = np.block([[j, np.diag(kappa)], [gsq * np.diag(kappa), j]])
        assert np.allclose(h, want)
        assert np.allclose(eta, np.diag([gsq] * n + [1.0] * n))
        assert rep.intertwining_residual <= 1e-9
        assert rep.positivity == "PositiveDefinite"

    def test_shi_imaginary_parts(self):
        # kappa_k = kappa, gamma^2 < 0: every eigenvalue has Im = +-|g|
        n = 4
        g = 0.6
        a = rng.normal(size=(n, n))
        j = a + a.T
        h_list = [np.array([[0, 1], [-g * g, 0]])] * n
        big_a = np.block([[j, np.zeros((n, n))], [np.zeros((n, n)), j]])
        h, eta, rep = rep_generate(np.eye(n), h_list, np.diag([-g * g, 1.0]), big_a)
        w = np.linalg.eigvals(h)
        assert np.allclose(np.abs(w.imag), g, atol=1e-9)

    def test_reconstructs_nn_model(self):
        n = 8
        m = n // 2
        t = rng.uniform(0.5, 1.5, size=n - 1)
        delta, gamma = 0.3, 0.45 * t[m - 1]
        spec = NearestNeighbourDefect(n, t, delta, gamma).to_spec()
        d_half = symmetrizer(spec)
        hs = np.diag(1 / d_half) @ build_matrix(spec) @ np.diag(d_half)
        tau = hs[m - 1, m].real
        j = hs[:m, :m].copy()
        p = np.eye(m)[::-1]
        h_list = [np.zeros((2, 2))] * (m - 1) + \
            [np.array([[delta + 1j * gamma, tau], [tau, delta - 1j * gamma]])]
        z = 0.2 + 1j * gamma
        m2 = np.array([[1.0, np.conj(z) / tau], [z / tau, 1.0]])
        # the defect block enters through h_m, so A carries only the bulk
        big_a = np.block([[j, np.zeros((m, m))], [np.zeros((m, m)), p @ j @ p]])
        big_a[m - 1, m - 1] = 0.0
        big_a[m, m] = 0.0
        h, eta, rep = rep_generate(p, h_list, m2, big_a)
        assert np.allclose(h, hs, atol=1e-12)
        assert rep.intertwining_residual <= 1e-9
        want_eta = nn_defect_metric(spec, z).eta
        ds = np.diag(d_half)
        # map the original-gauge metric into the symmetric gauge
        assert np.max(np.abs(ds.conj().T @ want_eta @ ds - eta)) < 1e-10

    def test_4x4_example_real_spectrum(self):
        p2 = np.eye(2)[::-1]
        for _ in range(20):
            t = rng.normal()
            g = rng.uniform(-0.99, 0.99)
            h_list = [np.array([[1j * g, 1], [1, -1j * g]]),
                      np.array([[g, -1j], [1j, g]])]
            m2 = np.array([[1, -1j * g], [1j * g, 1]])
            big_a = np.block([[t * p2, np.zeros((2, 2))], [np.zeros((2, 2)), t * p2]])
            h, eta, rep = rep_generate(p2, h_list, m2, big_a)
            want = np.array([[1j * g, t, 0, 1], [t, g, -1j, 0],
                             [0, 1j, g, t], [1, 0, t, -1j * g]])
            assert np.allclose(h, want)
            assert rep.intertwining_residual <= 1e-10
            assert np.max(np.abs(np.linalg.eigvals(h).imag)) < 1e-7


class TestCommutingInclusion:
    def test_degenerate_disks(self):
        disks, real_pred = commuting_inclusion([1.0, 2.0], [0.0, 0.0])
        assert all(d.radius == 0.0 for d in disks)
        assert real_pred

    def test_shi_tangent_circles(self):
        disks, real_pred = commuting_inclusion([0.5, 1.5], [0.3j, -0.3j])
        assert real_pred
        for d in disks:
            assert abs(abs(d.center.imag) - d.radius) < 1e-12

    def test_random_commuting_construction_contained(self):
        n = 4
        for _ in range(5):
            lam_tilde = 1j * rng.normal(size=2)
            a = rng.normal(size=(n, n))
            j = a + a.T
            h_list = [np.diag([lt, lt]) for lt in
                      rng.choice(lam_tilde, size=n)]
            big_a = np.block([[j, np.zeros((n, n))], [np.zeros((n, n)), j]])
            da = np.diag(np.array([hk[0, 0] for hk in h_list]))
            h = big_a + np.block([[da, np.zeros((n, n))],
                                  [np.zeros((n, n)), da]])
            disks, _ = commuting_inclusion(np.linalg.eigvalsh(j), lam_tilde)
            from nhlat.spectra import in_union
            for w in np.linalg.eigvals(h):
                assert in_union(disks, w, slack=1e-9)


class TestInvariantsAcrossConstructions:
    def collect_pairs(self):
        pairs = []
        spec, tm = rand_nn(6)
        h = build_matrix(spec)
        pairs.append((h, nn_defect_metric(spec, 1j * spec.z[2].imag).eta))
        rep = far_defect_metric(7, 0.3, 0.2)
        from nhlat.lattice import UniformChain
        pairs.append((build_matrix(UniformChain(7, 1, 1.0, 0.3 + 0.2j, 0.3 - 0.2j).to_spec()),
                      rep.eta))
        j = np.zeros((6, 6), complex)
        for k in range(5):
            j[k + 1, k] = j[k, k + 1] = 1.0
        e = np.diag([(-1.0) ** i for i in range(1, 7)]).astype(complex)
        pairs.append((j + 0.4j * e, pencil_metric(j, e, 0.4).eta))
        return pairs

    def test_positive_definite_implies_hermitizable(self):
        spec, tm = rand_nn(8, gamma_frac=0.5)
        rep = nn_defect_metric(spec, 1j * spec.z[3].imag)
        assert rep.positivity == "PositiveDefinite"
        omega = sqrtm_posdef(rep.eta)
        h = omega @ build_matrix(spec) @ np.linalg.inv(omega)
        assert np.linalg.norm(h - h.conj().T) <= 1e-8 * np.linalg.norm(h)

    def test_spectrum_conjugation_symmetric(self):
        for h, eta in self.collect_pairs():
            w = np.linalg.eigvals(h)
            assert_multisets(w, np.conj(w), tol=1e-8)

    def test_trace_and_determinant_real(self):
        for h, eta in self.collect_pairs():
            norm = np.linalg.norm(h)
            assert abs(np.trace(h).imag) <= 1e-10 * norm
            assert abs(np.angle(np.linalg.det(h))) % np.pi <= 1e-8 or \
                abs(np.linalg.det(h).imag) <= 1e-8 * max(1.0, abs(np.linalg.det(h)))

    def test_c_symmetry(self):
        spec, tm = rand_nn(8, complex_t=True, gamma_frac=0.6)
        c = nn_c_symmetry(spec)
        h = build_matrix(spec)
        assert np.linalg.norm(c @ c - np.eye(8)) <= 1e-8
        assert np.linalg.norm(c @ h - h @ c) <= 1e-8 * np.linalg.norm(h)
