import numpy as np
import pytest
from numpy.testing import assert_allclose

from spheriq.conics import MomentumCoeffs
from spheriq.errors import IllConditioned, OutOfRegion, TooFewSamples, ZeroLatitude
from spheriq.momentum import (
    ConstantMomentum,
    LinearMomentum,
    QuadricMomentum,
    feasible_intervals,
)
from spheriq.surfaces import (
    PrincipalCurvatures,
    SurfaceFamily,
    make_degenerate,
    make_fake_paraboloid,
    make_quadric_surface,
    principal_curvatures_numeric,
)
from spheriq.weingarten import (
    CubicSolveResult,
    NotCubic,
    SolveCase,
    classify_rotational_surface,
    cubic_discriminant,
    cubic_residual,
    dlambda_dphi_cylinder,
    dlambda_dphi_momentum,
    fit_mu,
    horizontal_squares,
    momentum_from_horizontal,
    momentum_from_vertical,
    sextic_residual,
    solve_cubic_weingarten,
    solve_report,
    vertical_squares,
)


def sample_type_i(rng):
    # 0.01+ margins keep the draws away from the region boundaries, where
    # float cylinder squares cannot carry the 1e-12 relative roundtrip
    mu = -rng.uniform(0.05, 3.0)
    c = (1 + np.sqrt(-mu)) ** 2 + rng.uniform(0.01, 5.0)
    return mu, c


class TestCubicResidual:
    def test_quadric_profile_exact(self, rng):
        mu, c = -1 / 12, 5 / 3
        prof = QuadricMomentum(mu, c)
        iv = [i for i in feasible_intervals(prof) if i.z_lo > 0][0]
        z = rng.uniform(iv.z_lo + 0.01, iv.z_hi - 0.01, 200)
        assert np.max(np.abs(cubic_residual(prof, mu, z))) < 1e-12

    def test_linear_profile(self):
        delta = 1.0
        prof = LinearMomentum(-np.sinh(delta))
        mu = 1.0 / np.sinh(delta) ** 2
        z = np.linspace(-0.5, 0.5, 21)
        z = z[np.abs(z) > 1e-3]
        assert np.max(np.abs(cubic_residual(prof, mu, z))) < 1e-14

    def test_constant_profile_mu_zero(self):
        prof = ConstantMomentum(-0.4)
        z = np.linspace(-0.8, 0.8, 17)
        z = z[np.abs(z) > 1e-3]
        assert np.max(np.abs(cubic_residual(prof, 0.0, z))) == 0.0

    def test_zero_latitude(self):
        with pytest.raises(ZeroLatitude):
            cubic_residual(ConstantMomentum(0.3), 0.0, 0.0)

    def test_ode_identity(self, rng):
        # K'(z) z^3 - mu K(z)^3 = 0 on the domain, all regions
        draws = [sample_type_i(rng) for _ in range(20)]
        draws += [(rng.uniform(0.1, 5), rng.uniform(0.1, 5)) for _ in range(20)]
        draws += [(rng.uniform(0.1, 5), -rng.uniform(0.1, 5)) for _ in range(20)]
        for mu, c in draws:
            prof = QuadricMomentum(mu, c)
            for iv in feasible_intervals(prof):
                z = rng.uniform(iv.z_lo + 0.02 * iv.width, iv.z_hi - 0.02 * iv.width, 40)
                res = np.asarray(prof.derivative(z)) * z**3 - mu * np.asarray(
                    prof.value(z)
                ) ** 3
                assert np.max(np.abs(res)) < 1e-12


class TestFitMu:
    def test_clifford_torus(self):
        samples = [PrincipalCurvatures(km=1.0, kp=-1.0)] * 5
        fit = fit_mu(samples)
        assert_allclose(fit.mu, -1.0, rtol=1e-14)  # equals -tan^4(pi/4)

    def test_umbilical_sphere(self):
        km = kp = -np.sinh(1.0)
        fit = fit_mu([PrincipalCurvatures(km, kp)] * 4)
        assert_allclose(fit.mu, 1.0 / np.sinh(1.0) ** 2, rtol=1e-13)

    def test_quadric_surface_samples(self):
        S = make_quadric_surface(MomentumCoeffs(0.5, 0.5))
        lo, hi = S.s_domain
        samples = []
        for s in np.linspace(lo + 0.1, hi - 0.1, 12):
            z = float(S.profile.point(np.array([s]))[0, 2])
            if abs(z) > 0.05:
                samples.append(principal_curvatures_numeric(S, float(s)))
        fit = fit_mu(samples)
        assert abs(fit.mu - 0.5) < 1e-6

    def test_too_few(self):
        with pytest.raises(TooFewSamples):
            fit_mu([PrincipalCurvatures(0.1, 1e-9)] * 5)

    def test_ill_conditioned(self):
        samples = [
            PrincipalCurvatures(km=float(k), kp=0.5) for k in (0.0, 0.5, 1.0, 1.5)
        ]
        with pytest.raises(IllConditioned):
            fit_mu(samples)


class TestInverseMaps:
    def test_parabola_i_spot(self):
        a2, b2 = vertical_squares(-1.5, 5.0)
        assert a2 == 0.5  # exact: 2 mu + c = 2 forces A^2 = 1/2
        assert_allclose(b2, 0.4, rtol=1e-14)
        assert_allclose(cubic_discriminant(-1.5, 5.0), 0.25, rtol=0, atol=1e-15)
        c2, d2 = horizontal_squares(-1.5, 5.0)
        assert_allclose(d2, 0.6, rtol=1e-14)
        assert abs(c2 + d2 - 2 * c2 * d2) < 1e-12

    def test_type_iii_spot(self):
        c2, d2 = horizontal_squares(1.0, -1.0)
        assert_allclose(d2, (3 + np.sqrt(5)) / 2, rtol=1e-15)
        assert_allclose(c2, (5 + np.sqrt(5)) / 10, rtol=1e-14)

    def test_roundtrip_ab_type_ii(self, rng):
        worst = 0.0
        for _ in range(1000):
            mu, c = rng.uniform(0.01, 5.0, 2)
            a2, b2 = vertical_squares(mu, c)
            assert 0 < b2 < 1 < a2
            mc = momentum_from_vertical(a2, b2)
            worst = max(worst, abs(mc.mu - mu) / abs(mu), abs(mc.c - c) / abs(c))
        assert worst < 1e-12

    def test_roundtrip_cd_types_i_and_iii(self, rng):
        worst = 0.0
        for _ in range(1000):
            if rng.random() < 0.5:
                mu, c = sample_type_i(rng)
                c2, d2 = horizontal_squares(mu, c)
                assert 0 < d2 < 1 < c2
            else:
                mu = rng.uniform(0.01, 5.0)
                c = -rng.uniform(0.01, 5.0)
                c2, d2 = horizontal_squares(mu, c)
                assert 0 < c2 < 1 < d2
            mc = momentum_from_horizontal(c2, d2)
            worst = max(worst, abs(mc.mu - mu) / abs(mu), abs(mc.c - c) / abs(c))
        assert worst < 1e-12

    def test_region_post_checks_type_ii_horizontal(self, rng):
        for _ in range(300):
            mu, c = rng.uniform(0.01, 5.0, 2)
            c2, d2 = horizontal_squares(mu, c)
            assert 0 < d2 < c2 < 1

    def test_parabola_specializations(self, rng):
        # 2 mu + c = 2, c > 4  =>  A^2 = 1/2 and C^2 + D^2 = 2 C^2 D^2
        for _ in range(50):
            c = rng.uniform(4.01, 12.0)
            mu = (2.0 - c) / 2.0
            a2, _ = vertical_squares(mu, c)
            assert abs(a2 - 0.5) < 1e-10
            c2, d2 = horizontal_squares(mu, c)
            assert abs(c2 + d2 - 2 * c2 * d2) < 1e-10
        # mu + c = 1  =>  A^2 + B^2 = 2 A^2 B^2 and C^2 = 1/2
        for _ in range(50):
            mu = rng.uniform(0.01, 0.99)
            c = 1.0 - mu
            a2, b2 = vertical_squares(mu, c)
            assert abs(a2 + b2 - 2 * a2 * b2) < 1e-10
            c2, _ = horizontal_squares(mu, c)
            assert abs(c2 - 0.5) < 1e-10

    def test_vertical_requires_positive_c(self):
        with pytest.raises(OutOfRegion):
            vertical_squares(1.0, -1.0)


class TestSolve:
    def test_parabola_i(self):
        r = solve_cubic_weingarten(-1.5, 5.0)
        assert r.case is SolveCase.NONDEGENERATE_QUADRIC
        assert r.spec.family is SurfaceFamily.QUADRIC_I
        assert r.spec.a2 == 0.5
        assert_allclose(r.spec.d2, 0.6, rtol=1e-14)
        assert r.sp is not None

    def test_type_iii(self):
        r = solve_cubic_weingarten(1.0, -1.0)
        assert r.spec.family is SurfaceFamily.QUADRIC_III
        assert r.spec.d2 > 1 > r.spec.c2
        assert r.sp is None  # no vertical form when c < 0

    def test_out_of_region(self):
        with pytest.raises(OutOfRegion):
            solve_cubic_weingarten(-0.5, 1.2)  # mu + c <= 1 with mu < 0

    def test_umbilical(self):
        r = solve_cubic_weingarten(3.0, 0.0)
        assert r.case is SolveCase.UMBILICAL_SPHERE
        assert_allclose(np.sinh(r.delta) ** 2, 1.0 / 3.0, rtol=1e-14)

    def test_torus(self):
        r = solve_cubic_weingarten(-1.0, z_constant=True)
        assert r.case is SolveCase.STANDARD_TORUS
        assert_allclose(r.phi0, np.pi / 4, rtol=1e-15)

    def test_moon(self):
        r = solve_cubic_weingarten(0.0, 4.0)
        assert r.case is SolveCase.SPHERICAL_MOON
        assert_allclose(np.cos(r.theta), 0.5, rtol=1e-15)

    def test_moon_needs_c_above_one(self):
        with pytest.raises(OutOfRegion):
            solve_cubic_weingarten(0.0, 0.5)


class TestSextic:
    def test_spot_zero(self):
        assert abs(sextic_residual(1.0, 0.5)) < 1e-10
        assert abs(sextic_residual(2.0, -0.3)) < 1e-10

    def test_sensitivity(self):
        # perturbing km by 0.01 must leave a visible residual
        from spheriq.momentum import SpheroCylindricalMomentum

        a, z = 1.0, 0.5
        prof = SpheroCylindricalMomentum(a)
        km = float(prof.derivative(z)) + 0.01
        kp = float(prof.value(z)) / z
        lhs = (km - 2 * kp**3 - 3 * kp) ** 2
        rhs = 4 / (1 + a * a) * (1 + kp * kp) ** 3
        assert abs(lhs - rhs) >= 1e-3

    def test_zero_latitude(self):
        with pytest.raises(ZeroLatitude):
            sextic_residual(1.0, 0.0)


class TestGeographicCompatibility:
    def test_momentum_vs_cylinder_differentials(self, rng):
        # dlambda/dphi computed from (mu, c) equals the one from (C, D)
        for _ in range(30):
            mu, c = sample_type_i(rng)
            c2, d2 = horizontal_squares(mu, c)
            prof = QuadricMomentum(mu, c)
            iv = [i for i in feasible_intervals(prof) if i.z_lo > 0][0]
            z = rng.uniform(iv.z_lo + 0.05 * iv.width, iv.z_hi - 0.05 * iv.width, 20)
            phi = np.arcsin(z)
            lhs = dlambda_dphi_momentum(mu, c, phi)
            rhs = dlambda_dphi_cylinder(np.sqrt(c2), np.sqrt(d2), phi)
            assert np.max(np.abs(lhs - rhs)) < 1e-9 * np.max(np.abs(lhs))


class TestClassifier:
    def test_quadric_roundtrip(self):
        mu, c = -1 / 12, 5 / 3
        S = make_quadric_surface(MomentumCoeffs(mu, c))
        r = classify_rotational_surface(S)
        assert isinstance(r, CubicSolveResult)
        assert r.case is SolveCase.NONDEGENERATE_QUADRIC
        assert r.spec.family is SurfaceFamily.QUADRIC_I
        assert abs(r.mu - mu) < 1e-8
        assert abs(r.c - c) < 1e-8

    def test_fake_paraboloid_not_cubic(self):
        r = classify_rotational_surface(make_fake_paraboloid(1.0))
        assert isinstance(r, NotCubic)
        assert r.residual_max > 1e-3

    def test_moon(self):
        S = make_degenerate(SurfaceFamily.SPHERICAL_MOON, np.pi / 3)
        r = classify_rotational_surface(S)
        assert r.case is SolveCase.SPHERICAL_MOON
        assert r.mu == 0.0
        assert abs(r.theta - np.pi / 3) < 1e-8 or abs(r.theta - 2 * np.pi / 3) < 1e-8

    def test_report_shape(self):
        r = classify_rotational_surface(make_quadric_surface(MomentumCoeffs(1.0, -1.0)))
        report = solve_report(r)
        assert report["case"] == "QuadricIII"
        assert report["C2"] is not None and report["D2"] is not None
        nr = solve_report(classify_rotational_surface(make_fake_paraboloid(0.5)))
        assert nr["case"] == "NotCubic"
