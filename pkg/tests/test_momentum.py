import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import solve_ivp

from spheriq.errors import (
    BadParameter,
    DegenerateInput,
    NoFeasibleRegion,
    OutOfDomain,
    QuadratureFailure,
)
from spheriq.momentum import (
    ConstantMomentum,
    EndpointKind,
    FeasibleInterval,
    LinearMomentum,
    MomentumProfile,
    QuadricMomentum,
    ReconstructionMap,
    SpheroCylindricalMomentum,
    arc_from_z,
    feasible_intervals,
    profile_from_json,
    profile_to_json,
    reconstruct,
    validate_reconstruction,
)
from spheriq.sphere import (
    align_z_rotation,
    geodesic_distance,
    momentum_from_samples,
    rotate_z,
)


class TestProfiles:
    def test_constant_range(self):
        with pytest.raises(BadParameter):
            ConstantMomentum(1.0)

    def test_quadric_rejects_mu_zero(self):
        with pytest.raises(BadParameter):
            QuadricMomentum(0.0, 2.0)

    def test_spherocylindrical_needs_nonzero_a(self):
        with pytest.raises(BadParameter):
            SpheroCylindricalMomentum(0.0)

    def test_derivatives_match_finite_differences(self):
        profiles = [
            ConstantMomentum(-0.4),
            LinearMomentum(0.8),
            QuadricMomentum(0.7, 1.3),
            QuadricMomentum(1.0, -1.0),
            SpheroCylindricalMomentum(1.5),
        ]
        z = np.linspace(-0.45, 0.45, 11)
        h = 1e-6
        for p in profiles:
            fd = (np.asarray(p.value(z + h)) - np.asarray(p.value(z - h))) / (2 * h)
            assert np.max(np.abs(fd - p.derivative(z))) < 1e-8

    def test_json_roundtrip(self):
        for p in (
            ConstantMomentum(-0.5),
            LinearMomentum(1.2),
            QuadricMomentum(-1 / 12, 5 / 3, sign=-1),
            SpheroCylindricalMomentum(2.0),
        ):
            assert profile_from_json(profile_to_json(p)) == p

    def test_json_bad_descriptor(self):
        with pytest.raises(DegenerateInput):
            profile_from_json({"family": "cubic", "k": 1})


class TestFeasibleIntervals:
    def test_constant(self):
        ivs = feasible_intervals(ConstantMomentum(-0.5))
        assert len(ivs) == 1
        assert_allclose(
            [ivs[0].z_lo, ivs[0].z_hi], [-np.sqrt(0.75), np.sqrt(0.75)], atol=1e-13
        )
        assert ivs[0].lo_kind is EndpointKind.TURNING_POINT

    def test_type_iii_quartic_root(self):
        # g > 0 solves -c z^4 + (c - mu - 1) z^2 + mu > 0; mu=1, c=-1 gives
        # z*^2 = (3 - sqrt(5)) / 2
        ivs = feasible_intervals(QuadricMomentum(1.0, -1.0))
        z_star = np.sqrt((3 - np.sqrt(5)) / 2)
        assert len(ivs) == 1
        assert_allclose([ivs[0].z_lo, ivs[0].z_hi], [-z_star, z_star], atol=1e-13)

    def test_two_symmetric_bands(self):
        # K is undefined for |z| < sqrt(0.3); g > 0 on (sqrt(.5), sqrt(.6))
        ivs = feasible_intervals(QuadricMomentum(-1.5, 5.0))
        assert len(ivs) == 2
        assert_allclose(
            [ivs[0].z_lo, ivs[0].z_hi], [-np.sqrt(0.6), -np.sqrt(0.5)], atol=1e-13
        )
        assert_allclose(
            [ivs[1].z_lo, ivs[1].z_hi], [np.sqrt(0.5), np.sqrt(0.6)], atol=1e-13
        )
        assert np.sqrt(0.5) > np.sqrt(0.3)

    def test_quartic_roots_oracle(self, rng):
        # endpoints must be roots of the closed-form quartic, found here with
        # an independent polynomial solver
        for _ in range(25):
            mu, c = rng.uniform(0.2, 4.0), rng.uniform(0.2, 4.0)
            ivs = feasible_intervals(QuadricMomentum(mu, c))
            roots = np.roots([-c, 0.0, c - mu - 1.0, 0.0, mu])
            real = np.sort(roots[np.abs(roots.imag) < 1e-12].real)
            for iv in ivs:
                assert np.min(np.abs(real - iv.z_lo)) < 1e-11
                assert np.min(np.abs(real - iv.z_hi)) < 1e-11

    def test_no_feasible_region(self):
        with pytest.raises(NoFeasibleRegion):
            feasible_intervals(QuadricMomentum(-5.0, 1.0))

    def test_grid_n_contract(self):
        with pytest.raises(DegenerateInput):
            feasible_intervals(ConstantMomentum(0.1), grid_n=32)


class TestArcFromZ:
    def test_constant_closed_form(self):
        p = ConstantMomentum(-0.5)
        iv = feasible_intervals(p)[0]
        z = np.sqrt(0.75) * np.sin(0.7)
        assert abs(arc_from_z(p, iv, 0.0, z) - 0.7) < 1e-9

    def test_zero_length(self):
        p = ConstantMomentum(-0.5)
        iv = feasible_intervals(p)[0]
        assert arc_from_z(p, iv, 0.3, 0.3) == 0.0

    def test_linear_closed_form(self):
        delta = 1.0
        p = LinearMomentum(-np.sinh(delta))
        iv = feasible_intervals(p)[0]
        ch = np.cosh(delta)
        for z in (-0.5, 0.11, 0.6):
            assert abs(arc_from_z(p, iv, 0.0, z) - np.arcsin(z * ch) / ch) < 1e-9

    def test_full_branch_with_singular_endpoints(self):
        # int dz / sqrt(1 - c^2 - z^2) over the whole band is pi regardless of c
        p = ConstantMomentum(0.37)
        iv = feasible_intervals(p)[0]
        assert abs(arc_from_z(p, iv, iv.z_lo, iv.z_hi) - np.pi) < 1e-10

    def test_signed(self):
        p = QuadricMomentum(1.0, -1.0)
        iv = feasible_intervals(p)[0]
        assert arc_from_z(p, iv, 0.2, -0.1) < 0
        assert abs(
            arc_from_z(p, iv, 0.2, -0.1) + arc_from_z(p, iv, -0.1, 0.2)
        ) < 1e-12

    def test_out_of_domain(self):
        p = ConstantMomentum(-0.5)
        iv = feasible_intervals(p)[0]
        with pytest.raises(OutOfDomain):
            arc_from_z(p, iv, 0.0, 0.99)

    def test_quad_oracle(self, rng):
        # independent check: raw adaptive quadrature away from the endpoints
        from scipy.integrate import quad

        p = QuadricMomentum(-1 / 12, 5 / 3)
        iv = [i for i in feasible_intervals(p) if i.z_lo > 0][0]
        for _ in range(5):
            z0, z1 = np.sort(
                rng.uniform(iv.z_lo + 0.1 * iv.width, iv.z_hi - 0.1 * iv.width, 2)
            )
            ref, _ = quad(lambda z: 1 / np.sqrt(float(p.g(z))), z0, z1, epsabs=1e-13)
            assert abs(arc_from_z(p, iv, z0, z1) - ref) < 1e-10


class _DoubleZero(MomentumProfile):
    # engineered g with a double zero at the upper endpoint
    def value(self, z):
        return np.zeros_like(np.asarray(z, dtype=float))

    def derivative(self, z):
        return np.zeros_like(np.asarray(z, dtype=float))

    def g(self, z):
        z = np.asarray(z, dtype=float)
        return (0.5 - z) ** 2 * (z + 0.5)

    def g_prime(self, z):
        z = np.asarray(z, dtype=float)
        return -2 * (0.5 - z) * (z + 0.5) + (0.5 - z) ** 2


class TestTurningPointHandling:
    def test_double_zero_refused(self):
        iv = FeasibleInterval(-0.5, 0.5)
        with pytest.raises(QuadratureFailure):
            ReconstructionMap(_DoubleZero(), iv)

    def test_chart_smooth_through_fold(self):
        p = QuadricMomentum(-1 / 12, 5 / 3)
        iv = [i for i in feasible_intervals(p) if i.z_lo > 0][0]
        rm = ReconstructionMap(p, iv)
        L = rm.branch_length
        s = np.linspace(L - 5e-3, L + 5e-3, 21)
        pts = rm.point(s)
        speed = np.linalg.norm(np.diff(pts, axis=0), axis=1) / np.diff(s)
        assert np.max(np.abs(speed - 1.0)) < 1e-5


class TestReconstruct:
    def test_constant_is_great_circle(self):
        theta = np.pi / 3
        p = ConstantMomentum(-np.cos(theta))
        iv = feasible_intervals(p)[0]
        cur = reconstruct(p, iv, step=1e-3, branches=2)
        # reference great circle, arc origin shifted to the lower turning point
        ref = np.stack(
            [
                np.cos(cur.s - np.pi / 2),
                np.cos(theta) * np.sin(cur.s - np.pi / 2),
                np.sin(theta) * np.sin(cur.s - np.pi / 2),
            ],
            axis=1,
        )
        ang = align_z_rotation(cur.points, ref)
        dev = geodesic_distance(rotate_z(cur.points, ang), ref)
        assert np.max(dev) < 1e-6

    def test_linear_is_small_circle(self):
        p = LinearMomentum(-np.sinh(1.0))
        iv = feasible_intervals(p)[0]
        cur = reconstruct(p, iv, step=1e-3, branches=2, lambda0=np.pi / 2)
        assert np.max(np.abs(cur.y - np.tanh(1.0))) < 1e-6

    def test_quadric_lies_on_cylinder(self):
        p = QuadricMomentum(-1 / 12, 5 / 3)
        iv = [i for i in feasible_intervals(p) if i.z_lo > 0][0]
        cur = reconstruct(p, iv, step=1e-3, branches=2)
        res = cur.x**2 / 4.0 + cur.z**2 / 0.25 - 1.0
        assert np.max(np.abs(res)) < 1e-5

    def test_zero_momentum_meridian(self):
        p = ConstantMomentum(0.0)
        iv = feasible_intervals(p)[0]
        cur = reconstruct(p, iv, step=1e-3, branches=2)
        assert np.max(np.abs(cur.y)) < 1e-12  # meridian through the poles

    def test_latitude_momentum_bound(self):
        p = QuadricMomentum(0.5, 0.5)
        iv = feasible_intervals(p)[0]
        cur = momentum_from_samples(reconstruct(p, iv, step=1e-3, branches=2))
        assert np.max(cur.momentum**2 + cur.z**2) <= 1.0 + 1e-6

    def test_step_contract(self):
        p = ConstantMomentum(-0.5)
        iv = feasible_intervals(p)[0]
        with pytest.raises(DegenerateInput):
            reconstruct(p, iv, step=0.0)


class TestValidateReconstruction:
    def test_great_circle(self):
        p = ConstantMomentum(-0.5)
        iv = feasible_intervals(p)[0]
        rep = validate_reconstruction(reconstruct(p, iv, step=1e-3), p)
        assert rep.momentum_dev_max < 1e-5
        assert rep.curvature_dev_max < 1e-5

    def test_small_circle_curvature(self):
        delta = 1.0
        p = LinearMomentum(-np.sinh(delta))
        iv = feasible_intervals(p)[0]
        cur = reconstruct(p, iv, step=1e-3)
        rep = validate_reconstruction(cur, p)
        # kappa = K'(z) = -sinh(delta) everywhere on the circle
        assert rep.curvature_dev_max < 1e-5

    def test_quadric_away_from_turning_points(self):
        p = QuadricMomentum(1.0, -1.0)
        iv = feasible_intervals(p)[0]
        rep = validate_reconstruction(reconstruct(p, iv, step=1e-3), p)
        z_star = np.sqrt((3 - np.sqrt(5)) / 2)
        mask = np.abs(rep.z) < 0.95 * z_star
        assert np.max(rep.momentum_dev[mask]) < 5e-5
        assert np.max(rep.curvature_dev[mask]) < 5e-5

    def test_kappa_equals_k_prime_all_families(self):
        cases = [
            ConstantMomentum(-0.6),
            LinearMomentum(0.9),
            QuadricMomentum(0.5, 0.5),
            SpheroCylindricalMomentum(1.0),
        ]
        for p in cases:
            iv = feasible_intervals(p)[0]
            rep = validate_reconstruction(reconstruct(p, iv, step=1e-3), p)
            width = iv.z_hi - iv.z_lo
            interior = (rep.z > iv.z_lo + 0.05 * width) & (
                rep.z < iv.z_hi - 0.05 * width
            )
            assert np.max(rep.curvature_dev[interior]) < 5e-5


class TestMonotoneInversion:
    def test_z_of_s_monotone_and_consistent(self):
        p = QuadricMomentum(-1 / 12, 5 / 3)
        iv = [i for i in feasible_intervals(p) if i.z_lo > 0][0]
        rm = ReconstructionMap(p, iv)
        s = np.linspace(0.0, rm.branch_length, 200)
        z, _ = rm.state_of_s(s)
        assert np.all(np.diff(z) > 0)
        # arc_from_z composed with z(s) returns s
        back = np.array([arc_from_z(p, iv, iv.z_lo, zz) for zz in z[1:-1:20]])
        assert np.max(np.abs(back - s[1:-1:20])) < 1e-9


class TestUniqueness:
    def test_ode_oracle_agrees(self):
        # independent reconstruction: integrate dz/ds = sqrt(g),
        # dlam/ds = K/(z^2-1) as an initial-value problem from mid-band
        p = QuadricMomentum(-1 / 12, 5 / 3)
        iv = [i for i in feasible_intervals(p) if i.z_lo > 0][0]
        rm = ReconstructionMap(p, iv)
        z0 = 0.5 * (iv.z_lo + iv.z_hi)
        s0 = arc_from_z(p, iv, iv.z_lo, z0)
        span = 0.8 * (rm.branch_length - s0)

        def rhs(s, y):
            z = y[0]
            return [np.sqrt(max(float(p.g(z)), 0.0)), float(p.value(z)) / (z * z - 1)]

        sol = solve_ivp(
            rhs, (0, span), [z0, 0.0], rtol=1e-12, atol=1e-14, dense_output=True
        )
        s_eval = np.linspace(0, span, 60)
        z_ode, lam_ode = sol.sol(s_eval)
        z_chart, lam_chart = rm.fold(s_eval + s0)
        assert np.max(np.abs(z_ode - z_chart)) < 1e-9
        # longitudes agree after removing the offset at s0 (z-rotation freedom)
        lam_chart = lam_chart - rm.fold(np.array([s0]))[1][0]
        assert np.max(np.abs(lam_ode - lam_chart)) < 1e-8

    def test_rotated_copies_align(self, rng):
        # distinct arc origins on the same profile differ by a z-rotation
        p = QuadricMomentum(0.5, 0.5)
        iv = feasible_intervals(p)[0]
        rm = ReconstructionMap(p, iv)
        s = np.linspace(0, 1.5 * rm.branch_length, 200)
        a = rm.point(s)
        b = rotate_z(a, rng.uniform(0, 2 * np.pi))
        ang = align_z_rotation(b, a)
        assert np.max(geodesic_distance(rotate_z(b, ang), a)) < 1e-6
