"""Rotational surfaces in the 3-sphere and their quadric families.

A profile curve (x(s), y(s), z(s)) in the equatorial 2-sphere x4 = 0 sweeps
the surface X(s, t) = (x(s), y(s), z(s) cos t, z(s) sin t).  The first and
second fundamental forms in (s, t) are diagonal, so the principal curvature
along meridians is the profile's geodesic curvature and the one along
parallels is (x'y - xy')/z; in latitude form these are K'(z) and K(z)/z for
the profile's angular momentum K.  Constructors cover every closed-form
family: the degenerate surfaces (equatorial sphere, umbilical spheres,
standard tori, spherical moons), the quadric families I/IIa/IIb/III built
from momentum coefficients (mu, c), and the sphero-cylindrical surfaces
x3^2 + x4^2 = 2 a x2 that satisfy only a sextic curvature relation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import weingarten
from .conics import ConicClass, CylinderConic, MomentumCoeffs, region_of
from .errors import (
    BadParameter,
    NoImplicitForm,
    OutOfDomain,
    OutOfRegion,
    ZeroLatitude,
)
from .momentum import (
    ConstantMomentum,
    FeasibleInterval,
    LinearMomentum,
    MomentumProfile,
    QuadricMomentum,
    ReconstructionMap,
    SpheroCylindricalMomentum,
    feasible_intervals,
)
from .sphere import SampledCurve, _fornberg_weights


class SurfaceFamily(enum.Enum):
    EQUATORIAL = "Equatorial"
    UMBILICAL = "Umbilical"
    STANDARD_TORUS = "StandardTorus"
    SPHERICAL_MOON = "SphericalMoon"
    QUADRIC_I = "QuadricI"
    QUADRIC_IIA = "QuadricIIa"
    QUADRIC_IIB = "QuadricIIb"
    QUADRIC_III = "QuadricIII"
    FAKE_PARABOLOID = "FakeParaboloid"
    GENERIC = "Generic"


QUADRIC_FAMILIES = {
    SurfaceFamily.QUADRIC_I,
    SurfaceFamily.QUADRIC_IIA,
    SurfaceFamily.QUADRIC_IIB,
    SurfaceFamily.QUADRIC_III,
}


@dataclass(frozen=True)
class QuadricSpec:
    """Implicit-equation data of a non-degenerate quadric of revolution.

    alpha2/beta2 coefficients belong to the family equation in x2,
    alpha_hat2/beta_hat2 to the common form in x1; the cylinder record is
    horizontal (C, D) for families I/IIa/III and vertical (A, B) for IIb.
    """

    family: SurfaceFamily
    alpha2: float
    beta2: float
    alpha_hat2: float
    beta_hat2: float
    cylinder: CylinderConic
    momentum: MomentumCoeffs
    a2: float | None = None
    b2: float | None = None
    c2: float | None = None
    d2: float | None = None


# ---------------------------------------------------------------------------
# profile curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedFormProfile:
    """Profile with an exact parametrization, periodic in arc length."""

    fn: callable = field(repr=False)
    period: float
    closed: bool = True

    @property
    def s_domain(self) -> tuple[float, float]:
        return (0.0, self.period)

    def point(self, s) -> np.ndarray:
        return self.fn(np.asarray(s, dtype=float))


@dataclass(frozen=True)
class ReconstructedProfile:
    """Profile evaluated through the arc-length chart of its momentum."""

    chart: ReconstructionMap = field(repr=False)
    branches: int = 2
    closed: bool = False

    @property
    def period(self) -> float:
        return 2.0 * self.chart.branch_length

    @property
    def s_domain(self) -> tuple[float, float]:
        return (0.0, self.branches * self.chart.branch_length)

    def point(self, s) -> np.ndarray:
        return self.chart.point(s)


@dataclass(frozen=True)
class FakeParaboloidProfile:
    """Sphero-cylindrical loop with positions snapped to the exact curve.

    The chart supplies arc length -> latitude; x and y then come from the
    closed form x^2 = (4a^2 - 4a^2 z^2 - z^4) / (4a^2), y = z^2 / (2a),
    with the x-branch sign flipping at each turning point.
    """

    a: float
    chart: ReconstructionMap = field(repr=False)
    closed: bool = True

    @property
    def period(self) -> float:
        return 2.0 * self.chart.branch_length

    @property
    def s_domain(self) -> tuple[float, float]:
        return (0.0, self.period)

    def point(self, s) -> np.ndarray:
        z, _ = self.chart.fold(s)
        sign = np.where(self.chart.rising(s), 1.0, -1.0)
        x = sign * fake_paraboloid_x(self.a, z)
        return np.stack(
            [x, z * z / (2.0 * self.a), np.asarray(z, dtype=float)], axis=-1
        )


def fake_paraboloid_x(a: float, z) -> np.ndarray:
    """|x| on the curve x^2 + (y + a)^2 = 1 + a^2 at latitude z."""
    z = np.asarray(z, dtype=float)
    a2 = a * a
    rad = 4.0 * a2 - 4.0 * a2 * z * z - z ** 4
    return np.sqrt(np.clip(rad, 0.0, None)) / (2.0 * abs(a))


def fake_paraboloid_point(a: float, t, branch: int = 1) -> np.ndarray:
    """Closed-form parametrization (x(t), t^2/2a, t) of the profile loop."""
    t = np.asarray(t, dtype=float)
    x = branch * fake_paraboloid_x(a, t)
    return np.stack([x, t * t / (2.0 * a), t], axis=-1)


@dataclass(frozen=True)
class RotationalSurface:
    """Surface of revolution in S^3 with an optional analytic momentum."""

    family: SurfaceFamily
    profile: object
    momentum_profile: MomentumProfile | None = None
    quadric: QuadricSpec | None = None
    params: dict = field(default_factory=dict)

    @property
    def s_domain(self) -> tuple[float, float]:
        return self.profile.s_domain

    def profile_point(self, s) -> np.ndarray:
        return self.profile.point(s)

    def profile_curve(self, step: float = 1e-3) -> SampledCurve:
        lo, hi = self.s_domain
        n = int(np.floor((hi - lo) / step)) + 1
        s = lo + np.arange(n) * step
        return SampledCurve(s=s, points=self.profile.point(s))


def surface_point(surface: RotationalSurface, s, t) -> np.ndarray:
    """X(s, t) = (x(s), y(s), z(s) cos t, z(s) sin t), broadcast over s, t."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    lo, hi = surface.s_domain
    if not getattr(surface.profile, "closed", False):
        if np.any(s < lo - 1e-9) or np.any(s > hi + 1e-9):
            raise OutOfDomain(f"s outside profile domain [{lo}, {hi}]")
    pts = surface.profile.point(s)
    x, y, z = pts[..., 0], pts[..., 1], pts[..., 2]
    return np.stack(
        np.broadcast_arrays(x, y, z * np.cos(t), z * np.sin(t)), axis=-1
    )


# ---------------------------------------------------------------------------
# fundamental forms and principal curvatures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float


@dataclass(frozen=True)
class PrincipalCurvatures:
    km: float  # along meridians (t constant)
    kp: float  # along parallels (s constant)


def _profile_jet(surface: RotationalSurface, s: float, h: float):
    """Profile point and first two s-derivatives from a 5-point stencil."""
    offsets = np.arange(-2, 3) * h
    lo, hi = surface.s_domain
    base = np.clip(s, lo + 2 * h, hi - 2 * h) if not surface.profile.closed else s
    nodes = base + offsets
    pts = surface.profile.point(nodes)
    w = _fornberg_weights(s, nodes, 2)
    p = w[0] @ pts
    d1 = w[1] @ pts
    d2 = w[2] @ pts
    return p, d1, d2


def fundamental_forms(
    surface: RotationalSurface, s: float, h: float = 1e-3
) -> FundamentalForms:
    """Coefficients (E, F, G, L, M, N) at profile parameter s."""
    lo, hi = surface.s_domain
    if not surface.profile.closed and not (lo - 1e-9 <= s <= hi + 1e-9):
        raise OutOfDomain(f"s={s} outside profile domain [{lo}, {hi}]")
    p, d1, d2 = _profile_jet(surface, float(s), h)
    z = p[2]
    kappa = float(np.dot(p, np.cross(d1, d2)))
    mom = float(d1[0] * p[1] - p[0] * d1[1])
    return FundamentalForms(E=1.0, F=0.0, G=float(z * z), L=kappa, M=0.0, N=float(z * mom))


def principal_curvatures_numeric(
    surface: RotationalSurface, s: float, h: float = 1e-3
) -> PrincipalCurvatures:
    """km = L/E, kp = N/G from finite-difference fundamental forms."""
    forms = fundamental_forms(surface, s, h)
    if abs(forms.G) < 1e-12:
        raise ZeroLatitude(f"profile latitude vanishes at s={s}")
    return PrincipalCurvatures(km=forms.L / forms.E, kp=forms.N / forms.G)


def principal_curvatures_analytic(
    profile: MomentumProfile, z: float
) -> PrincipalCurvatures:
    """km = K'(z), kp = K(z)/z, with the odd-profile limit K'(0) at z = 0."""
    if abs(z) < 1e-12:
        if abs(float(profile.value(0.0))) < 1e-13:
            kp = float(profile.derivative(0.0))
        else:
            raise ZeroLatitude("K(0) != 0: parallel curvature diverges on the axis")
    else:
        kp = float(profile.value(z)) / z
    return PrincipalCurvatures(km=float(profile.derivative(z)), kp=kp)


def principal_curvatures_richardson(
    surface: RotationalSurface, s: float, h: float = 2e-3
) -> PrincipalCurvatures:
    """Two-step Richardson extrapolation of the numeric curvatures."""
    coarse = principal_curvatures_numeric(surface, s, h)
    fine = principal_curvatures_numeric(surface, s, h / 2)
    return PrincipalCurvatures(
        km=(4 * fine.km - coarse.km) / 3, kp=(4 * fine.kp - coarse.kp) / 3
    )


# ---------------------------------------------------------------------------
# implicit quadric equations
# ---------------------------------------------------------------------------


def implicit_residuals(surface: RotationalSurface, q: np.ndarray) -> dict:
    """All implicit-form residuals available for the surface family at q."""
    q = np.asarray(q, dtype=float)
    r2 = q[..., 2] ** 2 + q[..., 3] ** 2
    x1, x2 = q[..., 0], q[..., 1]
    fam = surface.family
    out: dict = {}
    if fam is SurfaceFamily.FAKE_PARABOLOID:
        out["x2_form"] = r2 - 2.0 * surface.params["a"] * x2
        return out
    if fam is SurfaceFamily.GENERIC:
        raise NoImplicitForm("generic rotational surface")
    spec = surface.quadric
    if fam in QUADRIC_FAMILIES and spec is not None:
        a2, b2 = spec.alpha2, spec.beta2
        if fam is SurfaceFamily.QUADRIC_I:
            out["x2_form"] = r2 - (a2 + b2 * x2 * x2)
        elif fam is SurfaceFamily.QUADRIC_IIA:
            out["x2_form"] = r2 - (-a2 + b2 * x2 * x2)
        else:  # IIb and III share the ellipse-like sign pattern
            out["x2_form"] = r2 - (a2 - b2 * x2 * x2)
        if fam is SurfaceFamily.QUADRIC_IIB:
            out["x1_form"] = r2 - (spec.beta_hat2 * x1 * x1 - spec.alpha_hat2)
        else:
            out["x1_form"] = r2 - (spec.alpha_hat2 - spec.beta_hat2 * x1 * x1)
        return out
    # degenerate families: common x1 form, plus the cone form for moons
    if fam is SurfaceFamily.EQUATORIAL:
        out["x1_form"] = r2 - (1.0 - x1 * x1)
    elif fam is SurfaceFamily.UMBILICAL:
        r_delta2 = 1.0 / np.cosh(surface.params["delta"]) ** 2
        out["x1_form"] = r2 - (r_delta2 - x1 * x1)
    elif fam is SurfaceFamily.STANDARD_TORUS:
        out["x1_form"] = r2 - np.sin(surface.params["phi0"]) ** 2
    elif fam is SurfaceFamily.SPHERICAL_MOON:
        th = surface.params["theta"]
        out["x2_form"] = r2 - np.tan(th) ** 2 * x2 * x2
        out["x1_form"] = r2 - np.sin(th) ** 2 * (1.0 - x1 * x1)
    else:
        raise NoImplicitForm(f"no implicit form for {fam.value}")
    return out


def implicit_residual(surface: RotationalSurface, q: np.ndarray):
    """Residual of the family's defining implicit equation at q."""
    forms = implicit_residuals(surface, q)
    key = "x2_form" if "x2_form" in forms else "x1_form"
    res = forms[key]
    return float(res) if np.ndim(res) == 0 else res


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def make_quadric(mc: MomentumCoeffs, prolate: bool = False) -> QuadricSpec:
    """Quadric-surface record for momentum coefficients in a valid region.

    With prolate=True a type-II pair is emitted as the prolate ellipsoid
    (family IIb, vertical cylinder with A < 1 < B) instead of the
    two-piece hyperboloid IIa; the two coincide up to a translation along
    the axis of revolution.
    """
    region = region_of(mc)  # raises OutOfRegion outside the moduli regions
    mu, c = mc.mu, mc.c
    if region in (ConicClass.TYPE_I, ConicClass.PARABOLA_I):
        a2, b2 = weingarten.vertical_squares(mu, c)
        c2, d2 = weingarten.horizontal_squares(mu, c)
        if not (0 < b2 < a2 < 1 and 0 < d2 < 1 < c2):
            raise OutOfRegion(f"inverse maps left the type-I region: {a2}, {b2}, {c2}, {d2}")
        spec = QuadricSpec(
            family=SurfaceFamily.QUADRIC_I,
            alpha2=1.0 - a2,
            beta2=(a2 - b2) / b2,
            alpha_hat2=d2,
            beta_hat2=d2 / c2,
            cylinder=CylinderConic.horizontal(np.sqrt(c2), np.sqrt(d2)),
            momentum=mc,
            a2=a2, b2=b2, c2=c2, d2=d2,
        )
    elif region in (ConicClass.TYPE_II, ConicClass.PARABOLA_II):
        a2, b2 = weingarten.vertical_squares(mu, c)
        c2, d2 = weingarten.horizontal_squares(mu, c)
        if not (0 < b2 < 1 < a2 and 0 < d2 < c2 < 1):
            raise OutOfRegion(f"inverse maps left the type-II region: {a2}, {b2}, {c2}, {d2}")
        if prolate:
            spec = QuadricSpec(
                family=SurfaceFamily.QUADRIC_IIB,
                alpha2=1.0 - b2,
                beta2=(a2 - b2) / a2,
                alpha_hat2=a2 - 1.0,
                beta_hat2=a2 / b2 - 1.0,
                cylinder=CylinderConic.vertical(np.sqrt(b2), np.sqrt(a2)),
                momentum=mc,
                a2=b2, b2=a2, c2=c2, d2=d2,
            )
        else:
            spec = QuadricSpec(
                family=SurfaceFamily.QUADRIC_IIA,
                alpha2=a2 - 1.0,
                beta2=(a2 - b2) / b2,
                alpha_hat2=d2,
                beta_hat2=d2 / c2,
                cylinder=CylinderConic.horizontal(np.sqrt(c2), np.sqrt(d2)),
                momentum=mc,
                a2=a2, b2=b2, c2=c2, d2=d2,
            )
    else:
        if region is not ConicClass.TYPE_III:
            raise OutOfRegion(f"(mu={mu}, c={c}) is {region.value}, not a quadric region")
        if prolate:
            raise OutOfRegion("prolate form exists only for type-II coefficients")
        c2, d2 = weingarten.horizontal_squares(mu, c)
        if not (0 < c2 < 1 < d2):
            raise OutOfRegion(f"inverse maps left the type-III region: {c2}, {d2}")
        spec = QuadricSpec(
            family=SurfaceFamily.QUADRIC_III,
            alpha2=d2 * (1 - c2) / (d2 - c2),
            beta2=d2 / (d2 - c2),
            alpha_hat2=d2,
            beta_hat2=d2 / c2,
            cylinder=CylinderConic.horizontal(np.sqrt(c2), np.sqrt(d2)),
            momentum=mc,
            c2=c2, d2=d2,
        )
    _check_hat_ranges(spec)
    return spec


def _check_hat_ranges(spec: QuadricSpec) -> None:
    ah, bh = np.sqrt(spec.alpha_hat2), np.sqrt(spec.beta_hat2)
    fam = spec.family
    ok = True
    if fam is SurfaceFamily.QUADRIC_I:
        ok = ah < 1 and bh < 1 and ah / bh > 1
    elif fam is SurfaceFamily.QUADRIC_IIA:
        ok = ah < 1 and bh < 1 and ah / bh < 1
    elif fam is SurfaceFamily.QUADRIC_III:
        ok = ah > 1 and bh > 1 and ah / bh < 1
    elif fam is SurfaceFamily.QUADRIC_IIB:
        ok = ah / bh < 1
    if not ok:
        raise OutOfRegion(f"hat coefficients out of range for {fam.value}")


def _quadric_interval(profile: QuadricMomentum, family: SurfaceFamily) -> FeasibleInterval:
    ivs = feasible_intervals(profile)
    if family is SurfaceFamily.QUADRIC_I:
        pos = [iv for iv in ivs if iv.z_lo > 0]
        if not pos:
            raise OutOfRegion("type-I profile lost its positive latitude band")
        return pos[0]
    return ivs[0]


def make_quadric_surface(
    mc: MomentumCoeffs, prolate: bool = False, sign: int = 1
) -> RotationalSurface:
    """Rotational surface over the canonical conic for coefficients (mu, c)."""
    spec = make_quadric(mc, prolate=prolate)
    profile = QuadricMomentum(mc.mu, mc.c, sign=sign)
    iv = _quadric_interval(profile, spec.family)
    # longitude origin placing the reconstructed loop on the canonical cylinder
    lambda0 = np.pi / 2 if spec.family is SurfaceFamily.QUADRIC_IIA else 0.0
    chart = ReconstructionMap(profile, iv, lambda0=lambda0)
    return RotationalSurface(
        family=spec.family,
        profile=ReconstructedProfile(chart=chart, branches=2),
        momentum_profile=profile,
        quadric=spec,
        params={"mu": mc.mu, "c": mc.c},
    )


def make_degenerate(kind: SurfaceFamily, param: float = 0.0) -> RotationalSurface:
    """Closed-form degenerate families of rotational quadric surfaces."""
    if kind is SurfaceFamily.EQUATORIAL:
        return _equatorial()
    if kind is SurfaceFamily.UMBILICAL:
        if param < 0:
            raise BadParameter("umbilical parameter must be >= 0")
        if param == 0.0:
            return _equatorial()
        ch, th = np.cosh(param), np.tanh(param)

        def eta(s):
            return np.stack(
                [np.cos(ch * s) / ch, np.full_like(s, th), np.sin(ch * s) / ch], axis=-1
            )

        return RotationalSurface(
            family=SurfaceFamily.UMBILICAL,
            profile=ClosedFormProfile(fn=eta, period=2 * np.pi / ch),
            momentum_profile=LinearMomentum(-np.sinh(param)),
            params={
                "delta": param,
                "alpha_hat2": 1.0 / np.cosh(param) ** 2,
                "beta_hat2": 1.0,
            },
        )
    if kind is SurfaceFamily.STANDARD_TORUS:
        if not 0 < param < np.pi / 2:
            raise BadParameter("torus latitude must lie in (0, pi/2)")
        c0, s0 = np.cos(param), np.sin(param)

        def xi(s):
            return np.stack(
                [c0 * np.cos(s / c0), c0 * np.sin(s / c0), np.full_like(s, s0)], axis=-1
            )

        return RotationalSurface(
            family=SurfaceFamily.STANDARD_TORUS,
            profile=ClosedFormProfile(fn=xi, period=2 * np.pi * c0),
            momentum_profile=None,  # constant latitude: K(z) never applies
            params={
                "phi0": param,
                "alpha_hat2": np.sin(param) ** 2,
                "beta_hat2": 0.0,
            },
        )
    if kind is SurfaceFamily.SPHERICAL_MOON:
        if not (0 < param < np.pi) or param == np.pi / 2:
            raise BadParameter("moon angle must lie in (0, pi) minus pi/2")
        ct, st = np.cos(param), np.sin(param)

        def mu_theta(s):
            return np.stack([np.cos(s), ct * np.sin(s), st * np.sin(s)], axis=-1)

        return RotationalSurface(
            family=SurfaceFamily.SPHERICAL_MOON,
            profile=ClosedFormProfile(fn=mu_theta, period=2 * np.pi),
            momentum_profile=ConstantMomentum(-ct),
            params={
                "theta": param,
                "alpha_hat2": st * st,
                "beta_hat2": st * st,
            },
        )
    raise BadParameter(f"{kind} is not a degenerate family")


def _equatorial() -> RotationalSurface:
    def meridian(s):
        return np.stack([np.cos(s), np.zeros_like(s), np.sin(s)], axis=-1)

    return RotationalSurface(
        family=SurfaceFamily.EQUATORIAL,
        profile=ClosedFormProfile(fn=meridian, period=2 * np.pi),
        momentum_profile=ConstantMomentum(0.0),
        params={"delta": 0.0, "alpha_hat2": 1.0, "beta_hat2": 1.0},
    )


def quadric_spec_to_json(spec: QuadricSpec) -> dict:
    """Surface descriptor mirroring the QuadricSpec record."""
    return {
        "family": spec.family.value,
        "alpha2": spec.alpha2,
        "beta2": spec.beta2,
        "alpha_hat2": spec.alpha_hat2,
        "beta_hat2": spec.beta_hat2,
        "cylinder": {
            "kind": spec.cylinder.kind.value,
            "p": spec.cylinder.p,
            "q": spec.cylinder.q,
        },
        "mu": spec.momentum.mu,
        "c": spec.momentum.c,
        "A2": spec.a2,
        "B2": spec.b2,
        "C2": spec.c2,
        "D2": spec.d2,
    }


def make_fake_paraboloid(a: float, step: float = 1e-3) -> RotationalSurface:
    """Surface x3^2 + x4^2 = 2 a x2 over the sphero-cylindrical loop."""
    if a == 0.0:
        raise BadParameter("fake paraboloid needs a != 0")
    profile = SpheroCylindricalMomentum(a)
    iv = feasible_intervals(profile)[0]
    chart = ReconstructionMap(profile, iv)
    return RotationalSurface(
        family=SurfaceFamily.FAKE_PARABOLOID,
        profile=FakeParaboloidProfile(a=a, chart=chart),
        momentum_profile=profile,
        params={"a": a, "step": step},
    )
