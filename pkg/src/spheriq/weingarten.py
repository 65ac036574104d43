"""Cubic and sextic Weingarten relations and the full surface classifier.

In latitude form the cubic relation km = mu * kp^3 becomes the separable
ODE K' = mu K^3 / z^3 with general solution K = +/- z / sqrt(mu + c z^2).
Solving the coefficient equations backwards gives the cylinder semi-axes:
A^2, B^2 are the roots of X^2 - S X + P with S = (mu + c + 1)/c, P = 1/c,
and D^2 a positive root of c X^2 + (mu - c + 1) X - mu with
C^2 = D^2 / (1 - c (1 - D^2)^2).  The classifier recovers (mu, c) from
sampled principal curvatures and dispatches the exact case tree: standard
tori for constant latitude, mu = 0 for moons and the equatorial sphere,
c = 0 for umbilical spheres, and the quadric regions otherwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .conics import ConicClass, MomentumCoeffs, region_of
from .errors import (
    DegenerateInput,
    IllConditioned,
    OutOfRegion,
    TooFewSamples,
    ZeroLatitude,
)
from .momentum import MomentumProfile, SpheroCylindricalMomentum


# ---------------------------------------------------------------------------
# inverse parameter maps (momentum coefficients -> cylinder semi-axes)
# ---------------------------------------------------------------------------


def cubic_discriminant(mu: float, c: float) -> float:
    return (mu - c + 1.0) ** 2 + 4.0 * c * mu


def vertical_squares(mu: float, c: float) -> tuple[float, float]:
    """(A^2, B^2): roots of X^2 - S X + P, largest first; needs c > 0."""
    if c <= 0:
        raise OutOfRegion("vertical cylinders require c > 0")
    disc = cubic_discriminant(mu, c)
    if disc <= 0:
        raise OutOfRegion(f"negative discriminant {disc} for (mu={mu}, c={c})")
    sq = np.sqrt(disc)
    a2 = (mu + c + 1.0 + sq) / (2.0 * c)
    # second root through the product A^2 B^2 = P = 1/c avoids cancellation
    b2 = 1.0 / (c * a2)
    if a2 <= 0 or b2 <= 0:
        raise OutOfRegion(f"no positive root pair for (mu={mu}, c={c})")
    return float(a2), float(b2)


def horizontal_squares(mu: float, c: float) -> tuple[float, float]:
    """(C^2, D^2) with D^2 a positive root of c X^2 + (mu - c + 1) X - mu."""
    if c == 0:
        raise OutOfRegion("horizontal inverse map needs c != 0")
    disc = cubic_discriminant(mu, c)
    if disc <= 0:
        raise OutOfRegion(f"negative discriminant {disc} for (mu={mu}, c={c})")
    sq = np.sqrt(disc)
    num = c - mu - 1.0
    if c > 0:
        # the + root; rewritten through the root product when num < 0
        d2 = (num + sq) / (2.0 * c) if num >= 0 else 2.0 * mu / (sq - num)
    else:
        d2 = (num - sq) / (2.0 * c)
    if d2 <= 0:
        raise OutOfRegion(f"no positive D^2 for (mu={mu}, c={c})")
    den = 1.0 - c * (1.0 - d2) ** 2
    if den <= 0:
        raise OutOfRegion(f"C^2 undefined for (mu={mu}, c={c})")
    return float(d2 / den), float(d2)


def momentum_from_vertical(a2: float, b2: float) -> MomentumCoeffs:
    """Forward map (A^2, B^2) -> (mu, c)."""
    return MomentumCoeffs(mu=(a2 - 1.0) * (1.0 - b2) / (a2 * b2), c=1.0 / (a2 * b2))


def momentum_from_horizontal(c2: float, d2: float) -> MomentumCoeffs:
    """Forward map (C^2, D^2) -> (mu, c)."""
    den = c2 * (1.0 - d2) ** 2
    return MomentumCoeffs(mu=d2 * d2 * (1.0 - c2) / den, c=(c2 - d2) / den)


# ---------------------------------------------------------------------------
# residuals of the two Weingarten identities
# ---------------------------------------------------------------------------


def cubic_residual(p: MomentumProfile, mu: float, z) -> float | np.ndarray:
    """K'(z) - mu (K(z)/z)^3, identically zero on the cubic families."""
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) < 1e-12):
        raise ZeroLatitude("cubic residual needs z != 0")
    res = np.asarray(p.derivative(z)) - mu * (np.asarray(p.value(z)) / z) ** 3
    return float(res) if res.ndim == 0 else res


def sextic_residual(a: float, z) -> float | np.ndarray:
    """LHS - RHS of (km - 2 kp^3 - 3 kp)^2 = 4 (1 + kp^2)^3 / (1 + a^2)."""
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) < 1e-12):
        raise ZeroLatitude("sextic residual needs z != 0")
    profile = SpheroCylindricalMomentum(a)
    km = np.asarray(profile.derivative(z))
    kp = np.asarray(profile.value(z)) / z
    lhs = (km - 2.0 * kp ** 3 - 3.0 * kp) ** 2
    rhs = 4.0 / (1.0 + a * a) * (1.0 + kp * kp) ** 3
    res = lhs - rhs
    return float(res) if res.ndim == 0 else res


class MuFit(NamedTuple):
    mu: float
    max_residual: float


def fit_mu(samples) -> MuFit:
    """Least-squares mu minimizing sum (km - mu kp^3)^2 over curvature samples.

    Accepts a list of PrincipalCurvatures-like records or an (n, 2) array of
    (km, kp) pairs; samples with |kp| <= 1e-6 are discarded.
    """
    if len(samples) and hasattr(samples[0], "km"):
        arr = np.asarray([(r.km, r.kp) for r in samples], dtype=float)
    else:
        arr = np.asarray(samples, dtype=float)
    km, kp = arr[:, 0], arr[:, 1]
    usable = np.abs(kp) > 1e-6
    km, kp = km[usable], kp[usable]
    if len(km) < 3:
        raise TooFewSamples("fit needs >= 3 samples with |kp| > 1e-6")
    kp3 = kp ** 3
    if np.ptp(kp3) < 1e-9 * max(1.0, np.max(np.abs(kp3))) and np.ptp(km) > 1e-6:
        raise IllConditioned("kp^3 nearly constant while km varies")
    mu = float(np.dot(km, kp3) / np.dot(kp3, kp3))
    return MuFit(mu=mu, max_residual=float(np.max(np.abs(km - mu * kp3))))


# ---------------------------------------------------------------------------
# case solver
# ---------------------------------------------------------------------------


class SolveCase(enum.Enum):
    EQUATORIAL_SPHERE = "EquatorialSphere"
    UMBILICAL_SPHERE = "UmbilicalSphere"
    STANDARD_TORUS = "StandardTorus"
    SPHERICAL_MOON = "SphericalMoon"
    NONDEGENERATE_QUADRIC = "NonDegenerateQuadric"


@dataclass(frozen=True)
class CubicSolveResult:
    """Outcome of the cubic-relation case tree.

    mu is None only for the equatorial sphere, where every mu satisfies the
    relation; sp carries the (S, P) intermediates of the vertical-form
    solution when one exists (c > 0).
    """

    case: SolveCase
    mu: float | None = None
    c: float | None = None
    delta: float | None = None
    phi0: float | None = None
    theta: float | None = None
    spec: object = None  # QuadricSpec for the non-degenerate case
    sp: tuple[float, float] | None = None
    residual_max: float | None = None


@dataclass(frozen=True)
class NotCubic:
    """Marker result: curvature samples reject every cubic relation."""

    residual_max: float
    mu_best: float | None = None


def solve_cubic_weingarten(
    mu: float | None,
    c: float | None = None,
    z_constant: bool = False,
) -> CubicSolveResult:
    """Dispatch (mu, c) through the exact case tree of the cubic relation.

    With z_constant the profile is a parallel and mu = -tan^4(phi0) must be
    negative.  mu = 0 yields the constant-momentum family (spherical moons;
    the equatorial sphere is its K = 0 member, which only curvature data
    can single out, see classify_rotational_surface).  c = 0 yields umbilical
    spheres with mu = 1/sinh^2(delta).
    """
    if z_constant:
        if mu is None or mu >= 0:
            raise OutOfRegion("a standard torus needs mu = -tan^4 phi0 < 0")
        phi0 = float(np.arctan((-mu) ** 0.25))
        return CubicSolveResult(case=SolveCase.STANDARD_TORUS, mu=mu, phi0=phi0)
    if mu is None:
        raise DegenerateInput("mu is required unless z is constant")
    if mu == 0.0:
        if c is None:
            return CubicSolveResult(case=SolveCase.SPHERICAL_MOON, mu=0.0)
        if c > 1.0:
            theta = float(np.arccos(1.0 / np.sqrt(c)))
            return CubicSolveResult(case=SolveCase.SPHERICAL_MOON, mu=0.0, c=c, theta=theta)
        raise OutOfRegion(f"mu=0 needs c > 1, got {c}")
    if c is None:
        raise DegenerateInput("c is required when mu != 0")
    if c == 0.0:
        if mu <= 0:
            raise OutOfRegion(f"c=0 needs mu > 0, got {mu}")
        delta = float(np.arcsinh(1.0 / np.sqrt(mu)))
        return CubicSolveResult(case=SolveCase.UMBILICAL_SPHERE, mu=mu, c=0.0, delta=delta)
    region = region_of(MomentumCoeffs(mu, c))  # raises OutOfRegion if invalid
    from .surfaces import make_quadric

    spec = make_quadric(MomentumCoeffs(mu, c))
    sp = ((mu + c + 1.0) / c, 1.0 / c) if c > 0 else None
    assert region in (
        ConicClass.TYPE_I,
        ConicClass.TYPE_II,
        ConicClass.TYPE_III,
        ConicClass.PARABOLA_I,
        ConicClass.PARABOLA_II,
    )
    return CubicSolveResult(
        case=SolveCase.NONDEGENERATE_QUADRIC, mu=mu, c=c, spec=spec, sp=sp
    )


# ---------------------------------------------------------------------------
# end-to-end classifier
# ---------------------------------------------------------------------------

CUBIC_FIT_TOL = 1e-6


def classify_rotational_surface(
    surface,
    n_samples: int = 24,
    tol: float = CUBIC_FIT_TOL,
) -> CubicSolveResult | NotCubic:
    """Identify which cubic-relation case a rotational surface realizes.

    Principal curvatures are sampled with Richardson-extrapolated stencils;
    if the best cubic fit leaves a residual above tol the surface is
    reported NotCubic.  For quadric cases the recovered coefficients are
    cross-checked against the implicit equation on surface samples.
    """
    from .surfaces import (
        principal_curvatures_richardson,
        surface_point,
        implicit_residual,
        make_quadric_surface,
    )

    lo, hi = surface.s_domain
    span = hi - lo
    s_all = np.linspace(lo + 0.03 * span, hi - 0.03 * span, n_samples)
    z_all = surface.profile.point(s_all)[:, 2]
    if np.ptp(z_all) < 1e-9:
        # constant latitude: a standard torus at phi0 = arcsin |z|
        phi0 = float(np.arcsin(abs(z_all.mean())))
        return solve_cubic_weingarten(-np.tan(phi0) ** 4, z_constant=True)
    s_use = s_all[np.abs(z_all) > 0.05]
    if len(s_use) < 8:
        raise TooFewSamples("fewer than 8 usable curvature samples")
    curv = [principal_curvatures_richardson(surface, float(s)) for s in s_use]
    km = np.array([cv.km for cv in curv])
    kp = np.array([cv.kp for cv in curv])
    z = surface.profile.point(s_use)[:, 2]
    if np.max(np.abs(km)) < tol and np.max(np.abs(kp)) < tol:
        return CubicSolveResult(case=SolveCase.EQUATORIAL_SPHERE, mu=None)
    if np.max(np.abs(km)) < tol:
        k_bar = float(np.mean(kp * z))  # constant momentum of the moon profile
        theta = float(np.arccos(np.clip(-k_bar, -1.0, 1.0)))
        return CubicSolveResult(
            case=SolveCase.SPHERICAL_MOON, mu=0.0, theta=theta, residual_max=float(np.max(np.abs(km)))
        )
    fit = fit_mu(np.stack([km, kp], axis=1))
    if fit.max_residual >= tol:
        return NotCubic(residual_max=fit.max_residual, mu_best=fit.mu)
    usable = np.abs(kp) > 1e-6
    c_hat = float(np.mean((1.0 / kp[usable] ** 2 - fit.mu) / z[usable] ** 2))
    if abs(c_hat) < 1e-6:
        result = solve_cubic_weingarten(fit.mu, 0.0)
        return CubicSolveResult(
            case=result.case, mu=fit.mu, c=0.0, delta=result.delta,
            residual_max=fit.max_residual,
        )
    result = solve_cubic_weingarten(fit.mu, c_hat)
    # cross-check: the recovered implicit equation must vanish on the surface
    check = make_quadric_surface(MomentumCoeffs(fit.mu, c_hat))
    probe = surface_point(surface, s_use, 0.37)
    imp = np.max(np.abs(implicit_residual(
        RotSurfaceView(check.family, check.quadric), probe)))
    return CubicSolveResult(
        case=result.case, mu=fit.mu, c=c_hat, spec=result.spec, sp=result.sp,
        residual_max=float(max(fit.max_residual, imp)),
    )


class RotSurfaceView:
    """Minimal family/quadric holder so implicit_residual can run on probes."""

    def __init__(self, family, quadric):
        self.family = family
        self.quadric = quadric
        self.params = {}


# ---------------------------------------------------------------------------
# geographic-form differentials (compatibility of the two dlambda/dphi)
# ---------------------------------------------------------------------------


def dlambda_dphi_momentum(mu: float, c: float, phi) -> np.ndarray:
    """|dlambda/dphi| of the quadric profile in geographic coordinates."""
    phi = np.asarray(phi, dtype=float)
    sp2 = np.sin(phi) ** 2
    rad = np.cos(phi) ** 2 * (mu + c * sp2) - sp2
    return np.abs(np.tan(phi)) / np.sqrt(rad)


def dlambda_dphi_cylinder(c_len: float, d_len: float, phi) -> np.ndarray:
    """|dlambda/dphi| of the horizontal-cylinder conic at latitude phi."""
    phi = np.asarray(phi, dtype=float)
    sp2 = np.sin(phi) ** 2
    c2, d2 = c_len * c_len, d_len * d_len
    rad1 = d2 - sp2
    rad2 = c2 * sp2 + d2 * np.cos(phi) ** 2 - c2 * d2
    return c_len * np.abs(1.0 - d2) * np.abs(np.tan(phi)) / np.sqrt(rad1 * rad2)


# ---------------------------------------------------------------------------
# JSON report
# ---------------------------------------------------------------------------


def solve_report(result: CubicSolveResult | NotCubic) -> dict:
    """Machine-readable classification record."""
    if isinstance(result, NotCubic):
        return {
            "case": "NotCubic",
            "mu": result.mu_best,
            "c": None,
            "A2": None, "B2": None, "C2": None, "D2": None,
            "residual_max": result.residual_max,
        }
    spec = result.spec
    return {
        "case": result.case.value
        if result.case is not SolveCase.NONDEGENERATE_QUADRIC
        else spec.family.value,
        "mu": result.mu,
        "c": result.c,
        "A2": None if spec is None else spec.a2,
        "B2": None if spec is None else spec.b2,
        "C2": None if spec is None else spec.c2,
        "D2": None if spec is None else spec.d2,
        "residual_max": result.residual_max,
        **({"delta": result.delta} if result.delta is not None else {}),
        **({"phi0": result.phi0} if result.phi0 is not None else {}),
        **({"theta": result.theta} if result.theta is not None else {}),
    }
