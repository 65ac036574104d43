"""Angular-momentum profiles K(z) and curve reconstruction by quadratures.

A profile determines a unit-speed spherical curve, up to rotation about the
z-axis, through two integrals: the arc length s(z) = int dz / sqrt(g) with
g(z) = 1 - z^2 - K(z)^2, inverted to z(s), and the longitude
lambda(s) = int K(z(s)) / (z(s)^2 - 1) ds.  The integrand 1/sqrt(g) has an
integrable square-root singularity wherever g has a simple zero (a turning
point of the latitude); substituting z = m + r sin(u) over a feasible
interval with turning endpoints removes it entirely, leaving smooth
integrands in u that are handled by fixed Gauss panels and, for one-off
integrals, adaptive quadrature.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import (
    BadParameter,
    DegenerateInput,
    NoFeasibleRegion,
    OutOfDomain,
    QuadratureFailure,
)
from .sphere import SampledCurve, geo_arrays_to_points

_DOUBLE_ZERO_TOL = 1e-8


# ---------------------------------------------------------------------------
# profile families
# ---------------------------------------------------------------------------


class MomentumProfile:
    """Common interface of the closed-form momentum families."""

    def value(self, z):
        raise NotImplementedError

    def derivative(self, z):
        raise NotImplementedError

    def domain(self) -> list[tuple[float, float]]:
        """Open intervals of definition inside (-1, 1)."""
        return [(-1.0, 1.0)]

    def g(self, z):
        """Feasibility function 1 - z^2 - K(z)^2."""
        k = self.value(z)
        return 1.0 - np.asarray(z) ** 2 - k * k

    def g_prime(self, z):
        return -2.0 * np.asarray(z) - 2.0 * self.value(z) * self.derivative(z)

    def h_factor(self, z, z_lo: float, z_hi: float):
        """g / ((z - z_lo)(z_hi - z)) in cancellation-free form, if known.

        Families override this with the algebraic factorization of g over the
        feasible interval (z_lo, z_hi); None falls back to the raw ratio.
        """
        return None


@dataclass(frozen=True)
class ConstantMomentum(MomentumProfile):
    """K = k, |k| < 1: great circles."""

    k: float

    def __post_init__(self):
        if not abs(self.k) < 1.0:
            raise BadParameter(f"constant momentum needs |k| < 1, got {self.k}")

    def value(self, z):
        return np.full_like(np.asarray(z, dtype=float), self.k)

    def derivative(self, z):
        return np.zeros_like(np.asarray(z, dtype=float))

    def h_factor(self, z, z_lo, z_hi):
        # g = (1 - k^2) - z^2 factors exactly over (-z*, z*)
        return np.ones_like(np.asarray(z, dtype=float))


@dataclass(frozen=True)
class LinearMomentum(MomentumProfile):
    """K = k0 z: small circles orthogonal to the equator (umbilical profile)."""

    k0: float

    def value(self, z):
        return self.k0 * np.asarray(z, dtype=float)

    def derivative(self, z):
        return np.full_like(np.asarray(z, dtype=float), self.k0)

    def h_factor(self, z, z_lo, z_hi):
        # g = 1 - (1 + k0^2) z^2
        return np.full_like(np.asarray(z, dtype=float), 1.0 + self.k0 * self.k0)


@dataclass(frozen=True)
class QuadricMomentum(MomentumProfile):
    """K = sign * z / sqrt(mu + c z^2), defined where mu + c z^2 > 0."""

    mu: float
    c: float
    sign: int = 1

    def __post_init__(self):
        if self.mu == 0.0:
            raise BadParameter("mu = 0 degenerates to a constant profile")
        if self.sign not in (-1, 1):
            raise BadParameter(f"sign must be +/-1, got {self.sign}")

    def _den(self, z):
        return self.mu + self.c * np.asarray(z, dtype=float) ** 2

    def value(self, z):
        return self.sign * np.asarray(z, dtype=float) / np.sqrt(self._den(z))

    def derivative(self, z):
        return self.sign * self.mu / np.sqrt(self._den(z) ** 3)

    def domain(self):
        if self.c == 0.0:
            return [(-1.0, 1.0)] if self.mu > 0 else []
        z_d2 = -self.mu / self.c
        if self.c > 0:
            if self.mu > 0:
                return [(-1.0, 1.0)]
            z_d = np.sqrt(z_d2)
            if z_d >= 1.0:
                return []
            return [(-1.0, -z_d), (z_d, 1.0)]
        if self.mu < 0:
            return []
        z_d = np.sqrt(z_d2)
        return [(-min(1.0, z_d), min(1.0, z_d))]

    def h_factor(self, z, z_lo, z_hi):
        # g (mu + c z^2) = -c (z^2 - r1)(z^2 - r2); the interval endpoints are
        # square roots of the relevant r's, so the quotient collapses
        z = np.asarray(z, dtype=float)
        den = self._den(z)
        if self.c == 0.0:
            return np.full_like(z, 1.0 + 1.0 / self.mu)
        if z_lo > 0.0 or z_hi < 0.0:
            return self.c * (z + z_lo) * (z + z_hi) / den
        zs2 = z_hi * z_hi  # symmetric band; the other quartic root pairs off
        return (self.c * z * z + self.mu / zs2) / den


@dataclass(frozen=True)
class SpheroCylindricalMomentum(MomentumProfile):
    """K = z (z^2 - 2) / sqrt(4 (a^2 + z^2) - z^4), the parabolic-cylinder profile."""

    a: float

    def __post_init__(self):
        if self.a == 0.0:
            raise BadParameter("sphero-cylindrical profile needs a != 0")

    def _w(self, z):
        z2 = np.asarray(z, dtype=float) ** 2
        return 4.0 * (self.a * self.a + z2) - z2 * z2

    def value(self, z):
        z = np.asarray(z, dtype=float)
        return z * (z * z - 2.0) / np.sqrt(self._w(z))

    def derivative(self, z):
        # quotient rule collapses to a polynomial numerator over W^(3/2)
        z = np.asarray(z, dtype=float)
        z2, a2 = z * z, self.a * self.a
        num = -(z2 ** 3) + 6.0 * z2 * z2 + 12.0 * a2 * z2 - 8.0 * a2
        return num / np.sqrt(self._w(z) ** 3)

    def domain(self):
        return [(-1.0, 1.0)]  # W > 0 on all of [-1, 1]

    def turning_latitude(self) -> float:
        """Positive root of z^4 + 4 a^2 z^2 - 4 a^2 (edge of the feasible band)."""
        a2 = self.a * self.a
        return float(np.sqrt(2.0 * abs(self.a) * (np.sqrt(a2 + 1.0) - abs(self.a))))

    def h_factor(self, z, z_lo, z_hi):
        # g W = 4 a^2 (1 - z^2) - z^4 = (t^2 - z^2)(z^2 + 4 a^2 / t^2)
        z = np.asarray(z, dtype=float)
        t2 = z_hi * z_hi
        return (z * z + 4.0 * self.a * self.a / t2) / self._w(z)


def profile_from_json(data: dict) -> MomentumProfile:
    """Build a profile from the CLI-facing descriptor."""
    try:
        family = data["family"]
        if family == "constant":
            return ConstantMomentum(float(data["k"]))
        if family == "linear":
            return LinearMomentum(float(data["k0"]))
        if family == "quadric":
            return QuadricMomentum(
                float(data["mu"]), float(data["c"]), int(data.get("sign", 1))
            )
        if family == "spherocylindrical":
            return SpheroCylindricalMomentum(float(data["a"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DegenerateInput(f"bad profile descriptor {data!r}") from exc
    raise DegenerateInput(f"unknown profile family {family!r}")


def profile_to_json(p: MomentumProfile) -> dict:
    if isinstance(p, ConstantMomentum):
        return {"family": "constant", "k": p.k}
    if isinstance(p, LinearMomentum):
        return {"family": "linear", "k0": p.k0}
    if isinstance(p, QuadricMomentum):
        return {"family": "quadric", "mu": p.mu, "c": p.c, "sign": p.sign}
    if isinstance(p, SpheroCylindricalMomentum):
        return {"family": "spherocylindrical", "a": p.a}
    raise DegenerateInput(f"unknown profile type {type(p)!r}")


# ---------------------------------------------------------------------------
# feasible intervals
# ---------------------------------------------------------------------------


class EndpointKind(enum.Enum):
    TURNING_POINT = "TurningPoint"
    DOMAIN_EDGE = "DomainEdge"


@dataclass(frozen=True)
class FeasibleInterval:
    """Maximal open interval where g = 1 - z^2 - K^2 is positive."""

    z_lo: float
    z_hi: float
    lo_kind: EndpointKind = EndpointKind.TURNING_POINT
    hi_kind: EndpointKind = EndpointKind.TURNING_POINT

    def __post_init__(self):
        if not (-1.0 <= self.z_lo < self.z_hi <= 1.0):
            raise DegenerateInput(f"bad interval [{self.z_lo}, {self.z_hi}]")

    @property
    def width(self) -> float:
        return self.z_hi - self.z_lo


def _polish_root(p: MomentumProfile, z: float, lo: float, hi: float) -> float:
    """Newton-polish a simple zero of g; keeps the root inside (lo, hi)."""
    for _ in range(3):
        gp = float(p.g_prime(z))
        if gp == 0.0:
            break
        step = float(p.g(z)) / gp
        z_new = z - step
        if not (lo <= z_new <= hi):
            break
        z = z_new
    return z


def feasible_intervals(p: MomentumProfile, grid_n: int = 2048) -> list[FeasibleInterval]:
    """All maximal open intervals of {g > 0} inside (-1, 1) and dom K."""
    if grid_n < 64:
        raise DegenerateInput(f"grid_n must be >= 64, got {grid_n}")
    out: list[FeasibleInterval] = []
    for a, b in p.domain():
        a, b = max(a, -1.0), min(b, 1.0)
        if b <= a:
            continue
        eps = 1e-12 * max(1.0, b - a)
        zg = np.linspace(a + eps, b - eps, grid_n)
        with np.errstate(invalid="ignore", divide="ignore"):
            gv = np.asarray(p.g(zg))
        gv = np.where(np.isfinite(gv), gv, -1.0)
        pos = gv > 0.0
        if not np.any(pos):
            continue
        # locate maximal runs of positive g, refining endpoints by bisection
        idx = np.flatnonzero(np.diff(pos.astype(int)))
        starts = [0] if pos[0] else []
        ends: list[int] = []
        for i in idx:
            if pos[i + 1]:
                starts.append(i + 1)
            else:
                ends.append(i)
        if pos[-1]:
            ends.append(grid_n - 1)
        for i0, i1 in zip(starts, ends):
            if i0 > 0:
                z_lo = brentq(lambda z: float(p.g(z)), zg[i0 - 1], zg[i0], xtol=1e-15)
                z_lo = _polish_root(p, z_lo, zg[i0 - 1], zg[i0])
                lo_kind = EndpointKind.TURNING_POINT
            else:
                z_lo, lo_kind = a, EndpointKind.DOMAIN_EDGE
                if abs(float(p.g(a))) < 1e-10:
                    lo_kind = EndpointKind.TURNING_POINT
            if i1 < grid_n - 1:
                z_hi = brentq(lambda z: float(p.g(z)), zg[i1], zg[i1 + 1], xtol=1e-15)
                z_hi = _polish_root(p, z_hi, zg[i1], zg[i1 + 1])
                hi_kind = EndpointKind.TURNING_POINT
            else:
                z_hi, hi_kind = b, EndpointKind.DOMAIN_EDGE
                if abs(float(p.g(b))) < 1e-10:
                    hi_kind = EndpointKind.TURNING_POINT
            out.append(FeasibleInterval(float(z_lo), float(z_hi), lo_kind, hi_kind))
    if not out:
        raise NoFeasibleRegion("K(z)^2 + z^2 < 1 holds nowhere")
    return sorted(out, key=lambda iv: iv.z_lo)


# ---------------------------------------------------------------------------
# arc-length chart over one feasible interval
# ---------------------------------------------------------------------------

_GL_X, _GL_W = np.polynomial.legendre.leggauss(12)


class ReconstructionMap:
    """Arc-length chart of one monotone latitude branch.

    With both interval endpoints simple zeros of g, z = m + r sin(u) turns
    1/sqrt(g) into 1/sqrt(h) with h = g / ((z - z_lo)(z_hi - z)) smooth and
    positive on the closed interval, so cumulative Gauss panels in u give
    machine-accurate s(u) and lambda(u); point queries invert s(u) with a
    vectorized Newton iteration inside the bracketing panel.
    """

    def __init__(
        self,
        profile: MomentumProfile,
        interval: FeasibleInterval,
        lambda0: float = 0.0,
        n_panels: int = 200,
    ):
        self.profile = profile
        self.interval = interval
        self.lambda0 = lambda0
        z_lo, z_hi = interval.z_lo, interval.z_hi
        self._m = 0.5 * (z_lo + z_hi)
        self._r = 0.5 * (z_hi - z_lo)
        gp_lo = float(profile.g_prime(z_lo))
        gp_hi = float(profile.g_prime(z_hi))
        if abs(gp_lo) < _DOUBLE_ZERO_TOL or abs(gp_hi) < _DOUBLE_ZERO_TOL:
            raise QuadratureFailure(
                "g has a higher-order zero at a turning point; "
                "the sqrt substitution does not apply"
            )
        self._h_lo = gp_lo / (z_hi - z_lo)
        self._h_hi = -gp_hi / (z_hi - z_lo)
        # cumulative s and lambda at panel boundaries
        self._u_bounds = np.linspace(-np.pi / 2, np.pi / 2, n_panels + 1)
        half = 0.5 * (self._u_bounds[1] - self._u_bounds[0])
        mids = 0.5 * (self._u_bounds[:-1] + self._u_bounds[1:])
        nodes = mids[:, None] + half * _GL_X[None, :]
        fs, flam = self._integrands(nodes)
        self._s_bounds = np.concatenate([[0.0], np.cumsum(half * fs @ _GL_W)])
        self._lam_bounds = np.concatenate([[0.0], np.cumsum(half * flam @ _GL_W)])

    # -- chart pieces ------------------------------------------------------

    def z_of_u(self, u):
        return self._m + self._r * np.sin(u)

    def _h(self, z):
        z = np.asarray(z, dtype=float)
        factored = self.profile.h_factor(z, self.interval.z_lo, self.interval.z_hi)
        if factored is not None:
            return factored
        # generic fallback: raw ratio, endpoint values from g'
        w = (z - self.interval.z_lo) * (self.interval.z_hi - z)
        tiny = w < 1e-9 * self._r * self._r
        with np.errstate(invalid="ignore", divide="ignore"):
            h = np.asarray(self.profile.g(z)) / np.where(tiny, 1.0, w)
        if np.any(tiny):
            near_lo = np.abs(z - self.interval.z_lo) < np.abs(self.interval.z_hi - z)
            h = np.where(tiny, np.where(near_lo, self._h_lo, self._h_hi), h)
        return h

    def _integrands(self, u):
        """ds/du and dlambda/du on the chart."""
        z = self.z_of_u(u)
        inv_sqrt_h = 1.0 / np.sqrt(self._h(z))
        k = np.asarray(self.profile.value(z))
        den = z * z - 1.0
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.where(k == 0.0, 0.0, k / np.where(den == 0.0, 1.0, den))
        return inv_sqrt_h, ratio * inv_sqrt_h

    @property
    def branch_length(self) -> float:
        return float(self._s_bounds[-1])

    @property
    def branch_lambda(self) -> float:
        return float(self._lam_bounds[-1])

    def _partial(self, u_from, u_to):
        """Gauss integrals of (ds/du, dlam/du) over per-sample subintervals."""
        half = 0.5 * (u_to - u_from)
        nodes = 0.5 * (u_from + u_to)[..., None] + half[..., None] * _GL_X
        fs, flam = self._integrands(nodes)
        return half * (fs @ _GL_W), half * (flam @ _GL_W)

    def u_of_s(self, s):
        """Invert the strictly increasing s(u) for s in [0, branch_length]."""
        s = np.asarray(s, dtype=float)
        if np.any(s < -1e-9) or np.any(s > self.branch_length + 1e-9):
            raise OutOfDomain("arc length outside the branch")
        s = np.clip(s, 0.0, self.branch_length)
        j = np.clip(
            np.searchsorted(self._s_bounds, s, side="right") - 1,
            0,
            len(self._s_bounds) - 2,
        )
        u0 = self._u_bounds[j]
        du = self._u_bounds[j + 1] - u0
        ds = self._s_bounds[j + 1] - self._s_bounds[j]
        u = u0 + du * (s - self._s_bounds[j]) / ds
        for _ in range(12):
            part_s, _ = self._partial(u0, u)
            resid = self._s_bounds[j] + part_s - s
            step = resid * np.sqrt(self._h(self.z_of_u(u)))
            u = np.clip(u - step, -np.pi / 2, np.pi / 2)
            if np.max(np.abs(step)) < 1e-14:
                break
        return u

    def state_of_s(self, s):
        """(z, lambda-offset) on the single monotone branch, s in [0, L]."""
        u = self.u_of_s(s)
        j = np.clip(
            np.searchsorted(self._u_bounds, u, side="right") - 1,
            0,
            len(self._u_bounds) - 2,
        )
        _, part_lam = self._partial(self._u_bounds[j], u)
        return self.z_of_u(u), self._lam_bounds[j] + part_lam

    # -- folded evaluation over any number of oscillations -----------------

    def fold(self, s):
        """Map arc length to (z, lambda) with reflection past turning points.

        A turning point at |z| = 1 is a pole crossing, not a turn: the
        latitude still mirrors but the longitude jumps by pi there.
        """
        s = np.asarray(s, dtype=float)
        length = self.branch_length
        period = 2.0 * length
        k, sr = np.divmod(s, period)
        up = sr <= length
        s_up = np.where(up, sr, period - sr)
        z, lam_chart = self.state_of_s(s_up)
        lam_end = self.branch_lambda
        jump_hi = np.pi if self.interval.z_hi >= 1.0 - 1e-12 else 0.0
        jump_lo = np.pi if self.interval.z_lo <= -1.0 + 1e-12 else 0.0
        lam = np.where(up, lam_chart, 2.0 * lam_end + jump_hi - lam_chart)
        return z, self.lambda0 + (2.0 * lam_end + jump_hi + jump_lo) * k + lam

    def point(self, s) -> np.ndarray:
        """Curve point(s) at arc length s (vectorized), reflecting at turnings."""
        z, lam = self.fold(s)
        phi = np.arcsin(np.clip(z, -1.0, 1.0))
        return geo_arrays_to_points(np.atleast_1d(lam), np.atleast_1d(phi))

    def rising(self, s):
        """True where the latitude is increasing at arc length s."""
        s = np.asarray(s, dtype=float)
        _, sr = np.divmod(s, 2.0 * self.branch_length)
        return sr <= self.branch_length


# ---------------------------------------------------------------------------
# public quadrature operations
# ---------------------------------------------------------------------------


def _quad_checked(f, a, b, what: str) -> float:
    val, err = quad(f, a, b, epsabs=1e-12, epsrel=1e-12, limit=400)
    if err > 1e-10:
        val, err = quad(f, a, b, epsabs=1e-12, epsrel=1e-12, limit=4000)
        if err > 1e-10:
            raise QuadratureFailure(f"{what}: estimated error {err:.3e} > 1e-10")
    return float(val)


def arc_from_z(p: MomentumProfile, iv: FeasibleInterval, z0: float, z: float) -> float:
    """Signed arc length along the rising branch from latitude z0 to z."""
    pad = 1e-12 + 1e-12 * iv.width
    for val in (z0, z):
        if not (iv.z_lo - pad <= val <= iv.z_hi + pad):
            raise OutOfDomain(f"z={val} outside [{iv.z_lo}, {iv.z_hi}]")
    if z0 == z:
        return 0.0
    turning = (iv.lo_kind, iv.hi_kind) == (
        EndpointKind.TURNING_POINT,
        EndpointKind.TURNING_POINT,
    )
    if turning:
        rm = ReconstructionMap(p, iv)
        m, r = 0.5 * (iv.z_lo + iv.z_hi), 0.5 * iv.width
        u0 = np.arcsin(np.clip((z0 - m) / r, -1.0, 1.0))
        u1 = np.arcsin(np.clip((z - m) / r, -1.0, 1.0))
        return _quad_checked(
            lambda u: float(rm._integrands(np.asarray(u))[0]), u0, u1, "arc quadrature"
        )
    # rare mixed case: peel off sqrt singularities one end at a time
    def integrand(zz):
        return 1.0 / np.sqrt(float(p.g(zz)))

    sign = 1.0
    a, b = z0, z
    if a > b:
        a, b, sign = b, a, -1.0
    total = 0.0
    if iv.lo_kind is EndpointKind.TURNING_POINT and a <= iv.z_lo + 0.1 * iv.width:
        cut = iv.z_lo + 0.1 * iv.width
        cut = min(cut, b)
        v0, v1 = np.sqrt(cut - iv.z_lo), np.sqrt(max(a - iv.z_lo, 0.0))
        total += _quad_checked(
            lambda v: 2.0 * v / np.sqrt(float(p.g(iv.z_lo + v * v))), v1, v0, "arc (lo)"
        )
        a = cut
    if iv.hi_kind is EndpointKind.TURNING_POINT and b >= iv.z_hi - 0.1 * iv.width:
        cut = max(iv.z_hi - 0.1 * iv.width, a)
        v0, v1 = np.sqrt(iv.z_hi - cut), np.sqrt(max(iv.z_hi - b, 0.0))
        total += _quad_checked(
            lambda v: 2.0 * v / np.sqrt(float(p.g(iv.z_hi - v * v))), v1, v0, "arc (hi)"
        )
        b = cut
    if b > a:
        total += _quad_checked(integrand, a, b, "arc (interior)")
    return sign * total


def reconstruct(
    p: MomentumProfile,
    iv: FeasibleInterval,
    step: float = 1e-3,
    branches: int = 1,
    lambda0: float = 0.0,
) -> SampledCurve:
    """Sample the curve determined by K(z) over `branches` monotone z-branches.

    The arc-length origin sits at the lower turning point with longitude
    lambda0; branch 2k covers rising z, branch 2k+1 the mirrored descent.
    """
    if step <= 0:
        raise DegenerateInput("step must be positive")
    if branches < 1:
        raise DegenerateInput("need at least one branch")
    rm = ReconstructionMap(p, iv, lambda0=lambda0)
    total = branches * rm.branch_length
    n = int(np.floor(total / step)) + 1
    if n < 5:
        raise DegenerateInput(
            f"step {step} leaves only {n} samples on length {total:.3e}"
        )
    s = np.arange(n) * step
    return SampledCurve(s=s, points=rm.point(s))


@dataclass(frozen=True)
class ReconstructionReport:
    """Deviations of sampled invariants from the generating profile."""

    momentum_dev_max: float
    curvature_dev_max: float
    momentum_dev: np.ndarray = field(repr=False)
    curvature_dev: np.ndarray = field(repr=False)
    z: np.ndarray = field(repr=False)


def validate_reconstruction(c: SampledCurve, p: MomentumProfile) -> ReconstructionReport:
    """Compare finite-difference momentum and curvature against K and K'."""
    from .sphere import curvature_from_samples, momentum_from_samples

    c = momentum_from_samples(curvature_from_samples(c))
    interior = slice(2, -2)
    z = c.z[interior]
    mom_dev = np.abs(c.momentum[interior] - p.value(z))
    kap_dev = np.abs(c.kappa[interior] - p.derivative(z))
    return ReconstructionReport(
        momentum_dev_max=float(np.max(mom_dev)),
        curvature_dev_max=float(np.max(kap_dev)),
        momentum_dev=mom_dev,
        curvature_dev=kap_dev,
        z=z,
    )
