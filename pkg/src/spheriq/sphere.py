"""Points, curves and differential invariants on the unit 2-sphere.

Curves are handled as discrete samples parameterized by arc length.  The
geodesic curvature of a unit-speed curve u(s) is det(u, u', u'') and the
angular momentum about the z-axis is x'y - xy'; both are recovered from
samples with finite differences (3-point first derivatives, 5-point second
derivatives, one-sided second-order stencils at the ends).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateInput, IOFailure, TooFewSamples

UNIT_TOL = 1e-12

Z_AXIS = np.array([0.0, 0.0, 1.0])


def unit2(x: float, y: float, z: float) -> np.ndarray:
    """Build a point on S^2, enforcing the unit-norm invariant."""
    p = np.array([x, y, z], dtype=float)
    check_unit(p)
    return p


def unit3(x1: float, x2: float, x3: float, x4: float) -> np.ndarray:
    """Build a point on S^3, enforcing the unit-norm invariant."""
    p = np.array([x1, x2, x3, x4], dtype=float)
    check_unit(p)
    return p


def check_unit(p: np.ndarray, tol: float = UNIT_TOL) -> None:
    """Raise if any point in the trailing axis is off the unit sphere."""
    err = np.abs(np.sum(np.asarray(p) ** 2, axis=-1) - 1.0)
    worst = float(np.max(err))
    if worst > tol:
        raise DegenerateInput(f"point off unit sphere by {worst:.3e}")


def geodesic_distance(p: np.ndarray, q: np.ndarray) -> float | np.ndarray:
    """Intrinsic distance on S^2 in radians, broadcast over leading axes.

    Equals arccos of the clamped inner product; evaluated as
    atan2(|p x q|, <p, q>), which stays fully conditioned at both ends.
    """
    p, q = np.asarray(p), np.asarray(q)
    dot = np.clip(np.sum(p * q, axis=-1), -1.0, 1.0)
    sin_d = np.linalg.norm(np.cross(p, q), axis=-1)
    d = np.arctan2(sin_d, dot)
    return float(d) if np.ndim(d) == 0 else d


@dataclass(frozen=True)
class GeoCoord:
    """Geographic coordinates: longitude in (-pi, pi], latitude in [-pi/2, pi/2]."""

    lam: float
    phi: float

    def __post_init__(self):
        if not (-np.pi < self.lam <= np.pi):
            raise DegenerateInput(f"longitude {self.lam} outside (-pi, pi]")
        if not (-np.pi / 2 <= self.phi <= np.pi / 2):
            raise DegenerateInput(f"latitude {self.phi} outside [-pi/2, pi/2]")


def geo_to_cartesian(g: GeoCoord) -> np.ndarray:
    """(lam, phi) -> (cos phi cos lam, cos phi sin lam, sin phi)."""
    return np.array(
        [
            np.cos(g.phi) * np.cos(g.lam),
            np.cos(g.phi) * np.sin(g.lam),
            np.sin(g.phi),
        ]
    )


def cartesian_to_geo(p: np.ndarray) -> GeoCoord:
    """Inverse of geo_to_cartesian; longitude of a pole is reported as 0."""
    check_unit(p)
    lam = float(np.arctan2(p[1], p[0]))
    if lam <= -np.pi:
        lam = np.pi
    return GeoCoord(lam, float(np.arcsin(np.clip(p[2], -1.0, 1.0))))


def geo_arrays_to_points(lam: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Vectorized geographic-to-Cartesian map, shape (N,) -> (N, 3)."""
    cp = np.cos(phi)
    return np.stack([cp * np.cos(lam), cp * np.sin(lam), np.sin(phi)], axis=-1)


# ---------------------------------------------------------------------------
# sampled curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampledCurve:
    """Arc-length sampled curve on S^2 with optional per-sample invariants.

    Invariants: all arrays share one length >= 3, s is strictly increasing,
    points are unit vectors, and the chord speed |u(s_{i+1}) - u(s_i)| / ds
    stays in [1 - 10 h^2, 1] for h the largest gap (arc-length check).
    """

    s: np.ndarray
    points: np.ndarray
    kappa: np.ndarray | None = None
    momentum: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "s", np.asarray(self.s, dtype=float))
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float))
        n = len(self.s)
        if n < 3 or self.points.shape != (n, 3):
            raise TooFewSamples(f"need >= 3 samples, got s:{n} points:{self.points.shape}")
        for name in ("kappa", "momentum"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.asarray(arr, dtype=float)
                object.__setattr__(self, name, arr)
                if arr.shape != (n,):
                    raise DegenerateInput(f"{name} length {arr.shape} != {n}")
        ds = np.diff(self.s)
        if np.any(ds <= 0):
            raise DegenerateInput("arc length must be strictly increasing")
        check_unit(self.points)
        h = float(np.max(ds))
        chord = np.linalg.norm(np.diff(self.points, axis=0), axis=1)
        speed = chord / ds
        lo = 1.0 - 10.0 * h * h
        # chord <= arc up to the ~1e-12 position accuracy of the points
        if np.any(speed < lo) or np.any(chord - ds > 1e-11):
            raise DegenerateInput(
                f"chord speed outside [{lo:.6g}, 1]: range "
                f"[{speed.min():.6g}, {speed.max():.6g}] (not arc length?)"
            )

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 1]

    @property
    def z(self) -> np.ndarray:
        return self.points[:, 2]

    def __len__(self) -> int:
        return len(self.s)


def _fornberg_weights(z: float, x: np.ndarray, m: int) -> np.ndarray:
    """Finite-difference weights for derivatives 0..m at z on nodes x."""
    n = len(x)
    w = np.zeros((m + 1, n))
    c1, c4 = 1.0, x[0] - z
    w[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, m)
        c2, c5, c4 = 1.0, c4, x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    w[k, i] = c1 * (k * w[k - 1, i - 1] - c5 * w[k, i - 1]) / c2
                w[0, i] = -c1 * c5 * w[0, i - 1] / c2
            for k in range(mn, 0, -1):
                w[k, j] = ((x[i] - z) * w[k, j] - k * w[k - 1, j]) / c3
            w[0, j] = (x[i] - z) * w[0, j] / c3
        c1 = c2
    return w


def _is_uniform(s: np.ndarray) -> bool:
    ds = np.diff(s)
    h = ds.mean()
    return bool(np.max(np.abs(ds - h)) <= 1e-9 * abs(h))


def curve_derivatives(s: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """First and second derivatives of sampled columns y(s).

    Interior rows use a 3-point central first derivative and a 5-point
    central second derivative; the outermost rows fall back to one-sided
    second-order stencils.  Non-uniform spacing is handled with per-row
    Fornberg weights.
    """
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(s)
    if n < 5:
        raise TooFewSamples(f"need >= 5 samples for derivatives, got {n}")
    d1 = np.empty_like(y)
    d2 = np.empty_like(y)
    if _is_uniform(s):
        h = (s[-1] - s[0]) / (n - 1)
        d1[1:-1] = (y[2:] - y[:-2]) / (2 * h)
        d1[0] = (-3 * y[0] + 4 * y[1] - y[2]) / (2 * h)
        d1[-1] = (3 * y[-1] - 4 * y[-2] + y[-3]) / (2 * h)
        d2[2:-2] = (-y[:-4] + 16 * y[1:-3] - 30 * y[2:-2] + 16 * y[3:-1] - y[4:]) / (
            12 * h * h
        )
        d2[1] = (y[0] - 2 * y[1] + y[2]) / (h * h)
        d2[-2] = (y[-3] - 2 * y[-2] + y[-1]) / (h * h)
        d2[0] = (2 * y[0] - 5 * y[1] + 4 * y[2] - y[3]) / (h * h)
        d2[-1] = (2 * y[-1] - 5 * y[-2] + 4 * y[-3] - y[-4]) / (h * h)
        return d1, d2
    for i in range(n):
        j1 = min(max(i - 1, 0), n - 3)
        w1 = _fornberg_weights(s[i], s[j1 : j1 + 3], 1)
        d1[i] = w1[1] @ y[j1 : j1 + 3]
        j2 = min(max(i - 2, 0), n - 5)
        w2 = _fornberg_weights(s[i], s[j2 : j2 + 5], 2)
        d2[i] = w2[2] @ y[j2 : j2 + 5]
    return d1, d2


def curvature_from_samples(c: SampledCurve) -> SampledCurve:
    """Fill kappa with det(u, u', u'') from finite differences."""
    if len(c) < 5:
        raise TooFewSamples(f"curvature needs >= 5 samples, got {len(c)}")
    d1, d2 = curve_derivatives(c.s, c.points)
    kappa = np.einsum("ij,ij->i", c.points, np.cross(d1, d2))
    return replace(c, kappa=kappa)


def momentum_from_samples(c: SampledCurve) -> SampledCurve:
    """Fill the angular momentum x'y - xy' from finite differences.

    The sign follows the curve's orientation (normal u x u'); traversing the
    same trace backwards negates the momentum, and both signs describe the
    same geometry.
    """
    if len(c) < 5:
        raise TooFewSamples(f"momentum needs >= 5 samples, got {len(c)}")
    d1, _ = curve_derivatives(c.s, c.points)
    mom = d1[:, 0] * c.points[:, 1] - c.points[:, 0] * d1[:, 1]
    return replace(c, momentum=mom)


def slerp(p: np.ndarray, q: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Great-circle interpolation between unit vectors, f in [0, 1]."""
    ang = geodesic_distance(p, q)
    ang = np.asarray(ang)
    f = np.asarray(f)
    small = ang < 1e-9
    sa = np.where(small, 1.0, np.sin(ang))
    wp = np.where(small, 1.0 - f, np.sin((1.0 - f) * ang) / sa)
    wq = np.where(small, f, np.sin(f * ang) / sa)
    out = wp[..., None] * p + wq[..., None] * q
    return out / np.linalg.norm(out, axis=-1, keepdims=True)


def resample_by_arclength(points: np.ndarray, target_step: float) -> SampledCurve:
    """Re-sample a point chain at uniform arc steps of geodesic chord length."""
    pts = np.asarray(points, dtype=float)
    if target_step <= 0:
        raise DegenerateInput("target_step must be positive")
    if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) < 2:
        raise DegenerateInput("need an (N, 3) array with N >= 2")
    check_unit(pts)
    seg = geodesic_distance(pts[:-1], pts[1:])
    keep = np.concatenate([[True], seg > 1e-15])
    pts = pts[keep]
    if len(pts) < 2:
        raise DegenerateInput("all points coincide")
    seg = geodesic_distance(pts[:-1], pts[1:])
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]
    n_out = int(np.floor(total / target_step + 1e-9)) + 1
    if n_out < 3:
        raise TooFewSamples("target_step too large for the chain length")
    s_new = np.arange(n_out) * target_step
    idx = np.clip(np.searchsorted(cum, s_new, side="right") - 1, 0, len(seg) - 1)
    frac = (s_new - cum[idx]) / seg[idx]
    new_pts = slerp(pts[idx], pts[idx + 1], np.clip(frac, 0.0, 1.0))
    return SampledCurve(s=s_new, points=new_pts)


def align_z_rotation(source: np.ndarray, target: np.ndarray) -> float:
    """Angle of the z-rotation that best maps source points onto target."""
    sx, sy = source[:, 0], source[:, 1]
    tx, ty = target[:, 0], target[:, 1]
    num = float(np.sum(sx * ty - sy * tx))
    den = float(np.sum(sx * tx + sy * ty))
    return float(np.arctan2(num, den))


def rotate_z(points: np.ndarray, angle: float) -> np.ndarray:
    """Rotate points about the z-axis."""
    c, s = np.cos(angle), np.sin(angle)
    out = np.array(points, dtype=float, copy=True)
    x, y = out[..., 0].copy(), out[..., 1].copy()
    out[..., 0] = c * x - s * y
    out[..., 1] = s * x + c * y
    return out


# ---------------------------------------------------------------------------
# closed-form reference curves
# ---------------------------------------------------------------------------


def parallel_curve(phi0: float, step: float = 1e-3, length: float | None = None) -> SampledCurve:
    """Parallel of latitude phi0 (constant curvature tan(phi0))."""
    c0, s0 = np.cos(phi0), np.sin(phi0)
    if c0 <= 0:
        raise DegenerateInput("latitude must lie in (-pi/2, pi/2)")
    if length is None:
        length = 2 * np.pi * c0
    s = np.arange(0.0, length + step / 2, step)
    pts = np.stack([c0 * np.cos(s / c0), c0 * np.sin(s / c0), np.full_like(s, s0)], axis=1)
    return SampledCurve(s=s, points=pts)


def great_circle_curve(theta: float, step: float = 1e-3, length: float = 2 * np.pi) -> SampledCurve:
    """Great circle at angle theta to the equator (geodesic, momentum -cos theta)."""
    ct, st = np.cos(theta), np.sin(theta)
    s = np.arange(0.0, length + step / 2, step)
    pts = np.stack([np.cos(s), ct * np.sin(s), st * np.sin(s)], axis=1)
    return SampledCurve(s=s, points=pts)


def small_circle_curve(delta: float, step: float = 1e-3, length: float | None = None) -> SampledCurve:
    """Small circle y = tanh(delta), orthogonal to the equator (curvature -sinh delta)."""
    ch, th = np.cosh(delta), np.tanh(delta)
    if length is None:
        length = 2 * np.pi / ch
    s = np.arange(0.0, length + step / 2, step)
    pts = np.stack([np.cos(ch * s) / ch, np.full_like(s, th), np.sin(ch * s) / ch], axis=1)
    return SampledCurve(s=s, points=pts)


# ---------------------------------------------------------------------------
# CSV interface: header s,x,y,z,kappa,momentum, empty fields when unset
# ---------------------------------------------------------------------------

CSV_HEADER = ["s", "x", "y", "z", "kappa", "momentum"]


def write_curve_csv(curve: SampledCurve, path) -> None:
    """Write a curve in the shared CSV format (shortest round-trip floats)."""
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for i in range(len(curve)):
                row = [repr(float(curve.s[i]))] + [repr(float(v)) for v in curve.points[i]]
                row.append("" if curve.kappa is None else repr(float(curve.kappa[i])))
                row.append("" if curve.momentum is None else repr(float(curve.momentum[i])))
                writer.writerow(row)
    except OSError as exc:
        raise IOFailure(str(exc)) from exc


def read_curve_csv(path) -> SampledCurve:
    """Read a curve written by write_curve_csv."""
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if header != CSV_HEADER:
                raise IOFailure(f"unexpected header {header}")
            rows = list(reader)
    except OSError as exc:
        raise IOFailure(str(exc)) from exc
    s = np.array([float(r[0]) for r in rows])
    pts = np.array([[float(r[1]), float(r[2]), float(r[3])] for r in rows])
    kappa = np.array([float(r[4]) for r in rows]) if rows and rows[0][4] != "" else None
    momentum = np.array([float(r[5]) for r in rows]) if rows and rows[0][5] != "" else None
    return SampledCurve(s=s, points=pts, kappa=kappa, momentum=momentum)
