"""Stereographic projections, quartic image curves/surfaces, mesh export.

Projecting a spherical conic from the north pole of S^2 onto the xy-plane
yields a bicircular quartic (x^2+y^2)^2 - 2a x^2 - 2b y^2 + 1 = 0 (a spiric
curve); projecting a quadric surface of revolution from the pole of S^3
onto the xyz-hyperplane yields a Darboux cyclide
lam r^4 + L r^2 + q0 + qx2 x^2 + qz2 z^2 = 0 with r^2 = x^2+y^2+z^2.
Quartic residuals are normalized by (1 + r^2)^2 so tolerances stay
scale-free far from the origin.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .conics import ConicKind, CylinderConic
from .errors import (
    AtPole,
    DegenerateInput,
    DegenerateProjection,
    IOFailure,
    MissingParams,
)
from .sphere import SampledCurve, write_curve_csv
from .surfaces import RotationalSurface, SurfaceFamily, surface_point

POLE_EPS = 1e-9
CULL_EPS = 1e-6


def stereo_s2(p: np.ndarray) -> np.ndarray:
    """Project S^2 points from (0,0,1) to the xy-plane: (x, y)/(1 - z)."""
    p = np.asarray(p, dtype=float)
    z = p[..., 2]
    if np.any(z >= 1.0 - POLE_EPS):
        raise AtPole("point too close to the north pole of S^2")
    return p[..., :2] / (1.0 - z)[..., None]


def stereo_s3(q: np.ndarray) -> np.ndarray:
    """Project S^3 points from (0,0,0,1) to the xyz-hyperplane."""
    q = np.asarray(q, dtype=float)
    x4 = q[..., 3]
    if np.any(x4 >= 1.0 - POLE_EPS):
        raise AtPole("point too close to the north pole of S^3")
    return q[..., :3] / (1.0 - x4)[..., None]


# ---------------------------------------------------------------------------
# quartic coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpiricCoeffs:
    """Quartic (x^2+y^2)^2 - 2a x^2 - 2b y^2 + 1 = 0."""

    a: float
    b: float


@dataclass(frozen=True)
class CyclideCoeffs:
    """Quartic lam r^4 + L r^2 + q0 + qx2 x^2 + qz2 z^2 = 0, r^2 = |p|^2."""

    lam: float
    L: float
    q0: float
    qx2: float
    qz2: float


def spiric_coeffs(h: CylinderConic) -> SpiricCoeffs:
    """Spiric coefficients of a horizontal conic's stereographic image."""
    if h.kind is not ConicKind.HORIZONTAL:
        raise MissingParams("spiric coefficients need the horizontal (C, D) form")
    c2, d2 = h.p * h.p, h.q * h.q
    if abs(1.0 - d2) < 1e-12:
        raise DegenerateProjection("D = 1 sends the quartic to a degenerate curve")
    return SpiricCoeffs(
        a=(c2 + c2 * d2 - 2.0 * d2) / (c2 * (1.0 - d2)),
        b=(1.0 + d2) / (1.0 - d2),
    )


def spiric_residual(coeffs: SpiricCoeffs, uv: np.ndarray) -> np.ndarray:
    """Normalized quartic residual at planar points uv."""
    uv = np.asarray(uv, dtype=float)
    u2, v2 = uv[..., 0] ** 2, uv[..., 1] ** 2
    rho2 = u2 + v2
    raw = rho2 * rho2 - 2.0 * coeffs.a * u2 - 2.0 * coeffs.b * v2 + 1.0
    return raw / (1.0 + rho2) ** 2


def cyclide_coeffs(spec) -> CyclideCoeffs:
    """Darboux-cyclide coefficients of a quadric surface's projection."""
    cyl = getattr(spec, "cylinder", None)
    if cyl is None or cyl.kind is not ConicKind.HORIZONTAL:
        raise MissingParams("cyclide coefficients need horizontal (C, D) parameters")
    c2, d2 = cyl.p * cyl.p, cyl.q * cyl.q
    return CyclideCoeffs(
        lam=c2 * (d2 - 1.0),
        L=2.0 * c2 * (d2 + 1.0),
        q0=c2 * (d2 - 1.0),
        qx2=-4.0 * d2,
        qz2=-4.0 * c2,
    )


def cyclide_residual(coeffs: CyclideCoeffs, pts: np.ndarray) -> np.ndarray:
    """Normalized quartic residual at projected points (x, y, z)."""
    pts = np.asarray(pts, dtype=float)
    x2 = pts[..., 0] ** 2
    z2 = pts[..., 2] ** 2
    r2 = np.sum(pts * pts, axis=-1)
    raw = (
        coeffs.lam * r2 * r2
        + coeffs.L * r2
        + coeffs.q0
        + coeffs.qx2 * x2
        + coeffs.qz2 * z2
    )
    return raw / (1.0 + r2) ** 2


# ---------------------------------------------------------------------------
# meshes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mesh:
    """Triangle mesh; vertices are 3-vectors (projected) or 4-vectors (on S^3)."""

    vertices: np.ndarray
    faces: np.ndarray
    attributes: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", np.asarray(self.vertices, dtype=float))
        object.__setattr__(self, "faces", np.asarray(self.faces, dtype=int))
        n = len(self.vertices)
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= n):
            raise DegenerateInput("face index out of range")
        if not np.all(np.isfinite(self.vertices)):
            raise DegenerateInput("non-finite vertex")


def _triangle_areas(verts: np.ndarray, faces: np.ndarray) -> np.ndarray:
    a = verts[faces[:, 1]] - verts[faces[:, 0]]
    b = verts[faces[:, 2]] - verts[faces[:, 0]]
    if verts.shape[1] == 3:
        return 0.5 * np.linalg.norm(np.cross(a, b), axis=1)
    # 4D: area from the Gram determinant
    gram = (
        np.einsum("ij,ij->i", a, a) * np.einsum("ij,ij->i", b, b)
        - np.einsum("ij,ij->i", a, b) ** 2
    )
    return 0.5 * np.sqrt(np.clip(gram, 0.0, None))


def mesh_from_surface(
    surface: RotationalSurface,
    ns: int = 64,
    nt: int = 64,
    project: bool = False,
) -> Mesh:
    """Tensor-product triangulation of the surface over (s, t).

    The rotation seam t = pi is always identified; the s-seam is identified
    for closed profiles.  Degenerate triangles (area < 1e-14, e.g. at the
    axis points of moons) are dropped, and with project=True vertices within
    1e-6 of the projection pole are culled with a warning.
    """
    if ns < 4 or nt < 4:
        raise DegenerateInput("need ns, nt >= 4")
    lo, hi = surface.s_domain
    closed_s = bool(getattr(surface.profile, "closed", False))
    if closed_s:
        s = lo + (hi - lo) * np.arange(ns) / ns
    else:
        s = lo + (hi - lo) * np.arange(ns) / (ns - 1)
    t = -np.pi + 2.0 * np.pi * np.arange(nt) / nt
    verts4 = surface_point(surface, s[:, None], t[None, :]).reshape(-1, 4)

    rows = np.arange(ns if closed_s else ns - 1)
    cols = np.arange(nt)
    i0 = rows[:, None] * nt + cols[None, :]
    i1 = ((rows + 1) % ns)[:, None] * nt + cols[None, :]
    j1 = (cols + 1) % nt
    v00, v10 = i0.ravel(), i1.ravel()
    v01 = (rows[:, None] * nt + j1[None, :]).ravel()
    v11 = (((rows + 1) % ns)[:, None] * nt + j1[None, :]).ravel()
    faces = np.concatenate(
        [np.stack([v00, v10, v11], axis=1), np.stack([v00, v11, v01], axis=1)]
    )

    attributes: dict = {}
    z_prof = surface.profile.point(s)[:, 2]
    if surface.momentum_profile is not None:
        prof = surface.momentum_profile
        with np.errstate(divide="ignore", invalid="ignore"):
            km = np.asarray(prof.derivative(z_prof))
            kp = np.where(
                np.abs(z_prof) > 1e-9, np.asarray(prof.value(z_prof)) / z_prof, np.nan
            )
        attributes["km"] = np.repeat(km, nt)
        attributes["kp"] = np.repeat(kp, nt)
    elif surface.family is SurfaceFamily.STANDARD_TORUS:
        phi0 = surface.params["phi0"]
        attributes["km"] = np.full(len(verts4), np.tan(phi0))
        attributes["kp"] = np.full(len(verts4), -1.0 / np.tan(phi0))

    verts = verts4
    if project:
        keep = verts4[:, 3] < 1.0 - CULL_EPS
        if not np.all(keep):
            warnings.warn(
                f"culled {int(np.sum(~keep))} pole-adjacent vertices", stacklevel=2
            )
            remap = -np.ones(len(verts4), dtype=int)
            remap[keep] = np.arange(int(np.sum(keep)))
            faces = faces[np.all(keep[faces], axis=1)]
            faces = remap[faces]
            verts4 = verts4[keep]
            attributes = {k: v[keep] for k, v in attributes.items()}
        verts = stereo_s3(verts4)

    areas = _triangle_areas(verts, faces)
    faces = faces[areas >= 1e-14]
    return Mesh(vertices=verts, faces=faces, attributes=attributes)


def euler_characteristic(mesh: Mesh) -> int:
    """V - E + F with shared edges counted once."""
    edges = np.concatenate(
        [mesh.faces[:, [0, 1]], mesh.faces[:, [1, 2]], mesh.faces[:, [2, 0]]]
    )
    edges = np.unique(np.sort(edges, axis=1), axis=0)
    used = np.unique(mesh.faces)
    return int(len(used) - len(edges) + len(mesh.faces))


# ---------------------------------------------------------------------------
# file output
# ---------------------------------------------------------------------------


def write_obj(mesh: Mesh, path) -> None:
    """Write an ASCII OBJ (v/f records, 1-based indices, round-trip floats)."""
    if mesh.vertices.size and mesh.vertices.shape[1] != 3:
        raise IOFailure("OBJ output needs 3-vector vertices; project the mesh first")
    try:
        with open(path, "w") as fh:
            for v in mesh.vertices:
                fh.write(f"v {float(v[0])!r} {float(v[1])!r} {float(v[2])!r}\n")
            for f in mesh.faces:
                fh.write(f"f {f[0] + 1} {f[1] + 1} {f[2] + 1}\n")
    except OSError as exc:
        raise IOFailure(str(exc)) from exc


def read_obj(path) -> Mesh:
    """Read back a v/f OBJ written by write_obj (test helper)."""
    verts, faces = [], []
    try:
        with open(path) as fh:
            for line in fh:
                parts = line.split()
                if not parts:
                    continue
                if parts[0] == "v":
                    verts.append([float(x) for x in parts[1:4]])
                elif parts[0] == "f":
                    faces.append([int(x) - 1 for x in parts[1:4]])
    except OSError as exc:
        raise IOFailure(str(exc)) from exc
    return Mesh(
        vertices=np.array(verts, dtype=float).reshape(-1, 3),
        faces=np.array(faces, dtype=int).reshape(-1, 3),
    )


def write_csv(curve: SampledCurve, path) -> None:
    """Curve CSV in the shared format."""
    write_curve_csv(curve, path)
