"""Command-line interface orchestrating the library.

Commands: conic, reconstruct, quadric, classify, verify, project.  Reports
are JSON (stdout with --json, files otherwise); curves go to CSV and meshes
to OBJ.  Exit codes: 0 success, 2 input validation, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .conics import (
    CylinderConic,
    canonical_form,
    classify,
    conic_report,
    focal_params,
    canonical_residual,
    locus_residual,
    sample_loop,
    NONDEGENERATE,
)
from .errors import IllConditioned, IOFailure, QuadratureFailure, SpheriqError
from .momentum import (
    ConstantMomentum,
    LinearMomentum,
    QuadricMomentum,
    SpheroCylindricalMomentum,
    feasible_intervals,
    reconstruct,
    validate_reconstruction,
)
from .projection import (
    cyclide_coeffs,
    cyclide_residual,
    mesh_from_surface,
    spiric_coeffs,
    spiric_residual,
    stereo_s2,
    write_obj,
)
from .sphere import cartesian_to_geo, resample_by_arclength, write_curve_csv
from .surfaces import (
    make_fake_paraboloid,
    make_quadric,
    make_quadric_surface,
    quadric_spec_to_json,
)
from .weingarten import (
    classify_rotational_surface,
    cubic_residual,
    sextic_residual,
    solve_report,
)
from .conics import MomentumCoeffs

NUMERIC_ERRORS = (QuadratureFailure, IllConditioned, IOFailure)


def _seed() -> int:
    return int(os.environ.get("SPHERIQ_SEED", "20240809"))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def _emit(report: dict, args) -> None:
    text = json.dumps(_jsonable(report), sort_keys=True, indent=2)
    if args.json:
        print(text)
        return
    out = Path(args.out_dir) / f"{report['command']}_report.json"
    out.write_text(text + "\n")
    print(out)


def _config_echo(args) -> dict:
    skip = {"func", "json", "out_dir"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def _base_report(command: str, args) -> dict:
    return {
        "tool": "spheriq",
        "version": __version__,
        "command": command,
        "config": _config_echo(args),
    }


def _profile_from_args(args):
    if getattr(args, "quadric", None) is not None:
        mu, c = args.quadric
        return QuadricMomentum(mu, c)
    if getattr(args, "constant", None) is not None:
        return ConstantMomentum(args.constant)
    if getattr(args, "linear", None) is not None:
        return LinearMomentum(args.linear)
    if getattr(args, "fake_paraboloid", None) is not None:
        return SpheroCylindricalMomentum(args.fake_paraboloid)
    raise SpheriqError("no profile flag given")


def _conic_from_args(args) -> CylinderConic:
    if args.horizontal is not None:
        return CylinderConic.horizontal(*args.horizontal)
    if args.vertical is not None:
        return CylinderConic.vertical(*args.vertical)
    raise SpheriqError("need --horizontal C D or --vertical A B")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_conic(args) -> dict:
    conic = _conic_from_args(args)
    report = _base_report("conic", args)
    report.update(conic_report(conic))
    cls = classify(conic)
    if cls in NONDEGENERATE:
        pts = sample_loop(canonical_form(conic), n=4000)
        f = focal_params(conic)
        report["locus_residual_max"] = float(
            np.max(np.abs([locus_residual(p, f) for p in pts]))
        )
        report["canonical_residual_max"] = float(
            np.max(np.abs([canonical_residual(cartesian_to_geo(p), f) for p in pts]))
        )
        if args.csv:
            write_curve_csv(resample_by_arclength(pts, args.step), args.csv)
            report["csv"] = args.csv
    return report


def cmd_reconstruct(args) -> dict:
    profile = _profile_from_args(args)
    intervals = feasible_intervals(profile)
    report = _base_report("reconstruct", args)
    report["intervals"] = [[iv.z_lo, iv.z_hi] for iv in intervals]
    curves = []
    for i, iv in enumerate(intervals):
        curve = reconstruct(profile, iv, step=args.step, branches=2)
        check = validate_reconstruction(curve, profile)
        entry = {
            "interval": [iv.z_lo, iv.z_hi],
            "samples": len(curve),
            "momentum_dev_max": check.momentum_dev_max,
            "curvature_dev_max": check.curvature_dev_max,
        }
        if args.csv:
            stem = Path(args.csv)
            path = stem if len(intervals) == 1 else stem.with_name(
                f"{stem.stem}_{i}{stem.suffix}"
            )
            write_curve_csv(curve, path)
            entry["csv"] = str(path)
        curves.append(entry)
    report["curves"] = curves
    return report


def cmd_quadric(args) -> dict:
    mu, c = args.quadric
    spec = make_quadric(MomentumCoeffs(mu, c))
    surface = make_quadric_surface(MomentumCoeffs(mu, c))
    report = _base_report("quadric", args)
    report.update(quadric_spec_to_json(spec))
    mesh = mesh_from_surface(surface, ns=96, nt=96, project=bool(args.obj))
    if args.obj:
        write_obj(mesh, args.obj)
        report["obj"] = args.obj
        report["vertices"] = len(mesh.vertices)
    return report


def cmd_classify(args) -> dict:
    report = _base_report("classify", args)
    if getattr(args, "quadric", None) is not None:
        mu, c = args.quadric
        surface = make_quadric_surface(MomentumCoeffs(mu, c))
    elif getattr(args, "fake_paraboloid", None) is not None:
        surface = make_fake_paraboloid(args.fake_paraboloid)
    else:
        from .momentum import ReconstructionMap
        from .surfaces import ReconstructedProfile, RotationalSurface, SurfaceFamily

        profile = _profile_from_args(args)
        iv = feasible_intervals(profile)[0]
        surface = RotationalSurface(
            family=SurfaceFamily.GENERIC,
            profile=ReconstructedProfile(chart=ReconstructionMap(profile, iv)),
            momentum_profile=profile,
        )
    report.update(solve_report(classify_rotational_surface(surface)))
    return report


def cmd_verify(args) -> dict:
    rng = np.random.default_rng(_seed())
    report = _base_report("verify", args)
    n = args.samples
    if args.fake_paraboloid is not None:
        prof = SpheroCylindricalMomentum(args.fake_paraboloid)
        t = prof.turning_latitude()
        z = rng.uniform(-0.99 * t, 0.99 * t, n)
        z = z[np.abs(z) > 1e-6]
        report["relation"] = "sextic"
        report["residual_max"] = float(np.max(np.abs(sextic_residual(args.fake_paraboloid, z))))
    elif args.quadric is not None:
        mu, c = args.quadric
        prof = QuadricMomentum(mu, c)
        res = []
        for iv in feasible_intervals(prof):
            pad = 0.01 * iv.width
            z = rng.uniform(iv.z_lo + pad, iv.z_hi - pad, n)
            z = z[np.abs(z) > 1e-6]
            res.append(np.max(np.abs(cubic_residual(prof, mu, z))))
        report["relation"] = "cubic"
        report["residual_max"] = float(np.max(res))
    elif args.constant is not None:
        prof = ConstantMomentum(args.constant)
        z = rng.uniform(-0.9, 0.9, n)
        report["relation"] = "km=0"
        report["residual_max"] = float(np.max(np.abs(prof.derivative(z))))
    elif args.linear is not None:
        prof = LinearMomentum(args.linear)
        z = rng.uniform(-0.5, 0.5, n)
        z = z[np.abs(z) > 1e-6]
        km = np.asarray(prof.derivative(z))
        kp = np.asarray(prof.value(z)) / z
        report["relation"] = "km=kp"
        report["residual_max"] = float(np.max(np.abs(km - kp)))
    else:
        raise SpheriqError("nothing to verify")
    report["tol"] = args.tol
    report["passed"] = bool(report["residual_max"] < args.tol)
    return report


def cmd_project(args) -> dict:
    report = _base_report("project", args)
    if args.quadric is not None:
        mu, c = args.quadric
        spec = make_quadric(MomentumCoeffs(mu, c))
        surface = make_quadric_surface(MomentumCoeffs(mu, c))
        coeffs = cyclide_coeffs(spec)
        mesh = mesh_from_surface(surface, ns=96, nt=96, project=True)
        report.update(
            family=spec.family.value,
            lam=coeffs.lam,
            L=coeffs.L,
            q0=coeffs.q0,
            qx2=coeffs.qx2,
            qz2=coeffs.qz2,
            residual_max=float(np.max(np.abs(cyclide_residual(coeffs, mesh.vertices)))),
        )
        if args.obj:
            write_obj(mesh, args.obj)
            report["obj"] = args.obj
    elif args.horizontal is not None:
        conic = CylinderConic.horizontal(*args.horizontal)
        coeffs = spiric_coeffs(conic)
        pts = sample_loop(conic, n=4000)
        uv = stereo_s2(pts)
        report.update(
            a=coeffs.a,
            b=coeffs.b,
            residual_max=float(np.max(np.abs(spiric_residual(coeffs, uv)))),
        )
    else:
        raise SpheriqError("need --quadric MU C or --horizontal C D")
    return report


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(sub, *, step=False, tol=False, csv=False, obj=False):
    sub.add_argument("--json", action="store_true", help="print the report to stdout")
    sub.add_argument("--out-dir", default=".", help="directory for report files")
    if step:
        sub.add_argument("--step", type=float, default=1e-3, help="arc-length step")
    if tol:
        sub.add_argument("--tol", type=float, default=1e-10, help="pass tolerance")
    if csv:
        sub.add_argument("--csv", help="CSV output path for curves")
    if obj:
        sub.add_argument("--obj", help="OBJ output path for meshes")


def _add_conic_flags(sub):
    sub.add_argument("--horizontal", nargs=2, type=float, metavar=("C", "D"))
    sub.add_argument("--vertical", nargs=2, type=float, metavar=("A", "B"))


def _add_profile_flags(sub, conic_too=False):
    sub.add_argument("--quadric", nargs=2, type=float, metavar=("MU", "C"))
    sub.add_argument("--constant", type=float, metavar="K")
    sub.add_argument("--linear", type=float, metavar="K0")
    sub.add_argument("--fake-paraboloid", type=float, metavar="A")
    if conic_too:
        _add_conic_flags(sub)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spheriq",
        description="spherical conics and rotational quadric surfaces in the 3-sphere",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("conic", help="classify a cylinder conic and sample it")
    _add_conic_flags(p)
    _add_common(p, step=True, csv=True)
    p.set_defaults(func=cmd_conic)

    p = subs.add_parser("reconstruct", help="rebuild a curve from its momentum")
    _add_profile_flags(p)
    _add_common(p, step=True, csv=True)
    p.set_defaults(func=cmd_reconstruct)

    p = subs.add_parser("quadric", help="build a quadric surface record and mesh")
    p.add_argument("--quadric", nargs=2, type=float, metavar=("MU", "C"), required=True)
    _add_common(p, step=True, obj=True)
    p.set_defaults(func=cmd_quadric)

    p = subs.add_parser("classify", help="run the cubic-relation classifier")
    _add_profile_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("verify", help="sweep a Weingarten identity residual")
    _add_profile_flags(p)
    p.add_argument("--samples", type=int, default=1000)
    _add_common(p, tol=True)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("project", help="stereographic image and quartic residuals")
    p.add_argument("--quadric", nargs=2, type=float, metavar=("MU", "C"))
    p.add_argument("--horizontal", nargs=2, type=float, metavar=("C", "D"))
    _add_common(p, obj=True)
    p.set_defaults(func=cmd_project)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except NUMERIC_ERRORS as exc:
        print(f"spheriq: numeric failure: {exc}", file=sys.stderr)
        return 3
    except SpheriqError as exc:
        print(f"spheriq: invalid input: {exc}", file=sys.stderr)
        return 2
    _emit(report, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
