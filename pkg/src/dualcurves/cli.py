"""Command-line interface: ``dualcurves classify | frenet | study-map CONFIG``.

Exit status: 0 success, 2 bad input, 3 a geometric precondition failed,
4 output could not be written.
"""

from __future__ import annotations

import io
import json
import sys
from dataclasses import replace
from pathlib import Path

import click
import numpy as np

from . import __version__
from .classify import (COND_MAX, FD_QUAD_TOL, TORSION_TOL, default_tol,
                       fit_curvature_solution, normal_component_residual,
                       normal_curve_test, radius_constraint, spherical_test)
from .config import CurveSpec, build_curve, parse_curve_spec, parse_grid
from .curves import CURVATURE_TOL, QUAD_TOL, frenet_apparatus, sample_parameters
from .errors import DualGeometryError, ExportError, SchemaViolation
from .study import SPHERE_ADMISSION_TOL, csv_text, obj_text, ruled_surface_from_dual_curve

RADIUS_CONSTRAINT_TOL = 1e-6
DEFAULT_SAMPLES = 256
DEFAULT_U_RANGE = (-1.0, 1.0)
DEFAULT_GRID = (64, 16)


def _range_option(value, key):
    if value is None:
        return None
    parts = value.split(",")
    try:
        lo, hi = (float(p) for p in parts)
    except ValueError:
        raise SchemaViolation(f"--{key}: expected LO,HI such as -2,2, got {value!r}") from None
    if not lo < hi:
        raise SchemaViolation(f"--{key}: interval [{lo}, {hi}] is empty")
    return lo, hi


def _load(config_path: str, overrides: dict) -> CurveSpec:
    try:
        text = Path(config_path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise SchemaViolation(f"cannot read {config_path}: {exc}") from exc
    spec = parse_curve_spec(text)
    return replace(spec, **{k: v for k, v in overrides.items() if v is not None})


def _curve(spec: CurveSpec):
    curve = build_curve(spec)
    if spec.s_range is not None:
        lo, hi = spec.s_range
        if lo < spec.domain[0] or hi > spec.domain[1]:
            raise SchemaViolation(f"s_range [{lo}, {hi}] leaves the domain {list(spec.domain)}")
        curve = replace(curve, domain=(lo, hi))
    if not spec.exact_derivatives:
        curve = curve.without_exact()
    return curve


def _emit(text: str, out):
    if out is None:
        click.echo(text, nl=False)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ExportError(f"cannot write {out}: {exc}") from exc


def _run(fn):
    try:
        fn()
    except DualGeometryError as exc:
        click.echo(f"error ({type(exc).__name__}): {exc}", err=True)
        sys.exit(exc.exit_code)


def _dual(x):
    return {"real": float(x.real), "dual": float(x.dual)}


def _vec(v):
    return {"real": [float(c) for c in v.real], "dual": [float(c) for c in v.dual]}


def classification_report(spec: CurveSpec) -> dict:
    """Run every classifier on the spec's curve and collect a JSON-ready report."""
    curve = _curve(spec)
    n = spec.samples or DEFAULT_SAMPLES
    tol = spec.tol if spec.tol is not None else default_tol(curve)

    normal = normal_curve_test(curve, n, tol)
    fit = fit_curvature_solution(curve, n, tol=tol)
    sphere = spherical_test(curve, n, tol)
    identity = normal_component_residual(curve, n)
    if sphere.is_spherical and fit.is_normal:
        rc = radius_constraint(fit, sphere, RADIUS_CONSTRAINT_TOL)
        radius = {"status": "checked", "sign": rc.sign, "c1_residual": rc.c1_residual,
                  "chain_residual": rc.chain_residual, "consistent": rc.consistent}
    else:
        radius = {"status": "skipped",
                  "reason": "needs a curve that is both spherical and fits the cosine law"}

    return {
        "tool": {"name": "dualcurves", "version": __version__},
        "curve": {"kind": spec.kind, "name": curve.name, "domain": list(curve.domain),
                  "exact_derivatives": curve.exact, "samples": n},
        "tolerances": {
            "verdict": tol, "torsion": TORSION_TOL, "curvature": CURVATURE_TOL,
            "fit_condition_max": COND_MAX,
            "quadrature": QUAD_TOL if curve.exact else FD_QUAD_TOL,
            "radius_constraint": RADIUS_CONSTRAINT_TOL,
        },
        "normal_curve_test": {"is_normal": normal.is_normal,
                              "residual_real": normal.residual_real,
                              "residual_dual": normal.residual_dual},
        "normal_fit": {"c1": _dual(fit.c1), "c2": _dual(fit.c2),
                       "residual_rms_real": fit.residual_rms[0],
                       "residual_rms_dual": fit.residual_rms[1],
                       "fits_cosine_law": fit.is_normal, "condition": fit.condition,
                       "anchor": _dual(fit.anchor), "planar_limit": fit.planar},
        "sphere_fit": {"is_spherical": sphere.is_spherical, "center": _vec(sphere.center),
                       "radius": _dual(sphere.radius), "center_drift": sphere.center_drift,
                       "radius_drift": sphere.radius_drift, "planar_limit": sphere.planar,
                       "radius_squared_real": sphere.radius_sq_real,
                       "radius_times_dual_radius": sphere.radius_rr_star},
        "normal_component_residual": identity,
        "radius_constraint": radius,
    }


def report_text(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


FRENET_COLUMNS = (["s"]
                  + [f"{v}_{c}" for v in ("T", "N", "B") for c in "xyz"]
                  + [f"{v}star_{c}" for v in ("T", "N", "B") for c in "xyz"]
                  + ["k1", "k1star", "k2", "k2star"])


def frenet_csv(spec: CurveSpec) -> str:
    curve = _curve(spec)
    s = sample_parameters(curve, spec.samples or DEFAULT_SAMPLES)
    fr = frenet_apparatus(curve, s)
    cols = [fr.s[:, None], fr.T.real, fr.N.real, fr.B.real, fr.T.dual, fr.N.dual, fr.B.dual,
            fr.k1.real[:, None], fr.k1.dual[:, None], fr.k2.real[:, None], fr.k2.dual[:, None]]
    table = np.hstack(cols)
    buf = io.StringIO()
    buf.write(",".join(FRENET_COLUMNS) + "\n")
    for row in table:
        buf.write(",".join(f"{x:.17g}" for x in row) + "\n")
    return buf.getvalue()


def study_map_text(spec: CurveSpec) -> str:
    curve = _curve(spec)
    s_count, u_count = spec.grid or DEFAULT_GRID
    mesh = ruled_surface_from_dual_curve(curve, s_samples=s_count,
                                         u_range=spec.u_range or DEFAULT_U_RANGE,
                                         u_count=u_count, tol=SPHERE_ADMISSION_TOL)
    return obj_text(mesh) if (spec.format or "obj") == "obj" else csv_text(mesh)


# --------------------------------------------------------------------------

_config_arg = click.argument("config", type=click.Path(exists=True, dir_okay=False))
_out_opt = click.option("--out", type=click.Path(dir_okay=False), default=None,
                        help="Write to this file instead of stdout.")
_exact_opt = click.option("--exact-derivatives/--finite-differences", default=None,
                          help="Differentiate analytically (default: central differences).")
_s_range_opt = click.option("--s-range", default=None, metavar="LO,HI",
                            help="Restrict the parameter interval.")
_samples_opt = click.option("--samples", type=click.IntRange(min=2), default=None,
                            help="Number of parameter samples (default 256).")


@click.group()
@click.version_option(__version__, prog_name="dualcurves")
def main():
    """Dual-number line geometry: classify curves, tabulate frames, export ruled surfaces."""


@main.command()
@_config_arg
@_samples_opt
@click.option("--tol", type=float, default=None,
              help="Verdict threshold (default 1e-8 exact, 1e-5 finite differences).")
@_exact_opt
@_s_range_opt
@_out_opt
def classify(config, samples, tol, exact_derivatives, s_range, out):
    """Decide whether a curve is normal and whether it lies on a dual sphere."""
    def go():
        spec = _load(config, dict(samples=samples, tol=tol, exact_derivatives=exact_derivatives,
                                  s_range=_range_option(s_range, "s-range")))
        _emit(report_text(classification_report(spec)), out)
    _run(go)


@main.command()
@_config_arg
@_samples_opt
@_exact_opt
@_s_range_opt
@_out_opt
def frenet(config, samples, exact_derivatives, s_range, out):
    """Tabulate the dual Frenet frame and curvatures as CSV."""
    def go():
        spec = _load(config, dict(samples=samples, exact_derivatives=exact_derivatives,
                                  s_range=_range_option(s_range, "s-range")))
        _emit(frenet_csv(spec), out)
    _run(go)


@main.command("study-map")
@_config_arg
@_s_range_opt
@click.option("--u-range", default=None, metavar="LO,HI", help="Ruling parameter interval.")
@click.option("--grid", default=None, metavar="SxU", help="Mesh resolution, e.g. 64x16.")
@click.option("--format", "fmt", type=click.Choice(["obj", "csv"]), default=None)
@_out_opt
def study_map(config, s_range, u_range, grid, fmt, out):
    """Export the ruled surface of a curve on the dual unit sphere."""
    def go():
        spec = _load(config, dict(s_range=_range_option(s_range, "s-range"),
                                  u_range=_range_option(u_range, "u-range"),
                                  grid=parse_grid(grid, "--grid") if grid else None,
                                  format=fmt))
        _emit(study_map_text(spec), out)
    _run(go)


if __name__ == "__main__":
    main()
