"""Ruled surfaces from curves on the dual unit sphere.

Each point of such a curve is an oriented line; sweeping the lines gives the
surface r(s, u) = p(s) + u l(s) with ruling l = a and base point p = a x a*,
the foot of the perpendicular from the origin.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .curves import DualCurve
from .errors import ExportError, NotOnDualUnitSphere
from .linalg import dual_dot, dual_normalize

SPHERE_ADMISSION_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class RuledSurfaceMesh:
    base_curve: np.ndarray   # (S, 3)
    rulings: np.ndarray      # (S, 3)
    s_values: np.ndarray     # (S,)
    u_values: np.ndarray     # (U,)
    vertices: np.ndarray     # (S, U, 3)

    @property
    def u_range(self):
        return (float(self.u_values[0]), float(self.u_values[-1])) if self.u_values.size else (0.0, 0.0)

    @property
    def u_count(self) -> int:
        return int(self.u_values.size)

    @property
    def shape(self):
        return self.vertices.shape[:2]


def ruled_surface_from_dual_curve(curve: DualCurve, s_samples: int = 64,
                                  u_range=(-1.0, 1.0), u_count: int = 16,
                                  s_range=None,
                                  tol: float = SPHERE_ADMISSION_TOL) -> RuledSurfaceMesh:
    """Sample the ruled surface of a dual unit-sphere curve on an (s, u) grid.

    Raises NotOnDualUnitSphere at the first sample where g(alpha, alpha)
    differs from 1 + eps*0 by more than ``tol`` in either part.
    """
    lo, hi = curve.domain if s_range is None else s_range
    s = np.linspace(lo, hi, s_samples)
    alpha = curve.position(s)
    g = dual_dot(alpha, alpha)
    dev = np.maximum(np.abs(g.real - 1.0), np.abs(g.dual))
    if np.any(dev > tol):
        i = int(np.argmax(dev > tol))
        raise NotOnDualUnitSphere(
            f"{curve.name!r} leaves the dual unit sphere at s={s[i]:.6g}: "
            f"g(alpha, alpha) = {g.real[i]:.6g} + eps {g.dual[i]:.6g} "
            f"(residual {dev[i]:.3g} > {tol:.3g})",
            index=i, s=float(s[i]), residual=float(dev[i]))
    unit = dual_normalize(alpha)
    rulings = unit.real
    base = np.cross(unit.real, unit.dual)
    u = np.linspace(u_range[0], u_range[1], u_count)
    vertices = base[:, None, :] + u[None, :, None] * rulings[:, None, :]
    return RuledSurfaceMesh(base, rulings, s, u, vertices)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _open_text(destination):
    if isinstance(destination, (str, Path)):
        try:
            return open(destination, "w", encoding="ascii", newline="\n"), True
        except OSError as exc:
            raise ExportError(f"cannot write {destination}: {exc}") from exc
    return destination, False


def _write(destination, text: str):
    fh, owned = _open_text(destination)
    try:
        fh.write(text)
    except OSError as exc:
        raise ExportError(f"write failed: {exc}") from exc
    finally:
        if owned:
            fh.close()


def obj_text(mesh: RuledSurfaceMesh) -> str:
    S, U = mesh.shape
    buf = io.StringIO()
    for p in mesh.vertices.reshape(-1, 3):
        buf.write(f"v {_fmt(p[0])} {_fmt(p[1])} {_fmt(p[2])}\n")
    # cell (i, j) -> two triangles, ordered by increasing s then u; 1-based
    for i in range(S - 1):
        for j in range(U - 1):
            a = i * U + j + 1
            b = (i + 1) * U + j + 1
            buf.write(f"f {a} {b} {b + 1}\n")
            buf.write(f"f {a} {b + 1} {a + 1}\n")
    return buf.getvalue()


def export_obj(mesh: RuledSurfaceMesh, destination) -> None:
    _write(destination, obj_text(mesh))


def csv_text(mesh: RuledSurfaceMesh) -> str:
    buf = io.StringIO()
    buf.write("s,u,x,y,z\n")
    for i, s in enumerate(mesh.s_values):
        for j, u in enumerate(mesh.u_values):
            x, y, z = mesh.vertices[i, j]
            buf.write(",".join(_fmt(v) for v in (s, u, x, y, z)) + "\n")
    return buf.getvalue()


def export_csv(mesh: RuledSurfaceMesh, destination) -> None:
    _write(destination, csv_text(mesh))
