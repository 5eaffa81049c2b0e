"""Dual 3-vectors, oriented lines and the Study correspondence between them.

A unit dual vector (a, a*) with <a, a*> = 0 is an oriented line: ``a`` is its
direction and ``a*`` its moment about the origin.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import DualScalar, dual_inv
from .errors import (MomentNotPerpendicular, NotUnit, NotUnitDirection,
                     ParallelLines, ZeroRealPart)

ZERO_NORM_TOL = 1e-12
UNIT_TOL = 1e-8
PARALLEL_TOL = 1e-9


def _scalar_axis(x):
    """Broadcast a per-sample scalar against trailing xyz axes."""
    return np.asarray(x, dtype=float)[..., None]


@dataclass(frozen=True, eq=False)
class DualVec3:
    """Dual vector ``real + eps*dual``; parts have shape (..., 3)."""

    real: np.ndarray
    dual: np.ndarray

    __array_ufunc__ = None

    def __post_init__(self):
        object.__setattr__(self, "real", np.asarray(self.real, dtype=float))
        object.__setattr__(self, "dual", np.asarray(self.dual, dtype=float))

    @classmethod
    def from_real(cls, v) -> "DualVec3":
        v = np.asarray(v, dtype=float)
        return cls(v, np.zeros_like(v))

    @classmethod
    def zero(cls, shape=()) -> "DualVec3":
        return cls(np.zeros(shape + (3,)), np.zeros(shape + (3,)))

    @property
    def shape(self):
        return self.real.shape[:-1]

    def __getitem__(self, idx):
        if not isinstance(idx, tuple):
            idx = (idx,)
        return DualVec3(self.real[idx + (Ellipsis,)], self.dual[idx + (Ellipsis,)])

    def __len__(self):
        return self.real.shape[0]

    def __add__(self, other):
        return DualVec3(self.real + other.real, self.dual + other.dual)

    def __sub__(self, other):
        return DualVec3(self.real - other.real, self.dual - other.dual)

    def __neg__(self):
        return DualVec3(-self.real, -self.dual)

    def __mul__(self, k):
        if isinstance(k, DualScalar):
            a, b = _scalar_axis(k.real), _scalar_axis(k.dual)
            return DualVec3(a * self.real, a * self.dual + b * self.real)
        k = _scalar_axis(k)
        return DualVec3(k * self.real, k * self.dual)

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, DualScalar):
            return self * dual_inv(k)
        return self * (1.0 / np.asarray(k, dtype=float))

    def dot(self, other) -> DualScalar:
        return dual_dot(self, other)

    def cross(self, other) -> "DualVec3":
        return dual_cross(self, other)

    def norm(self) -> DualScalar:
        return dual_norm(self)

    def __repr__(self):
        return f"DualVec3(real={self.real!r}, dual={self.dual!r})"


@dataclass(frozen=True, eq=False)
class Line:
    """Oriented line through ``point`` with unit ``direction``."""

    point: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "point", np.asarray(self.point, dtype=float))
        object.__setattr__(self, "direction", np.asarray(self.direction, dtype=float))


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def dual_dot(x: DualVec3, y: DualVec3) -> DualScalar:
    return DualScalar(_dot(x.real, y.real), _dot(x.real, y.dual) + _dot(x.dual, y.real))


def dual_cross(x: DualVec3, y: DualVec3) -> DualVec3:
    return DualVec3(np.cross(x.real, y.real),
                    np.cross(x.real, y.dual) + np.cross(x.dual, y.real))


def dual_norm(x: DualVec3) -> DualScalar:
    n = np.linalg.norm(x.real, axis=-1)
    if np.any(n < ZERO_NORM_TOL):
        raise ZeroRealPart("dual norm is singular when the real part vanishes")
    return DualScalar(n, _dot(x.real, x.dual) / n)


def dual_normalize(x: DualVec3) -> DualVec3:
    return x * dual_inv(dual_norm(x))


def unit_residual(v: DualVec3):
    """Deviation of g(v, v) from 1 + eps*0 as (real, dual) arrays."""
    g = dual_dot(v, v)
    return np.abs(g.real - 1.0), np.abs(g.dual)


def is_unit(v: DualVec3, tol: float = UNIT_TOL) -> bool:
    r, d = unit_residual(v)
    return bool(np.all(r < tol) and np.all(d < tol))


def dual_angle(x: DualVec3, y: DualVec3) -> tuple[DualScalar, float]:
    """Dual angle theta + eps*theta* between two lines.

    Returns ``(angle, distance)`` where ``distance = |theta*|`` is the length
    of the common perpendicular. theta* itself carries an orientation sign.
    """
    if not (is_unit(x) and is_unit(y)):
        raise NotUnit("dual_angle expects unit dual vectors")
    if np.allclose(x.real, y.real, rtol=0, atol=1e-12) and np.allclose(x.dual, y.dual, rtol=0, atol=1e-12):
        return DualScalar(0.0, 0.0), 0.0
    g = dual_dot(x, y)
    theta = float(np.arccos(np.clip(g.real, -1.0, 1.0)))
    sin_t = np.sin(theta)
    if sin_t < PARALLEL_TOL:
        raise ParallelLines("lines are parallel; the distance is not determined by the dual angle")
    theta_star = float(-g.dual / sin_t)
    return DualScalar(theta, theta_star), abs(theta_star)


def line_to_dual(line: Line) -> DualVec3:
    a = line.direction
    if np.any(np.abs(np.linalg.norm(a, axis=-1) - 1.0) > UNIT_TOL):
        raise NotUnitDirection("line direction must have unit length")
    return DualVec3(a, np.cross(line.point, a))


def dual_to_line(v: DualVec3) -> Line:
    """Line encoded by a unit dual vector.

    The point returned is a x a*, the foot of the perpendicular dropped from
    the origin, so the representation is canonical.
    """
    r, d = unit_residual(v)
    if np.any(r > UNIT_TOL):
        raise NotUnit("dual vector is not on the dual unit sphere")
    if np.any(d > UNIT_TOL):
        raise MomentNotPerpendicular("moment is not perpendicular to the direction")
    return Line(np.cross(v.real, v.dual), v.real.copy())
