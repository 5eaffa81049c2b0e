"""Normal-curve and dual-sphere characterizations.

A dual curve is *normal* when its position vector stays in the normal plane,
g(alpha, T) = 0. It lies on a dual sphere when the osculating-sphere center

    c(s) = alpha + (1/k1) N + D(1/k1) (1/k2) B

is constant, the radius then being r^2 = (1/k1)^2 + (D(1/k1)/k2)^2. The
reciprocal curvature of such curves solves y'' + y = 0 in the variable
t = integral of k2 along dual arc length, so 1/k1 = c1 cos t + c2 sin t
with dual constants; ``fit_curvature_solution`` recovers (c1, c2) by
linear least squares.

Curves with vanishing torsion at every sample (planar circles such as
``study_circle``) are handled as a limiting case: the binormal term of the
center is dropped, giving the smallest sphere through the circle, and the
sine coefficient is fixed at zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import DualScalar, dual_cos, dual_inv, dual_sin, dual_sqrt
from .curves import (QUAD_TOL, DualCurve, FrenetSample,
                     cumulative_integral_dual, derivatives, frenet_apparatus,
                     sample_parameters)
from .errors import (IllConditionedFit, InconsistentFits, SingularIndicatrix,
                     VanishingTorsion, ZeroRealPart)
from .linalg import DualVec3, dual_dot, dual_norm

TORSION_TOL = 1e-8
COND_MAX = 1e10
DEFAULT_SAMPLES = 256
EXACT_TOL = 1e-8
FD_TOL = 1e-5
# finite-difference k2 carries ~1e-7 noise; a tighter target never converges
FD_QUAD_TOL = 1e-7


def default_tol(curve: DualCurve) -> float:
    """Verdict threshold matched to the differentiation error floor."""
    return EXACT_TOL if curve.exact else FD_TOL


def _max_parts(x: DualScalar):
    return float(np.max(np.abs(x.real))), float(np.max(np.abs(x.dual)))


def _vec_max_parts(v: DualVec3):
    return (float(np.max(np.linalg.norm(v.real, axis=-1))),
            float(np.max(np.linalg.norm(v.dual, axis=-1))))


def _torsion_regime(fr: FrenetSample, torsion_tol: float, name: str) -> bool:
    """True for the all-planar limiting case; raises on mixed vanishing torsion."""
    small = np.abs(np.atleast_1d(fr.k2.real)) < torsion_tol
    if np.all(small):
        return True
    if np.any(small):
        where = np.atleast_1d(fr.s)[np.argmax(small)]
        raise VanishingTorsion(f"torsion of {name!r} vanishes near s={where:.6g}")
    return False


@dataclass(frozen=True)
class NormalCurveTest:
    is_normal: bool
    residual_real: float
    residual_dual: float
    tol: float

    @property
    def residual(self) -> float:
        return max(self.residual_real, self.residual_dual)


@dataclass(frozen=True, eq=False)
class NormalFit:
    c1: DualScalar
    c2: DualScalar
    residual_rms: tuple
    is_normal: bool
    tol: float
    condition: float
    anchor: DualScalar
    planar: bool
    s: np.ndarray = field(repr=False)
    angle: DualScalar = field(repr=False)
    inv_k1: DualScalar = field(repr=False)
    normal_component: DualScalar = field(repr=False)


@dataclass(frozen=True, eq=False)
class SphereFit:
    center: DualVec3
    radius: DualScalar
    center_drift: float
    radius_drift: float
    is_spherical: bool
    tol: float
    planar: bool
    radius_sq_real: float
    radius_rr_star: float


@dataclass(frozen=True)
class RadiusConsistency:
    sign: int
    c1_residual: float
    chain_residual: float
    consistent: bool
    tol: float


def position_decomposition(curve: DualCurve, s):
    """(g(alpha, N), g(alpha, B), g(alpha, T)) at ``s``."""
    fr = frenet_apparatus(curve, s)
    return (dual_dot(fr.position, fr.N), dual_dot(fr.position, fr.B),
            dual_dot(fr.position, fr.T))


def normal_curve_test(curve: DualCurve, n_samples: int = DEFAULT_SAMPLES,
                      tol: float = None) -> NormalCurveTest:
    """Check g(alpha, T) = 0 at every sample; only the tangent is needed."""
    tol = default_tol(curve) if tol is None else tol
    s = sample_parameters(curve, n_samples)
    alpha, a1 = derivatives(curve, s, 1)
    try:
        T = a1 * dual_inv(dual_norm(a1))
    except ZeroRealPart as exc:
        raise SingularIndicatrix(f"indicatrix of {curve.name!r} is singular") from exc
    r, d = _max_parts(dual_dot(alpha, T))
    return NormalCurveTest(r < tol and d < tol, r, d, tol)


def _torsion_angle(curve, s, anchor):
    """t(s) = anchor + integral of k2 along dual arc length from s[0]."""
    def integrand(x):
        fr = frenet_apparatus(curve, x)
        return fr.k2 * fr.speed
    tol = QUAD_TOL if curve.exact else FD_QUAD_TOL
    return cumulative_integral_dual(integrand, s, anchor, tol=tol)


def fit_curvature_solution(curve: DualCurve, n_samples: int = DEFAULT_SAMPLES,
                           anchor=DualScalar(0.0, 0.0), tol: float = None,
                           torsion_tol: float = TORSION_TOL,
                           cond_max: float = COND_MAX) -> NormalFit:
    """Least-squares fit of 1/k1 = c1 cos t + c2 sin t with dual c1, c2.

    Splitting into real and dual parts with t = t0 + eps*t1 gives

        y  = c1 cos t0 + c2 sin t0
        y* = c1* cos t0 + c2* sin t0 + t1 (c2 cos t0 - c1 sin t0)

    which is linear in (c1, c2, c1*, c2*).
    """
    tol = default_tol(curve) if tol is None else tol
    anchor = DualScalar.coerce(anchor)
    s = sample_parameters(curve, n_samples)
    fr = frenet_apparatus(curve, s)
    planar = _torsion_regime(fr, torsion_tol, curve.name)
    angle = _torsion_angle(curve, s, anchor)
    inv_k1 = fr.inv_k1

    t0, t1 = angle.real, angle.dual
    co, si = np.cos(t0), np.sin(t0)
    zero = np.zeros_like(t0)
    A = np.vstack([np.column_stack([co, si, zero, zero]),
                   np.column_stack([-t1 * si, t1 * co, co, si])])
    rhs = np.concatenate([inv_k1.real, inv_k1.dual])
    cols = [0, 2] if planar else [0, 1, 2, 3]
    As = A[:, cols]
    M = As.T @ As
    cond = float(np.linalg.cond(M))
    if not np.isfinite(cond) or cond > cond_max:
        raise IllConditionedFit(f"normal equations have condition {cond:.3g} > {cond_max:.3g}")
    sol = np.zeros(4)
    sol[cols] = np.linalg.solve(M, As.T @ rhs)
    resid = A @ sol - rhs
    n = s.size
    rms = (float(np.sqrt(np.mean(resid[:n] ** 2))), float(np.sqrt(np.mean(resid[n:] ** 2))))
    return NormalFit(
        c1=DualScalar(float(sol[0]), float(sol[2])),
        c2=DualScalar(float(sol[1]), float(sol[3])),
        residual_rms=rms, is_normal=max(rms) < tol, tol=tol, condition=cond,
        anchor=anchor, planar=planar, s=s, angle=angle, inv_k1=inv_k1,
        normal_component=dual_dot(fr.position, fr.N))


def _center_and_radius(fr: FrenetSample, planar: bool):
    inv_k1 = fr.inv_k1
    center = fr.position + fr.N * inv_k1
    radius_sq = inv_k1 * inv_k1
    if not planar:
        mu = fr.d_inv_k1 * dual_inv(fr.k2)
        center = center + fr.B * mu
        radius_sq = radius_sq + mu * mu
    return center, radius_sq


def sphere_center_radius(curve: DualCurve, s, torsion_tol: float = TORSION_TOL):
    """Pointwise sphere-center candidate and squared dual radius.

    Where the torsion vanishes the binormal term is dropped (planar limit).
    """
    fr = frenet_apparatus(curve, np.atleast_1d(s))
    planar = np.abs(fr.k2.real) < torsion_tol
    c_full, r_full = _center_and_radius(fr[~planar], False) if np.any(~planar) else (None, None)
    c_flat, r_flat = _center_and_radius(fr[planar], True) if np.any(planar) else (None, None)
    n = planar.size
    center = DualVec3.zero((n,))
    rsq = DualScalar(np.zeros(n), np.zeros(n))
    cr, cd, rr, rd = center.real.copy(), center.dual.copy(), rsq.real.copy(), rsq.dual.copy()
    for mask, c, r in ((~planar, c_full, r_full), (planar, c_flat, r_flat)):
        if c is not None:
            cr[mask], cd[mask], rr[mask], rd[mask] = c.real, c.dual, r.real, r.dual
    center, rsq = DualVec3(cr, cd), DualScalar(rr, rd)
    if np.ndim(s) == 0:
        return center[0], rsq[0]
    return center, rsq


def sphere_equation_components(k1: DualScalar, k2: DualScalar, d_inv_k1: DualScalar):
    """Real part r^2 and dual part r r* of (1/k1)^2 + (D(1/k1)/k2)^2.

    Written out in the real quantities k1, k1*, k2, k2*, (1/k1)' and
    (k1*/k1^2)' = -dual part of D(1/k1). The last term carries a minus sign:
    it comes from the dual part of (D(1/k1))^2 / k2^2.
    """
    a, a_s = k1.real, k1.dual
    b, b_s = k2.real, k2.dual
    yp = d_inv_k1.real
    d_ratio = -d_inv_k1.dual  # (k1*/k1^2)'
    r2 = 1.0 / a ** 2 + (yp / b) ** 2
    rr = -a_s / a ** 3 - yp ** 2 * b_s / b ** 3 - yp * d_ratio / b ** 2
    return r2, rr


def spherical_test(curve: DualCurve, n_samples: int = DEFAULT_SAMPLES, tol: float = None,
                   torsion_tol: float = TORSION_TOL) -> SphereFit:
    tol = default_tol(curve) if tol is None else tol
    s = sample_parameters(curve, n_samples)
    fr = frenet_apparatus(curve, s)
    planar = _torsion_regime(fr, torsion_tol, curve.name)
    center, radius_sq = _center_and_radius(fr, planar)

    mean_c = DualVec3(center.real.mean(axis=0), center.dual.mean(axis=0))
    dev = center - DualVec3(mean_c.real[None], mean_c.dual[None])
    center_drift = max(_vec_max_parts(dev))
    mean_r = DualScalar(float(np.mean(radius_sq.real)), float(np.mean(radius_sq.dual)))
    radius_drift = max(_max_parts(radius_sq - mean_r))

    if planar:
        r2 = 1.0 / fr.k1.real ** 2
        rr = -fr.k1.dual / fr.k1.real ** 3
    else:
        r2, rr = sphere_equation_components(fr.k1, fr.k2, fr.d_inv_k1)
    return SphereFit(center=mean_c, radius=dual_sqrt(mean_r),
                     center_drift=center_drift, radius_drift=radius_drift,
                     is_spherical=center_drift < tol and radius_drift < tol,
                     tol=tol, planar=planar,
                     radius_sq_real=float(np.mean(r2)), radius_rr_star=float(np.mean(rr)))


def normal_component_residual(curve: DualCurve, n_samples: int = DEFAULT_SAMPLES) -> float:
    """max |dual(1/k1) + g(a, N*) + g(a*, N)| over samples.

    The dual part of 1/k1 is -k1*/k1^2 and g(a, N*) + g(a*, N) is the dual
    part of g(alpha, N); for normal curves they cancel.
    """
    s = sample_parameters(curve, n_samples)
    fr = frenet_apparatus(curve, s)
    g = dual_dot(fr.position, fr.N)
    return float(np.max(np.abs(fr.inv_k1.dual + g.dual)))


def radius_constraint(fit: NormalFit, sphere: SphereFit, tol: float = 1e-6) -> RadiusConsistency:
    """Check c1 = +-sqrt(r^2 - c2^2) and that the three closed forms of 1/k1 agree.

    The closed forms are c1 cos t + c2 sin t, 1/k1 - eps*dual(g(alpha, N)) and
    +-sqrt(r^2 - c2^2) cos t + c2 sin t; each is compared with 1/k1 at
    every fitted sample.
    """
    r = sphere.radius
    root = dual_sqrt(r * r - fit.c2 * fit.c2)
    errs = {}
    for sign in (1, -1):
        d = fit.c1 - root * sign
        errs[sign] = max(abs(d.real), abs(d.dual))
    sign = min(errs, key=errs.get)
    if errs[sign] > tol:
        raise InconsistentFits(
            f"c1 = {fit.c1} matches neither sign of sqrt(r^2 - c2^2) = {root} (err {errs[sign]:.3g})")

    co, si = dual_cos(fit.angle), dual_sin(fit.angle)
    first = fit.c1 * co + fit.c2 * si
    second = DualScalar(fit.inv_k1.real, -fit.normal_component.dual)
    third = root * sign * co + fit.c2 * si
    chain = max(max(_max_parts(e - fit.inv_k1)) for e in (first, second, third))
    return RadiusConsistency(sign=sign, c1_residual=errs[sign], chain_residual=chain,
                             consistent=chain < tol, tol=tol)
