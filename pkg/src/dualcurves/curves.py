"""Dual space curves, their derivatives and the dual Frenet apparatus.

Derivatives along a curve are taken with respect to its dual arc length
s_bar, i.e. D = (1/|alpha'|) d/dt with the dual norm. For a curve whose real
part is unit speed this is d/ds corrected by the dual part of the speed; it
is the derivation under which the Frenet equations

    D T = k1 N,   D N = -k1 T + k2 B,   D B = -k2 N

hold with dual-unit T, N, B, whatever the dual part of the speed is.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .algebra import DualScalar, dual_inv
from .errors import (OutOfDomain, SingularIndicatrix, VanishingCurvature,
                     ZeroRealPart)
from .linalg import DualVec3, dual_cross, dual_dot, dual_norm
from .numerics import (central_difference, cumulative_simpson, from_taylor,
                       jet_compose, jet_pow, stencil_margin, to_taylor)

CURVATURE_TOL = 1e-8
QUAD_TOL = 1e-10
MAX_ORDER = 4

JetFn = Callable[[np.ndarray, int], tuple]


@dataclass(frozen=True, eq=False)
class DualCurve:
    """A parametrized dual curve t -> alpha(t) + eps*alpha*(t).

    ``position`` takes a 1-d array of parameters and returns a DualVec3 of
    shape (n, 3). ``jet``, when given, returns exact derivative stacks
    ``(real, dual)`` of shape (order + 1, n, 3) for orders 0..order.
    Curves without a jet are differentiated numerically.
    """

    position: Callable[[np.ndarray], DualVec3]
    domain: tuple
    jet: Optional[JetFn] = None
    name: str = "curve"
    description: str = ""

    def __call__(self, t) -> DualVec3:
        scalar = np.ndim(t) == 0
        v = self.position(np.atleast_1d(np.asarray(t, dtype=float)))
        return v[0] if scalar else v

    @property
    def exact(self) -> bool:
        return self.jet is not None

    def without_exact(self) -> "DualCurve":
        return replace(self, jet=None)

    def contains(self, t, slack: float = 1e-12) -> bool:
        lo, hi = self.domain
        t = np.asarray(t)
        return bool(np.all((t >= lo - slack) & (t <= hi + slack)))


def derivatives(curve: DualCurve, t, order: int) -> list:
    """[alpha, alpha', ..., alpha^(order)] at parameters ``t`` (1-d array)."""
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"derivative order must be in 0..{MAX_ORDER}")
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if not curve.contains(t):
        raise OutOfDomain(f"parameter outside {curve.domain} for curve {curve.name!r}")
    if curve.jet is not None:
        real, dual = curve.jet(t, order)
        return [DualVec3(real[k], dual[k]) for k in range(order + 1)]
    if order > 0:
        lo, hi = curve.domain
        m = stencil_margin(max(abs(lo), abs(hi)))
        if np.any(t < lo + m - 1e-12) or np.any(t > hi - m + 1e-12):
            raise OutOfDomain(f"finite differences of {curve.name!r} need t within "
                              f"[{lo + m:.6g}, {hi - m:.6g}]")

    def packed(x):
        v = curve.position(x)
        return np.stack([v.real, v.dual], axis=1)

    out = [curve.position(t)]
    for k in range(1, order + 1):
        d = central_difference(packed, t, k)
        out.append(DualVec3(d[:, 0], d[:, 1]))
    return out


def derivative(curve: DualCurve, t, order: int) -> DualVec3:
    if not 1 <= order <= MAX_ORDER:
        raise ValueError("order must be 1..4")
    scalar = np.ndim(t) == 0
    d = derivatives(curve, t, order)[order]
    return d[0] if scalar else d


def sample_parameters(curve: DualCurve, n: int) -> np.ndarray:
    """n uniform parameters; inset from the ends when stencils are needed."""
    lo, hi = curve.domain
    if not curve.exact:
        m = stencil_margin(max(abs(lo), abs(hi)))
        lo, hi = lo + m, hi - m
    return np.linspace(lo, hi, n)


# --------------------------------------------------------------------------
# quadrature of dual-valued functions

def _packed_dual(f):
    def g(x):
        v = DualScalar.coerce(f(x))
        return np.stack([np.broadcast_to(v.real, x.shape), np.broadcast_to(v.dual, x.shape)], axis=-1)
    return g


def integrate_dual(f: Callable[[np.ndarray], DualScalar], a: float, b: float,
                   tol: float = QUAD_TOL) -> DualScalar:
    """Integral of a dual-valued function; parts are integrated independently."""
    if a == b:
        return DualScalar(0.0, 0.0)
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    seg = cumulative_simpson(_packed_dual(f), [a, b], tol=tol)
    return DualScalar(sign * float(seg[0, 0]), sign * float(seg[0, 1]))


def cumulative_integral_dual(f, points, anchor=DualScalar(0.0, 0.0),
                             tol: float = QUAD_TOL) -> DualScalar:
    """Antiderivative of ``f`` evaluated at sorted ``points``, equal to ``anchor`` at points[0]."""
    points = np.asarray(points, dtype=float)
    anchor = DualScalar.coerce(anchor)
    if points.size == 1:
        return DualScalar(np.array([anchor.real], float), np.array([anchor.dual], float))
    seg = cumulative_simpson(_packed_dual(f), points, tol=tol)
    acc = np.vstack([np.zeros((1, 2)), np.cumsum(seg, axis=0)])
    return DualScalar(anchor.real + acc[:, 0], anchor.dual + acc[:, 1])


def speed(curve: DualCurve, t) -> DualScalar:
    """Dual speed |alpha'(t)| = |a'| + eps <a', a*'>/|a'|."""
    try:
        return dual_norm(derivatives(curve, t, 1)[1])
    except ZeroRealPart as exc:
        raise SingularIndicatrix(f"indicatrix of {curve.name!r} is singular") from exc


def dual_arc_length(curve: DualCurve, t0: float, t1: float, tol: float = QUAD_TOL) -> DualScalar:
    """Dual arc length s + eps*s* of the curve between two parameters."""
    return integrate_dual(lambda t: speed(curve, t), t0, t1, tol=tol)


# --------------------------------------------------------------------------
# arc-length reparametrization

_GL_X, _GL_W = np.polynomial.legendre.leggauss(12)


def _real_speed(curve, t):
    v = np.linalg.norm(derivatives(curve, t, 1)[1].real, axis=-1)
    if np.any(v < 1e-12):
        raise SingularIndicatrix(f"indicatrix of {curve.name!r} is singular")
    return v


def reparametrize_by_arclength(curve: DualCurve, table_size: int = 257) -> DualCurve:
    """The same curve parametrized by the arc length of its indicatrix.

    The arc-length function is tabulated with adaptive quadrature and
    inverted by Newton iteration. Exact derivatives, when the source curve
    has them, are carried over by composing Taylor jets with t(s).
    """
    lo, hi = curve.domain
    if not curve.exact:
        m = stencil_margin(max(abs(lo), abs(hi)))
        lo, hi = lo + m, hi - m
    t_tab = np.linspace(lo, hi, table_size)
    seg = cumulative_simpson(lambda t: _real_speed(curve, t), t_tab, tol=1e-12)
    s_tab = np.concatenate([[0.0], np.cumsum(seg)])
    length = float(s_tab[-1])

    def t_of_s(s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        t = np.interp(s, s_tab, t_tab)
        for _ in range(50):
            j = np.clip(np.searchsorted(t_tab, t) - 1, 0, table_size - 2)
            a = t_tab[j]
            half = 0.5 * (t - a)
            nodes = a[:, None] + half[:, None] * (_GL_X[None, :] + 1.0)
            partial = half * (_real_speed(curve, nodes.ravel()).reshape(nodes.shape) @ _GL_W)
            resid = s_tab[j] + partial - s
            step = resid / _real_speed(curve, t)
            t = np.clip(t - step, lo, hi)
            if np.all(np.abs(step) < 1e-15 * max(1.0, abs(hi))):
                break
        return t

    def position(s):
        return curve.position(t_of_s(s))

    jet = None
    if curve.jet is not None:
        def jet(s, order):
            t = t_of_s(s)
            real, dual = curve.jet(t, max(order, 1))
            K = order + 1
            # Taylor of w(t) = 1/|a'(t)| about each t, orders 0..K-2
            a1 = to_taylor(real[1:K])
            sq = np.sum(_jmul_vec(a1, a1), axis=-1)
            w = jet_pow(sq, -0.5)
            tau = np.zeros((K,) + t.shape)
            if K > 1:
                tau[1] = w[0]
            for k in range(1, K - 1):
                wc = jet_compose(w, tau[:k + 1])
                tau[k + 1] = wc[k] / (k + 1)
            fr = jet_compose(to_taylor(real[:K]), tau)
            fd = jet_compose(to_taylor(dual[:K]), tau)
            return from_taylor(fr), from_taylor(fd)

    return DualCurve(position, (0.0, length), jet,
                     name=f"{curve.name}|arclength",
                     description=f"{curve.description} (arc-length parametrized)")


def _jmul_vec(a, b):
    K = a.shape[0]
    out = np.zeros_like(a)
    for k in range(K):
        for i in range(k + 1):
            out[k] = out[k] + a[i] * b[k - i]
    return out


# --------------------------------------------------------------------------
# Frenet apparatus

@dataclass(frozen=True, eq=False)
class FrenetSample:
    """Dual Frenet data at one or more parameters.

    ``DT``, ``DN``, ``DB`` are the frame derivatives with respect to dual arc
    length, obtained by differentiating the normalisations directly (not
    from k1, k2), so they can be checked against the Frenet equations.
    ``dk1``, ``dk2`` are D k1 and D k2.
    """

    s: np.ndarray
    position: DualVec3
    T: DualVec3
    N: DualVec3
    B: DualVec3
    k1: DualScalar
    k2: DualScalar
    speed: DualScalar
    DT: DualVec3
    DN: DualVec3
    DB: DualVec3
    dk1: DualScalar
    dk2: DualScalar

    def __getitem__(self, idx):
        return FrenetSample(**{name: getattr(self, name)[idx]
                               for name in self.__dataclass_fields__})

    @property
    def inv_k1(self) -> DualScalar:
        return dual_inv(self.k1)

    @property
    def d_inv_k1(self) -> DualScalar:
        """D(1/k1) = -D k1 / k1**2."""
        return -(self.dk1 * dual_inv(self.k1 * self.k1))


def frenet_apparatus(curve: DualCurve, s, curvature_tol: float = CURVATURE_TOL) -> FrenetSample:
    scalar = np.ndim(s) == 0
    t = np.atleast_1d(np.asarray(s, dtype=float))
    alpha, a1, a2, a3, a4 = derivatives(curve, t, 4)
    try:
        v = dual_norm(a1)
    except ZeroRealPart as exc:
        raise SingularIndicatrix(f"indicatrix of {curve.name!r} is singular") from exc
    inv_v = dual_inv(v)
    T = a1 * inv_v
    P = dual_cross(a1, a2)
    k1_real = np.linalg.norm(P.real, axis=-1) / v.real ** 3
    bad = k1_real < curvature_tol
    if np.any(bad):
        where = t[np.argmax(bad)]
        raise VanishingCurvature(f"curvature of {curve.name!r} vanishes near s={where:.6g}")
    Pn = dual_norm(P)
    k1 = Pn * inv_v ** 3
    B = P * dual_inv(Pn)
    N = dual_cross(B, T)

    dP = dual_cross(a1, a3)
    dPn = dual_dot(P, dP) * dual_inv(Pn)
    dv = dual_dot(a1, a2) * inv_v
    dk1_dt = dPn * inv_v ** 3 - 3 * Pn * dv * inv_v ** 4

    dT = (a2 - T * dual_dot(T, a2)) * inv_v
    dB = (dP - B * dual_dot(B, dP)) * dual_inv(Pn)
    dN = dual_cross(dB, T) + dual_cross(B, dT)
    DT, DN, DB = dT * inv_v, dN * inv_v, dB * inv_v
    k2 = dual_dot(DN, B)

    k2_t = dual_dot(P, a3) * dual_inv(Pn * Pn)
    dk2_dt = dual_dot(P, a4) * dual_inv(Pn * Pn) - 2 * k2_t * dPn * dual_inv(Pn)

    fr = FrenetSample(t, alpha, T, N, B, k1, k2, v, DT, DN, DB,
                      dk1_dt * inv_v, dk2_dt * inv_v)
    return fr[0] if scalar else fr


def frenet_residuals(fr: FrenetSample) -> dict:
    """Max abs deviation (real, dual) from the Frenet equations and orthonormality."""
    def vmax(v):
        return float(np.max(np.abs(v.real))), float(np.max(np.abs(v.dual)))

    def smax(x, target=0.0):
        return float(np.max(np.abs(x.real - target))), float(np.max(np.abs(x.dual)))

    eqs = {
        "dT": vmax(fr.DT - fr.N * fr.k1),
        "dN": vmax(fr.DN + fr.T * fr.k1 - fr.B * fr.k2),
        "dB": vmax(fr.DB + fr.N * fr.k2),
    }
    ortho = {
        "TT": smax(dual_dot(fr.T, fr.T), 1.0),
        "NN": smax(dual_dot(fr.N, fr.N), 1.0),
        "BB": smax(dual_dot(fr.B, fr.B), 1.0),
        "TN": smax(dual_dot(fr.T, fr.N)),
        "TB": smax(dual_dot(fr.T, fr.B)),
        "NB": smax(dual_dot(fr.N, fr.B)),
        "B-TxN": vmax(fr.B - dual_cross(fr.T, fr.N)),
    }
    return {"frenet": eqs, "orthonormality": ortho}
