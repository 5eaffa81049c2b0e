"""Concrete dual curves.

Every constructor here returns a DualCurve with exact derivatives, so the
same curve can be examined in exact mode or, via ``without_exact()``, by
finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial, pi
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .algebra import DualScalar, dual_cos, dual_inv, dual_sin
from .curves import DualCurve
from .linalg import DualVec3
from .numerics import from_taylor, jet_mul, jet_pow, leibniz, to_taylor


def _stack(xyz):
    return np.stack(xyz, axis=-1)


def _shifted_cos(t, k):
    """k-th derivative of cos(t)."""
    return np.cos(t + k * pi / 2)


def _shifted_sin(t, k):
    return np.sin(t + k * pi / 2)


# --------------------------------------------------------------------------
# builtins with hand-written derivatives

def study_circle(domain=(0.0, 2 * pi)) -> DualCurve:
    """(cos s, sin s, 0) + eps (-s sin s, s cos s, 0); its Study image is a helicoid."""

    def jet(t, order):
        real = np.zeros((order + 1,) + t.shape + (3,))
        dual = np.zeros_like(real)
        for k in range(order + 1):
            c, s = _shifted_cos(t, k), _shifted_sin(t, k)
            real[k, :, 0], real[k, :, 1] = c, s
            # (t g)^(k) = t g^(k) + k g^(k-1)
            dual[k, :, 0] = -(t * s + (k * _shifted_sin(t, k - 1) if k else 0.0))
            dual[k, :, 1] = t * c + (k * _shifted_cos(t, k - 1) if k else 0.0)
        return real, dual

    def position(t):
        r, d = jet(t, 0)
        return DualVec3(r[0], d[0])

    return DualCurve(position, tuple(domain), jet, name="study_circle",
                     description="dual unit-sphere curve whose ruled surface is the helicoid")


def real_helix(a: float = 1.0, b: float = 0.5, domain=(0.0, 4 * pi)) -> DualCurve:
    """Circular helix (a cos t, a sin t, b t) with zero dual part."""

    def jet(t, order):
        real = np.zeros((order + 1,) + t.shape + (3,))
        for k in range(order + 1):
            real[k, :, 0] = a * _shifted_cos(t, k)
            real[k, :, 1] = a * _shifted_sin(t, k)
        real[0, :, 2] = b * t
        if order >= 1:
            real[1, :, 2] = b
        return real, np.zeros_like(real)

    def position(t):
        r, d = jet(t, 0)
        return DualVec3(r[0], d[0])

    return DualCurve(position, tuple(domain), jet, name=f"real_helix(a={a:g},b={b:g})",
                     description="Euclidean circular helix with zero moment part")


def great_circle(domain=(0.0, 2 * pi)) -> DualCurve:
    """(cos t, sin t, 0) + eps*0: the pencil of lines through the origin in the xy-plane."""

    def jet(t, order):
        real = np.zeros((order + 1,) + t.shape + (3,))
        for k in range(order + 1):
            real[k, :, 0] = _shifted_cos(t, k)
            real[k, :, 1] = _shifted_sin(t, k)
        return real, np.zeros_like(real)

    def position(t):
        r, d = jet(t, 0)
        return DualVec3(r[0], d[0])

    return DualCurve(position, tuple(domain), jet, name="great_circle",
                     description="great circle with zero moments")


# --------------------------------------------------------------------------
# trigonometric-polynomial series

@dataclass(frozen=True)
class Term:
    """coef * t**power * cos(freq*t + phase)."""

    coef: float
    power: int = 0
    freq: float = 0.0
    phase: float = 0.0

    def derivatives(self, t: np.ndarray, order: int) -> np.ndarray:
        out = np.zeros((order + 1,) + t.shape)
        p = self.power
        for k in range(order + 1):
            acc = np.zeros_like(t, dtype=float)
            for j in range(min(k, p) + 1):
                mono = factorial(p) / factorial(p - j) * t ** (p - j)
                m = k - j
                trig = self.freq ** m * np.cos(self.freq * t + self.phase + m * pi / 2)
                acc = acc + comb(k, j) * mono * trig
            out[k] = self.coef * acc
        return out


def _coord_jet(terms: Sequence[Term], t, order):
    out = np.zeros((order + 1,) + t.shape)
    for term in terms:
        out = out + term.derivatives(t, order)
    return out


def series_curve(real: Sequence[Sequence[Term]], dual: Sequence[Sequence[Term]],
                 domain, name: str = "series") -> DualCurve:
    """Curve whose coordinates are finite sums of ``Term``; derivatives are exact."""
    if len(real) != 3 or len(dual) != 3:
        raise ValueError("series curves need exactly three coordinates per part")

    def jet(t, order):
        r = _stack([_coord_jet(c, t, order) for c in real])
        d = _stack([_coord_jet(c, t, order) for c in dual])
        return r, d

    def position(t):
        r, d = jet(t, 0)
        return DualVec3(r[0], d[0])

    return DualCurve(position, tuple(domain), jet, name=name,
                     description="trigonometric-polynomial series")


def random_series(rng: np.random.Generator, n_terms: int = 3, amplitude: float = 0.3,
                  max_freq: float = 2.0) -> list:
    """Three coordinates of random small trigonometric terms."""
    coords = []
    for _ in range(3):
        coords.append([Term(float(rng.normal(0, amplitude)), 0,
                            float(rng.uniform(0.2, max_freq)),
                            float(rng.uniform(0, 2 * pi)))
                       for _ in range(n_terms)])
    return coords


# --------------------------------------------------------------------------
# derived curves

def normalized(curve: DualCurve, name: str = None) -> DualCurve:
    """Project a curve onto the dual unit sphere: alpha / |alpha| (dual norm).

    Exact derivatives are propagated with Taylor-jet arithmetic.
    """
    if curve.jet is None:
        raise ValueError("normalized() needs a curve with exact derivatives")

    def jet(t, order):
        r, d = curve.jet(t, order)
        a, b = to_taylor(r), to_taylor(d)
        n2 = np.sum(jet_mul(a, a), axis=-1)
        m = np.sum(jet_mul(a, b), axis=-1)
        inv1 = jet_pow(n2, -0.5)
        inv3 = jet_pow(n2, -1.5)
        real = jet_mul(a, inv1[..., None])
        dual = jet_mul(b, inv1[..., None]) - jet_mul(a, jet_mul(m, inv3)[..., None])
        return from_taylor(real), from_taylor(dual)

    def position(t):
        r, d = jet(t, 0)
        return DualVec3(r[0], d[0])

    return DualCurve(position, curve.domain, jet, name=name or f"normalized({curve.name})",
                     description=f"{curve.description} projected onto the dual unit sphere")


def transformed(curve: DualCurve, scale=1.0, rate=0.0, shift: DualVec3 = None,
                name: str = None) -> DualCurve:
    """(scale + rate*t) * alpha(t) + shift, with dual ``scale``/``rate`` allowed.

    rate = 0 keeps a spherical curve spherical (new radius, new center);
    rate != 0 makes the distance to any fixed center drift.
    """
    if curve.jet is None:
        raise ValueError("transformed() needs a curve with exact derivatives")
    scale, rate = DualScalar.coerce(scale), DualScalar.coerce(rate)
    shift = shift if shift is not None else DualVec3.zero()

    def jet(t, order):
        r, d = curve.jet(t, order)
        g_r = np.zeros((order + 1,) + t.shape + (1,))
        g_d = np.zeros_like(g_r)
        g_r[0, ..., 0] = scale.real + rate.real * t
        g_d[0, ..., 0] = scale.dual + rate.dual * t
        if order >= 1:
            g_r[1], g_d[1] = rate.real, rate.dual
        real = leibniz(g_r, r)
        dual = leibniz(g_r, d) + leibniz(g_d, r)
        real[0] = real[0] + shift.real
        dual[0] = dual[0] + shift.dual
        return real, dual

    def position(t):
        r, d = jet(t, 0)
        return DualVec3(r[0], d[0])

    return DualCurve(position, curve.domain, jet, name=name or f"transformed({curve.name})",
                     description=curve.description)


# --------------------------------------------------------------------------
# curve realizing prescribed dual curvature and torsion

def _dual_frame_rhs(k1, k2):
    def rhs(s, y):
        F0 = y[:9].reshape(3, 3)
        F1 = y[9:18].reshape(3, 3)
        a, b = k1(np.atleast_1d(s))[0], k2(np.atleast_1d(s))[0]
        K0 = np.array([[0, a.real[0], 0], [-a.real[0], 0, b.real[0]], [0, -b.real[0], 0]])
        K1 = np.array([[0, a.dual[0], 0], [-a.dual[0], 0, b.dual[0]], [0, -b.dual[0], 0]])
        dF0 = K0 @ F0
        dF1 = K0 @ F1 + K1 @ F0
        return np.concatenate([dF0.ravel(), dF1.ravel(), F0[0], F1[0]])
    return rhs


def curve_from_curvatures(k1, k2, domain, frame0=None, position0: DualVec3 = None,
                          name: str = "frenet_realized", rtol: float = 1e-12,
                          atol: float = 1e-13) -> DualCurve:
    """Integrate the dual Frenet equations for prescribed k1(s), k2(s).

    ``k1`` and ``k2`` map a 1-d array of s to a list ``[f, f', f'']`` of
    DualScalars (value and first two derivatives in s). The resulting curve
    has unit dual speed, so s is its dual arc length. ``frame0`` is a pair of
    3x3 arrays (real, dual) whose rows are T, N, B at domain[0]; by default
    the identity with a small skew dual part. ``position0`` defaults to the
    osculating-sphere center placed at the origin.
    """
    lo, hi = domain
    if frame0 is None:
        W = np.array([[0.0, 0.3, -0.2], [-0.3, 0.0, 0.4], [0.2, -0.4, 0.0]])
        frame0 = (np.eye(3), W)
    F0, F1 = (np.asarray(f, dtype=float) for f in frame0)
    if position0 is None:
        a, b = k1(np.array([lo])), k2(np.array([lo]))
        inv_k1 = dual_inv(a[0])
        d_inv_k1 = -(a[1] * dual_inv(a[0] * a[0]))
        N = DualVec3(F0[1][None], F1[1][None])
        B = DualVec3(F0[2][None], F1[2][None])
        position0 = -(N * inv_k1) - B * (d_inv_k1 * dual_inv(b[0]))
        position0 = position0[0]
    y0 = np.concatenate([F0.ravel(), F1.ravel(), position0.real, position0.dual])
    sol = solve_ivp(_dual_frame_rhs(k1, k2), (lo, hi), y0,
                    method="DOP853", rtol=rtol, atol=atol, dense_output=True)
    if not sol.success:
        raise RuntimeError(f"Frenet integration failed: {sol.message}")

    def state(t):
        y = sol.sol(t)  # (24, n)
        F0 = y[:9].T.reshape(-1, 3, 3)
        F1 = y[9:18].T.reshape(-1, 3, 3)
        pos = DualVec3(y[18:21].T, y[21:24].T)
        frame = [DualVec3(F0[:, i], F1[:, i]) for i in range(3)]
        return pos, frame

    def jet(t, order):
        pos, (T, N, B) = state(t)
        a0, a1, a2 = k1(t)
        b0, b1 = k2(t)[:2]
        derivs = [pos, T, N * a0]
        if order >= 3:
            derivs.append(T * (-(a0 * a0)) + N * a1 + B * (a0 * b0))
        if order >= 4:
            derivs.append(T * (-3 * a0 * a1) + N * (a2 - a0 * a0 * a0 - a0 * b0 * b0)
                          + B * (2 * a1 * b0 + a0 * b1))
        derivs = derivs[:order + 1]
        return (np.stack([d.real for d in derivs]), np.stack([d.dual for d in derivs]))

    def position(t):
        return state(t)[0]

    return DualCurve(position, (lo, hi), jet, name=name,
                     description="curve integrated from prescribed dual curvature and torsion")


def cosine_solution_curvatures(c1=1.0, c2=0.0, torsion=DualScalar(0.8, 0.3)):
    """k1, k2 callables with 1/k1 = c1 cos(t) + c2 sin(t), t = torsion * s.

    Each returns ``[f, f', f'']`` as DualScalars of s, for
    ``curve_from_curvatures``.
    """
    c1, c2, kap = DualScalar.coerce(c1), DualScalar.coerce(c2), DualScalar.coerce(torsion)

    def k1(s):
        s = np.asarray(s, dtype=float)
        ang = kap * s
        co, si = dual_cos(ang), dual_sin(ang)
        y = c1 * co + c2 * si
        yp = kap * (c2 * co - c1 * si)
        ypp = -(kap * kap) * y
        inv = dual_inv(y)
        f = inv
        fp = -(yp * inv * inv)
        fpp = 2 * yp * yp * inv * inv * inv - ypp * inv * inv
        return [f, fp, fpp]

    def k2(s):
        s = np.asarray(s, dtype=float)
        one = DualScalar(np.ones_like(s), np.zeros_like(s))
        zero = DualScalar(np.zeros_like(s), np.zeros_like(s))
        return [kap * one, zero, zero]

    return k1, k2


# --------------------------------------------------------------------------
# random families for the sphere/normal equivalence checks

def _min_torsion(curve: DualCurve, n: int = 400) -> float:
    from .curves import frenet_apparatus
    lo, hi = curve.domain
    fr = frenet_apparatus(curve, np.linspace(lo, hi, n))
    return float(np.min(np.abs(fr.k2.real)))


def random_sphere_curve(rng: np.random.Generator, domain=(0.0, 3.0),
                        min_torsion: float = 0.05, max_tries: int = 200) -> DualCurve:
    """Random curve on the dual unit sphere with torsion bounded away from zero.

    The real part is a perturbed spiral (cos t, sin t, z0 + z1 t) and the
    dual part a random trigonometric series; the sum is projected onto the
    dual unit sphere. Draws whose torsion comes within ``min_torsion`` of
    zero are rejected, since the sphere-center formula divides by it.
    """
    for _ in range(max_tries):
        z0, z1 = rng.uniform(0.1, 0.4), rng.uniform(0.15, 0.35)
        pert = random_series(rng, 2, 0.05, 1.5)
        real = [[Term(1.0, 0, 1.0, 0.0)] + pert[0],
                [Term(1.0, 0, 1.0, -pi / 2)] + pert[1],
                [Term(z0), Term(z1, 1)] + pert[2]]
        dual = random_series(rng, 3, 0.4, 2.0)
        curve = normalized(series_curve(real, dual, domain), name="random_sphere_curve")
        if _min_torsion(curve) > min_torsion:
            return curve
    raise RuntimeError("could not draw a curve with torsion bounded away from zero")


def off_sphere_control(rng: np.random.Generator, base: DualCurve = None,
                       min_torsion: float = 0.05, max_tries: int = 200) -> DualCurve:
    """A random sphere curve with a growing radial scale and an offset.

    (1 + rate*t) alpha(t) + shift lies on no dual sphere for rate != 0.
    """
    for _ in range(max_tries):
        src = base if base is not None else random_sphere_curve(rng)
        shift = DualVec3(rng.normal(0, 0.3, 3), rng.normal(0, 0.3, 3))
        rate = DualScalar(rng.uniform(0.3, 0.6), rng.normal(0, 0.2))
        curve = transformed(src, 1.0, rate, shift, name="off_sphere_control")
        if _min_torsion(curve) > min_torsion:
            return curve
    raise RuntimeError("could not draw a control curve with torsion bounded away from zero")
