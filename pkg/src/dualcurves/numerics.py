"""Numerical kernels: finite differences, adaptive Simpson, Taylor jets.

Everything here works on plain numpy arrays. Callers wrap real and dual
parts separately.
"""

from __future__ import annotations

from math import comb, factorial

import numpy as np

from .errors import QuadratureNonConvergence

EPS = np.finfo(float).eps

# 5-point central stencils at offsets -2h..2h: (integer weights, divisor, accuracy order);
# integer weights make the stencil annihilate constants exactly
_STENCILS = {
    1: (np.array([1.0, -8.0, 0.0, 8.0, -1.0]), 12.0, 4),
    2: (np.array([-1.0, 16.0, -30.0, 16.0, -1.0]), 12.0, 4),
    3: (np.array([-1.0, 2.0, 0.0, -2.0, 1.0]), 2.0, 2),
    4: (np.array([1.0, -4.0, 6.0, -4.0, 1.0]), 1.0, 2),
}
_OFFSETS = np.arange(-2, 3)


def fd_step(order: int, t) -> np.ndarray:
    """Base step for a derivative of the given order.

    Balances truncation against roundoff for a Richardson-refined stencil;
    higher orders need wider steps because roundoff grows like eps/h**order.
    """
    acc = _STENCILS[order][2] + 2
    return EPS ** (1.0 / (order + acc)) * np.maximum(1.0, np.abs(t))


def stencil_margin(t_hi: float) -> float:
    """How far the widest stencil reaches beyond an evaluation point."""
    return float(2.0 * np.max([fd_step(k, t_hi) for k in _STENCILS]))


def central_difference(f, t, order: int, h=None) -> np.ndarray:
    """Derivative of ``f`` at ``t`` by a 5-point stencil plus one Richardson step.

    ``f`` maps an array of parameters (shape (n,)) to values of shape (n, ...).
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    weights, div, p = _STENCILS[order]
    h = fd_step(order, t) if h is None else np.broadcast_to(np.asarray(h, float), t.shape)

    def raw(step):
        pts = t[None, :] + _OFFSETS[:, None] * step[None, :]
        vals = np.asarray(f(pts.ravel()))
        vals = vals.reshape((5, t.size) + vals.shape[1:])
        scale = div * step.reshape((-1,) + (1,) * (vals.ndim - 2)) ** order
        return np.tensordot(weights, vals, axes=(0, 0)) / scale

    coarse, fine = raw(h), raw(h / 2.0)
    return (2.0 ** p * fine - coarse) / (2.0 ** p - 1.0)


# --------------------------------------------------------------------------
# adaptive Simpson, batched over intervals

def cumulative_simpson(f, breakpoints, tol: float = 1e-10, max_intervals: int = 2 ** 20):
    """Integrals of ``f`` over consecutive breakpoint intervals.

    Adaptive Simpson with the usual Richardson correction; every pending
    interval is refined in the same vectorised call to ``f``. ``f`` maps an
    array of abscissae to an array of values (trailing dims allowed). The
    absolute tolerance is shared across the whole range in proportion to
    interval length.

    Returns an array with one entry per breakpoint interval.
    """
    x = np.asarray(breakpoints, dtype=float)
    n_seg = x.size - 1
    if n_seg < 1:
        raise ValueError("need at least two breakpoints")
    total = abs(x[-1] - x[0])
    a, b = x[:-1], x[1:]
    owner = np.arange(n_seg)
    m = 0.5 * (a + b)
    fa, fm, fb = _eval3(f, a, m, b)
    whole = _col(b - a, fa) / 6.0 * (fa + 4.0 * fm + fb)
    out = None
    n_used = n_seg
    depth = 0
    while owner.size:
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = _split_eval(f, lm, rm)
        left = _col(m - a, fa) / 6.0 * (fa + 4.0 * flm + fm)
        right = _col(b - m, fa) / 6.0 * (fm + 4.0 * frm + fb)
        err = left + right - whole
        if out is None:
            out = np.zeros((n_seg,) + np.shape(whole)[1:])
        allowed = tol * np.abs(b - a) / (total if total > 0 else 1.0)
        errmag = np.abs(err).reshape(err.shape[0], -1).max(axis=1)
        done = (errmag <= 15.0 * allowed) | (np.abs(b - a) < 1e-14 * max(1.0, total))
        if depth > 60:
            done[:] = True
        val = left + right + err / 15.0
        np.add.at(out, owner[done], val[done])
        keep = ~done
        n_used += int(keep.sum())
        if n_used > max_intervals:
            raise QuadratureNonConvergence(
                f"adaptive Simpson exceeded {max_intervals} subintervals")
        # children: [a, m] and [m, b]
        a2 = np.concatenate([a[keep], m[keep]])
        b2 = np.concatenate([m[keep], b[keep]])
        m2 = np.concatenate([lm[keep], rm[keep]])
        fa2 = np.concatenate([fa[keep], fm[keep]])
        fb2 = np.concatenate([fm[keep], fb[keep]])
        fm2 = np.concatenate([flm[keep], frm[keep]])
        w2 = np.concatenate([left[keep], right[keep]])
        owner = np.concatenate([owner[keep], owner[keep]])
        a, b, m, fa, fb, fm, whole = a2, b2, m2, fa2, fb2, fm2, w2
        depth += 1
    return out


def _col(w, like):
    return w.reshape(w.shape + (1,) * (np.ndim(like) - 1))


def _eval3(f, a, m, b):
    vals = np.asarray(f(np.concatenate([a, m, b])))
    n = a.size
    return vals[:n], vals[n:2 * n], vals[2 * n:]


def _split_eval(f, p, q):
    if p.size == 0:
        empty = np.asarray(f(np.array([0.0])))[:0]
        return empty, empty
    vals = np.asarray(f(np.concatenate([p, q])))
    return vals[:p.size], vals[p.size:]


# --------------------------------------------------------------------------
# truncated Taylor jets: arrays of shape (K, ...) holding f^(k)/k!

def to_taylor(derivs: np.ndarray) -> np.ndarray:
    k = np.array([factorial(i) for i in range(derivs.shape[0])], dtype=float)
    return derivs / k.reshape((-1,) + (1,) * (derivs.ndim - 1))


def from_taylor(coeffs: np.ndarray) -> np.ndarray:
    k = np.array([factorial(i) for i in range(coeffs.shape[0])], dtype=float)
    return coeffs * k.reshape((-1,) + (1,) * (coeffs.ndim - 1))


def jet_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cauchy product truncated to the shorter jet."""
    K = min(a.shape[0], b.shape[0])
    out = np.zeros((K,) + np.broadcast_shapes(a.shape[1:], b.shape[1:]))
    for k in range(K):
        for i in range(k + 1):
            out[k] = out[k] + a[i] * b[k - i]
    return out


def jet_pow(x: np.ndarray, p: float) -> np.ndarray:
    """x**p for a jet whose constant term is positive."""
    K = x.shape[0]
    f = np.zeros_like(x, dtype=float)
    f[0] = x[0] ** p
    for k in range(1, K):
        acc = np.zeros_like(x[0], dtype=float)
        for j in range(1, k + 1):
            acc = acc + ((p + 1.0) * j - k) * x[j] * f[k - j]
        f[k] = acc / (k * x[0])
    return f


def jet_compose(f: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """Taylor coefficients of f(t0 + tau(s)) given those of f at t0 and tau(0) = 0.

    ``f`` may carry trailing dims beyond those of ``tau``.
    """
    K = min(f.shape[0], tau.shape[0])
    extra = f.ndim - tau.ndim
    tau = tau.reshape(tau.shape + (1,) * extra)
    out = np.zeros((K,) + np.broadcast_shapes(f.shape[1:], tau.shape[1:]))
    out[0] = out[0] + f[0]
    power = tau[:K].copy()
    for k in range(1, K):
        out = out + f[k] * power
        power = jet_mul(power, tau[:K])
    return out


def leibniz(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Derivatives of a product from derivative stacks of its factors."""
    K = min(f.shape[0], g.shape[0])
    out = np.zeros((K,) + np.broadcast_shapes(f.shape[1:], g.shape[1:]))
    for k in range(K):
        for j in range(k + 1):
            out[k] = out[k] + comb(k, j) * f[j] * g[k - j]
    return out
