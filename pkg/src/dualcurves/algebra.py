"""Dual numbers a + eps*a* with eps**2 = 0.

Both parts may be floats or numpy arrays of a common shape, so the same
code evaluates one sample or a whole batch of samples at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DivisionByPureDual, NonPositiveRealPart

ZERO_DIVISOR_TOL = 1e-12

Real = Union[float, np.ndarray]


@dataclass(frozen=True, eq=False)
class DualScalar:
    """A dual number ``real + eps*dual``."""

    real: Real
    dual: Real = 0.0

    # make ``ndarray * DualScalar`` defer to our reflected operators
    __array_ufunc__ = None

    @staticmethod
    def coerce(x) -> "DualScalar":
        if isinstance(x, DualScalar):
            return x
        return DualScalar(x, np.zeros_like(x, dtype=float) if isinstance(x, np.ndarray) else 0.0)

    def __add__(self, other):
        other = DualScalar.coerce(other)
        return DualScalar(self.real + other.real, self.dual + other.dual)

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.real, -self.dual)

    def __sub__(self, other):
        other = DualScalar.coerce(other)
        return DualScalar(self.real - other.real, self.dual - other.dual)

    def __rsub__(self, other):
        return DualScalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, DualScalar):
            if hasattr(other, "real") and hasattr(other, "dual"):
                # DualVec3 and friends handle scalar * vector themselves
                return NotImplemented
            return DualScalar(self.real * other, self.dual * other)
        return DualScalar(self.real * other.real,
                          self.real * other.dual + self.dual * other.real)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if not isinstance(other, DualScalar):
            return DualScalar(self.real / other, self.dual / other)
        return self * dual_inv(other)

    def __rtruediv__(self, other):
        return DualScalar.coerce(other) * dual_inv(self)

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return dual_inv(self) ** (-n)
        if n == 0:
            return DualScalar.coerce(np.ones_like(self.real, dtype=float) if isinstance(self.real, np.ndarray) else 1.0)
        return DualScalar(self.real ** n, n * self.real ** (n - 1) * self.dual)

    def __getitem__(self, idx):
        return DualScalar(np.asarray(self.real)[idx], np.asarray(self.dual)[idx])

    def conj(self) -> "DualScalar":
        return DualScalar(self.real, -self.dual)

    def as_tuple(self):
        return (self.real, self.dual)

    def __repr__(self):
        return f"DualScalar({self.real!r}, {self.dual!r})"


def dual_add(x: DualScalar, y: DualScalar) -> DualScalar:
    return DualScalar.coerce(x) + y


def dual_mul(x: DualScalar, y: DualScalar) -> DualScalar:
    return DualScalar.coerce(x) * DualScalar.coerce(y)


def dual_inv(x: DualScalar) -> DualScalar:
    """Multiplicative inverse ``1/a - eps*a*/a**2``.

    Raises DivisionByPureDual when the real part is (numerically) zero,
    since pure dual numbers are zero divisors.
    """
    x = DualScalar.coerce(x)
    a = np.asarray(x.real, dtype=float)
    if np.any(np.abs(a) < ZERO_DIVISOR_TOL):
        raise DivisionByPureDual(f"cannot invert dual number with real part {x.real!r}")
    inv = 1.0 / x.real
    return DualScalar(inv, -x.dual * inv * inv)


def dual_lift(f: Callable, f_prime: Callable, x: DualScalar) -> DualScalar:
    """Extend a real function to dual arguments: f(a) + eps*a* f'(a)."""
    x = DualScalar.coerce(x)
    return DualScalar(f(x.real), x.dual * f_prime(x.real))


def dual_sin(x: DualScalar) -> DualScalar:
    return dual_lift(np.sin, np.cos, x)


def dual_cos(x: DualScalar) -> DualScalar:
    return dual_lift(np.cos, lambda t: -np.sin(t), x)


def dual_sqrt(x: DualScalar) -> DualScalar:
    x = DualScalar.coerce(x)
    if np.any(np.asarray(x.real) <= 0.0):
        raise NonPositiveRealPart(f"square root needs a positive real part, got {x.real!r}")
    root = np.sqrt(x.real)
    return DualScalar(root, x.dual / (2.0 * root))


def dual_isclose(x, y, atol: float = 1e-10, rtol: float = 1e-10) -> bool:
    """Componentwise closeness; true only if every element of both parts matches."""
    x, y = DualScalar.coerce(x), DualScalar.coerce(y)
    return bool(np.all(np.isclose(x.real, y.real, rtol=rtol, atol=atol))
                and np.all(np.isclose(x.dual, y.dual, rtol=rtol, atol=atol)))
