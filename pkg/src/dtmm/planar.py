"""Algebra of 2x2 real matrices of the form [[a, b], [-b, a]].

These matrices commute with each other and multiply like the complex number
``a - i b``; every block of the transfer matrix lives here. Functions of a
planar matrix are evaluated in closed form from its two entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PlanarMatrix",
    "IDENTITY",
    "ZERO",
    "SINHC_SERIES_THRESHOLD",
    "planar_sqrt",
    "planar_exp",
    "planar_cosh",
    "planar_sinh",
    "planar_sinhc",
    "planar_inverse",
]

# det(D) below this switches planar_sinhc to its Taylor series
SINHC_SERIES_THRESHOLD = 1e-4

_TINY = 1e-280
_RESCALE = 2.0**300


@dataclass(frozen=True)
class PlanarMatrix:
    """The matrix [[a, b], [-b, a]]."""

    a: float
    b: float = 0.0

    def __add__(self, other: PlanarMatrix) -> PlanarMatrix:
        return PlanarMatrix(self.a + other.a, self.b + other.b)

    def __sub__(self, other: PlanarMatrix) -> PlanarMatrix:
        return PlanarMatrix(self.a - other.a, self.b - other.b)

    def __neg__(self) -> PlanarMatrix:
        return PlanarMatrix(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, PlanarMatrix):
            return PlanarMatrix(self.a * other.a - self.b * other.b,
                                self.a * other.b + self.b * other.a)
        return PlanarMatrix(self.a * other, self.b * other)

    def __rmul__(self, scalar: float) -> PlanarMatrix:
        return PlanarMatrix(self.a * scalar, self.b * scalar)

    def __truediv__(self, scalar: float) -> PlanarMatrix:
        return PlanarMatrix(self.a / scalar, self.b / scalar)

    @property
    def det(self) -> float:
        return self.a * self.a + self.b * self.b

    def apply(self, u: float, v: float) -> tuple[float, float]:
        """Matrix-vector product with the column (u, v)."""
        return self.a * u + self.b * v, -self.b * u + self.a * v

    def to_complex(self) -> complex:
        """The complex number with the same multiplication table."""
        return complex(self.a, -self.b)

    @classmethod
    def from_complex(cls, z: complex) -> PlanarMatrix:
        return cls(z.real, -z.imag)

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [-self.b, self.a]])

    def is_finite(self) -> bool:
        return math.isfinite(self.a) and math.isfinite(self.b)


IDENTITY = PlanarMatrix(1.0, 0.0)
ZERO = PlanarMatrix(0.0, 0.0)


def planar_sqrt(B: PlanarMatrix, x: float = 1.0) -> PlanarMatrix:
    """D with D @ D == x * B.

    The branch is fixed by b >= 0, with sign(a) following the sign of the
    off-diagonal entry of x*B; b == 0 only when x*B has a non-negative
    diagonal, in which case a >= 0. Consumers only ever use even functions
    of D, so the branch is immaterial to them.
    """
    p, q = x * B.a, x * B.b  # want a^2 - b^2 = p, 2ab = q
    r = math.hypot(p, q)
    if r == 0.0:
        return ZERO
    if r < _TINY:
        # avoid subnormal underflow in sqrt(r/2); exact power-of-two rescale
        D = planar_sqrt(PlanarMatrix(p * _RESCALE**2, q * _RESCALE**2))
        return PlanarMatrix(D.a / _RESCALE, D.b / _RESCALE)
    if p >= 0.0:
        a = math.sqrt(0.5 * (r + p))
        b = q / (2.0 * a)
        if b < 0.0:
            a, b = -a, -b
    else:
        b = math.sqrt(0.5 * (r - p))
        a = q / (2.0 * b)
    return PlanarMatrix(a, b)


def planar_exp(D: PlanarMatrix) -> PlanarMatrix:
    ea = math.exp(D.a)
    return PlanarMatrix(ea * math.cos(D.b), ea * math.sin(D.b))


def planar_cosh(D: PlanarMatrix) -> PlanarMatrix:
    return PlanarMatrix(math.cosh(D.a) * math.cos(D.b), math.sinh(D.a) * math.sin(D.b))


def planar_sinh(D: PlanarMatrix) -> PlanarMatrix:
    return PlanarMatrix(math.sinh(D.a) * math.cos(D.b), math.cosh(D.a) * math.sin(D.b))


def planar_inverse(D: PlanarMatrix) -> PlanarMatrix:
    """Inverse of a non-singular planar matrix.

    Raises:
        ZeroDivisionError: ``D`` is the zero matrix.
    """
    det = D.det
    if det == 0.0:
        raise ZeroDivisionError("planar matrix is singular")
    return PlanarMatrix(D.a / det, -D.b / det)


def planar_sinhc(D: PlanarMatrix) -> PlanarMatrix:
    """D^-1 sinh(D), with the removable singularity at D = 0 filled in."""
    det = D.det
    if det >= SINHC_SERIES_THRESHOLD:
        return planar_inverse(D) * planar_sinh(D)
    # sum_{n=0}^{3} D^(2n) / (2n+1)!  in Horner form
    d2 = D * D
    return IDENTITY + d2 * (1.0 / 6.0) * (IDENTITY + d2 * (1.0 / 20.0) * (IDENTITY + d2 * (1.0 / 42.0)))
