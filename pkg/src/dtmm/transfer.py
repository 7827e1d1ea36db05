"""Explicit 4x4 transfer matrices for y'' + f(x) y = 0 with complex f.

With y = u + i v the state is (u, v, u', v'). Over [alpha, x] the transfer
matrix is built from the integrated coefficient B = int E, a square root D of
(x - alpha) B, and closed-form hyperbolic functions of D, optionally
left-multiplied by the first-order commutator correction
W = diag(exp(-J/2), exp(+J/2)).

Every 2x2 block is a :class:`~dtmm.planar.PlanarMatrix`, so the 4x4 matrix is
stored as four blocks and also reads as a 2x2 complex matrix acting on
(y, y').
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .planar import (
    IDENTITY,
    ZERO,
    PlanarMatrix,
    planar_cosh,
    planar_exp,
    planar_inverse,
    planar_sinhc,
    planar_sqrt,
)
from .profiles import (
    DEFAULT_QUADRATURE,
    CoefficientProfile,
    QuadratureConfig,
    big_G,
    big_H,
    moment_integral,
)

__all__ = [
    "State",
    "TransferMatrix",
    "build_E",
    "build_B",
    "build_D",
    "build_blocks",
    "build_J",
    "build_Q",
    "apply",
    "collapse_complex",
]


@dataclass(frozen=True)
class State:
    """The vector (u, v, u', v') with y = u + i v."""

    u: float
    v: float = 0.0
    du: float = 0.0
    dv: float = 0.0

    def __iter__(self):
        return iter((self.u, self.v, self.du, self.dv))

    @property
    def y(self) -> complex:
        return complex(self.u, self.v)

    @property
    def dy(self) -> complex:
        return complex(self.du, self.dv)

    @classmethod
    def from_complex(cls, y: complex, dy: complex) -> State:
        return cls(y.real, y.imag, dy.real, dy.imag)

    def is_finite(self) -> bool:
        return all(math.isfinite(c) for c in self)


@dataclass(frozen=True)
class TransferMatrix:
    """Block form [[cc, ss], [tt, cc_lower]] of a 4x4 transfer matrix.

    For a single uncorrected step ``cc_lower == cc``. With the correction the
    upper row carries exp(-J/2) and the lower row exp(+J/2); ``jj`` keeps J
    for inspection. Products of steps (see :func:`dtmm.propagate.chain`) are
    general block matrices with ``jj`` left at zero.
    """

    cc: PlanarMatrix
    ss: PlanarMatrix
    tt: PlanarMatrix
    cc_lower: PlanarMatrix
    jj: PlanarMatrix = ZERO
    corrected: bool = False

    @classmethod
    def identity(cls) -> TransferMatrix:
        return cls(IDENTITY, ZERO, ZERO, IDENTITY)

    def __matmul__(self, other: TransferMatrix) -> TransferMatrix:
        return TransferMatrix(
            self.cc * other.cc + self.ss * other.tt,
            self.cc * other.ss + self.ss * other.cc_lower,
            self.tt * other.cc + self.cc_lower * other.tt,
            self.tt * other.ss + self.cc_lower * other.cc_lower,
            corrected=self.corrected or other.corrected,
        )

    def block_det(self) -> PlanarMatrix:
        """Determinant of the equivalent 2x2 complex matrix, as a planar matrix."""
        return self.cc * self.cc_lower - self.ss * self.tt

    def det(self) -> float:
        """Determinant of the real 4x4 matrix (|complex det|^2)."""
        return self.block_det().det

    def inverse(self) -> TransferMatrix:
        k = planar_inverse(self.block_det())
        return TransferMatrix(k * self.cc_lower, -(k * self.ss), -(k * self.tt), k * self.cc,
                              corrected=self.corrected)

    def to_array(self) -> np.ndarray:
        out = np.empty((4, 4))
        out[:2, :2] = self.cc.to_array()
        out[:2, 2:] = self.ss.to_array()
        out[2:, :2] = self.tt.to_array()
        out[2:, 2:] = self.cc_lower.to_array()
        return out


def build_E(profile: CoefficientProfile, x: float) -> PlanarMatrix:
    """Planar carrier of E(x) = -[[g, -h], [h, g]]."""
    profile.check(x)
    h = profile.h(x) if profile.h is not None else 0.0
    return PlanarMatrix(-profile.g(x), h)


def build_B(profile: CoefficientProfile, alpha: float, x: float,
            cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> PlanarMatrix:
    """Integral of E over [alpha, x], i.e. (-G, +H)."""
    if alpha == x:
        return ZERO
    return PlanarMatrix(-big_G(profile, alpha, x, cfg), big_H(profile, alpha, x, cfg))


def build_D(B: PlanarMatrix, alpha: float, x: float) -> PlanarMatrix:
    return planar_sqrt(B, x - alpha)


def build_blocks(alpha: float, x: float, profile: CoefficientProfile,
                 cfg: QuadratureConfig = DEFAULT_QUADRATURE):
    """Blocks (cc, ss, tt) of exp(M) over [alpha, x].

    ``tt`` is formed as B * sinhc(D), which equals B S / (x - alpha) but has
    no 1/(x - alpha) factor.
    """
    B = build_B(profile, alpha, x, cfg)
    D = build_D(B, alpha, x)
    sinhc = planar_sinhc(D)
    return planar_cosh(D), (x - alpha) * sinhc, B * sinhc


def build_J(profile: CoefficientProfile, alpha: float, x: float,
            cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> PlanarMatrix:
    """Correction exponent J = int_alpha^x [(t - alpha) E(t) - B(t)] dt.

    Evaluated as int_alpha^x (2t - x - alpha) E(t) dt. For real profiles
    J = (gamma, 0) with gamma = int (x + alpha - 2t) g(t) dt.
    """
    profile.check(alpha, x)
    if alpha == x:
        return ZERO
    a = moment_integral(profile.g, alpha, x, cfg)
    b = -moment_integral(profile.h, alpha, x, cfg) if profile.h is not None else 0.0
    return PlanarMatrix(a, b)


def build_Q(alpha: float, x: float, profile: CoefficientProfile, corrected: bool = False,
            cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> TransferMatrix:
    """Transfer matrix carrying the state from ``alpha`` to ``x``."""
    if alpha == x:
        return TransferMatrix(IDENTITY, ZERO, ZERO, IDENTITY, corrected=corrected)
    cc, ss, tt = build_blocks(alpha, x, profile, cfg)
    if not corrected:
        return TransferMatrix(cc, ss, tt, cc)
    J = build_J(profile, alpha, x, cfg)
    upper, lower = planar_exp(-0.5 * J), planar_exp(0.5 * J)
    return TransferMatrix(upper * cc, upper * ss, lower * tt, lower * cc, jj=J, corrected=True)


def apply(Q: TransferMatrix, s: State) -> State:
    u1, v1 = Q.cc.apply(s.u, s.v)
    u2, v2 = Q.ss.apply(s.du, s.dv)
    du1, dv1 = Q.tt.apply(s.u, s.v)
    du2, dv2 = Q.cc_lower.apply(s.du, s.dv)
    return State(u1 + u2, v1 + v2, du1 + du2, dv1 + dv2)


def collapse_complex(Q: TransferMatrix) -> np.ndarray:
    """The 2x2 complex matrix mapping (y, y') the same way ``apply`` does."""
    return np.array([
        [Q.cc.to_complex(), Q.ss.to_complex()],
        [Q.tt.to_complex(), Q.cc_lower.to_complex()],
    ])
