"""Real-axis basis functions and the WKB pair they replace.

For a real coefficient g and w = (x - alpha) * int_alpha^x g:

    psi1 = exp(-gamma/2) cos(sqrt w)
    psi2 = exp(-gamma/2) (x - alpha) sinc(sqrt w)
    psi3 = -exp(+gamma/2) (int_alpha^x g) sinc(sqrt w)
    psi4 = exp(+gamma/2) cos(sqrt w)

so that u(x) = psi1 u(alpha) + psi2 u'(alpha) and
u'(x) = psi3 u(alpha) + psi4 u'(alpha). gamma is zero unless the commutator
correction is requested. None of these diverge where g changes sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .profiles import (
    DEFAULT_QUADRATURE,
    CoefficientProfile,
    QuadratureConfig,
    big_G,
    integrate,
    moment_integral,
)

__all__ = [
    "BasisEval",
    "WkbEval",
    "cos_sqrt",
    "sinc_sqrt",
    "psi",
    "psi_derivatives_at_origin",
    "wkb",
]

_SERIES_W = 1e-8


def cos_sqrt(w: float) -> float:
    """cos(sqrt(w)), continued to w < 0 as cosh(sqrt(-w))."""
    if abs(w) < _SERIES_W:
        return 1.0 - w / 2.0 + w * w / 24.0
    if w > 0.0:
        return math.cos(math.sqrt(w))
    return math.cosh(math.sqrt(-w))


def sinc_sqrt(w: float) -> float:
    """sin(sqrt(w)) / sqrt(w), continued to w < 0 as sinh(sqrt(-w)) / sqrt(-w)."""
    if abs(w) < _SERIES_W:
        return 1.0 - w / 6.0 + w * w / 120.0
    if w > 0.0:
        r = math.sqrt(w)
        return math.sin(r) / r
    r = math.sqrt(-w)
    return math.sinh(r) / r


@dataclass(frozen=True)
class BasisEval:
    psi1: float
    psi2: float
    psi3: float
    psi4: float

    def __iter__(self):
        return iter((self.psi1, self.psi2, self.psi3, self.psi4))

    def wronskian(self) -> float:
        return self.psi1 * self.psi4 - self.psi2 * self.psi3


@dataclass(frozen=True)
class WkbEval:
    """WKB pair; ``diverged`` flags a turning point on the path."""

    u1: float = math.nan
    u2: float = math.nan
    diverged: bool = False

    @classmethod
    def turning_point(cls) -> WkbEval:
        return cls(diverged=True)


def _require_real(profile: CoefficientProfile) -> None:
    if not profile.is_real:
        raise ValueError("real-axis basis functions need a real profile (h absent)")


def psi(profile: CoefficientProfile, alpha: float, x: float, corrected: bool = False,
        cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> BasisEval:
    """Evaluate the four basis functions at ``x`` for the expansion point ``alpha``.

    ``x < alpha`` (backward propagation) is allowed.
    """
    _require_real(profile)
    if x == alpha:
        return BasisEval(1.0, 0.0, 0.0, 1.0)
    length = x - alpha
    G = big_G(profile, alpha, x, cfg)
    w = length * G
    c, s = cos_sqrt(w), sinc_sqrt(w)
    if corrected:
        gamma = moment_integral(profile.g, alpha, x, cfg)
        lo, hi = math.exp(-0.5 * gamma), math.exp(0.5 * gamma)
    else:
        lo = hi = 1.0
    return BasisEval(lo * c, lo * length * s, -hi * G * s, hi * c)


def psi_derivatives_at_origin(profile: CoefficientProfile, alpha: float,
                              cfg: QuadratureConfig = DEFAULT_QUADRATURE,
                              corrected: bool = False, step: float = 1e-6):
    """Central finite differences of (psi1, psi2) at x = alpha.

    Used as a check that the basis reproduces the initial slope conditions;
    the expected answer is (0, 1) for any smooth g.
    """
    plus = psi(profile, alpha, alpha + step, corrected, cfg)
    minus = psi(profile, alpha, alpha - step, corrected, cfg)
    return ((plus.psi1 - minus.psi1) / (2.0 * step),
            (plus.psi2 - minus.psi2) / (2.0 * step))


def wkb(profile: CoefficientProfile, alpha: float, x: float,
        cfg: QuadratureConfig = DEFAULT_QUADRATURE, probe_points: int = 129) -> WkbEval:
    """WKB pair k^-1/2 cos(int k), k^-1/2 sin(int k) with k = sqrt(g).

    Returns the turning-point marker when g <= 0 anywhere on the closed path
    from ``alpha`` to ``x`` (checked on ``probe_points`` equispaced points).
    A zero at the start point still counts: the phase integrand then has an
    infinite slope there and WKB is not valid nearby anyway.
    """
    _require_real(profile)
    profile.check(alpha, x)
    gx = profile.g(x)
    if gx <= 0.0:
        return WkbEval.turning_point()
    for i in range(probe_points):
        if profile.g(alpha + (x - alpha) * i / (probe_points - 1)) <= 0.0:
            return WkbEval.turning_point()

    def k(t: float) -> float:
        gt = profile.g(t)
        if gt < 0.0:
            raise DomainError("negative g under the WKB phase integral")
        return math.sqrt(gt)

    try:
        phase = integrate(k, alpha, x, cfg)
    except DomainError:
        return WkbEval.turning_point()
    amp = gx ** -0.25
    return WkbEval(amp * math.cos(phase), amp * math.sin(phase))
