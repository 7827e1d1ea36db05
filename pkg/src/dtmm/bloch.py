"""Bloch wavenumbers of L-periodic coefficients from the one-period transfer matrix."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BlochError, DtmmError
from .expr import BinOp, Expression, Num
from .profiles import DEFAULT_QUADRATURE, CoefficientProfile, QuadratureConfig
from .propagate import make_partition, transfer_over
from .transfer import collapse_complex

__all__ = [
    "BlochResult",
    "BandPoint",
    "monodromy",
    "bloch_wavenumbers",
    "band_scan",
    "energy_profile",
    "kappa_x_independence_check",
]

PROPAGATING_TOL = 1e-6


@dataclass(frozen=True)
class BlochResult:
    monodromy: np.ndarray
    eigenvalues: tuple[complex, complex]
    kappas: tuple[complex, complex]
    L: float


@dataclass(frozen=True)
class BandPoint:
    energy: float
    kappas: tuple[complex, complex]
    propagating: bool
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def monodromy(profile: CoefficientProfile, x0: float, L: float, n_sections: int = 64,
              corrected: bool = False, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> np.ndarray:
    """Complex 2x2 map (y, y') from ``x0`` to ``x0 + L``."""
    if not L > 0:
        raise ValueError("period L must be positive")
    Q = transfer_over(profile, make_partition(x0, x0 + L, n_sections), corrected, cfg)
    return collapse_complex(Q)


def _kappa(lam: complex, L: float) -> complex:
    # principal log; the zone edge -pi/L is mapped to +pi/L
    log = cmath.log(lam)
    re = log.imag / L
    if re <= -math.pi / L:
        re += 2.0 * math.pi / L
    return complex(re, -log.real / L)


def bloch_wavenumbers(m: np.ndarray, L: float, det_tol: float = 1e-6) -> BlochResult:
    """Eigenvalues exp(i kappa L) of the monodromy and the folded wavenumbers.

    Raises:
        BlochError: |det(m) - 1| exceeds ``det_tol``.
    """
    m = np.asarray(m, dtype=complex)
    tau = m[0, 0] + m[1, 1]
    delta = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(delta - 1.0) > det_tol:
        raise BlochError(f"monodromy determinant {delta} deviates from 1")
    root = cmath.sqrt(tau * tau / 4.0 - delta)
    lam1, lam2 = tau / 2.0 + root, tau / 2.0 - root
    # recover the smaller root from the product to avoid cancellation
    if abs(lam1) >= abs(lam2):
        if lam1 != 0:
            lam2 = delta / lam1
    else:
        lam1 = delta / lam2
    return BlochResult(m, (lam1, lam2), (_kappa(lam1, L), _kappa(lam2, L)), L)


def energy_profile(V: Expression, energy: float, domain=(-math.inf, math.inf)) -> CoefficientProfile:
    """The real profile g_E(x) = E - V(x)."""
    return CoefficientProfile(Expression(BinOp("-", Num(float(energy)), V.root)), None, domain)


def band_scan(V: Expression, E_range: tuple[float, float, int], L: float, n_sections: int = 64,
              corrected: bool = False, cfg: QuadratureConfig = DEFAULT_QUADRATURE,
              x0: float | None = None) -> list[BandPoint]:
    """Bloch wavenumbers over the family g_E = E - V for ``count`` energies.

    A point that fails numerically is recorded with NaN wavenumbers and its
    error message instead of aborting the scan.
    """
    lo, hi, count = E_range
    if count < 1:
        raise ValueError("count must be at least 1")
    if x0 is None:
        x0 = -0.5 * L
    energies = [lo] if count == 1 else [lo + (hi - lo) * i / (count - 1) for i in range(count)]
    points = []
    for E in energies:
        try:
            res = bloch_wavenumbers(monodromy(energy_profile(V, E), x0, L, n_sections, corrected, cfg), L)
        except DtmmError as exc:
            nan = complex(math.nan, math.nan)
            points.append(BandPoint(E, (nan, nan), False, str(exc)))
            continue
        propagating = all(abs(abs(lam) - 1.0) <= PROPAGATING_TOL for lam in res.eigenvalues)
        points.append(BandPoint(E, res.kappas, propagating))
    return points


def _kappa_distance(k1: complex, k2: complex, L: float) -> float:
    period = 2.0 * math.pi / L
    d = (k1.real - k2.real) % period
    d = min(d, period - d)
    return math.hypot(d, k1.imag - k2.imag)


def kappa_x_independence_check(profile: CoefficientProfile, L: float,
                               x0_samples: Sequence[float] | None = None, n_sections: int = 1,
                               corrected: bool = False,
                               cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Largest change of the wavenumber pair as the period's start point moves.

    The pair at ``x0_samples[0]`` (by default x0 = 0) is the reference; pairs
    are matched in whichever order is closer. Returns a diagnostic, not a
    pass/fail verdict.
    """
    if x0_samples is None:
        x0_samples = [L * i / 8 for i in range(8)]
    pairs = [bloch_wavenumbers(monodromy(profile, x0, L, n_sections, corrected, cfg), L).kappas
             for x0 in x0_samples]
    ref = pairs[0]
    worst = 0.0
    for k in pairs[1:]:
        straight = max(_kappa_distance(k[0], ref[0], L), _kappa_distance(k[1], ref[1], L))
        crossed = max(_kappa_distance(k[0], ref[1], L), _kappa_distance(k[1], ref[0], L))
        worst = max(worst, min(straight, crossed))
    return worst
