"""Coefficient profiles f(x) = g(x) + i h(x) and the integrals built from them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import QuadratureError
from .expr import Expression, parse_expression

__all__ = [
    "QuadratureConfig",
    "CoefficientProfile",
    "integrate",
    "big_G",
    "big_H",
    "moment_integral",
]

# Panels are never accepted above this depth; guards against an initial
# sampling that happens to hit only zeros of an oscillating integrand.
_MIN_DEPTH = 2


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_depth: int = 40

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")


DEFAULT_QUADRATURE = QuadratureConfig()


def integrate(
    fn: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Adaptive Simpson estimate of the integral of ``fn`` from ``a`` to ``b``.

    The result is exactly antisymmetric in the limits and exactly zero for
    ``a == b``. Errors raised by ``fn`` (e.g. :class:`DomainError`) abort the
    integral.

    Raises:
        QuadratureError: a panel failed to converge within ``cfg.max_depth``
            bisections.
    """
    if a == b:
        return 0.0
    if a > b:
        return -integrate(fn, b, a, cfg)

    fa, fb = fn(a), fn(b)
    m = 0.5 * (a + b)
    fm = fn(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    # coarse magnitude for the relative tolerance
    fq1, fq3 = fn(0.5 * (a + m)), fn(0.5 * (m + b))
    scale = abs((b - a) / 12.0 * (fa + 4.0 * fq1 + 2.0 * fm + 4.0 * fq3 + fb))
    tol = max(cfg.abs_tol, cfg.rel_tol * scale)
    return _simpson(fn, a, b, fa, fm, fb, whole, tol, 0, cfg.max_depth)


def _simpson(fn, a, b, fa, fm, fb, whole, tol, depth, max_depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = fn(lm), fn(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth >= _MIN_DEPTH and abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth >= max_depth:
        raise QuadratureError(
            f"adaptive Simpson did not converge on [{a!r}, {b!r}] "
            f"within depth {max_depth} (last change {abs(delta):.3e})"
        )
    return (
        _simpson(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth)
        + _simpson(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth)
    )


@dataclass(frozen=True)
class CoefficientProfile:
    """The coefficient f = g + i h of ``y'' + f y = 0`` on a closed domain.

    ``h is None`` marks a real-valued problem.
    """

    g: Expression
    h: Expression | None = None
    domain: tuple[float, float] = (-math.inf, math.inf)

    def __post_init__(self):
        lo, hi = self.domain
        if not lo <= hi:
            raise ValueError(f"invalid domain {self.domain!r}")

    @classmethod
    def from_text(cls, g: str, h: str | None = None, domain=(-math.inf, math.inf)):
        return cls(
            parse_expression(g),
            parse_expression(h) if h is not None else None,
            (float(domain[0]), float(domain[1])),
        )

    @property
    def is_real(self) -> bool:
        return self.h is None

    def check(self, *xs: float) -> None:
        lo, hi = self.domain
        for x in xs:
            if not lo <= x <= hi:
                raise ValueError(f"x={x!r} lies outside the profile domain [{lo!r}, {hi!r}]")

    def f(self, x: float) -> complex:
        return complex(self.g(x), self.h(x) if self.h is not None else 0.0)


def big_G(profile: CoefficientProfile, alpha: float, x: float,
          cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """G(x; alpha) = integral of g from alpha to x."""
    profile.check(alpha, x)
    return integrate(profile.g, alpha, x, cfg)


def big_H(profile: CoefficientProfile, alpha: float, x: float,
          cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """H(x; alpha) = integral of h from alpha to x; exactly 0 for real profiles."""
    profile.check(alpha, x)
    if profile.h is None:
        return 0.0
    return integrate(profile.h, alpha, x, cfg)


def moment_integral(fn: Callable[[float], float], alpha: float, x: float,
                    cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Integral of (x + alpha - 2t) fn(t) over [alpha, x].

    This is the single-quadrature form of
    ``int_alpha^x [-(t - alpha) fn(t) + int_alpha^t fn(s) ds] dt``,
    obtained by swapping the order of the inner integration.
    """
    if alpha == x:
        return 0.0
    c = x + alpha
    return integrate(lambda t: (c - 2.0 * t) * fn(t), alpha, x, cfg)
