"""Brute-force reference solutions by classical fixed-step RK4.

Integrates (u, v, u', v')' = (u', v', -(g u - h v), -(h u + g v)) directly and
shares nothing with the transfer-matrix path beyond evaluating g and h.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import OracleError
from .profiles import CoefficientProfile
from .transfer import State

__all__ = ["OracleConfig", "rk_solve", "rk_fixed", "oracle_trace", "oracle_monodromy"]


@dataclass(frozen=True)
class OracleConfig:
    """Either a fixed ``step`` or step halving until two runs agree to ``tol``.

    In halving mode the first run uses ``initial_steps`` steps and the step
    count doubles until the max-abs change is at most
    ``tol * max(1, max|state|)``.
    """

    step: float | None = None
    tol: float = 1e-11
    initial_steps: int = 16
    max_steps: int = 1 << 20

    def __post_init__(self):
        if self.step is not None and not self.step > 0:
            raise ValueError("step must be positive")
        if not self.tol > 0 or self.initial_steps < 1:
            raise ValueError("tol must be positive and initial_steps >= 1")


DEFAULT_ORACLE = OracleConfig()


def rk_fixed(profile: CoefficientProfile, alpha: float, s0: State, x_end: float,
             n_steps: int) -> State:
    """``n_steps`` equal RK4 steps from ``alpha`` to ``x_end``."""
    g = profile.g
    h = profile.h if profile.h is not None else (lambda t: 0.0)
    dx = (x_end - alpha) / n_steps

    def rhs(t, u, v, du, dv):
        gt, ht = g(t), h(t)
        return du, dv, -(gt * u - ht * v), -(ht * u + gt * v)

    y = tuple(s0)
    for i in range(n_steps):
        t = alpha + i * dx
        k1 = rhs(t, *y)
        k2 = rhs(t + 0.5 * dx, *(yi + 0.5 * dx * ki for yi, ki in zip(y, k1)))
        k3 = rhs(t + 0.5 * dx, *(yi + 0.5 * dx * ki for yi, ki in zip(y, k2)))
        k4 = rhs(t + dx, *(yi + dx * ki for yi, ki in zip(y, k3)))
        y = tuple(yi + dx / 6.0 * (a + 2.0 * b + 2.0 * c + d)
                  for yi, a, b, c, d in zip(y, k1, k2, k3, k4))
    return State(*y)


def rk_solve(profile: CoefficientProfile, alpha: float, s0: State, x_end: float,
             cfg: OracleConfig = DEFAULT_ORACLE) -> State:
    """Integrate from ``alpha`` to ``x_end``.

    Raises:
        OracleError: the step count would exceed ``cfg.max_steps`` before
            two successive halvings agree.
    """
    profile.check(alpha, x_end)
    if alpha == x_end:
        return s0
    if cfg.step is not None:
        n = max(1, round(abs(x_end - alpha) / cfg.step))
        return rk_fixed(profile, alpha, s0, x_end, n)
    n = cfg.initial_steps
    prev = np.array(tuple(rk_fixed(profile, alpha, s0, x_end, n)))
    while True:
        n *= 2
        if n > cfg.max_steps:
            raise OracleError(f"RK4 did not converge to {cfg.tol:g} within {cfg.max_steps} steps")
        cur = np.array(tuple(rk_fixed(profile, alpha, s0, x_end, n)))
        if np.max(np.abs(cur - prev)) <= cfg.tol * max(1.0, np.max(np.abs(cur))):
            return State(*(float(c) for c in cur))
        prev = cur


def oracle_trace(profile: CoefficientProfile, xs: Sequence[float], s0: State,
                 cfg: OracleConfig = DEFAULT_ORACLE) -> list[State]:
    """States at each of ``xs``, starting from ``s0`` at ``xs[0]``."""
    out = [s0]
    for a, b in zip(xs, xs[1:]):
        out.append(rk_solve(profile, a, out[-1], b, cfg))
    return out


def oracle_monodromy(profile: CoefficientProfile, x0: float, L: float,
                     cfg: OracleConfig = DEFAULT_ORACLE) -> np.ndarray:
    """Complex 2x2 map (y, y') from x0 to x0 + L, column by column."""
    first = rk_solve(profile, x0, State(1.0, 0.0, 0.0, 0.0), x0 + L, cfg)
    second = rk_solve(profile, x0, State(0.0, 0.0, 1.0, 0.0), x0 + L, cfg)
    return np.array([[first.y, second.y], [first.dy, second.dy]])
