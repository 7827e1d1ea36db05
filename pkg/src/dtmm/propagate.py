"""Sectioned solution of the initial value problem over long ranges."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .basis import psi
from .profiles import DEFAULT_QUADRATURE, CoefficientProfile, QuadratureConfig
from .transfer import State, TransferMatrix, apply, build_Q

__all__ = [
    "Partition",
    "SolutionTrace",
    "make_partition",
    "default_sections",
    "solve_ivp",
    "chain",
    "transfer_over",
]

SECTIONS_PER_WAVELENGTH_UNIT = 64


@dataclass(frozen=True)
class Partition:
    """Monotone breakpoints x_0 = alpha, x_1, ..., x_N (N >= 1)."""

    points: tuple[float, ...]

    def __post_init__(self):
        pts = self.points
        if len(pts) < 2:
            raise ValueError("a partition needs at least two breakpoints")
        if any(not math.isfinite(p) for p in pts):
            raise ValueError("breakpoints must be finite")
        steps = [b - a for a, b in zip(pts, pts[1:])]
        degenerate = all(s == 0 for s in steps)
        if not degenerate and not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
            raise ValueError("breakpoints must be strictly monotone")

    def __len__(self) -> int:
        return len(self.points) - 1

    def sections(self) -> Iterable[tuple[float, float]]:
        return zip(self.points, self.points[1:])

    @property
    def start(self) -> float:
        return self.points[0]

    @property
    def end(self) -> float:
        return self.points[-1]


def make_partition(alpha: float, x_end: float, n_sections: int) -> Partition:
    if n_sections < 1:
        raise ValueError("n_sections must be at least 1")
    span = x_end - alpha
    pts = [alpha + span * i / n_sections for i in range(n_sections)] + [x_end]
    return Partition(tuple(pts))


def default_sections(profile: CoefficientProfile, alpha: float, x_end: float,
                     probe_points: int = 257) -> int:
    """Heuristic section count: 64 per unit of |x_end - alpha| * sqrt(max |f|)."""
    fmax = max(abs(profile.f(alpha + (x_end - alpha) * i / (probe_points - 1)))
               for i in range(probe_points))
    return max(1, math.ceil(SECTIONS_PER_WAVELENGTH_UNIT * abs(x_end - alpha) * math.sqrt(fmax)))


@dataclass
class SolutionTrace:
    """Samples (x, State) of a solution; the first sample is the initial state."""

    xs: list[float] = field(default_factory=list)
    states: list[State] = field(default_factory=list)

    def append(self, x: float, s: State) -> None:
        self.xs.append(x)
        self.states.append(s)

    def __len__(self) -> int:
        return len(self.xs)

    @property
    def u(self) -> np.ndarray:
        return np.array([s.u for s in self.states])

    @property
    def du(self) -> np.ndarray:
        return np.array([s.du for s in self.states])

    @property
    def final(self) -> State:
        return self.states[-1]


def _step_real(profile, a, b, s: State, corrected, cfg) -> State:
    p1, p2, p3, p4 = psi(profile, a, b, corrected, cfg)
    return State(p1 * s.u + p2 * s.du, p1 * s.v + p2 * s.dv,
                 p3 * s.u + p4 * s.du, p3 * s.v + p4 * s.dv)


def _step(profile, a, b, s, corrected, cfg) -> State:
    if profile.is_real:
        return _step_real(profile, a, b, s, corrected, cfg)
    return apply(build_Q(a, b, profile, corrected, cfg), s)


def solve_ivp(profile: CoefficientProfile, partition: Partition, s0: State,
              corrected: bool = False, samples_per_section: int = 1,
              cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> SolutionTrace:
    """Chain per-section steps across ``partition`` starting from ``s0``.

    Inside a section, each sample is the section's start state carried by a
    fresh sub-interval step from the section start. Real profiles go through
    the psi basis, complex ones through the full transfer matrix.
    """
    if samples_per_section < 1:
        raise ValueError("samples_per_section must be at least 1")
    if not s0.is_finite():
        raise ValueError("initial state must be finite")
    profile.check(partition.start, partition.end)
    trace = SolutionTrace()
    trace.append(partition.start, s0)
    state = s0
    for a, b in partition.sections():
        for j in range(1, samples_per_section):
            x = a + (b - a) * j / samples_per_section
            trace.append(x, _step(profile, a, x, state, corrected, cfg))
        state = _step(profile, a, b, state, corrected, cfg)
        trace.append(b, state)
    return trace


def chain(Qs: Sequence[TransferMatrix]) -> TransferMatrix:
    """Compose transfer matrices given in the order they are applied."""
    return reduce(lambda acc, q: q @ acc, Qs, TransferMatrix.identity())


def transfer_over(profile: CoefficientProfile, partition: Partition, corrected: bool = False,
                  cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> TransferMatrix:
    return chain([build_Q(a, b, profile, corrected, cfg) for a, b in partition.sections()])
