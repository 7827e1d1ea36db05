"""Differential transfer matrix solver for y'' + f(x) y = 0 with complex f = g + i h."""

from .basis import BasisEval, WkbEval, cos_sqrt, psi, psi_derivatives_at_origin, sinc_sqrt, wkb
from .bloch import BandPoint, BlochResult, band_scan, bloch_wavenumbers, kappa_x_independence_check, monodromy
from .errors import (
    BlochError,
    DomainError,
    DtmmError,
    ExpressionSyntaxError,
    OracleError,
    QuadratureError,
    UnknownFunctionError,
)
from .expr import Expression, evaluate, parse_expression
from .oracle import OracleConfig, oracle_monodromy, oracle_trace, rk_solve
from .planar import (
    PlanarMatrix,
    planar_cosh,
    planar_exp,
    planar_inverse,
    planar_sinh,
    planar_sinhc,
    planar_sqrt,
)
from .profiles import CoefficientProfile, QuadratureConfig, big_G, big_H, integrate, moment_integral
from .propagate import Partition, SolutionTrace, chain, make_partition, solve_ivp, transfer_over
from .transfer import (
    State,
    TransferMatrix,
    apply,
    build_B,
    build_blocks,
    build_D,
    build_E,
    build_J,
    build_Q,
    collapse_complex,
)

__version__ = "0.1.0"
