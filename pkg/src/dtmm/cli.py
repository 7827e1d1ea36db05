"""Command-line front end.

Usage::

    dtmm solve   --config problem.json [--out PATH] [--sections N] [--samples N]
    dtmm basis   --config problem.json [--samples N]
    dtmm band    --config problem.json
    dtmm compare --config problem.json [--corrected | --uncorrected]

Exit status: 0 success, 1 numerical failure, 2 input or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace
from typing import Sequence

from .basis import psi, wkb
from .bloch import band_scan
from .errors import BlochError, DomainError, DtmmError, ExpressionSyntaxError, OracleError, QuadratureError
from .expr import parse_expression
from .oracle import oracle_trace
from .profiles import CoefficientProfile
from .propagate import default_sections, make_partition, solve_ivp
from .transfer import State

EXIT_OK, EXIT_NUMERICAL, EXIT_INPUT = 0, 1, 2

CONFIG_KEYS = {"g", "h", "domain", "initial", "alpha", "sections", "corrected", "V", "E_range", "L"}
DEFAULT_BASIS_SAMPLES = 101
DEFAULT_BAND_SECTIONS = 64


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemConfig:
    g: str | None = None
    h: str | None = None
    domain: tuple[float, float] | None = None
    initial: tuple[float, float, float, float] = (1.0, 0.0, 0.0, 0.0)
    alpha: float | None = None
    sections: int | None = None
    corrected: bool = False
    V: str | None = None
    E_range: tuple[float, float, int] | None = None
    L: float | None = None

    @classmethod
    def from_dict(cls, data: dict) -> ProblemConfig:
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        kw = {}
        for key in ("g", "h", "V"):
            if key in data and data[key] is not None:
                if not isinstance(data[key], str):
                    raise ConfigError(f"{key!r} must be an expression string")
                kw[key] = data[key]
        if "domain" in data:
            kw["domain"] = tuple(_numbers(data["domain"], 2, "domain"))
        if "initial" in data:
            kw["initial"] = tuple(_numbers(data["initial"], 4, "initial"))
        if "alpha" in data:
            kw["alpha"] = _number(data["alpha"], "alpha")
        if "L" in data:
            kw["L"] = _number(data["L"], "L")
        if "sections" in data and data["sections"] is not None:
            kw["sections"] = _count(data["sections"], "sections")
        if "corrected" in data:
            if not isinstance(data["corrected"], bool):
                raise ConfigError("'corrected' must be true or false")
            kw["corrected"] = data["corrected"]
        if "E_range" in data:
            lo, hi, count = _numbers(data["E_range"], 3, "E_range")
            kw["E_range"] = (lo, hi, _count(count, "E_range count"))
        return cls(**kw)

    def require(self, *fields: str) -> None:
        missing = [f for f in fields if getattr(self, f) is None]
        if missing:
            raise ConfigError(f"config is missing: {', '.join(missing)}")


def _number(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{name!r} must be a finite number")
    return float(value)


def _numbers(value, n: int, name: str) -> list[float]:
    if not isinstance(value, list) or len(value) != n:
        raise ConfigError(f"{name!r} must be a list of {n} numbers")
    return [_number(v, name) for v in value]


def _count(value, name: str) -> int:
    if isinstance(value, bool) or value != int(value) or int(value) < 1:
        raise ConfigError(f"{name!r} must be a positive integer")
    return int(value)


def fmt(value: float) -> str:
    return format(float(value), ".17g")


def _profile(cfg: ProblemConfig) -> CoefficientProfile:
    cfg.require("g", "domain")
    lo, hi = cfg.domain
    if not lo < hi:
        raise ConfigError("domain must satisfy lo < hi")
    return CoefficientProfile(
        parse_expression(cfg.g),
        parse_expression(cfg.h) if cfg.h is not None else None,
        (lo, hi),
    )


def _alpha(cfg: ProblemConfig) -> float:
    alpha = cfg.domain[0] if cfg.alpha is None else cfg.alpha
    if not cfg.domain[0] <= alpha <= cfg.domain[1]:
        raise ConfigError(f"alpha={alpha!r} lies outside the domain")
    return alpha


def _ivp_setup(cfg: ProblemConfig):
    profile = _profile(cfg)
    alpha = _alpha(cfg)
    # propagate towards the far end of the domain
    x_end = cfg.domain[1] if alpha < cfg.domain[1] else cfg.domain[0]
    return profile, alpha, x_end


def _sections(cfg, profile, alpha, x_end) -> int:
    return cfg.sections if cfg.sections is not None else default_sections(profile, alpha, x_end)


def cmd_solve(cfg: ProblemConfig, samples: int = 1) -> list[str]:
    profile, alpha, x_end = _ivp_setup(cfg)
    part = make_partition(alpha, x_end, _sections(cfg, profile, alpha, x_end))
    trace = solve_ivp(profile, part, State(*cfg.initial), cfg.corrected, samples)
    rows = ["x,u,v,du,dv"]
    rows += [",".join(fmt(c) for c in (x, *s)) for x, s in zip(trace.xs, trace.states)]
    return rows


def cmd_basis(cfg: ProblemConfig, samples: int = DEFAULT_BASIS_SAMPLES) -> list[str]:
    profile = _profile(cfg)
    if not profile.is_real:
        raise ConfigError("basis mode needs a real profile (omit 'h')")
    alpha = _alpha(cfg)
    x_max = cfg.domain[1]
    xs = [alpha] if samples == 1 else [alpha + (x_max - alpha) * i / (samples - 1) for i in range(samples)]
    rows = ["x,psi1,psi2,psi3,psi4,wkb_u1,wkb_u2"]
    for x in xs:
        vals = psi(profile, alpha, x, cfg.corrected)
        w = wkb(profile, alpha, x)
        tail = ["div", "div"] if w.diverged else [fmt(w.u1), fmt(w.u2)]
        rows.append(",".join([fmt(x), *(fmt(v) for v in vals), *tail]))
    return rows


def cmd_band(cfg: ProblemConfig) -> tuple[list[str], bool]:
    cfg.require("V", "E_range", "L")
    if not cfg.L > 0:
        raise ConfigError("'L' must be positive")
    V = parse_expression(cfg.V)
    n = cfg.sections if cfg.sections is not None else DEFAULT_BAND_SECTIONS
    points = band_scan(V, cfg.E_range, cfg.L, n, cfg.corrected)
    rows = ["E,re_kappa1,im_kappa1,re_kappa2,im_kappa2,propagating"]
    for p in points:
        if p.ok:
            k1, k2 = p.kappas
            fields = [fmt(k1.real), fmt(k1.imag), fmt(k2.real), fmt(k2.imag), "1" if p.propagating else "0"]
        else:
            fields = ["nan"] * 5
        rows.append(",".join([fmt(p.energy), *fields]))
    return rows, any(p.ok for p in points)


def cmd_compare(cfg: ProblemConfig, samples: int = 1) -> tuple[list[str], float]:
    profile, alpha, x_end = _ivp_setup(cfg)
    part = make_partition(alpha, x_end, _sections(cfg, profile, alpha, x_end))
    s0 = State(*cfg.initial)
    trace = solve_ivp(profile, part, s0, cfg.corrected, samples)
    reference = oracle_trace(profile, trace.xs, s0)
    rows = ["x,u_dtmm,u_oracle,abs_err"]
    worst = 0.0
    for x, s, r in zip(trace.xs, trace.states, reference):
        err = abs(s.u - r.u)
        worst = max(worst, err)
        rows.append(",".join(fmt(c) for c in (x, s.u, r.u, err)))
    return rows, worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dtmm", description=__doc__.split("\n")[0])
    parser.add_argument("command", choices=["solve", "basis", "band", "compare"])
    parser.add_argument("--config", required=True, help="JSON problem description")
    parser.add_argument("--out", default=None, help="output CSV path (default: stdout)")
    parser.add_argument("--sections", type=int, default=None)
    parser.add_argument("--samples", type=int, default=None,
                        help="samples per section (solve/compare) or sample count (basis)")
    flag = parser.add_mutually_exclusive_group()
    flag.add_argument("--corrected", dest="corrected", action="store_true", default=None)
    flag.add_argument("--uncorrected", dest="corrected", action="store_false")
    return parser


def _load_config(args) -> ProblemConfig:
    try:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in config: {exc}") from None
    cfg = ProblemConfig.from_dict(data)
    if args.sections is not None:
        cfg = replace(cfg, sections=_count(args.sections, "--sections"))
    if args.corrected is not None:
        cfg = replace(cfg, corrected=args.corrected)
    return cfg


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    summary = None
    ok = True
    try:
        cfg = _load_config(args)
        if args.samples is not None:
            _count(args.samples, "--samples")
        if args.command == "solve":
            rows = cmd_solve(cfg, args.samples or 1)
        elif args.command == "basis":
            rows = cmd_basis(cfg, args.samples or DEFAULT_BASIS_SAMPLES)
        elif args.command == "band":
            rows, ok = cmd_band(cfg)
        else:
            rows, worst = cmd_compare(cfg, args.samples or 1)
            summary = f"max_abs_err={fmt(worst)}"
    except (ConfigError, ExpressionSyntaxError, ValueError) as exc:
        print(f"dtmm: error: {exc}", file=stderr)
        return EXIT_INPUT
    except (DomainError, QuadratureError, OracleError, BlochError, DtmmError, ArithmeticError) as exc:
        print(f"dtmm: numerical failure: {exc}", file=stderr)
        return EXIT_NUMERICAL

    text = "\n".join(rows) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if summary:
        print(summary, file=stderr)
    return EXIT_OK if ok else EXIT_NUMERICAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
