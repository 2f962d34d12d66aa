"""Command-line harness: risk, curve, phase, simulate, validate.

Configuration precedence is command-line flag over config-file entry
(a JSON object of key -> value given with --config) over built-in
default.  No environment variables are consulted.

Exit codes: 0 success, 1 validation failure, 2 usage error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .errors import NumericalError, SolverError
from .harness import (
    CURVE_HEADER,
    SimulateConfig,
    curve_csv,
    fmt,
    phase_csv,
    run_simulation,
    simulate_csv,
    summary_json,
)
from .potential import ModelParams
from .quadrature import DEFAULT_ORDER, default_rule
from .risks import SweepSpec, risk_report
from .validation import run_checks

EXIT_OK = 0
EXIT_VALIDATION_FAILURE = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

RISK_HEADER = "alpha,sigma2,eta," + CURVE_HEADER.split(",", 1)[1]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sslbayes",
        description="Bayes risks of semi-supervised classification in a two-cluster Gaussian mixture",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser):
        p.add_argument("--config", type=str, default=None, help="JSON config file (flags win)")
        p.add_argument("--quadrature-order", type=int, default=None)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--out", type=str, default=None)

    p_risk = sub.add_parser("risk", help="five risks at one parameter point")
    add_common(p_risk)
    for flag in ("--alpha", "--sigma2", "--eta"):
        p_risk.add_argument(flag, type=float, default=None)

    p_curve = sub.add_parser("curve", help="one-axis sweep to CSV")
    add_common(p_curve)
    p_curve.add_argument("--axis", choices=("eta", "inv_sigma2", "alpha"), default=None)
    p_curve.add_argument("--grid-start", type=float, default=None)
    p_curve.add_argument("--grid-stop", type=float, default=None)
    p_curve.add_argument("--grid-points", type=int, default=None)
    for flag in ("--alpha", "--sigma2", "--eta"):
        p_curve.add_argument(flag, type=float, default=None)

    p_phase = sub.add_parser("phase", help="two-axis grid to long-format CSV")
    add_common(p_phase)
    p_phase.add_argument("--axis", choices=("eta", "inv_sigma2", "alpha"), default=None)
    p_phase.add_argument("--grid-start", type=float, default=None)
    p_phase.add_argument("--grid-stop", type=float, default=None)
    p_phase.add_argument("--grid-points", type=int, default=None)
    p_phase.add_argument("--axis2", choices=("eta", "inv_sigma2", "alpha"), default=None)
    p_phase.add_argument("--grid2-start", type=float, default=None)
    p_phase.add_argument("--grid2-stop", type=float, default=None)
    p_phase.add_argument("--grid2-points", type=int, default=None)
    for flag in ("--alpha", "--sigma2", "--eta"):
        p_phase.add_argument(flag, type=float, default=None)

    p_sim = sub.add_parser("simulate", help="finite-size Monte Carlo vs theory")
    add_common(p_sim)
    for flag in ("--alpha", "--sigma2", "--eta"):
        p_sim.add_argument(flag, type=float, default=None)
    p_sim.add_argument("--n", type=int, default=None)
    p_sim.add_argument("--d", type=int, default=None)
    p_sim.add_argument("--m", type=int, default=None)
    p_sim.add_argument("--seeds", type=str, default=None, help="comma-separated seed list")
    p_sim.add_argument("--max-iter", type=int, default=None)
    p_sim.add_argument("--tol", type=float, default=None)

    p_val = sub.add_parser("validate", help="run the acceptance checks")
    add_common(p_val)
    p_val.add_argument("--quick", action="store_true", help="analytic-only subset")

    return parser


class _Config:
    """Flag > config file > default resolution."""

    def __init__(self, args: argparse.Namespace):
        self._args = vars(args)
        self._file: dict = {}
        path = self._args.get("config")
        if path:
            with open(path, encoding="utf-8") as fh:
                loaded = json.load(fh)
            if not isinstance(loaded, dict):
                raise ValueError("config file must hold a JSON object")
            self._file = loaded

    def get(self, key: str, default=None, required: bool = False):
        flag = self._args.get(key)
        if flag is not None:
            return flag
        if key in self._file:
            return self._file[key]
        if required and default is None:
            raise ValueError(f"missing required option --{key.replace('_', '-')}")
        return default


def _params_from(cfg: _Config) -> ModelParams:
    return ModelParams(
        alpha=float(cfg.get("alpha", required=True)),
        sigma2=float(cfg.get("sigma2", required=True)),
        eta=float(cfg.get("eta", required=True)),
    )


def _grid_from(cfg: _Config, prefix: str = "grid") -> tuple[float, ...]:
    start = cfg.get(f"{prefix}_start", required=True)
    stop = cfg.get(f"{prefix}_stop", required=True)
    points = int(cfg.get(f"{prefix}_points", required=True))
    if points < 1:
        raise ValueError(f"{prefix}-points must be >= 1")
    return tuple(float(x) for x in np.linspace(float(start), float(stop), points))


def _write_or_print(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="")


def _cmd_risk(cfg: _Config) -> int:
    params = _params_from(cfg)
    rule = default_rule(int(cfg.get("quadrature_order", DEFAULT_ORDER)))
    r = risk_report(params, rule)
    row = ",".join(
        fmt(x)
        for x in (
            params.alpha,
            params.sigma2,
            params.eta,
            r.oracle,
            r.supervised_full,
            r.supervised_labeled,
            r.unsupervised,
            r.semi_supervised,
            r.q_star,
        )
    )
    text = RISK_HEADER + "\n" + row + "\n"
    _write_or_print(text, cfg.get("out"))
    if cfg.get("out") is not None:
        sys.stdout.write(text)
    return EXIT_OK


def _sweep_spec_from(cfg: _Config) -> SweepSpec:
    axis = cfg.get("axis", required=True)
    grid = _grid_from(cfg)
    fixed = {"alpha": cfg.get("alpha"), "sigma2": cfg.get("sigma2"), "eta": cfg.get("eta")}
    fixed = {k: (float(v) if v is not None else None) for k, v in fixed.items()}
    fixed.pop("sigma2" if axis == "inv_sigma2" else axis, None)
    return SweepSpec(axis=axis, grid=grid, **fixed)


def _cmd_curve(cfg: _Config) -> int:
    spec = _sweep_spec_from(cfg)
    rule = default_rule(int(cfg.get("quadrature_order", DEFAULT_ORDER)))
    text = curve_csv(spec, rule, threads=cfg.get("threads", os.cpu_count()))
    _write_or_print(text, cfg.get("out"))
    return EXIT_OK


def _cmd_phase(cfg: _Config) -> int:
    axis1 = cfg.get("axis", required=True)
    axis2 = cfg.get("axis2", required=True)
    if axis2 == axis1:
        raise ValueError("axis2 must differ from axis")
    grid1 = _grid_from(cfg)
    grid2 = _grid_from(cfg, prefix="grid2")
    axis_params = {"eta": "eta", "inv_sigma2": "sigma2", "alpha": "alpha"}
    fixed_name = ({"alpha", "sigma2", "eta"} - {axis_params[axis1], axis_params[axis2]}).pop()
    fixed_value = cfg.get(fixed_name, required=True)
    rule = default_rule(int(cfg.get("quadrature_order", DEFAULT_ORDER)))
    text = phase_csv(
        axis1,
        grid1,
        axis2,
        grid2,
        {fixed_name: float(fixed_value)},
        rule,
        threads=cfg.get("threads", os.cpu_count()),
    )
    _write_or_print(text, cfg.get("out"))
    return EXIT_OK


def _parse_seeds(raw) -> tuple[int, ...]:
    if raw is None:
        raise ValueError("missing required option --seeds")
    if isinstance(raw, (list, tuple)):
        return tuple(int(s) for s in raw)
    return tuple(int(s) for s in str(raw).split(",") if s.strip() != "")


def _cmd_simulate(cfg: _Config) -> int:
    params = _params_from(cfg)
    config = SimulateConfig(
        params=params,
        n=int(cfg.get("n", required=True)),
        d=int(cfg.get("d", required=True)),
        m=int(cfg.get("m", required=True)),
        seeds=_parse_seeds(cfg.get("seeds")),
        max_iter=int(cfg.get("max_iter", 200)),
        tol=float(cfg.get("tol", 1e-8)),
        quadrature_order=int(cfg.get("quadrature_order", DEFAULT_ORDER)),
        threads=cfg.get("threads", os.cpu_count()),
    )
    records, summary = run_simulation(config)
    csv_text = simulate_csv(records)
    json_text = summary_json(summary)
    out = cfg.get("out")
    if out is None:
        sys.stdout.write(csv_text)
        sys.stdout.write(json_text)
    else:
        _write_or_print(csv_text, out)
        _write_or_print(json_text, str(Path(out).with_suffix(".json")))
        status = "pass" if summary.get("all_pass") else "FAIL"
        sys.stdout.write(f"{out}: {summary['n_seeds_ok']} seeds ok, checks {status}\n")
    if summary["n_seeds_ok"] == 0:
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_validate(cfg: _Config, quick: bool) -> int:
    order = int(cfg.get("quadrature_order", DEFAULT_ORDER))
    results = run_checks(quick=quick, order=order)
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name:<{width}}  ({r.elapsed:7.2f}s)  {r.detail}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    out = cfg.get("out")
    if out is not None:
        _write_or_print(text, out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION_FAILURE


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code) if exc.code else EXIT_OK
    try:
        cfg = _Config(args)
        if args.command == "risk":
            return _cmd_risk(cfg)
        if args.command == "curve":
            return _cmd_curve(cfg)
        if args.command == "phase":
            return _cmd_phase(cfg)
        if args.command == "simulate":
            return _cmd_simulate(cfg)
        if args.command == "validate":
            return _cmd_validate(cfg, args.quick)
        raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, NumericalError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
