"""Batch orchestration and file formats for curves, phases, and simulations.

All CSV output is locale-independent (dot decimal separator, newline
"\\n", 12 significant digits) with fixed column order, so repeated runs
of the same configuration produce byte-identical files.  The JSON
summary written next to simulation CSVs carries schema_version 1.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .potential import ModelParams, solve_q_star
from .quadrature import DEFAULT_ORDER, QuadratureRule, default_rule
from .risks import (
    RiskReport,
    SweepSpec,
    bayes_risk_ssl,
    oracle_risk,
    supervised_labeled_risk,
    sweep,
)
from .simulate import (
    amp_estimate,
    classify_new,
    generate,
    oracle_classify,
    supervised_estimate,
)

CURVE_HEADER = "axis_value,oracle,supervised_full,supervised_labeled,unsupervised,semi_supervised,q_star"
PHASE_HEADER = "axis1_value,axis2_value,oracle,supervised_full,supervised_labeled,unsupervised,semi_supervised,q_star"
SIMULATE_HEADER = (
    "seed,risk_hat,risk_se,oracle_hat,sup_labeled_hat,overlap_u,overlap_v,"
    "self_overlap_u,llr_mean_pos,llr_mean_neg,llr_var,iterations,converged,error"
)

SCHEMA_VERSION = 1

# Tolerances of the simulation-versus-theory comparison.
RISK_TOL = 0.01
OVERLAP_TOL = 0.03
SUP_LABELED_TOL = 0.015
LLR_MEAN_RELTOL = 0.05
LLR_VAR_RELTOL = 0.10


def fmt(x: float) -> str:
    """12-significant-digit, locale-independent number formatting."""
    return f"{x:.12g}"


def _risk_row(axis_value: float, r: RiskReport) -> str:
    return ",".join(
        fmt(x)
        for x in (
            axis_value,
            r.oracle,
            r.supervised_full,
            r.supervised_labeled,
            r.unsupervised,
            r.semi_supervised,
            r.q_star,
        )
    )


def curve_csv(spec: SweepSpec, rule: QuadratureRule | None = None, threads: int | None = None) -> str:
    """CSV text for a one-axis sweep, one row per grid point."""
    reports = _parallel_sweep(spec, rule, threads)
    lines = [CURVE_HEADER]
    lines.extend(_risk_row(v, r) for v, r in zip(spec.grid, reports))
    return "\n".join(lines) + "\n"


def phase_csv(
    axis1: str,
    grid1: tuple[float, ...],
    axis2: str,
    grid2: tuple[float, ...],
    fixed: dict[str, float],
    rule: QuadratureRule | None = None,
    threads: int | None = None,
) -> str:
    """Long-format CSV over two axes; axis2 varies slowest.

    `fixed` holds the one model parameter on neither axis.  Each
    fixed-axis2 slice goes through the same computation and formatting
    path as curve_csv, so slices match curve output byte for byte
    (modulo the extra column).
    """
    if axis1 == axis2:
        raise ValueError("phase axes must differ")
    lines = [PHASE_HEADER]
    for v2 in grid2:
        slice_fixed = dict(fixed)
        if axis2 == "inv_sigma2":
            slice_fixed["sigma2"] = 1.0 / v2
        else:
            slice_fixed[axis2] = v2
        slice_spec = SweepSpec(axis=axis1, grid=grid1, **slice_fixed)
        reports = _parallel_sweep(slice_spec, rule, threads)
        for v1, r in zip(slice_spec.grid, reports):
            lines.append(f"{fmt(v1)},{fmt(v2)}," + _risk_row(v1, r).split(",", 1)[1])
    return "\n".join(lines) + "\n"


def _parallel_sweep(spec: SweepSpec, rule, threads: int | None) -> list[RiskReport]:
    if threads is not None and threads > 1 and len(spec.grid) > 1:
        singletons = [
            SweepSpec(axis=spec.axis, grid=(v,), alpha=spec.alpha, sigma2=spec.sigma2, eta=spec.eta)
            for v in spec.grid
        ]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda s: sweep(s, rule)[0], singletons))
        return results
    return sweep(spec, rule)


@dataclass(frozen=True)
class SimulateConfig:
    params: ModelParams
    n: int
    d: int
    m: int
    seeds: tuple[int, ...]
    max_iter: int = 200
    tol: float = 1e-8
    quadrature_order: int = DEFAULT_ORDER
    threads: int | None = None

    def __post_init__(self):
        if len(self.seeds) == 0:
            raise ValueError("at least one seed is required")
        if self.n < 1 or self.d < 1 or self.m < 1:
            raise ValueError("n, d, m must all be >= 1")


@dataclass(frozen=True)
class ReplicateRecord:
    """Per-seed results; `error` is empty on success."""

    seed: int
    risk_hat: float = math.nan
    risk_se: float = math.nan
    oracle_hat: float = math.nan
    sup_labeled_hat: float = math.nan
    overlap_u: float = math.nan
    overlap_v: float = math.nan
    self_overlap_u: float = math.nan
    llr_mean_pos: float = math.nan
    llr_mean_neg: float = math.nan
    llr_var: float = math.nan
    iterations: int = 0
    converged: bool = False
    error: str = ""


def run_replicate(config: SimulateConfig, seed: int, q_star: float) -> ReplicateRecord:
    """Generate, estimate, classify for one seed; never raises on
    numerical failure (the record carries the error message instead)."""
    try:
        dataset, testset = generate(config.params, config.n, config.d, config.m, seed)
        state = amp_estimate(dataset, max_iter=config.max_iter, tol=config.tol)
        report = classify_new(state, dataset, testset, q_star=q_star)
        oracle_hat, _ = oracle_classify(testset, dataset.u)
        sup_hat, _ = oracle_classify(testset, supervised_estimate(dataset))
        return ReplicateRecord(
            seed=seed,
            risk_hat=report.risk_hat,
            risk_se=report.risk_se,
            oracle_hat=oracle_hat,
            sup_labeled_hat=sup_hat,
            overlap_u=report.overlap_u,
            overlap_v=report.overlap_v,
            self_overlap_u=float(state.u_hat @ state.u_hat) / config.d,
            llr_mean_pos=report.llr_mean_pos,
            llr_mean_neg=report.llr_mean_neg,
            llr_var=report.llr_var,
            iterations=state.iteration,
            converged=state.converged,
        )
    except (RuntimeError, FloatingPointError) as exc:
        return ReplicateRecord(seed=seed, error=str(exc))


def run_simulation(config: SimulateConfig) -> tuple[list[ReplicateRecord], dict]:
    """Run every seed and build the aggregate theory-comparison summary."""
    rule = default_rule(config.quadrature_order)
    solved = solve_q_star(config.params, rule)
    q_star = solved.q_star
    sigma2 = config.params.sigma2

    workers = config.threads if config.threads else 1
    if workers > 1 and len(config.seeds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda s: run_replicate(config, s, q_star), config.seeds))
    else:
        records = [run_replicate(config, s, q_star) for s in config.seeds]

    ok = [r for r in records if not r.error]
    analytic = {
        "q_star": q_star,
        "bayes_risk_ssl": bayes_risk_ssl(config.params, rule),
        "oracle_risk": oracle_risk(sigma2),
        "supervised_labeled_risk": supervised_labeled_risk(config.params),
        "llr_mean_abs": 2.0 * q_star / sigma2,
        "llr_var": 4.0 * q_star / sigma2,
    }
    summary: dict = {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "alpha": config.params.alpha,
            "sigma2": sigma2,
            "eta": config.params.eta,
            "n": config.n,
            "d": config.d,
            "m": config.m,
            "seeds": list(config.seeds),
            "max_iter": config.max_iter,
            "tol": config.tol,
            "quadrature_order": config.quadrature_order,
        },
        "analytic": analytic,
        "n_seeds_ok": len(ok),
        "n_seeds_failed": len(records) - len(ok),
    }
    if ok:
        def agg(attr: str) -> dict:
            vals = np.array([getattr(r, attr) for r in ok], dtype=float)
            return {
                "mean": float(vals.mean()),
                "se": float(vals.std(ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else 0.0,
            }

        aggregate = {
            name: agg(name)
            for name in (
                "risk_hat",
                "oracle_hat",
                "sup_labeled_hat",
                "overlap_u",
                "overlap_v",
                "self_overlap_u",
                "llr_mean_pos",
                "llr_mean_neg",
                "llr_var",
            )
        }
        llr_mean_target = analytic["llr_mean_abs"]
        checks = {
            "risk_within_tol": abs(aggregate["risk_hat"]["mean"] - analytic["bayes_risk_ssl"]) <= RISK_TOL,
            "overlap_u_within_tol": abs(aggregate["overlap_u"]["mean"] - q_star) <= OVERLAP_TOL,
            "sup_labeled_within_tol": abs(
                aggregate["sup_labeled_hat"]["mean"] - analytic["supervised_labeled_risk"]
            )
            <= SUP_LABELED_TOL,
            "llr_mean_pos_within_tol": abs(aggregate["llr_mean_pos"]["mean"] - llr_mean_target)
            <= LLR_MEAN_RELTOL * llr_mean_target,
            "llr_mean_neg_within_tol": abs(aggregate["llr_mean_neg"]["mean"] + llr_mean_target)
            <= LLR_MEAN_RELTOL * llr_mean_target,
            "llr_var_within_tol": abs(aggregate["llr_var"]["mean"] - analytic["llr_var"])
            <= LLR_VAR_RELTOL * analytic["llr_var"],
        }
        summary["aggregate"] = aggregate
        summary["checks"] = checks
        summary["all_pass"] = all(checks.values())
    else:
        summary["aggregate"] = None
        summary["checks"] = {}
        summary["all_pass"] = False
    return records, summary


def simulate_csv(records: list[ReplicateRecord]) -> str:
    lines = [SIMULATE_HEADER]
    for r in records:
        lines.append(
            ",".join(
                [
                    str(r.seed),
                    fmt(r.risk_hat),
                    fmt(r.risk_se),
                    fmt(r.oracle_hat),
                    fmt(r.sup_labeled_hat),
                    fmt(r.overlap_u),
                    fmt(r.overlap_v),
                    fmt(r.self_overlap_u),
                    fmt(r.llr_mean_pos),
                    fmt(r.llr_mean_neg),
                    fmt(r.llr_var),
                    str(r.iterations),
                    str(r.converged).lower(),
                    r.error.replace(",", ";").replace("\n", " "),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def summary_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True) + "\n"
