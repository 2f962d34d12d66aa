"""Asymptotic misclassification risks of the five learning regimes.

Every risk is of the form 1 - Phi(sqrt(q) / sigma) for the overlap q
achieved by the corresponding estimator in the high-dimensional limit:

    oracle               q = 1            (cluster center known)
    supervised, full     q = a / (a + s2) with a = alpha (all labels)
    supervised, labeled  same with a = alpha eta (labeled subset only)
    semi-supervised      q = q*(alpha, sigma2, eta) from the potential
    unsupervised         q = q0, global minimizer at eta = 0, under the
                         sign-fixed risk convention (exactly 1/2 below
                         the spectral threshold where q0 = 0)

Tail evaluations use Phi(-x) directly, which stays accurate to the
underflow point instead of cancelling in 1 - Phi(x).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .potential import ModelParams, SolveReport, solve_q_star, solve_q_zero
from .quadrature import QuadratureRule, normal_cdf

logger = logging.getLogger(__name__)

SWEEP_AXES = ("eta", "inv_sigma2", "alpha")


@dataclass(frozen=True)
class RiskReport:
    """The five asymptotic risks at one parameter point."""

    params: ModelParams
    oracle: float
    supervised_full: float
    supervised_labeled: float
    unsupervised: float
    semi_supervised: float
    q_star: float


@dataclass(frozen=True)
class SweepSpec:
    """A one-axis parameter sweep; the other two parameters are fixed.

    axis is one of 'eta', 'inv_sigma2', 'alpha'.  The grid must be
    strictly increasing and inside the axis domain (eta in (0, 1], the
    others positive).
    """

    axis: str
    grid: tuple[float, ...]
    alpha: float | None = None
    sigma2: float | None = None
    eta: float | None = None

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ValueError(f"axis must be one of {SWEEP_AXES}, got {self.axis!r}")
        object.__setattr__(self, "grid", tuple(float(g) for g in self.grid))
        g = np.asarray(self.grid, dtype=float)
        if g.size == 0:
            raise ValueError("grid must be nonempty")
        if not np.all(np.isfinite(g)) or np.any(np.diff(g) <= 0):
            raise ValueError("grid must be finite and strictly increasing")
        if self.axis == "eta":
            if np.any(g <= 0) or np.any(g > 1):
                raise ValueError("eta grid must lie in (0, 1]")
        elif np.any(g <= 0):
            raise ValueError(f"{self.axis} grid must be positive")
        fixed = {"eta": ("alpha", "sigma2"), "inv_sigma2": ("alpha", "eta"), "alpha": ("sigma2", "eta")}
        for name in fixed[self.axis]:
            if getattr(self, name) is None:
                raise ValueError(f"sweep over {self.axis} requires fixed {name}")

    def params_at(self, value: float) -> ModelParams:
        if self.axis == "eta":
            return ModelParams(alpha=self.alpha, sigma2=self.sigma2, eta=value)
        if self.axis == "inv_sigma2":
            return ModelParams(alpha=self.alpha, sigma2=1.0 / value, eta=self.eta)
        return ModelParams(alpha=value, sigma2=self.sigma2, eta=self.eta)


def _risk_from_overlap(q: float, sigma2: float) -> float:
    """1 - Phi(sqrt(q)/sigma), clamped into [0, 1/2]."""
    if q <= 0.0:
        return 0.5
    r = normal_cdf(-math.sqrt(q / sigma2))
    if r > 0.5:
        logger.warning("risk %.17g > 1/2 from numerical noise at q=%.3e; clamping", r, q)
        return 0.5
    return r


def oracle_risk(sigma2: float) -> float:
    """Risk with the cluster center known: 1 - Phi(1/sigma)."""
    if not (np.isfinite(sigma2) and sigma2 > 0):
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    return _risk_from_overlap(1.0, sigma2)


def supervised_full_risk(alpha: float, sigma2: float) -> float:
    """Risk of the label-averaged center estimate using all N points."""
    if not (np.isfinite(alpha) and alpha > 0):
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not (np.isfinite(sigma2) and sigma2 > 0):
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    return _risk_from_overlap(alpha / (alpha + sigma2), sigma2)


def supervised_labeled_risk(params: ModelParams) -> float:
    """Supervised risk restricted to the labeled subset: alpha -> alpha eta."""
    if params.eta <= 0.0:
        raise ValueError("supervised_labeled_risk requires eta > 0 (no labeled data otherwise)")
    return supervised_full_risk(params.alpha * params.eta, params.sigma2)


def unsupervised_risk(alpha: float, sigma2: float, rule: QuadratureRule | None = None) -> float:
    """Sign-fixed risk of the best label-free estimator.

    Exactly 1/2 below the spectral threshold (the eta = 0 potential is
    minimized at q = 0); otherwise 1 - Phi(sqrt(q0)/sigma) with q0 the
    interior global minimizer.
    """
    q0 = solve_q_zero(alpha, sigma2, rule)
    return _risk_from_overlap(q0, sigma2)


def bayes_risk_ssl(params: ModelParams, rule: QuadratureRule | None = None) -> float:
    """Semi-supervised Bayes risk 1 - Phi(sqrt(q*)/sigma), eta > 0."""
    report = solve_q_star(params, rule)
    return _risk_from_overlap(report.q_star, params.sigma2)


def risk_report(params: ModelParams, rule: QuadratureRule | None = None) -> RiskReport:
    """All five risks plus q_star at one parameter point."""
    report: SolveReport = solve_q_star(params, rule)
    return RiskReport(
        params=params,
        oracle=oracle_risk(params.sigma2),
        supervised_full=supervised_full_risk(params.alpha, params.sigma2),
        supervised_labeled=supervised_labeled_risk(params),
        unsupervised=unsupervised_risk(params.alpha, params.sigma2, rule),
        semi_supervised=_risk_from_overlap(report.q_star, params.sigma2),
        q_star=report.q_star,
    )


def sweep(spec: SweepSpec, rule: QuadratureRule | None = None) -> list[RiskReport]:
    """One RiskReport per grid point, in grid order.

    The unsupervised risk depends only on (alpha, sigma2) and is
    memoized across points; each point is otherwise an independent pure
    computation, so callers may parallelize freely.
    """
    from .errors import SolverError

    unsup_cache: dict[tuple[float, float], float] = {}
    reports = []
    for value in spec.grid:
        params = spec.params_at(value)
        try:
            solved = solve_q_star(params, rule)
            key = (params.alpha, params.sigma2)
            if key not in unsup_cache:
                unsup_cache[key] = unsupervised_risk(params.alpha, params.sigma2, rule)
            reports.append(
                RiskReport(
                    params=params,
                    oracle=oracle_risk(params.sigma2),
                    supervised_full=supervised_full_risk(params.alpha, params.sigma2),
                    supervised_labeled=supervised_labeled_risk(params),
                    unsupervised=unsup_cache[key],
                    semi_supervised=_risk_from_overlap(solved.q_star, params.sigma2),
                    q_star=solved.q_star,
                )
            )
        except SolverError as exc:
            raise SolverError(
                f"sweep failed at {spec.axis}={value!r}: {exc}", exc.last_iterate, exc.residual
            ) from exc
    return reports
