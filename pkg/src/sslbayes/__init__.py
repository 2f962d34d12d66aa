"""Bayes risks of semi-supervised classification in a two-cluster
high-dimensional Gaussian mixture, with a finite-size Monte Carlo
simulator that verifies the asymptotic predictions.

Analytic side: scalar-channel quantities (channels), the risk
potential and its unique minimizer q* (potential), and the five
limiting risks plus parameter sweeps (risks).  Simulation side: the
generative model, a posterior-mean message-passing estimator whose
fixed points reproduce the asymptotic state evolution, and empirical
risk / overlap / log-likelihood-ratio diagnostics (simulate).  The
harness and cli modules orchestrate batches and serialize CSV/JSON;
validation holds the acceptance checks.
"""

from .channels import h, i_u, i_v, mmse_u, mmse_v
from .errors import NumericalError, SolverError
from .potential import (
    ModelParams,
    Overlaps,
    SolveReport,
    fixed_point_map,
    mutual_info_limit,
    potential_f,
    potential_f_prime,
    solve_q_star,
    solve_q_zero,
)
from .quadrature import (
    QuadratureRule,
    expect_gaussian,
    gauss_hermite_rule,
    log_cosh,
    normal_cdf,
)
from .risks import (
    RiskReport,
    SweepSpec,
    bayes_risk_ssl,
    oracle_risk,
    risk_report,
    supervised_full_risk,
    supervised_labeled_risk,
    sweep,
    unsupervised_risk,
)
from .simulate import (
    AmpState,
    Dataset,
    EmpiricalReport,
    TestSet,
    amp_estimate,
    classify_new,
    generate,
    llr_statistics,
    oracle_classify,
    sign_fixed_risk,
    spectral_estimate,
    supervised_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "AmpState",
    "Dataset",
    "EmpiricalReport",
    "ModelParams",
    "NumericalError",
    "Overlaps",
    "QuadratureRule",
    "RiskReport",
    "SolveReport",
    "SolverError",
    "SweepSpec",
    "TestSet",
    "amp_estimate",
    "bayes_risk_ssl",
    "classify_new",
    "expect_gaussian",
    "fixed_point_map",
    "gauss_hermite_rule",
    "generate",
    "h",
    "i_u",
    "i_v",
    "llr_statistics",
    "log_cosh",
    "mmse_u",
    "mmse_v",
    "mutual_info_limit",
    "normal_cdf",
    "oracle_classify",
    "oracle_risk",
    "potential_f",
    "potential_f_prime",
    "risk_report",
    "sign_fixed_risk",
    "solve_q_star",
    "solve_q_zero",
    "spectral_estimate",
    "supervised_estimate",
    "supervised_full_risk",
    "supervised_labeled_risk",
    "sweep",
    "unsupervised_risk",
]
