"""Risk potential of the semi-supervised Gaussian mixture and its minimizer.

A problem instance is (alpha, sigma2, eta): sample-to-dimension ratio,
noise variance, and fraction of revealed labels.  The scalar potential

    f(q) = alpha (1 - eta) i_v(q / sigma2)
           + alpha / (2 sigma2) (1 - q)
           - (q + log(1 - q)) / 2,        q in [0, 1),

has, for eta > 0, a unique critical point q* which is its minimizer.
Its derivative (using i_v' = mmse_v / 2) is

    f'(q) = alpha / (2 sigma2) [(1 - eta) mmse_v(q / sigma2) - 1]
            + q / (2 (1 - q)),

and f'(q) = 0 rearranges into the state-evolution fixed point

    q = F(q) = alpha g(q) / (sigma2 + alpha g(q)),
    g(q) = eta + (1 - eta) h(q / sigma2),

with F concave, F(0) = alpha eta / (sigma2 + alpha eta) > 0.  The pair
of overlaps at the solution is q_u = q* and
q_v = 1 - (1 - eta) mmse_v(q* / sigma2), linked by
q_u = alpha q_v / (sigma2 + alpha q_v).

solve_q_star computes q* by two independent routes that must agree:
damped fixed-point iteration of F, and golden-section minimization of f
refined by bisection on f'.  The limiting value of the per-sample
conditional mutual information between the signal pair and the data is
min_q f(q) = f(q*).

At eta = 0 the point q = 0 is always stationary and uniqueness fails;
solve_q_zero picks the global minimizer by comparing f(0) against every
interior stationary point.  A positive solution exists exactly above
the spectral (BBP) threshold alpha > sigma2^2, where F'(0) = alpha /
sigma2^2 > 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import h, i_v, mmse_v
from .errors import SolverError
from .quadrature import QuadratureRule

# Domain clamp: keeps log(1 - q) and q/(1 - q) finite while leaving the
# sigma2 -> 0 regime (q* -> 1) representable.
Q_MAX = 1.0 - 1e-12

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

FIXED_POINT_TOL = 1e-13
FIXED_POINT_DAMPING = 0.5
FIXED_POINT_MAX_ITER = 100_000
METHOD_GAP_TOL = 1e-8


@dataclass(frozen=True)
class ModelParams:
    """One problem instance: (alpha, sigma2, eta)."""

    alpha: float
    sigma2: float
    eta: float

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not (np.isfinite(self.sigma2) and self.sigma2 > 0):
            raise ValueError(f"sigma2 must be positive, got {self.sigma2}")
        if not (np.isfinite(self.eta) and 0.0 <= self.eta <= 1.0):
            raise ValueError(f"eta must be in [0, 1], got {self.eta}")

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)


@dataclass(frozen=True)
class Overlaps:
    """Asymptotic overlaps (q_u, q_v) of the posterior means."""

    q_u: float
    q_v: float


@dataclass(frozen=True)
class SolveReport:
    """Result of solve_q_star with cross-validation diagnostics.

    q_star solves f'(q) = 0; method_gap is the absolute difference
    between the fixed-point and minimization routes, guaranteed
    <= 1e-8.
    """

    q_star: float
    f_min: float
    iterations: int
    method_gap: float
    overlaps: Overlaps


def _check_q(q, q_max: float = Q_MAX) -> np.ndarray:
    arr = np.asarray(q, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > q_max) or not np.all(np.isfinite(arr)):
        raise ValueError(f"q must be in [0, {q_max}], got {q!r}")
    return arr


def _check_q_scalar(q, q_max: float = Q_MAX) -> float:
    q = float(q)
    if not (0.0 <= q <= q_max):
        raise ValueError(f"q must be in [0, {q_max}], got {q!r}")
    return q


def potential_f(q, params: ModelParams, rule: QuadratureRule | None = None):
    """Evaluate the potential f at q (scalar or array)."""
    a, s2, eta = params.alpha, params.sigma2, params.eta
    if np.ndim(q) == 0:
        qs = _check_q_scalar(q)
        return (
            a * (1.0 - eta) * i_v(qs / s2, rule)
            + a / (2.0 * s2) * (1.0 - qs)
            - 0.5 * (qs + math.log1p(-qs))
        )
    qa = _check_q(q)
    return (
        a * (1.0 - eta) * i_v(qa / s2, rule)
        + a / (2.0 * s2) * (1.0 - qa)
        - 0.5 * (qa + np.log1p(-qa))
    )


def potential_f_prime(q, params: ModelParams, rule: QuadratureRule | None = None):
    """Evaluate f'(q) (scalar or array)."""
    a, s2, eta = params.alpha, params.sigma2, params.eta
    if np.ndim(q) == 0:
        qs = _check_q_scalar(q)
        return a / (2.0 * s2) * ((1.0 - eta) * mmse_v(qs / s2, rule) - 1.0) + qs / (
            2.0 * (1.0 - qs)
        )
    qa = _check_q(q)
    return a / (2.0 * s2) * ((1.0 - eta) * mmse_v(qa / s2, rule) - 1.0) + qa / (
        2.0 * (1.0 - qa)
    )


def fixed_point_map(q, params: ModelParams, rule: QuadratureRule | None = None):
    """Evaluate the state-evolution map F(q) (scalar or array)."""
    a, s2, eta = params.alpha, params.sigma2, params.eta
    if np.ndim(q) == 0:
        qs = _check_q_scalar(q, q_max=1.0)
        g = a * (eta + (1.0 - eta) * h(qs / s2, rule))
        return g / (s2 + g)
    qa = _check_q(q, q_max=1.0)
    g = a * (eta + (1.0 - eta) * h(qa / s2, rule))
    return g / (s2 + g)


def _golden_section(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section search for the minimum of a unimodal f on [lo, hi]."""
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while d - c > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


def _bisect_root(fp, lo: float, hi: float, iters: int = 100) -> float:
    """Bisection for the root of fp given fp(lo) <= 0 <= fp(hi)."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if fp(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _solve_fixed_point(params: ModelParams, rule: QuadratureRule | None) -> tuple[float, int]:
    q = fixed_point_map(0.0, params, rule)
    residual = math.inf
    for it in range(1, FIXED_POINT_MAX_ITER + 1):
        fq = fixed_point_map(q, params, rule)
        residual = abs(fq - q)
        if residual < FIXED_POINT_TOL:
            return q, it
        q = (1.0 - FIXED_POINT_DAMPING) * q + FIXED_POINT_DAMPING * fq
    raise SolverError("fixed-point iteration did not converge", q, residual)


def _solve_minimize(params: ModelParams, rule: QuadratureRule | None) -> float:
    f = lambda q: potential_f(q, params, rule)
    fp = lambda q: potential_f_prime(q, params, rule)
    q_g = _golden_section(f, 0.0, Q_MAX, tol=1e-6)
    # Bracket the root of f' around the golden-section minimum, then polish.
    width = 1e-5
    lo, hi = max(0.0, q_g - width), min(Q_MAX, q_g + width)
    while lo > 0.0 and fp(lo) > 0.0:
        width *= 8.0
        lo = max(0.0, lo - width)
    while hi < Q_MAX and fp(hi) < 0.0:
        width *= 8.0
        hi = min(Q_MAX, hi + width)
    return _bisect_root(fp, lo, hi)


def solve_q_star(params: ModelParams, rule: QuadratureRule | None = None) -> SolveReport:
    """Solve for the unique minimizer q* of the potential (eta > 0).

    Runs the damped fixed-point iteration (tolerance 1e-13, damping
    0.5, started at F(0)) and the golden-section/bisection minimization
    independently; raises SolverError if either fails to converge or if
    the two disagree by more than 1e-8.
    """
    if params.eta <= 0.0:
        raise ValueError("solve_q_star requires eta > 0; use solve_q_zero for eta = 0")
    q_fp, iterations = _solve_fixed_point(params, rule)
    q_min = _solve_minimize(params, rule)
    gap = abs(q_fp - q_min)
    if gap > METHOD_GAP_TOL:
        raise SolverError("fixed-point and minimization routes disagree", q_min, gap)
    q_star = q_min
    q_v = 1.0 - (1.0 - params.eta) * mmse_v(q_star / params.sigma2, rule)
    return SolveReport(
        q_star=q_star,
        f_min=potential_f(q_star, params, rule),
        iterations=iterations,
        method_gap=gap,
        overlaps=Overlaps(q_u=q_star, q_v=q_v),
    )


def solve_q_zero(
    alpha: float,
    sigma2: float,
    rule: QuadratureRule | None = None,
    grid_points: int = 4001,
) -> float:
    """Global minimizer of the eta = 0 potential on [0, Q_MAX].

    q = 0 is always stationary at eta = 0, so the minimizer is chosen by
    comparing f(0) with every interior stationary point, located by a
    sign-change scan of f' (the scan resolution is refined away by
    bisection) and compared on the potential.  Returns 0.0 below the
    spectral threshold (alpha <= sigma2^2).
    """
    params = ModelParams(alpha=alpha, sigma2=sigma2, eta=0.0)
    qs = np.linspace(1e-9, Q_MAX, grid_points)
    fps = potential_f_prime(qs, params, rule)
    crossings = np.where((fps[:-1] < 0.0) & (fps[1:] >= 0.0))[0]
    best_q, best_f = 0.0, potential_f(0.0, params, rule)
    fp = lambda q: potential_f_prime(q, params, rule)
    for i in crossings:
        q_i = _bisect_root(fp, qs[i], qs[i + 1])
        f_i = potential_f(q_i, params, rule)
        if f_i < best_f:
            best_q, best_f = q_i, f_i
    return best_q


def mutual_info_limit(params: ModelParams, rule: QuadratureRule | None = None) -> float:
    """Per-sample conditional mutual information limit, min_q f(q).

    Equals f(q*) for eta > 0 and the global minimum of the eta = 0
    potential otherwise.  Always nonnegative.
    """
    if params.eta > 0.0:
        return solve_q_star(params, rule).f_min
    q0 = solve_q_zero(params.alpha, params.sigma2, rule)
    return potential_f(q0, params, rule)
