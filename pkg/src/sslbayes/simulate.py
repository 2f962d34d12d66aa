"""Finite-size Monte Carlo: data generation, estimators, and diagnostics.

The generative model at size (N, D) is

    Y_j = V_j U + sigma Z_j,    j = 1..N,

with U uniform on the unit sphere of R^D, V_j ~ Unif{-1,+1}, and side
information S_j = V_j with probability eta (else 0), all independent.
A held-out test set (Y_new, V_new) of M points follows the same law;
its noise matrix Z_new is retained so the log-likelihood-ratio proxy
can be evaluated without recomputing an intractable posterior.

Estimators
----------
* oracle: sign(<U, Y_new>)
* supervised: sign(<w, Y_new>) with w the label-weighted average of
  the (labeled or all) observations
* message passing (amp_estimate): iterative posterior-mean
  approximation whose fixed points satisfy the same state-evolution
  equations as the asymptotic theory, making the analytic q*
  empirically testable at finite size
* spectral: power iteration on Y^T Y, the classical baseline that
  exhibits the spectral phase transition

Message-passing iteration, in the coordinates utld = sqrt(D) U (so
each component has unit prior variance):

    B_v = Y uhat / (sigma2 sqrt(D)) - (u_var / sigma2) vhat_prev
    vhat_j = S_j if labeled else tanh(B_v_j)
    B_u = Y^T vhat / (sigma2 sqrt(D))
          - (sum_unlabeled (1 - vhat_j^2) / (sigma2 D)) uhat_prev
    A_u = sum_j vhat_j^2 / (sigma2 D)
    uhat = B_u / (1 + A_u),   u_var = 1 / (1 + A_u)

started from vhat = S, uhat = 0, u_var = 1.  The subtracted memory
terms keep successive iterates decorrelated; the v-side variance sum
runs over unlabeled coordinates only, since labeled ones have zero
posterior variance.  With eta = 0 the all-zeros state is an exact
fixed point, as it should be: without labels nothing breaks the +/-
symmetry (an optional perturbation is provided for that regime).

Determinism: all randomness derives from a single 64-bit seed via
numpy SeedSequence spawning, with one child stream each for U, V, S,
the training noise, and the test set (in that order).  Identical
inputs reproduce every output bit for bit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .potential import ModelParams

_SPECTRAL_STREAM_TAG = 0x5BEC


@dataclass(frozen=True)
class Dataset:
    """One training sample of the generative model."""

    y: np.ndarray  # (n, d) observations
    v: np.ndarray  # (n,) true labels in {-1, +1}
    s: np.ndarray  # (n,) side information in {-1, 0, +1}
    u: np.ndarray  # (d,) true center, unit norm
    n: int
    d: int
    params: ModelParams
    seed: int


@dataclass(frozen=True)
class TestSet:
    """Held-out points with their noise retained."""

    y_new: np.ndarray  # (m, d)
    v_new: np.ndarray  # (m,)
    z_new: np.ndarray  # (m, d)


@dataclass(frozen=True)
class AmpState:
    """Iterate of the message-passing estimator (utld coordinates)."""

    u_hat: np.ndarray  # (d,)
    v_hat: np.ndarray  # (n,), equal to s on labeled coordinates
    u_var: float
    v_var: float
    a_u: float
    a_v: float
    iteration: int
    converged: bool


@dataclass(frozen=True)
class EmpiricalReport:
    """Empirical risk, overlaps, and LLR-proxy statistics."""

    risk_hat: float
    risk_se: float
    overlap_u: float
    overlap_v: float
    llr_mean_pos: float
    llr_mean_neg: float
    llr_var: float


def generate(
    params: ModelParams, n: int, d: int, m: int, seed: int
) -> tuple[Dataset, TestSet]:
    """Draw one training set and one test set, deterministically in seed."""
    if n < 1 or d < 1 or m < 1:
        raise ValueError(f"sizes must be >= 1, got n={n}, d={d}, m={m}")
    if abs(n / d - params.alpha) > 0.01 * params.alpha:
        warnings.warn(
            f"n/d = {n / d:.4f} differs from alpha = {params.alpha} by more than 1%",
            stacklevel=2,
        )
    streams = np.random.SeedSequence(seed).spawn(5)
    rng_u, rng_v, rng_s, rng_z, rng_test = (np.random.default_rng(s) for s in streams)

    g = rng_u.standard_normal(d)
    u = g / np.linalg.norm(g)
    v = np.where(rng_v.random(n) < 0.5, -1.0, 1.0)
    s = np.where(rng_s.random(n) < params.eta, v, 0.0)
    sigma = params.sigma
    y = v[:, None] * u[None, :] + sigma * rng_z.standard_normal((n, d))

    v_new = np.where(rng_test.random(m) < 0.5, -1.0, 1.0)
    z_new = rng_test.standard_normal((m, d))
    y_new = v_new[:, None] * u[None, :] + sigma * z_new

    dataset = Dataset(y=y, v=v, s=s, u=u, n=n, d=d, params=params, seed=seed)
    return dataset, TestSet(y_new=y_new, v_new=v_new, z_new=z_new)


def _classify(scores: np.ndarray, v_true: np.ndarray) -> tuple[float, float]:
    pred = np.where(scores >= 0.0, 1.0, -1.0)
    risk = float(np.mean(pred != v_true))
    se = math.sqrt(risk * (1.0 - risk) / len(v_true))
    return risk, se


def oracle_classify(testset: TestSet, u: np.ndarray) -> tuple[float, float]:
    """Misclassification rate of sign(<u, y_new>) with its standard error."""
    if testset.y_new.shape[1] != len(u):
        raise ValueError("dimension mismatch between test set and direction")
    return _classify(testset.y_new @ u, testset.v_new)


def supervised_estimate(dataset: Dataset, use_all_labels: bool = False) -> np.ndarray:
    """Label-weighted average of the observations.

    With use_all_labels the true labels weight every point; otherwise
    only revealed labels are used.  Raises ValueError when no point is
    labeled.
    """
    if use_all_labels:
        return (dataset.v[:, None] * dataset.y).mean(axis=0)
    labeled = dataset.s != 0.0
    if not labeled.any():
        raise ValueError("no labeled points: supervised estimate has empty support")
    return (dataset.s[labeled, None] * dataset.y[labeled]).mean(axis=0)


def amp_estimate(
    dataset: Dataset,
    max_iter: int = 200,
    tol: float = 1e-8,
    v_init_noise: float = 0.0,
    init_seed: int = 0,
) -> AmpState:
    """Run the message-passing iteration to convergence.

    Stops when the largest component change across (u_hat, v_hat) drops
    below tol, or at max_iter with converged=False.  Raises
    NumericalError if any field becomes non-finite.  v_init_noise adds
    a small random perturbation to the unlabeled initialization, useful
    only in the eta = 0 regime where zero is an exact fixed point.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    y = dataset.y
    n, d = y.shape
    sigma2 = dataset.params.sigma2
    rd = math.sqrt(d)
    labeled = dataset.s != 0.0

    v_hat = dataset.s.astype(float).copy()
    if v_init_noise > 0.0:
        rng = np.random.default_rng(np.random.SeedSequence([dataset.seed, init_seed]))
        v_hat[~labeled] = v_init_noise * rng.uniform(-1.0, 1.0, int((~labeled).sum()))
    u_hat = np.zeros(d)
    u_var = 1.0
    a_u = 0.0
    iteration = 0
    converged = False

    for iteration in range(1, max_iter + 1):
        v_prev, u_prev = v_hat, u_hat

        b_v = (y @ u_hat) / (sigma2 * rd) - (u_var / sigma2) * v_prev
        v_hat = np.where(labeled, dataset.s, np.tanh(b_v))
        var_v = np.where(labeled, 0.0, 1.0 - v_hat**2)

        b_u = (y.T @ v_hat) / (sigma2 * rd) - (var_v.sum() / (sigma2 * d)) * u_prev
        a_u = float(v_hat @ v_hat) / (sigma2 * d)
        u_hat = b_u / (1.0 + a_u)
        u_var = 1.0 / (1.0 + a_u)

        delta = max(
            float(np.max(np.abs(u_hat - u_prev))), float(np.max(np.abs(v_hat - v_prev)))
        )
        if not np.isfinite(delta):
            raise NumericalError(f"message passing diverged at iteration {iteration}")
        if delta < tol:
            converged = True
            break

    unlabeled = ~labeled
    v_var = float((1.0 - v_hat[unlabeled] ** 2).mean()) if unlabeled.any() else 0.0
    a_v = float(u_hat @ u_hat) / (sigma2 * d)
    return AmpState(
        u_hat=u_hat,
        v_hat=v_hat,
        u_var=u_var,
        v_var=v_var,
        a_u=a_u,
        a_v=a_v,
        iteration=iteration,
        converged=converged,
    )


def llr_statistics(
    state: AmpState, testset: TestSet, q_star: float, sigma2: float
) -> tuple[float, float, float]:
    """Conditional means and pooled variance of the LLR proxy.

    Per test point, L = (2/sigma) <ubar, z_new> + (2/sigma2) q* v_new
    with ubar = u_hat / sqrt(D).  In the large-size limit L is Gaussian
    with mean +-2 q*/sigma2 (conditionally on v_new = +-1) and variance
    4 q*/sigma2.
    """
    d = len(state.u_hat)
    if testset.z_new.shape[1] != d:
        raise ValueError("dimension mismatch between state and test set")
    u_bar = state.u_hat / math.sqrt(d)
    llr = (2.0 / math.sqrt(sigma2)) * (testset.z_new @ u_bar) + (
        2.0 / sigma2
    ) * q_star * testset.v_new
    pos = testset.v_new > 0
    mean_pos = float(llr[pos].mean())
    mean_neg = float(llr[~pos].mean())
    centered = np.where(pos, llr - mean_pos, llr - mean_neg)
    return mean_pos, mean_neg, float(centered @ centered / len(llr))


def classify_new(
    state: AmpState,
    dataset: Dataset,
    testset: TestSet,
    q_star: float | None = None,
) -> EmpiricalReport:
    """Classify the test set with sign(<u_hat, y_new>) and report diagnostics.

    Overlaps are measured against the dataset's ground truth in the
    utld = sqrt(D) U coordinates.  The LLR proxy uses the analytic
    q_star when given, otherwise the empirical self-overlap
    |u_hat|^2 / D.  Warns when the state has not converged.
    """
    if not state.converged:
        warnings.warn("classifying from a non-converged state", stacklevel=2)
    if testset.y_new.shape[1] != dataset.d:
        raise ValueError("dimension mismatch between dataset and test set")
    risk_hat, risk_se = _classify(testset.y_new @ state.u_hat, testset.v_new)
    u_tilde = math.sqrt(dataset.d) * dataset.u
    overlap_u = float(state.u_hat @ u_tilde) / dataset.d
    overlap_v = float(state.v_hat @ dataset.v) / dataset.n
    q_eff = q_star if q_star is not None else float(state.u_hat @ state.u_hat) / dataset.d
    mean_pos, mean_neg, llr_var = llr_statistics(
        state, testset, q_eff, dataset.params.sigma2
    )
    return EmpiricalReport(
        risk_hat=risk_hat,
        risk_se=risk_se,
        overlap_u=overlap_u,
        overlap_v=overlap_v,
        llr_mean_pos=mean_pos,
        llr_mean_neg=mean_neg,
        llr_var=llr_var,
    )


def spectral_estimate(dataset: Dataset, iters: int = 200) -> np.ndarray:
    """Leading right-singular direction of Y by power iteration on Y^T Y.

    The start vector is drawn from a stream derived from the dataset
    seed, so the result is deterministic for a fixed dataset.  The
    output is sign-aligned to the labeled points when any exist;
    otherwise the caller should score it under the sign-fixed (best of
    +-) convention.
    """
    if iters < 1:
        raise ValueError("iters must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence([dataset.seed, _SPECTRAL_STREAM_TAG]))
    w = rng.standard_normal(dataset.d)
    w /= np.linalg.norm(w)
    for _ in range(iters):
        w = dataset.y.T @ (dataset.y @ w)
        w /= np.linalg.norm(w)
    labeled = dataset.s != 0.0
    if labeled.any():
        alignment = float(dataset.s[labeled] @ (dataset.y[labeled] @ w))
        if alignment < 0.0:
            w = -w
    return w


def sign_fixed_risk(testset: TestSet, w: np.ndarray) -> tuple[float, float]:
    """Empirical risk of sign(<w, y_new>) minimized over the global sign."""
    r_plus, se_plus = oracle_classify(testset, w)
    r_minus, se_minus = oracle_classify(testset, -w)
    return (r_plus, se_plus) if r_plus <= r_minus else (r_minus, se_minus)
