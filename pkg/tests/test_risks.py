"""Tests for the five asymptotic risks and parameter sweeps."""

import math

import numpy as np
import pytest

from sslbayes.potential import ModelParams, Q_MAX, potential_f
from sslbayes.quadrature import normal_cdf
from sslbayes.risks import (
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

FIGURE_PARAMS = ModelParams(alpha=1.0, sigma2=0.9, eta=0.2)

# Recorded during the build; checked against grid-scan oracles below.
RISK_SSL_FIGURE = 0.2770034474010218
UNSUP_RISK_1_05 = 0.1509178265272350


def ordering_holds(r: RiskReport) -> bool:
    return (
        r.oracle <= r.semi_supervised + 1e-10
        and r.semi_supervised <= r.supervised_labeled + 1e-10
        and r.semi_supervised <= r.unsupervised + 1e-10
        and r.supervised_full <= r.supervised_labeled + 1e-10
        and all(
            0.0 <= x <= 0.5
            for x in (
                r.oracle,
                r.supervised_full,
                r.supervised_labeled,
                r.unsupervised,
                r.semi_supervised,
            )
        )
    )


class TestOracleRisk:
    def test_reference_value(self):
        assert oracle_risk(1.0) == pytest.approx(1.0 - normal_cdf(1.0), abs=1e-12)
        assert oracle_risk(1.0) == pytest.approx(0.1586552539314571, abs=1e-9)

    def test_separated_clusters(self):
        assert oracle_risk(1e-8) <= 1e-300

    def test_pure_noise(self):
        assert abs(oracle_risk(1e8) - 0.5) < 1e-4

    def test_invalid_rejected(self):
        with pytest.raises(ValueError):
            oracle_risk(0.0)
        with pytest.raises(ValueError):
            oracle_risk(-1.0)


class TestSupervisedRisks:
    def test_reference_value(self):
        assert supervised_full_risk(1.0, 1.0) == pytest.approx(0.2397500610934768, abs=1e-9)

    def test_large_alpha_reaches_oracle(self):
        assert supervised_full_risk(1e12, 1.0) == pytest.approx(oracle_risk(1.0), abs=1e-6)

    def test_matches_ssl_at_eta_one(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            alpha = rng.uniform(0.1, 10.0)
            sigma2 = rng.uniform(0.05, 5.0)
            r1 = bayes_risk_ssl(ModelParams(alpha, sigma2, 1.0))
            r2 = supervised_full_risk(alpha, sigma2)
            assert abs(r1 - r2) <= 1e-10

    def test_labeled_is_alpha_eta_substitution(self):
        assert supervised_labeled_risk(FIGURE_PARAMS) == supervised_full_risk(0.2, 0.9)
        p1 = ModelParams(1.3, 0.8, 1.0)
        assert supervised_labeled_risk(p1) == supervised_full_risk(1.3, 0.8)

    def test_labeled_vanishing_eta_is_chance(self):
        assert abs(supervised_labeled_risk(ModelParams(1.0, 0.9, 1e-12)) - 0.5) < 1e-5

    def test_labeled_eta_zero_rejected(self):
        with pytest.raises(ValueError):
            supervised_labeled_risk(ModelParams(1.0, 0.9, 0.0))

    def test_invalid_rejected(self):
        with pytest.raises(ValueError):
            supervised_full_risk(-1.0, 1.0)
        with pytest.raises(ValueError):
            supervised_full_risk(1.0, math.inf)


class TestUnsupervisedRisk:
    def test_below_threshold_is_chance(self):
        """alpha / sigma2^2 = 4/9 < 1: the only minimizer is q = 0."""
        assert unsupervised_risk(1.0, 1.5) == 0.5

    def test_above_threshold_value(self):
        r = unsupervised_risk(1.0, 0.5)
        assert r < 0.5
        assert r == pytest.approx(UNSUP_RISK_1_05, abs=1e-12)

    def test_above_threshold_against_grid_scan(self):
        params = ModelParams(1.0, 0.5, 0.0)
        grid = np.linspace(0.0, Q_MAX, 100_001)
        q_grid = grid[np.argmin(potential_f(grid, params))]
        r_grid = 1.0 - normal_cdf(math.sqrt(q_grid / 0.5))
        assert abs(unsupervised_risk(1.0, 0.5) - r_grid) < 1e-5

    def test_matches_ssl_limit(self):
        """Continuity of the risk as eta -> 0 above the threshold."""
        rng = np.random.default_rng(12)
        for _ in range(20):
            sigma2 = rng.uniform(0.3, 1.2)
            alpha = rng.uniform(1.5, 5.0) * sigma2**2
            r_uns = unsupervised_risk(alpha, sigma2)
            r_ssl = bayes_risk_ssl(ModelParams(alpha, sigma2, 1e-8))
            assert abs(r_uns - r_ssl) < 1e-4


class TestBayesRiskSsl:
    def test_eta_one_closed_form(self):
        expected = 1.0 - normal_cdf(math.sqrt(1.0 / 1.9) / math.sqrt(0.9))
        assert bayes_risk_ssl(ModelParams(1.0, 0.9, 1.0)) == pytest.approx(expected, abs=1e-12)

    def test_vanishing_snr(self):
        assert abs(bayes_risk_ssl(ModelParams(1.0, 1e6, 0.5)) - 0.5) < 1e-3

    def test_figure_point(self):
        assert bayes_risk_ssl(FIGURE_PARAMS) == pytest.approx(RISK_SSL_FIGURE, abs=1e-12)


class TestSweepSpec:
    def test_rejects_bad_axis(self):
        with pytest.raises(ValueError):
            SweepSpec(axis="sigma", grid=(0.1, 0.2), alpha=1.0, eta=0.2)

    def test_rejects_empty_or_unsorted(self):
        with pytest.raises(ValueError):
            SweepSpec(axis="eta", grid=(), alpha=1.0, sigma2=0.9)
        with pytest.raises(ValueError):
            SweepSpec(axis="eta", grid=(0.5, 0.2), alpha=1.0, sigma2=0.9)

    def test_rejects_out_of_domain(self):
        with pytest.raises(ValueError):
            SweepSpec(axis="eta", grid=(0.0, 0.5), alpha=1.0, sigma2=0.9)
        with pytest.raises(ValueError):
            SweepSpec(axis="eta", grid=(0.5, 1.5), alpha=1.0, sigma2=0.9)
        with pytest.raises(ValueError):
            SweepSpec(axis="alpha", grid=(-1.0, 1.0), sigma2=0.9, eta=0.2)

    def test_rejects_missing_fixed_param(self):
        with pytest.raises(ValueError):
            SweepSpec(axis="eta", grid=(0.1, 0.5), alpha=1.0)


class TestSweep:
    def test_singleton(self):
        spec = SweepSpec(axis="eta", grid=(0.2,), alpha=1.0, sigma2=0.9)
        reports = sweep(spec)
        assert len(reports) == 1
        assert reports[0].semi_supervised == pytest.approx(RISK_SSL_FIGURE, abs=1e-12)

    def test_eta_sweep_monotone_and_ordered(self):
        spec = SweepSpec(
            axis="eta", grid=tuple(np.linspace(0.01, 1.0, 100)), alpha=1.0, sigma2=0.9
        )
        reports = sweep(spec)
        ssl = [r.semi_supervised for r in reports]
        assert np.all(np.diff(ssl) <= 1e-12)
        assert all(ordering_holds(r) for r in reports)

    def test_inv_sigma2_sweep_spectral_transition(self):
        """Unsupervised risk is exactly 1/2 up to 1/sigma2 = 1 (alpha = 1)
        and below 1/2 past the transition."""
        spec = SweepSpec(
            axis="inv_sigma2", grid=tuple(np.linspace(0.1, 5.0, 50)), alpha=1.0, eta=0.2
        )
        reports = sweep(spec)
        for value, r in zip(spec.grid, reports):
            if value <= 1.0:
                assert r.unsupervised == 0.5
            elif value > 1.05:
                assert r.unsupervised < 0.5
        assert all(ordering_holds(r) for r in reports)

    def test_diminishing_returns(self):
        """The first labels cut the risk more than the last ones: the drop
        over eta in [0, 0.2] exceeds the drop over [0.8, 1.0]."""
        grid = tuple(np.linspace(0.005, 1.0, 200))
        reports = sweep(SweepSpec(axis="eta", grid=grid, alpha=1.0, sigma2=0.9))
        unsup = reports[0].unsupervised
        i20 = int(np.argmin(np.abs(np.asarray(grid) - 0.2)))
        i80 = int(np.argmin(np.abs(np.asarray(grid) - 0.8)))
        drop_head = unsup - reports[i20].semi_supervised
        drop_tail = reports[i80].semi_supervised - reports[-1].semi_supervised
        assert drop_head > drop_tail

    def test_alpha_axis(self):
        spec = SweepSpec(axis="alpha", grid=(0.5, 1.0, 2.0), sigma2=0.9, eta=0.2)
        reports = sweep(spec)
        assert [r.params.alpha for r in reports] == [0.5, 1.0, 2.0]
        ssl = [r.semi_supervised for r in reports]
        assert np.all(np.diff(ssl) < 0.0)


class TestRiskReport:
    def test_figure_point_fields(self):
        r = risk_report(FIGURE_PARAMS)
        assert r.semi_supervised == pytest.approx(RISK_SSL_FIGURE, abs=1e-12)
        assert r.q_star == pytest.approx(0.3151689333172045, abs=1e-11)
        assert ordering_holds(r)
