"""Tests for the finite-size generator, estimators, and diagnostics.

Sizes here are kept moderate (N, D around 1000-2000) so the suite stays
fast; the full-size comparison against the asymptotic theory lives in
test_acceptance.py.
"""

import math

import numpy as np
import pytest

from sslbayes.potential import ModelParams, solve_q_star
from sslbayes.quadrature import normal_cdf
from sslbayes.risks import supervised_full_risk, supervised_labeled_risk
from sslbayes.simulate import (
    AmpState,
    amp_estimate,
    classify_new,
    generate,
    llr_statistics,
    oracle_classify,
    sign_fixed_risk,
    spectral_estimate,
    supervised_estimate,
)

FIGURE_PARAMS = ModelParams(alpha=1.0, sigma2=0.9, eta=0.2)


class TestGenerate:
    def test_center_is_unit_norm(self):
        dataset, _ = generate(FIGURE_PARAMS, 200, 200, 10, seed=0)
        assert abs(np.linalg.norm(dataset.u) - 1.0) < 1e-12

    def test_side_information_is_erased_labels(self):
        dataset, _ = generate(FIGURE_PARAMS, 500, 500, 10, seed=1)
        assert set(np.unique(dataset.v)) == {-1.0, 1.0}
        mask = dataset.s != 0.0
        assert np.all(dataset.s[mask] == dataset.v[mask])

    def test_deterministic(self):
        a1, t1 = generate(FIGURE_PARAMS, 300, 300, 50, seed=7)
        a2, t2 = generate(FIGURE_PARAMS, 300, 300, 50, seed=7)
        assert a1.y.tobytes() == a2.y.tobytes()
        assert a1.s.tobytes() == a2.s.tobytes()
        assert t1.y_new.tobytes() == t2.y_new.tobytes()
        assert t1.z_new.tobytes() == t2.z_new.tobytes()

    def test_seeds_differ(self):
        a1, _ = generate(FIGURE_PARAMS, 300, 300, 10, seed=7)
        a2, _ = generate(FIGURE_PARAMS, 300, 300, 10, seed=8)
        assert a1.y.tobytes() != a2.y.tobytes()

    def test_concentration(self):
        n = 10_000
        dataset, _ = generate(FIGURE_PARAMS, n, 10_000, 10, seed=3)
        assert abs(dataset.v.mean()) < 4.0 / math.sqrt(n)
        eta = FIGURE_PARAMS.eta
        frac = float((dataset.s != 0.0).mean())
        assert abs(frac - eta) < 4.0 * math.sqrt(eta * (1.0 - eta) / n)
        assert abs(frac - eta) < 5.0 / math.sqrt(n)

    def test_testset_linear_model_exact(self):
        dataset, testset = generate(FIGURE_PARAMS, 100, 100, 40, seed=4)
        recon = testset.v_new[:, None] * dataset.u + FIGURE_PARAMS.sigma * testset.z_new
        assert np.array_equal(recon, testset.y_new)

    def test_zero_sizes_rejected(self):
        for n, d, m in ((0, 10, 10), (10, 0, 10), (10, 10, 0)):
            with pytest.raises(ValueError):
                generate(FIGURE_PARAMS, n, d, m, seed=0)

    def test_size_ratio_warning(self):
        with pytest.warns(UserWarning):
            generate(FIGURE_PARAMS, 150, 100, 10, seed=0)


class TestOracleClassify:
    def test_separated_clusters(self):
        params = ModelParams(1.0, 1e-8, 0.2)
        dataset, testset = generate(params, 100, 100, 10_000, seed=5)
        risk, _ = oracle_classify(testset, dataset.u)
        assert risk == 0.0

    def test_matches_analytic_at_unit_noise(self):
        params = ModelParams(1.0, 1.0, 0.2)
        dataset, testset = generate(params, 100, 100, 100_000, seed=6)
        risk, se = oracle_classify(testset, dataset.u)
        assert abs(risk - 0.15866) < 3.0 * se

    def test_chance_at_huge_noise(self):
        params = ModelParams(1.0, 1e6, 0.2)
        dataset, testset = generate(params, 100, 100, 100_000, seed=7)
        risk, se = oracle_classify(testset, dataset.u)
        assert abs(risk - 0.5) < 3.0 * se

    def test_dimension_mismatch(self):
        dataset, testset = generate(FIGURE_PARAMS, 50, 50, 10, seed=8)
        with pytest.raises(ValueError):
            oracle_classify(testset, np.ones(51))


class TestSupervisedEstimate:
    def test_eta_one_all_equals_labeled(self):
        params = ModelParams(1.0, 0.9, 1.0)
        dataset, _ = generate(params, 400, 400, 10, seed=9)
        np.testing.assert_array_equal(
            supervised_estimate(dataset, use_all_labels=True),
            supervised_estimate(dataset, use_all_labels=False),
        )

    def test_full_risk_matches_closed_form(self):
        params = ModelParams(1.0, 0.9, 1.0)
        dataset, testset = generate(params, 4000, 4000, 20_000, seed=10)
        risk, _ = oracle_classify(testset, supervised_estimate(dataset, use_all_labels=True))
        assert abs(risk - supervised_full_risk(1.0, 0.9)) < 0.01

    def test_labeled_risk_matches_substitution(self):
        dataset, testset = generate(FIGURE_PARAMS, 4000, 4000, 20_000, seed=11)
        risk, _ = oracle_classify(testset, supervised_estimate(dataset))
        assert abs(risk - supervised_labeled_risk(FIGURE_PARAMS)) < 0.015

    def test_no_labels_rejected(self):
        params = ModelParams(1.0, 0.9, 0.0)
        dataset, _ = generate(params, 100, 100, 10, seed=12)
        with pytest.raises(ValueError):
            supervised_estimate(dataset)


class TestAmpEstimate:
    def test_eta_one_pins_labels_and_matches_supervised(self):
        params = ModelParams(1.0, 0.9, 1.0)
        dataset, testset = generate(params, 2000, 2000, 20_000, seed=13)
        state = amp_estimate(dataset)
        assert np.array_equal(state.v_hat, dataset.v)
        assert state.converged
        # u_hat is a positive rescaling of the supervised average
        w = supervised_estimate(dataset, use_all_labels=True)
        cos = state.u_hat @ w / (np.linalg.norm(state.u_hat) * np.linalg.norm(w))
        assert cos == pytest.approx(1.0, abs=1e-9)
        risk, _ = oracle_classify(testset, state.u_hat)
        assert abs(risk - supervised_full_risk(1.0, 0.9)) < 0.015

    def test_labeled_coordinates_pinned(self):
        dataset, _ = generate(FIGURE_PARAMS, 1000, 1000, 10, seed=14)
        state = amp_estimate(dataset)
        mask = dataset.s != 0.0
        assert np.array_equal(state.v_hat[mask], dataset.s[mask])
        assert np.all(np.abs(state.v_hat) <= 1.0)
        assert state.a_u >= 0.0 and state.a_v >= 0.0

    def test_zero_fixed_point_without_labels(self):
        params = ModelParams(1.0, 1e6, 0.0)
        dataset, _ = generate(params, 1000, 1000, 10, seed=15)
        state = amp_estimate(dataset)
        assert np.linalg.norm(state.u_hat) <= 1e-6

    def test_overlap_approaches_q_star(self):
        dataset, _ = generate(FIGURE_PARAMS, 4000, 4000, 10, seed=16)
        state = amp_estimate(dataset)
        q_star = solve_q_star(FIGURE_PARAMS).q_star
        overlap = float(state.u_hat @ (math.sqrt(4000) * dataset.u)) / 4000
        assert abs(overlap - q_star) < 0.02

    def test_state_evolution_closure(self):
        """Self-overlap tracks the cross-overlap and 1 - overlap_v tracks
        (1 - eta) mmse_v(q*/sigma2) at moderate size."""
        from sslbayes.channels import mmse_v

        dataset, testset = generate(FIGURE_PARAMS, 4000, 4000, 10, seed=17)
        state = amp_estimate(dataset)
        q_star = solve_q_star(FIGURE_PARAMS).q_star
        cross = float(state.u_hat @ (math.sqrt(4000) * dataset.u)) / 4000
        self_ov = float(state.u_hat @ state.u_hat) / 4000
        assert abs(cross - self_ov) < 0.03
        assert abs(cross - q_star) < 0.03
        overlap_v = float(state.v_hat @ dataset.v) / 4000
        target = (1.0 - FIGURE_PARAMS.eta) * mmse_v(q_star / FIGURE_PARAMS.sigma2)
        assert abs((1.0 - overlap_v) - target) < 0.03

    def test_invalid_options_rejected(self):
        dataset, _ = generate(FIGURE_PARAMS, 100, 100, 10, seed=18)
        with pytest.raises(ValueError):
            amp_estimate(dataset, max_iter=0)
        with pytest.raises(ValueError):
            amp_estimate(dataset, tol=0.0)


@pytest.fixture(scope="module")
def figure_run():
    dataset, testset = generate(FIGURE_PARAMS, 4000, 4000, 20_000, seed=19)
    state = amp_estimate(dataset)
    q_star = solve_q_star(FIGURE_PARAMS).q_star
    return dataset, testset, state, q_star


class TestClassifyAndLlr:
    def test_risk_matches_theory(self, figure_run):
        dataset, testset, state, q_star = figure_run
        report = classify_new(state, dataset, testset, q_star=q_star)
        analytic = 1.0 - normal_cdf(math.sqrt(q_star / 0.9))
        assert abs(report.risk_hat - analytic) < 0.02
        assert report.risk_se == pytest.approx(
            math.sqrt(report.risk_hat * (1.0 - report.risk_hat) / 20_000), abs=1e-12
        )

    def test_oracle_substitution(self, figure_run):
        dataset, testset, state, _ = figure_run
        oracle_state = AmpState(
            u_hat=math.sqrt(dataset.d) * dataset.u,
            v_hat=state.v_hat,
            u_var=0.0,
            v_var=0.0,
            a_u=0.0,
            a_v=0.0,
            iteration=1,
            converged=True,
        )
        report = classify_new(oracle_state, dataset, testset)
        analytic = 1.0 - normal_cdf(1.0 / math.sqrt(0.9))
        assert abs(report.risk_hat - analytic) < 3.0 * report.risk_se

    def test_llr_statistics_match_gaussian_limit(self, figure_run):
        dataset, testset, state, q_star = figure_run
        mean_pos, mean_neg, var = llr_statistics(state, testset, q_star, 0.9)
        target = 2.0 * q_star / 0.9
        assert abs(mean_pos - target) < 0.05 * target
        assert abs(mean_neg + target) < 0.05 * target
        assert abs(var - 2.0 * target) < 0.10 * (2.0 * target)
        # +- symmetry within pooled error
        pooled_se = math.sqrt(var / 10_000)
        assert abs(mean_pos + mean_neg) < 3.0 * pooled_se

    def test_warns_on_unconverged_state(self, figure_run):
        dataset, testset, _, _ = figure_run
        state = amp_estimate(dataset, max_iter=1)
        assert not state.converged
        with pytest.warns(UserWarning):
            classify_new(state, dataset, testset)


class TestFiniteSizeBehavior:
    def test_empirical_risk_ordering(self, figure_run):
        """oracle <= message passing <= labeled-only supervised, within
        two pooled standard errors."""
        dataset, testset, state, q_star = figure_run
        r_oracle, se_o = oracle_classify(testset, dataset.u)
        report = classify_new(state, dataset, testset, q_star=q_star)
        r_sup, se_s = oracle_classify(testset, supervised_estimate(dataset))
        assert r_oracle <= report.risk_hat + 2.0 * math.hypot(se_o, report.risk_se)
        assert report.risk_hat <= r_sup + 2.0 * math.hypot(report.risk_se, se_s)

    def test_convergence_in_dimension(self):
        """|risk_hat - analytic| is nonincreasing in N up to one standard
        error of the gap difference.

        The per-seed risk fluctuates with the realized overlap
        (O(1/sqrt(N)), well above the binomial test noise), so each size
        is averaged over enough seeds that the seed-level standard
        error is meaningful.
        """
        from sslbayes.risks import bayes_risk_ssl

        analytic = bayes_risk_ssl(FIGURE_PARAMS)
        m = 10_000
        gaps, ses = [], []
        for size, n_seeds in ((500, 12), (1000, 10), (2000, 8), (4000, 8)):
            risks = []
            for seed in range(n_seeds):
                dataset, testset = generate(FIGURE_PARAMS, size, size, m, seed=seed)
                state = amp_estimate(dataset)
                risks.append(classify_new(state, dataset, testset).risk_hat)
            risks = np.asarray(risks)
            gaps.append(abs(float(risks.mean()) - analytic))
            ses.append(float(risks.std(ddof=1)) / math.sqrt(n_seeds))
        for i in range(1, len(gaps)):
            assert gaps[i] <= gaps[i - 1] + math.hypot(ses[i], ses[i - 1])


class TestSpectralEstimate:
    def test_near_noiseless(self):
        params = ModelParams(1.0, 1e-6, 0.0)
        dataset, testset = generate(params, 2000, 2000, 10_000, seed=20)
        w = spectral_estimate(dataset, iters=100)
        risk, _ = sign_fixed_risk(testset, w)
        assert risk <= 0.01

    def test_below_transition_uninformative(self):
        params = ModelParams(1.0, 1.5, 0.0)
        dataset, testset = generate(params, 4000, 4000, 20_000, seed=21)
        w = spectral_estimate(dataset, iters=300)
        risk, _ = sign_fixed_risk(testset, w)
        assert abs(risk - 0.5) < 0.03

    def test_above_transition_informative(self):
        params = ModelParams(1.0, 0.5, 0.0)
        dataset, testset = generate(params, 4000, 4000, 20_000, seed=22)
        w = spectral_estimate(dataset, iters=300)
        risk, _ = sign_fixed_risk(testset, w)
        assert risk < 0.45

    def test_label_alignment(self):
        dataset, testset = generate(ModelParams(1.0, 0.5, 0.5), 2000, 2000, 10_000, seed=23)
        w = spectral_estimate(dataset, iters=200)
        risk, _ = oracle_classify(testset, w)
        assert risk < 0.5  # aligned sign does at least as well as chance

    def test_deterministic(self):
        dataset, _ = generate(FIGURE_PARAMS, 500, 500, 10, seed=24)
        w1 = spectral_estimate(dataset, iters=50)
        w2 = spectral_estimate(dataset, iters=50)
        assert w1.tobytes() == w2.tobytes()
