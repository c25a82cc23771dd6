"""Tests for MVP refinement, the detection test and the estimator classes."""

import json
from dataclasses import replace

import numpy as np
import pytest
from scipy import stats

from src.config import DetectorConfig, EstimatorSpec, MvpOptions, ScenarioConfig
from src.domain import EstimatorKind, StepKind
from src.estimation import (
    BeamformerEstimator,
    BinMLEstimator,
    ChebMLEstimator,
    ICMusicEstimator,
    MaxComponentsError,
    beamformer_grid,
    build_estimator,
    compress_bin,
    compress_cheb,
    corr_cost,
    detect_step,
    detection_threshold,
    estimate_known_k,
    music_pseudospectrum_grid,
    mvp_gradient_hessian,
    mvp_refine,
    run_detection_estimation,
)
from src.estimation.models.spectral import _SpectralEstimator
from src.simulation import generate_snapshots


@pytest.fixture
def exact_corr(noiseless_snapshots, small_array):
    """Return one centered bin per index, which makes the compressed cost exact."""
    return compress_bin(noiseless_snapshots, small_array.n_indices, centered_on_indices=True)


class TestGradientAndHessian:
    """Tests for mvp_gradient_hessian."""

    def test_gradient_matches_central_differences(self, noisy_snapshots):
        """Test g against finite differences of the compressed cost."""
        corr = compress_cheb(noisy_snapshots, 8)
        gamma = np.array([-0.4, 0.35])
        grad, _ = mvp_gradient_hessian(corr, gamma)
        h = 1e-6
        numeric = np.empty(2)
        for k in range(2):
            step = np.zeros(2)
            step[k] = h
            numeric[k] = (corr_cost(corr, gamma + step) - corr_cost(corr, gamma - step)) / (2 * h)
        np.testing.assert_allclose(grad, numeric, rtol=1e-5, atol=1e-7 * corr_cost(corr, gamma))

    def test_hessian_is_symmetric_positive_semidefinite_for_bins(self, noisy_snapshots):
        """Test the Gauss-Newton matrix on positive semidefinite bin covariances."""
        _, hess = mvp_gradient_hessian(compress_bin(noisy_snapshots, 8), [-0.4, 0.35])
        np.testing.assert_allclose(hess, hess.T)
        eigenvalues = np.linalg.eigvalsh(hess)
        assert eigenvalues.min() >= -1e-10 * abs(eigenvalues).max()

    def test_gradient_vanishes_at_the_truth(self, exact_corr, two_waves, noiseless_snapshots):
        """Test stationarity of the exact cost at the true directions of noiseless data."""
        grad, _ = mvp_gradient_hessian(exact_corr, two_waves.gamma_true)
        assert np.max(np.abs(grad)) <= 1e-9 * noiseless_snapshots.energy

    def test_empty_vector(self, exact_corr):
        """Test K = 0."""
        grad, hess = mvp_gradient_hessian(exact_corr, [])
        assert grad.shape == (0,)
        assert hess.shape == (0, 0)


class TestMvpRefine:
    """Tests for mvp_refine."""

    def test_recovers_the_truth_from_a_nearby_start(self, exact_corr, two_waves):
        """Test convergence with nonincreasing costs from gamma_true + 0.01."""
        start = np.array(two_waves.gamma_true) + 0.01
        state = mvp_refine(exact_corr, start, MvpOptions())
        np.testing.assert_allclose(np.sort(state.gamma), two_waves.gamma_true, atol=1e-6)
        assert state.alpha <= 20
        assert state.converged
        assert all(later <= earlier for earlier, later in zip(state.costs, state.costs[1:]))
        assert state.cost == state.costs[-1]

    def test_zero_iterations_keep_the_start(self, exact_corr):
        """Test max_iter = 0."""
        state = mvp_refine(exact_corr, [-0.3, 0.2], MvpOptions(max_iter=0))
        np.testing.assert_allclose(state.gamma, [-0.3, 0.2])
        assert state.alpha == 0

    def test_empty_start(self, exact_corr):
        """Test that K = 0 returns the total trace as cost."""
        state = mvp_refine(exact_corr, [], MvpOptions())
        assert state.k == 0
        assert state.cost == pytest.approx(exact_corr.total_trace)

    def test_coincident_start_raises(self, exact_corr):
        """Test the distinctness precondition."""
        with pytest.raises(ValueError, match="distinct"):
            mvp_refine(exact_corr, [0.1, 0.1], MvpOptions())


class TestDetection:
    """Tests for the threshold and the detection step."""

    def test_threshold_formula(self):
        """Test A = (sigma^2 / 2) F^-1(1 - P_FA; 2 (M - K) n)."""
        det = DetectorConfig(p_fa=0.01, noise_var=2.0)
        assert detection_threshold(det, 4, 1, 51) == pytest.approx(stats.chi2.ppf(0.99, 2 * 3 * 51), rel=1e-10)

    def test_threshold_argument_checks(self):
        """Test K and n_idx bounds."""
        det = DetectorConfig()
        with pytest.raises(ValueError):
            detection_threshold(det, 4, 4, 51)
        with pytest.raises(ValueError):
            detection_threshold(det, 4, 0, 0)

    def test_false_alarm_rate_on_noise(self, small_array):
        """Test that noise alone exceeds the K = 0 threshold at about the nominal rate."""
        noise_only = ScenarioConfig(amplitudes=(), delays=(), gamma_true=(), noise_var=1.0)
        det = DetectorConfig(p_fa=0.01, noise_var=1.0)
        threshold = detection_threshold(det, small_array.n_sensors, 0, small_array.n_indices)
        alarms = 0
        for trial in range(1000):
            corr = compress_cheb(generate_snapshots(noise_only, small_array, seed=trial), 6)
            alarms += corr_cost(corr, []) >= threshold
        assert 3 <= alarms <= 30

    def test_step_stops_below_threshold(self, noisy_snapshots, two_waves, search):
        """Test that the true model order passes the test."""
        corr = compress_cheb(noisy_snapshots, 10)
        decision = detect_step(corr, two_waves.gamma_true, DetectorConfig.for_snapshots(noisy_snapshots, p_fa=1e-6), search)
        assert decision.stop
        assert decision.cost < decision.threshold

    def test_step_proposes_a_component(self, noisy_snapshots, search):
        """Test that signal energy triggers a candidate direction."""
        corr = compress_cheb(noisy_snapshots, 10)
        decision = detect_step(corr, [], DetectorConfig.for_snapshots(noisy_snapshots), search)
        assert not decision.stop
        assert -1.0 <= decision.gamma_new <= 1.0

    def test_step_at_the_model_order_limit(self, noisy_snapshots, search):
        """Test K = M - 1 with the test exceeded: no candidate."""
        corr = compress_cheb(noisy_snapshots, 10)
        det = DetectorConfig(noise_var=1e-12 * noisy_snapshots.noise_var)
        decision = detect_step(corr, [-0.6, 0.0, 0.6], det, search)
        assert not decision.stop
        assert decision.gamma_new is None
        assert decision.reason == "model order limit"


class TestDetectionEstimation:
    """Tests for run_detection_estimation and estimate_known_k."""

    def test_detects_two_waves(self, small_array, two_waves, search):
        """Test the detected order at 20 dB over several realizations."""
        hits = 0
        for seed in range(20):
            snapshots = generate_snapshots(replace(two_waves, snr_db=20.0), small_array, seed=seed)
            result = run_detection_estimation(
                compress_cheb(snapshots, 10), DetectorConfig.for_snapshots(snapshots), search, MvpOptions()
            )
            hits += result.k_hat == 2
        assert hits >= 18

    def test_trace_alternates_detect_and_refine(self, noisy_snapshots, search):
        """Test the trace layout of a detection run."""
        result = run_detection_estimation(
            compress_cheb(noisy_snapshots, 10), DetectorConfig.for_snapshots(noisy_snapshots), search, MvpOptions()
        )
        steps = [entry.step for entry in result.trace]
        assert steps[0] is StepKind.DETECT
        assert steps[-1] is StepKind.DETECT
        assert result.trace[-1].exceeded is False
        assert steps.count(StepKind.REFINE) == result.k_hat

    def test_too_many_waves_raise(self, small_array, search):
        """Test that four waves on four sensors exhaust the model order."""
        scenario = ScenarioConfig(
            amplitudes=(1.0, 0.9j, -0.8, 0.7),
            delays=(0.0, 3.0, 7.0, 11.0),
            gamma_true=(-0.7, -0.2, 0.3, 0.75),
            snr_db=30.0,
        )
        snapshots = generate_snapshots(scenario, small_array, seed=9)
        with pytest.raises(MaxComponentsError) as info:
            run_detection_estimation(
                compress_cheb(snapshots, 10), DetectorConfig.for_snapshots(snapshots), search, MvpOptions()
            )
        assert info.value.partial.k_hat == small_array.n_sensors - 1

    def test_known_k_recovers_noiseless_directions(self, noiseless_snapshots, two_waves, search):
        """Test P = 12 Chebyshev DML on noiseless data."""
        result = estimate_known_k(compress_cheb(noiseless_snapshots, 12), 2, search, MvpOptions())
        np.testing.assert_allclose(result.gamma_hat, two_waves.gamma_true, atol=1e-6)

    def test_known_k_bounds(self, exact_corr, search):
        """Test K = 0 and K = M."""
        assert estimate_known_k(exact_corr, 0, search, MvpOptions()).k_hat == 0
        with pytest.raises(ValueError):
            estimate_known_k(exact_corr, 4, search, MvpOptions())


class TestEstimators:
    """Tests for the estimator classes and the factory."""

    @pytest.mark.parametrize(
        ("kind", "cls"),
        [
            (EstimatorKind.CHEB_ML, ChebMLEstimator),
            (EstimatorKind.BIN_ML, BinMLEstimator),
            (EstimatorKind.IC_MUSIC, ICMusicEstimator),
            (EstimatorKind.BEAMFORMER, BeamformerEstimator),
        ],
    )
    def test_factory(self, kind, cls):
        """Test that every kind builds its class with the requested order."""
        estimator = build_estimator(EstimatorSpec(kind, 7))
        assert isinstance(estimator, cls)
        assert estimator.label == f"{kind.value}:7"

    def test_cheb_ml_labels_its_result(self, noiseless_snapshots, two_waves):
        """Test estimate with a known K."""
        result = ChebMLEstimator(12).estimate(noiseless_snapshots, k=2)
        assert result.estimator == "cheb_ml:12"
        np.testing.assert_allclose(result.gamma_hat, two_waves.gamma_true, atol=1e-6)

    def test_full_resolution_bins_match_chebyshev(self, noisy_snapshots, small_array):
        """Test that exact bins and a high Chebyshev order agree on noisy data."""
        exact = BinMLEstimator(small_array.n_indices, centered_on_indices=True).estimate(noisy_snapshots, k=2)
        cheb = ChebMLEstimator(14).estimate(noisy_snapshots, k=2)
        np.testing.assert_allclose(cheb.gamma_hat, exact.gamma_hat, atol=1e-5)

    @pytest.mark.parametrize("cls", [ICMusicEstimator, BeamformerEstimator])
    def test_spectral_estimators_need_k(self, cls, noisy_snapshots):
        """Test that detection is refused without a test statistic."""
        estimator = cls(10)
        assert not estimator.supports_detection
        with pytest.raises(ValueError, match="known number"):
            estimator.estimate(noisy_snapshots, detector=DetectorConfig())

    def test_detection_needs_a_detector(self, noisy_snapshots):
        """Test the missing-detector check."""
        with pytest.raises(ValueError, match="DetectorConfig"):
            ChebMLEstimator(6).estimate(noisy_snapshots)

    def test_ic_music_finds_two_separated_waves(self, noisy_snapshots, two_waves):
        """Test IC-MUSIC with K = 2 at 10 dB."""
        result = ICMusicEstimator(10).estimate(noisy_snapshots, k=2)
        np.testing.assert_allclose(result.gamma_hat, two_waves.gamma_true, atol=0.05)

    @pytest.mark.parametrize("kind", list(EstimatorKind))
    def test_compression_matches_the_declared_kind(self, kind, noisy_snapshots):
        """Test that corr_kind names the compression each estimator actually builds."""
        corr = build_estimator(EstimatorSpec(kind, 6)).compress(noisy_snapshots)
        assert corr.kind is kind.corr_kind

    def test_spectral_subclass_must_provide_a_spectrum(self):
        """Test that a spectral estimator without a search function cannot be built."""

        class NoSpectrum(_SpectralEstimator):
            @property
            def name(self) -> str:
                return "none"

            def compress(self, snapshots):
                return compress_bin(snapshots, self.order)

        with pytest.raises(TypeError, match="_spectrum"):
            NoSpectrum(4)

    def test_pseudo_spectrum_of_each_estimator(self, noisy_snapshots, search):
        """Test that DML returns the beamformer and IC-MUSIC its own pseudo-spectrum."""
        cheb = ChebMLEstimator(10, search)
        corr = cheb.compress(noisy_snapshots)
        np.testing.assert_allclose(cheb.pseudo_spectrum(corr, 2).values, beamformer_grid(corr, search).values)
        music = ICMusicEstimator(10, search)
        bins = music.compress(noisy_snapshots)
        np.testing.assert_allclose(
            music.pseudo_spectrum(bins, 2).values, music_pseudospectrum_grid(bins, 2, search).values
        )

    def test_result_survives_json(self, noisy_snapshots):
        """Test that a detection run serializes with plain JSON types."""
        detector = DetectorConfig.for_snapshots(noisy_snapshots)
        result = ChebMLEstimator(10).estimate(noisy_snapshots, detector=detector)
        payload = result.to_dict()
        assert json.loads(json.dumps(payload)) == payload
        assert payload["estimator"] == "cheb_ml:10"
        assert payload["k_hat"] == len(payload["gamma_hat"]) == result.k_hat
        detect = [entry for entry in payload["trace"] if entry["step"] == StepKind.DETECT.value]
        assert all(isinstance(entry["exceeded"], bool) for entry in detect)
        assert detect[-1]["exceeded"] is False
