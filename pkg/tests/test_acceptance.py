"""Full-size checks on the default ten-sensor array.

These run the reference scenario end to end and take minutes; deselect
them with ``-m "not slow"``.
"""

from dataclasses import replace

import numpy as np
import pytest

from src.config import EstimatorSpec, MvpOptions
from src.domain import CorrKind, EstimatorKind, ScenarioKind
from src.estimation import (
    compress_bin,
    compress_cheb,
    cost_bin,
    cost_cheb,
    cost_exact,
    interp_error_sweep,
    mvp_refine,
)
from src.experiments import (
    min_order_for_threshold,
    order_sweep,
    run_detection_experiment,
    run_rmse_experiment,
    separation_sweep,
)
from src.simulation import generate_snapshots, measured_snr_db

from .conftest import REFERENCE_BANDWIDTH_HZ, random_gamma_pairs

pytestmark = pytest.mark.slow


class TestInterpolationOrders:
    """Projector interpolation error on the reference array."""

    def test_chebyshev_error_decreases_with_order(self, reference_config):
        """Test strictly decreasing max error for P = 2..7."""
        _, summary = order_sweep(
            reference_config.array, reference_config.scenario.gamma_true, CorrKind.CHEBYSHEV, range(2, 8)
        )
        assert np.all(np.diff(summary["max_error_db"]) < 0.0)

    def test_chebyshev_needs_far_fewer_matrices_than_bins(self, reference_config):
        """Test that bins need at least five times the Chebyshev order for -50 dB."""
        cfg, gamma = reference_config.array, reference_config.scenario.gamma_true
        p_cheb = min_order_for_threshold(cfg, gamma, CorrKind.CHEBYSHEV, threshold_db=-50.0)
        assert p_cheb is not None
        assert min_order_for_threshold(cfg, gamma, CorrKind.BIN, threshold_db=-50.0, max_order=5 * p_cheb - 1) is None

    def test_close_waves_do_not_raise_the_error(self, reference_config):
        """Test that the max error over small separations stays within 6 dB of its median."""
        frame = separation_sweep(reference_config.array, -0.5, np.geomspace(0.02, 0.1, 6), [5])
        errors = frame["max_error_db"].to_numpy()
        assert errors.max() - np.median(errors) <= 6.0


class TestCompressedCosts:
    """Compressed costs against the exact cost on full-size data."""

    def test_chebyshev_cost_matches_the_exact_cost(self, reference_config, rng):
        """Test P = 10 on 50 random direction pairs and 5 realizations."""
        corr_by_seed = {}
        for i, gamma in enumerate(random_gamma_pairs(rng, 50)):
            seed = i % 5
            if seed not in corr_by_seed:
                snapshots = generate_snapshots(reference_config.scenario, reference_config.array, seed=seed)
                corr_by_seed[seed] = (snapshots, compress_cheb(snapshots, 10))
            snapshots, corr = corr_by_seed[seed]
            exact = cost_exact(snapshots, gamma)
            assert abs(cost_cheb(corr, gamma) - exact) <= 1e-6 * exact

    def test_bin_cost_error_is_bounded_by_the_projector_error(self, reference_config):
        """Test P_b = 47 near the truth against the elementwise projector error."""
        cfg, scenario = reference_config.array, reference_config.scenario
        snapshots = generate_snapshots(scenario, cfg, seed=3)
        corr = compress_bin(snapshots, 47)
        for shift in (-0.01, 0.01):
            gamma = np.asarray(scenario.gamma_true) + shift
            # |x^H E x| <= M max|E_ij| |x|^2
            bound = cfg.n_sensors * interp_error_sweep(cfg, gamma, CorrKind.BIN, 47).max_error * snapshots.energy
            assert abs(cost_bin(corr, gamma) - cost_exact(snapshots, gamma)) <= bound


class TestMvpConvergence:
    """MVP refinement on the full-size array."""

    @pytest.mark.parametrize("bandwidth_hz", [None, REFERENCE_BANDWIDTH_HZ])
    def test_converges_from_a_nearby_start(self, default_config, bandwidth_hz):
        """Test noiseless recovery to 1e-6 within 20 iterations from gamma_true + 0.01."""
        cfg = default_config.array
        if bandwidth_hz is not None:
            cfg = replace(cfg, bandwidth_hz=bandwidth_hz)
        scenario = replace(default_config.scenario, snr_db=None)
        snapshots = generate_snapshots(scenario, cfg, seed=default_config.seed)
        corr = compress_bin(snapshots, cfg.n_indices, centered_on_indices=True)
        state = mvp_refine(corr, np.asarray(scenario.gamma_true) + 0.01, MvpOptions())
        np.testing.assert_allclose(np.sort(state.gamma), np.sort(scenario.gamma_true), atol=1e-6)
        assert state.alpha <= 20
        assert np.all(np.diff(state.costs) <= 0.0)


def test_snr_calibration_over_seeds(default_config):
    """Test the re-measured SNR at 20 dB for ten seeds."""
    scenario, cfg = default_config.scenario, default_config.array
    for seed in range(10):
        noisy = generate_snapshots(replace(scenario, snr_db=20.0), cfg, seed=seed)
        clean = generate_snapshots(replace(scenario, snr_db=None), cfg, seed=seed)
        assert measured_snr_db(noisy, clean) == pytest.approx(20.0, abs=0.2)


class TestEstimationExperiments:
    """Monte-Carlo checks of the estimators on the reference scenario."""

    def test_detection_power_at_high_snr(self, default_config):
        """Test that ChebML with P = 6 finds all three waves in at least 99 of 100 trials at 30 dB."""
        config = replace(
            default_config,
            estimators=(EstimatorSpec(EstimatorKind.CHEB_ML, 6),),
            snr_grid_db=(30.0,),
            trials=100,
        )
        row = run_detection_experiment(config).iloc[0]
        assert row["p_detect"] >= 0.99

    def test_chebyshev_matches_bins_with_far_fewer_matrices(self, reference_config):
        """Test that ChebML with P = 5 is within 0.5 dB of BinML with P_b = 60 at 30 dB."""
        config = replace(
            reference_config,
            estimators=(EstimatorSpec(EstimatorKind.CHEB_ML, 5), EstimatorSpec(EstimatorKind.BIN_ML, 60)),
            snr_grid_db=(30.0,),
            trials=100,
        )
        table = run_rmse_experiment(config)
        np.testing.assert_allclose(
            table.rmse_db("cheb_ml", 5, 30.0), table.rmse_db("bin_ml", 60, 30.0), atol=0.5
        )

    def test_chebyshev_order_saturates(self, reference_config):
        """Test that P = 6 and P = 10 give RMSE within 0.5 dB at 30 dB."""
        config = replace(
            reference_config,
            estimators=(EstimatorSpec(EstimatorKind.CHEB_ML, 6), EstimatorSpec(EstimatorKind.CHEB_ML, 10)),
            snr_grid_db=(30.0,),
            trials=20,
        )
        table = run_rmse_experiment(config)
        np.testing.assert_allclose(
            table.rmse_db("cheb_ml", 6, 30.0), table.rmse_db("cheb_ml", 10, 30.0), atol=0.5
        )

    def test_ic_music_breaks_down_on_correlated_waves(self, reference_config):
        """Test that IC-MUSIC is at least 10 dB worse than ChebML in the correlated scenario."""
        config = replace(
            reference_config,
            scenario=replace(reference_config.scenario, kind=ScenarioKind.CORRELATED),
            estimators=(EstimatorSpec(EstimatorKind.CHEB_ML, 6), EstimatorSpec(EstimatorKind.IC_MUSIC, 47)),
            snr_grid_db=(30.0,),
            trials=10,
        )
        table = run_rmse_experiment(config)
        music = table.frame[table.frame["estimator"] == "ic_music"].iloc[0]
        assert music["trials_used"] >= config.trials / 2
        cheb_db = table.rmse_db("cheb_ml", 6, 30.0)
        music_db = table.rmse_db("ic_music", 47, 30.0)
        assert np.max(music_db) >= np.max(cheb_db) + 10.0
