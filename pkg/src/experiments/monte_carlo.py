"""Monte-Carlo RMSE and detection experiments.

For every SNR point and trial one snapshot set is generated from
``mix_seed(seed, snr_index, trial)`` and handed to every configured
estimator, so estimators are compared on common random numbers. Trials fan
out over a process pool when ``workers > 1``; results are sorted before
aggregation, so the tables do not depend on scheduling.
"""

import logging
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

import pandas as pd

from ..config.settings import DetectorConfig, ExperimentConfig
from ..estimation.cost import NumericalConsistencyError
from ..estimation.estimator import MaxComponentsError
from ..estimation.models import build_estimator
from ..estimation.search1d import MinimaShortageError
from ..numerics import mix_seed
from ..simulation.generator import generate_snapshots
from .results import RmseTable, TrialOutcome, detection_frame

logger = logging.getLogger(__name__)

# Failures that exclude a trial instead of aborting the run
TRIAL_ERRORS = (MinimaShortageError, MaxComponentsError, NumericalConsistencyError, ValueError)


class TrialMode(Enum):
    """What each trial runs."""

    KNOWN_K = "known_k"
    DETECT = "detect"


@dataclass(frozen=True)
class TrialTask:
    """Everything a worker needs to run one trial (picklable)."""

    config: ExperimentConfig
    mode: TrialMode
    snr_index: int
    snr_db: float
    trial: int


def run_trial(task: TrialTask) -> list[TrialOutcome]:
    """Generate one snapshot set and apply every configured estimator to it."""
    config = task.config
    scenario = replace(config.scenario, snr_db=task.snr_db)
    snapshots = generate_snapshots(scenario, config.array, mix_seed(config.seed, task.snr_index, task.trial))
    detector = None
    if task.mode is TrialMode.DETECT:
        detector = DetectorConfig.for_snapshots(snapshots, config.detector.p_fa, config.detector.clamp_snr_db)
    k = scenario.n_signals if task.mode is TrialMode.KNOWN_K else None

    outcomes = []
    for spec in config.estimators:
        estimator = build_estimator(spec, config.search, config.mvp)
        if k is None and not estimator.supports_detection:
            continue
        try:
            result = estimator.estimate(snapshots, k, detector)
            outcome = TrialOutcome(spec.kind.value, spec.order, task.snr_db, task.trial, tuple(result.gamma_hat))
        except TRIAL_ERRORS as e:
            logger.warning(
                f"{spec.label} failed at {task.snr_db} dB, trial {task.trial} "
                f"(seed {config.seed}, snr index {task.snr_index}): {e}"
            )
            outcome = TrialOutcome(spec.kind.value, spec.order, task.snr_db, task.trial, ok=False, error=str(e))
        outcomes.append(outcome)
    return outcomes


def run_trials(
    config: ExperimentConfig, mode: TrialMode, progress: Callable[[int, int], None] | None = None
) -> list[TrialOutcome]:
    """Run every (SNR, trial) task, in a process pool when ``config.workers > 1``.

    Args:
        config: Experiment configuration.
        mode: Known-K estimation or detection-estimation.
        progress: Optional callback receiving (completed, total) after each trial.

    Returns:
        All outcomes sorted by (estimator, order, snr_db, trial).
    """
    tasks = [
        TrialTask(config, mode, snr_index, snr_db, trial)
        for snr_index, snr_db in enumerate(config.snr_grid_db)
        for trial in range(config.trials)
    ]
    logger.info(f"Running {len(tasks)} trials ({mode.value}) on {config.workers} worker(s)")

    outcomes: list[TrialOutcome] = []
    if config.workers == 1:
        results = map(run_trial, tasks)
        for done, batch in enumerate(results, start=1):
            outcomes.extend(batch)
            if progress:
                progress(done, len(tasks))
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for done, batch in enumerate(pool.map(run_trial, tasks), start=1):
                outcomes.extend(batch)
                if progress:
                    progress(done, len(tasks))

    outcomes.sort(key=lambda o: (o.estimator, o.order, o.snr_db, o.trial))
    failed = sum(not o.ok for o in outcomes)
    if failed:
        logger.info(f"{failed} of {len(outcomes)} estimator runs failed and were excluded")
    return outcomes


def run_rmse_experiment(
    config: ExperimentConfig, progress: Callable[[int, int], None] | None = None
) -> RmseTable:
    """Known-K estimation for every estimator and SNR; per-component RMSE."""
    outcomes = run_trials(config, TrialMode.KNOWN_K, progress)
    return RmseTable.from_outcomes(outcomes, config.scenario.gamma_true, config.trials)


def run_detection_experiment(
    config: ExperimentConfig, progress: Callable[[int, int], None] | None = None
) -> pd.DataFrame:
    """Detection-estimation for every estimator that supports it; detection probability per SNR."""
    outcomes = run_trials(config, TrialMode.DETECT, progress)
    return detection_frame(outcomes, config.scenario.gamma_true, config.trials)
