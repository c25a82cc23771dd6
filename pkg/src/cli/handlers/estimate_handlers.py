"""Single-realization estimation handler: estimates, traces and pseudo-spectra of one snapshot set."""

import argparse
import logging
from dataclasses import replace

from src.cli.utils import DisplayHelper
from src.config import DetectorConfig
from src.domain import CorrKind, CorrSet, EstimationResult
from src.estimation import MaxComponentsError, MinimaShortageError, build_estimator, spectrum_frame
from src.simulation import generate_snapshots

from .config_handlers import RunContext, load_run_config

logger = logging.getLogger(__name__)


def handle_estimate(args: argparse.Namespace) -> int:
    """Run every configured estimator on one generated snapshot set; write ``estimates.json``.

    DML estimators run detection-estimation unless ``--known-k`` is given;
    spectral estimators always use the scenario's K. Estimators that share
    a compression kind and order share the compressed matrices.
    """
    config = load_run_config(args)
    if args.snr is not None:
        config = replace(config, scenario=replace(config.scenario, snr_db=args.snr))
    run = RunContext.start("estimate", config, args.metadata, args.format)
    k_true = config.scenario.n_signals

    with run.manifest.stage("generate"):
        snapshots = generate_snapshots(config.scenario, config.array, config.seed)
    detector = None
    if not args.known_k:
        detector = DetectorConfig.for_snapshots(snapshots, config.detector.p_fa, config.detector.clamp_snr_db)

    compressions: dict[tuple[CorrKind, int], CorrSet] = {}
    records = []
    rows = []
    with run.manifest.stage("estimate"):
        for spec in config.estimators:
            estimator = build_estimator(spec, config.search, config.mvp)
            key = (spec.kind.corr_kind, spec.order)
            if key not in compressions:
                compressions[key] = estimator.compress(snapshots)
            corr = compressions[key]
            k = None if detector is not None and estimator.supports_detection else k_true

            try:
                result = estimator.estimate_from_corr(corr, k, detector)
            except MaxComponentsError as e:
                logger.warning(f"{spec.label}: {e}")
                result = e.partial
            except MinimaShortageError as e:
                logger.warning(f"{spec.label}: {e}")
                result = EstimationResult([g for g, _ in e.found], converged=False)
            result.estimator = spec.label
            records.append(result.to_dict())
            rows.append(
                {
                    "Estimator": spec.label,
                    "Mode": "known K" if k is not None else "detection",
                    "K_hat": str(result.k_hat),
                    "Gamma": ", ".join(f"{g:.6f}" for g in result.gamma_hat),
                }
            )

            if args.spectrum:
                ps = estimator.pseudo_spectrum(corr, max(k_true, 1))
                run.exporter.write_table(f"spectrum_{spec.kind.value}_{spec.order}", spectrum_frame(ps, config.search))

    run.exporter.write_records(
        "estimates",
        records,
        {"gamma_true": list(config.scenario.gamma_true), "snr_db": config.scenario.snr_db, "seed": config.seed},
    )
    for row in rows:
        DisplayHelper.print_table(DisplayHelper.create_summary_table(row.pop("Estimator"), row))
    run.finish()
    return 0
