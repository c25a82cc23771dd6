"""Snapshot-set fixtures: CSV or NPZ matrix plus a JSON metadata sidecar.

CSV layout: one column per frequency index r1..r2 and two rows per sensor
(``m<i>_re``, ``m<i>_im``), preceded by a ``# config_hash=...`` comment row.
"""

import json
from pathlib import Path

import numpy as np
import pandas as pd

from ...config.settings import ArrayConfig
from ...domain.entities import SnapshotSet
from .enums import OutputFormat


def metadata_path(path: Path) -> Path:
    """Return the sidecar path of a fixture file."""
    path = Path(path)
    return path.with_name(f"{path.stem}_metadata.json")


def write_snapshots(
    snapshots: SnapshotSet, path: Path, output_format: OutputFormat | str = OutputFormat.CSV, config_hash: str = ""
) -> Path:
    """Write a snapshot set and its metadata sidecar.

    Returns:
        Path to the matrix file (suffix set from the format).
    """
    output_format = OutputFormat(output_format) if isinstance(output_format, str) else output_format
    if output_format is OutputFormat.JSON:
        raise ValueError("Snapshot fixtures are written as csv or npz")
    path = Path(path).with_suffix(f".{output_format.value}")
    path.parent.mkdir(parents=True, exist_ok=True)
    cfg = snapshots.cfg

    if output_format is OutputFormat.NPZ:
        np.savez(path, data=snapshots.data, indices=cfg.indices)
    else:
        rows = np.empty((2 * snapshots.n_sensors, snapshots.n_indices))
        rows[0::2] = snapshots.data.real
        rows[1::2] = snapshots.data.imag
        labels = [f"m{m}_{part}" for m in range(snapshots.n_sensors) for part in ("re", "im")]
        frame = pd.DataFrame(rows, columns=[str(r) for r in cfg.indices])
        frame.insert(0, "row", labels)
        with open(path, "w", newline="") as f:
            f.write(f"# config_hash={config_hash}\n")
            frame.to_csv(f, index=False, float_format="%.17g")

    metadata = {
        "format": output_format.value,
        "config_hash": config_hash,
        "n_sensors": snapshots.n_sensors,
        "r1": cfg.r1,
        "r2": cfg.r2,
        "noise_var": snapshots.noise_var,
        "signal_power": snapshots.signal_power,
        "gamma_true": list(snapshots.gamma_true),
    }
    with open(metadata_path(path), "w") as f:
        json.dump(metadata, f, indent=2)
    return path


def read_snapshots(path: Path, cfg: ArrayConfig) -> SnapshotSet:
    """Read a fixture written by ``write_snapshots``.

    Raises:
        FileNotFoundError: If the matrix file is missing.
        ValueError: If the fixture does not match the array configuration.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Snapshot fixture not found: {path}")

    if path.suffix == f".{OutputFormat.NPZ.value}":
        with np.load(path) as archive:
            data = archive["data"]
            indices = archive["indices"]
    else:
        frame = pd.read_csv(path, comment="#", float_precision="round_trip")
        values = frame.drop(columns="row").to_numpy(dtype=float)
        data = values[0::2] + 1j * values[1::2]
        indices = np.array([int(c) for c in frame.columns if c != "row"])
    if not np.array_equal(indices, cfg.indices):
        raise ValueError(f"Fixture {path} covers indices [{indices[0]}, {indices[-1]}], config expects [{cfg.r1}, {cfg.r2}]")

    meta: dict = {}
    sidecar = metadata_path(path)
    if sidecar.exists():
        meta = json.loads(sidecar.read_text())
    return SnapshotSet(
        data,
        cfg,
        noise_var=float(meta.get("noise_var", 0.0)),
        signal_power=float(meta.get("signal_power", 0.0)),
        gamma_true=tuple(meta.get("gamma_true", ())),
    )
