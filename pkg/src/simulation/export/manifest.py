"""Run manifest: what ran, with which configuration and library versions, and how long it took."""

import json
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

import numpy as np
import pandas as pd
import scipy
import sklearn

MANIFEST_NAME = "manifest.json"


def library_versions() -> dict[str, str]:
    """Return the versions of the numeric stack."""
    return {
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
        "scikit-learn": sklearn.__version__,
    }


@dataclass
class RunManifest:
    """Record of one CLI run."""

    command: str
    config_text: str
    config_hash: str
    started_at: str = field(default_factory=lambda: datetime.now().isoformat())
    versions: dict[str, str] = field(default_factory=library_versions)
    timings: dict[str, float] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        """Time a block and store its wall-clock seconds under ``name``."""
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(time.perf_counter() - start, 6)

    def to_dict(self) -> dict:
        """Convert to a JSON-friendly dictionary."""
        return {
            "command": self.command,
            "started_at": self.started_at,
            "config_hash": self.config_hash,
            "config": self.config_text.splitlines(),
            "versions": self.versions,
            "timings": self.timings,
            "outputs": self.outputs,
        }

    def write(self, directory: Path) -> Path:
        """Write ``manifest.json`` into ``directory``."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / MANIFEST_NAME
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)
        return path
