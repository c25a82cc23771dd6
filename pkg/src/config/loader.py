"""Configuration loader for plain-text experiment files.

The format is one ``key = value`` per line. ``#`` starts a comment and blank
lines are ignored. Keys are ``section.field`` for the nested settings
(``array.n_sensors``, ``scenario.kind``, ...) and bare names for the
top-level harness fields (``trials``, ``seed``, ...). Sequences are comma
separated. Missing keys keep their reference defaults, so an empty file
yields ``ExperimentConfig.with_defaults()``.
"""

import dataclasses
import hashlib
import logging
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from ..domain.enums import ScenarioKind
from .settings import (
    ArrayConfig,
    DetectorConfig,
    EstimatorSpec,
    ExperimentConfig,
    MvpOptions,
    ScenarioConfig,
    SearchConfig,
)

logger = logging.getLogger(__name__)


class ConfigLoadError(Exception):
    """Raised when configuration loading fails."""

    def __init__(self, message: str, line: int | None = None, key: str | None = None) -> None:
        """Initialize with the offending line number and/or key when known."""
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line = line
        self.key = key


# Value parsers and formatters


def _parse_none(text: str) -> bool:
    return text.strip().lower() in ("none", "null", "")


def _parse_int(text: str) -> int:
    return int(text.strip())


def _parse_float(text: str) -> float:
    return float(text.strip())


def _parse_optional_float(text: str) -> float | None:
    return None if _parse_none(text) else _parse_float(text)


def _split(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _parse_float_tuple(text: str) -> tuple[float, ...]:
    return tuple(float(item) for item in _split(text))


def _parse_optional_float_tuple(text: str) -> tuple[float, ...] | None:
    return None if _parse_none(text) else _parse_float_tuple(text)


def _parse_complex_tuple(text: str) -> tuple[complex, ...]:
    return tuple(complex(item.replace(" ", "")) for item in _split(text))


def _parse_estimators(text: str) -> tuple[EstimatorSpec, ...]:
    return tuple(EstimatorSpec.parse(item) for item in _split(text))


def _format_float(value: float) -> str:
    return repr(float(value))


def _format_optional(fmt: Callable[[Any], str]) -> Callable[[Any], str]:
    return lambda value: "none" if value is None else fmt(value)


def _format_complex(value: complex) -> str:
    return repr(complex(value)).strip("()")


def _format_sequence(fmt: Callable[[Any], str]) -> Callable[[Any], str]:
    return lambda values: ", ".join(fmt(v) for v in values)


@dataclass(frozen=True)
class _Key:
    """Schema entry mapping a config key onto a dataclass field."""

    section: str | None
    name: str
    parse: Callable[[str], Any]
    format: Callable[[Any], str]

    @property
    def key(self) -> str:
        return f"{self.section}.{self.name}" if self.section else self.name


_SECTIONS: dict[str, type] = {
    "array": ArrayConfig,
    "scenario": ScenarioConfig,
    "search": SearchConfig,
    "detector": DetectorConfig,
    "mvp": MvpOptions,
}

_INT = (_parse_int, str)
_FLOAT = (_parse_float, _format_float)
_OPT_FLOAT = (_parse_optional_float, _format_optional(_format_float))

_SCHEMA: tuple[_Key, ...] = (
    _Key("array", "n_sensors", *_INT),
    _Key("array", "carrier_hz", *_FLOAT),
    _Key("array", "propagation_speed", *_FLOAT),
    _Key("array", "spacing", *_OPT_FLOAT),
    _Key("array", "positions", _parse_optional_float_tuple, _format_optional(_format_sequence(_format_float))),
    _Key("array", "pattern", str.strip, str),
    _Key("array", "n_fft", *_INT),
    _Key("array", "bandwidth_hz", *_FLOAT),
    _Key("array", "bt_product", *_FLOAT),
    _Key("array", "r1", *_INT),
    _Key("array", "r2", *_INT),
    _Key("scenario", "kind", ScenarioKind.from_value, lambda kind: kind.value.upper()),
    _Key("scenario", "amplitudes", _parse_complex_tuple, _format_sequence(_format_complex)),
    _Key("scenario", "delays", _parse_float_tuple, _format_sequence(_format_float)),
    _Key("scenario", "gamma_true", _parse_float_tuple, _format_sequence(_format_float)),
    _Key("scenario", "rolloff", *_FLOAT),
    _Key("scenario", "symbol_rate_hz", *_OPT_FLOAT),
    _Key("scenario", "snr_db", *_OPT_FLOAT),
    _Key("scenario", "noise_var", *_FLOAT),
    _Key("scenario", "seed", *_INT),
    _Key("search", "q_order", *_INT),
    _Key("search", "oversample_factor", *_INT),
    _Key("search", "gamma_min", *_FLOAT),
    _Key("search", "gamma_max", *_FLOAT),
    _Key("search", "newton_tol", *_FLOAT),
    _Key("search", "newton_max_iter", *_INT),
    _Key("detector", "p_fa", *_FLOAT),
    _Key("detector", "noise_var", *_FLOAT),
    _Key("detector", "clamp_snr_db", *_OPT_FLOAT),
    _Key("mvp", "rtol", *_FLOAT),
    _Key("mvp", "atol", *_FLOAT),
    _Key("mvp", "max_iter", *_INT),
    _Key("mvp", "max_halvings", *_INT),
    _Key("mvp", "min_step", *_FLOAT),
    _Key("mvp", "reg_scale", *_FLOAT),
    _Key(None, "estimators", _parse_estimators, _format_sequence(lambda spec: spec.label)),
    _Key(None, "snr_grid_db", _parse_float_tuple, _format_sequence(_format_float)),
    _Key(None, "trials", *_INT),
    _Key(None, "seed", *_INT),
    _Key(None, "workers", *_INT),
    _Key(None, "output_dir", lambda text: Path(text.strip()), lambda path: Path(path).as_posix()),
)

_BY_KEY: dict[str, _Key] = {entry.key: entry for entry in _SCHEMA}


def parse_config_text(text: str) -> ExperimentConfig:
    """Parse configuration text into an ExperimentConfig.

    Raises:
        ConfigLoadError: On malformed lines, unknown or duplicate keys, unparsable
            values (with line numbers) and invariant violations (with field names).
    """
    sections: dict[str, dict[str, Any]] = {name: {} for name in _SECTIONS}
    top: dict[str, Any] = {}
    seen: dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigLoadError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        entry = _BY_KEY.get(key)
        if entry is None:
            raise ConfigLoadError(f"unknown key {key!r}", line=lineno, key=key)
        if key in seen:
            raise ConfigLoadError(f"duplicate key {key!r} (first set on line {seen[key]})", line=lineno, key=key)
        seen[key] = lineno
        try:
            parsed = entry.parse(value.strip())
        except ValueError as e:
            raise ConfigLoadError(f"invalid value for {key!r}: {e}", line=lineno, key=key) from e
        if entry.section is None:
            top[entry.name] = parsed
        else:
            sections[entry.section][entry.name] = parsed

    built: dict[str, Any] = {}
    for name, cls in _SECTIONS.items():
        try:
            built[name] = cls(**sections[name])
        except ValueError as e:
            raise ConfigLoadError(f"invalid [{name}] settings: {e}", key=name) from e
    try:
        return ExperimentConfig(**built, **top)
    except ValueError as e:
        raise ConfigLoadError(f"invalid experiment settings: {e}") from e


def load_config(path: Path) -> ExperimentConfig:
    """Load an experiment configuration file.

    Args:
        path: Path to the ``key = value`` file.

    Returns:
        Configured ExperimentConfig instance.

    Raises:
        ConfigLoadError: If the file cannot be read or is invalid.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigLoadError(f"Configuration file not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigLoadError(f"Failed to read configuration file {path}: {e}") from e

    try:
        config = parse_config_text(text)
    except ConfigLoadError as e:
        raise ConfigLoadError(f"{path}: {e}", line=e.line, key=e.key) from e
    logger.info(f"Loaded configuration from {path}")
    return config


def _value_of(config: ExperimentConfig, entry: _Key) -> Any:
    owner = config if entry.section is None else getattr(config, entry.section)
    return getattr(owner, entry.name)


def dump_config(config: ExperimentConfig) -> str:
    """Return the canonical text of a configuration (every key, schema order)."""
    lines = []
    section = None
    for entry in _SCHEMA:
        if entry.section != section and lines:
            lines.append("")
        section = entry.section
        lines.append(f"{entry.key} = {entry.format(_value_of(config, entry))}")
    return "\n".join(lines) + "\n"


def config_hash(config: ExperimentConfig) -> str:
    """Return a short SHA-256 digest of the canonical configuration text."""
    return hashlib.sha256(dump_config(config).encode("utf-8")).hexdigest()[:16]


def override_config(config: ExperimentConfig, **overrides: Any) -> ExperimentConfig:
    """Apply top-level overrides (e.g. from CLI flags), skipping None values."""
    changes = {key: value for key, value in overrides.items() if value is not None}
    if not changes:
        return config
    unknown = set(changes) - {f.name for f in dataclasses.fields(ExperimentConfig)}
    if unknown:
        raise ConfigLoadError(f"unknown override(s): {', '.join(sorted(unknown))}")
    try:
        return dataclasses.replace(config, **changes)
    except ValueError as e:
        raise ConfigLoadError(f"invalid override: {e}") from e
