"""Layered configuration: defaults, desk scale, JSON file, command-line overrides."""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Tuple

from src.config.system_defaults import AMBIGUOUS_FIELDS, DESK_OVERRIDES, FULL_DEFAULTS
from src.models.schema.config_schema import SystemConfig
from src.utils.error_handler import ConfigurationError

_INTEGER_FIELDS = ("n_antennas", "n_rf")


def _canonical_key(key: str) -> str:
    """Map ``x_lin`` onto the field name ``x``."""
    if key.endswith("_lin") and key[: -len("_lin")] in AMBIGUOUS_FIELDS:
        return key[: -len("_lin")]
    return key


def _known_keys() -> set:
    keys = set(SystemConfig.model_fields)
    keys.update(f"{name}_db" for name in AMBIGUOUS_FIELDS)
    return keys


def _siblings(key: str) -> Tuple[str, ...]:
    base = key[: -len("_db")] if key.endswith("_db") else key
    if base in AMBIGUOUS_FIELDS:
        return (base, f"{base}_db")
    return (key,)


def merge_inputs(base: Dict[str, Any], layer: Dict[str, Any]) -> Dict[str, Any]:
    """Apply ``layer`` on top of ``base``.

    Setting either spelling of a dB-capable field removes the other one from
    the lower layer, so the upper layer always wins.
    """
    merged = dict(base)
    for raw_key, value in layer.items():
        key = _canonical_key(raw_key)
        if key not in _known_keys():
            raise ConfigurationError(f"unknown configuration key '{raw_key}'")
        for sibling in _siblings(key):
            merged.pop(sibling, None)
        merged[key] = value
    return merged


def load_config_file(path: Path) -> Dict[str, Any]:
    """Read a JSON object of SystemConfig inputs."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read config '{path}': {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigurationError(f"config '{path}' must hold a JSON object")
    return merge_inputs({}, data)


def parse_override(text: str) -> Tuple[str, Any]:
    """Parse one ``key=value`` override.

    Fields that have both a linear and a dB spelling must carry a ``_db`` or
    ``_lin`` suffix.
    """
    key, sep, raw = text.partition("=")
    key, raw = key.strip(), raw.strip()
    if not sep or not key or not raw:
        raise ConfigurationError(f"override '{text}' is not key=value")
    if key in AMBIGUOUS_FIELDS:
        raise ConfigurationError(
            f"override '{key}' is ambiguous, use {key}_db or {key}_lin"
        )
    canonical = _canonical_key(key)
    if canonical not in _known_keys():
        raise ConfigurationError(f"unknown configuration key '{key}'")
    try:
        value = int(raw) if canonical in _INTEGER_FIELDS else float(raw)
    except ValueError:
        raise ConfigurationError(f"override '{text}' has a non-numeric value") from None
    return key, value


def parse_overrides(items: Iterable[str]) -> Dict[str, Any]:
    layer: Dict[str, Any] = {}
    for item in items:
        key, value = parse_override(item)
        layer = merge_inputs(layer, {key: value})
    return layer


def effective_inputs(
    config_path: Optional[Path] = None,
    overrides: Optional[Dict[str, Any]] = None,
    full_scale: bool = False,
) -> Dict[str, Any]:
    """Raw inputs after every layer; later layers take precedence."""
    inputs = dict(FULL_DEFAULTS)
    if not full_scale:
        inputs = merge_inputs(inputs, DESK_OVERRIDES)
    if config_path is not None:
        inputs = merge_inputs(inputs, load_config_file(config_path))
    if overrides:
        inputs = merge_inputs(inputs, overrides)
    return inputs


def build_config(inputs: Dict[str, Any]) -> SystemConfig:
    return SystemConfig.from_inputs(inputs)
