"""
config.py
Layered settings: packaged defaults.yaml → user YAML file → CLI flags.

Only the CLI reads Settings; library functions take explicit tol/depth
arguments so they stay pure.
"""
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

from .errors import InputError

DEFAULTS_FILE = Path(__file__).parent / "data" / "defaults.yaml"
ENV_VAR       = "LOCC_OPS_CONFIG"

FORMATS    = ("json", "text")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass(frozen=True)
class Settings:
    tolerance:                float = 1e-9
    depth_limit:              int   = 6
    max_candidates_per_party: int   = 64
    generator_dim:            int   = 5
    generator_max_retries:    int   = 200
    generator_seed:           int   = 0
    output_format:            str   = "json"
    float_digits:             int   = 17
    log_level:                str   = "WARNING"


def _read_yaml(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f) or {}
    except FileNotFoundError:
        raise InputError(f"config file not found: {path}")
    except yaml.YAMLError as e:
        raise InputError(f"config file is not valid YAML: {e}", location=str(path))
    if not isinstance(data, dict):
        raise InputError("config file must contain a mapping", location=str(path))
    return data


def _merge(base: Dict[str, Any], extra: Mapping[str, Any], where: str = "") -> Dict[str, Any]:
    """Deep-merge extra into base; keys absent from base are rejected."""
    merged = dict(base)
    for key, value in extra.items():
        path = f"{where}.{key}" if where else str(key)
        if key not in base:
            raise InputError(f"unknown configuration key '{path}'")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise InputError(f"configuration key '{path}' must be a mapping")
            merged[key] = _merge(base[key], value, path)
        else:
            merged[key] = value
    return merged


def _to_settings(raw: Dict[str, Any]) -> Settings:
    try:
        settings = Settings(
            tolerance                = float(raw["tolerance"]),
            depth_limit              = int(raw["synthesis"]["depth_limit"]),
            max_candidates_per_party = int(raw["synthesis"]["max_candidates_per_party"]),
            generator_dim            = int(raw["generator"]["dim"]),
            generator_max_retries    = int(raw["generator"]["max_retries"]),
            generator_seed           = int(raw["generator"]["seed"]),
            output_format            = str(raw["output"]["format"]),
            float_digits             = int(raw["output"]["float_digits"]),
            log_level                = str(raw["logging"]["level"]).upper(),
        )
    except (TypeError, ValueError) as e:
        raise InputError(f"invalid configuration value: {e}")

    if not settings.tolerance > 0:
        raise InputError("tolerance must be positive", location="tolerance")
    if settings.depth_limit < 1:
        raise InputError("depth_limit must be at least 1", location="synthesis.depth_limit")
    if settings.generator_dim < 1 or settings.generator_max_retries < 1:
        raise InputError("generator dim and max_retries must be positive", location="generator")
    if settings.output_format not in FORMATS:
        raise InputError(f"output format must be one of {FORMATS}", location="output.format")
    if settings.log_level not in LOG_LEVELS:
        raise InputError(f"log level must be one of {LOG_LEVELS}", location="logging.level")
    return settings


def load_config(path: Optional[str] = None, overrides: Optional[Mapping[str, Any]] = None) -> Settings:
    """
    Build Settings from the packaged defaults, an optional user file and
    flag overrides. Overrides use the nested YAML layout, e.g.
    {"synthesis": {"depth_limit": 4}}; None values are ignored.
    """
    raw = _read_yaml(DEFAULTS_FILE)

    user_file = path or os.environ.get(ENV_VAR)
    if user_file:
        raw = _merge(raw, _read_yaml(Path(user_file)))

    if overrides:
        raw = _merge(raw, _drop_none(overrides))

    return _to_settings(raw)


def _drop_none(d: Mapping[str, Any]) -> Dict[str, Any]:
    out = {}
    for k, v in d.items():
        if isinstance(v, Mapping):
            inner = _drop_none(v)
            if inner:
                out[k] = inner
        elif v is not None:
            out[k] = v
    return out
