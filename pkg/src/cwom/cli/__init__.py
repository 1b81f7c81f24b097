"""Configuration parsing, scenario presets, and artifact output."""

from .config import (SCENARIOS, ConfigError, ScenarioConfig, load_config,
                     parse_config_text, serialize_config)
from .output import read_snapshot, write_csv, write_json_report, write_snapshot
from .scenarios import DEFAULTS, resolve_config, run_scenario

__all__ = [
    "SCENARIOS", "ConfigError", "ScenarioConfig", "load_config",
    "parse_config_text", "serialize_config", "read_snapshot", "write_csv",
    "write_json_report", "write_snapshot", "DEFAULTS", "resolve_config",
    "run_scenario",
]
