"""Defaults and file/environment configuration for the command-line tools.

Precedence is flags over config file over built-in defaults. The file uses
the same whitespace key-value format as calibration data, found either via
an explicit path or the QTRIAGE_CONFIG environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Callable, Mapping

from .surface import HardwareProfile, parse_kv_lines

ENV_CONFIG_PATH = "QTRIAGE_CONFIG"


@dataclass(frozen=True)
class Config:
    epsilon: float = 1e-2
    t_threshold: int = 300
    p: float = 1e-3
    cycle_time: float = 1e-6
    target_logical_error: float = 0.02
    calibration: str | None = None
    seed: int = 0
    t_max: int = 16
    count_slope: float = 3.0
    count_offset: int = 4

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must be in (0, 1)")
        if self.t_threshold < 0 or self.t_max < 0:
            raise ValueError("t_threshold and t_max must be >= 0")
        if self.count_slope <= 0.0 or self.count_offset < 0:
            raise ValueError("count_slope must be > 0 and count_offset >= 0")
        self.profile()  # range-checks p, cycle_time, target_logical_error

    def profile(self) -> HardwareProfile:
        return HardwareProfile(self.p, self.cycle_time, self.target_logical_error)

    def override(self, **values: Any) -> "Config":
        """Copy with the non-None entries of values replacing fields."""
        changed = {k: v for k, v in values.items() if v is not None}
        return replace(self, **changed) if changed else self


_PARSERS: dict[str, Callable[[str], Any]] = {
    "epsilon": float,
    "t_threshold": int,
    "p": float,
    "cycle_time": float,
    "target_logical_error": float,
    "calibration": str,
    "seed": int,
    "t_max": int,
    "count_slope": float,
    "count_offset": int,
}

assert set(_PARSERS) == {f.name for f in fields(Config)}


def config_from_text(text: str) -> Config:
    values: dict[str, Any] = {}
    for row in parse_kv_lines(text):
        if len(row) != 2:
            raise ValueError(f"bad config line: {' '.join(row)}")
        key, raw = row
        if key not in _PARSERS:
            raise ValueError(f"unknown config key {key!r}")
        values[key] = _PARSERS[key](raw)
    return Config(**values)


def load_config(
    path: str | Path | None = None, env: Mapping[str, str] = os.environ
) -> Config:
    """Defaults, overlaid by the file at path or at $QTRIAGE_CONFIG if set."""
    chosen = path if path is not None else env.get(ENV_CONFIG_PATH)
    if chosen is None:
        return Config()
    return config_from_text(Path(chosen).read_text(encoding="utf-8"))
