"""Engine configuration: defaults, key=value files, environment overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .core import ConfigurationError, MAX_DIM, MIN_DIM
from .evaluate import ScoreTable


@dataclass
class EngineConfig:
    rows: int = 15
    cols: int = 15
    branch: int = 40
    max_depth: int = 4
    time_ms: int = 0  # 0 = no clock; depth/node limits apply
    node_budget: int = 0
    tt_entries: int = 1 << 18
    solver: str = "off"  # off | bmm | tss: opt-in root solver
    solver_threats: str = "fours"  # fours | fours+threes
    taxonomy: str = "fine"  # fine | coarse (merged double/weak scores)
    forced_extension: bool = False  # optional: forced replies keep depth
    check_actual_analysis: bool = False  # debug: cross-check the slow variant
    score_file: str = ""
    port: int = 8731

    def __post_init__(self) -> None:
        if not (MIN_DIM <= self.rows <= MAX_DIM and MIN_DIM <= self.cols <= MAX_DIM):
            raise ConfigurationError(f"rows/cols outside [{MIN_DIM}, {MAX_DIM}]")
        if self.branch <= 0:
            raise ConfigurationError("branch must be positive")
        if self.max_depth <= 0 and self.time_ms <= 0 and self.node_budget <= 0:
            raise ConfigurationError("one of max_depth/time_ms/node_budget must be set")
        if self.tt_entries & (self.tt_entries - 1):
            raise ConfigurationError("tt_entries must be a power of two")
        if self.solver not in ("off", "bmm", "tss"):
            raise ConfigurationError(f"solver must be off/bmm/tss, got {self.solver!r}")
        if self.solver_threats not in ("fours", "fours+threes"):
            raise ConfigurationError(
                f"solver_threats must be fours or fours+threes, got {self.solver_threats!r}"
            )
        if self.taxonomy not in ("fine", "coarse"):
            raise ConfigurationError(f"taxonomy must be fine or coarse, got {self.taxonomy!r}")

    def score_table(self) -> ScoreTable:
        table = ScoreTable.load(self.score_file) if self.score_file else ScoreTable()
        return table.coarse() if self.taxonomy == "coarse" else table


_INT_KEYS = {
    "rows", "cols", "branch", "max_depth", "time_ms",
    "node_budget", "tt_entries", "port",
}
_STR_KEYS = {"solver", "solver_threats", "taxonomy", "score_file"}
_BOOL_KEYS = {"forced_extension", "check_actual_analysis"}


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> EngineConfig:
    """Config file plus env (QUINTET_CONFIG, QUINTET_PORT) plus CLI overrides."""
    kv: dict[str, object] = {}
    path = path or os.environ.get("QUINTET_CONFIG")
    if path:
        for raw in Path(path).read_text().splitlines():
            ln = raw.strip()
            if not ln or ln.startswith("#"):
                continue
            if "=" not in ln:
                raise ConfigurationError(f"bad config line: {ln!r}")
            key, value = (part.strip() for part in ln.split("=", 1))
            if key in _INT_KEYS:
                try:
                    kv[key] = int(value)
                except ValueError:
                    raise ConfigurationError(f"config key {key!r}: {value!r} is not an integer")
            elif key in _BOOL_KEYS:
                if value not in ("on", "off"):
                    raise ConfigurationError(f"config key {key!r}: use on or off")
                kv[key] = value == "on"
            elif key in _STR_KEYS:
                kv[key] = value
            else:
                raise ConfigurationError(f"unknown config key: {key!r}")
    if "QUINTET_PORT" in os.environ:
        kv["port"] = int(os.environ["QUINTET_PORT"])
    for key, value in (overrides or {}).items():
        if value is not None:
            kv[key] = value
    return EngineConfig(**kv)
