"""Run configuration: defaults, TOML files, command-line overrides."""
from __future__ import annotations

import math
import sys
from dataclasses import asdict, dataclass, fields, replace

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import InvalidInput
from .paramsearch import MINUS, PLUS
from .rotation import GOLDEN


@dataclass(frozen=True)
class RunConfig:
    m_from: int = 4
    m_to: int = 12
    branch: str = PLUS
    theta: float = GOLDEN
    samples: int = 10_000
    seed: int = 42
    iter_cap: int = 10 ** 7
    escape_radius: float = 100.0
    v_radius_multiplier: float = math.sqrt(38.0)
    v_center_mode: str = "zero"
    landing_target: str = "V"
    precision: str = "auto"
    boundary_samples: int = 512
    siegel_points: int = 2 ** 14
    confidence: float = 0.95
    undetermined_bound: float = 0.01
    workers: int = 1
    cache: str | None = None

    def validate(self) -> "RunConfig":
        if not 3 <= self.m_from <= self.m_to <= 16:
            raise InvalidInput("need 3 <= m_from <= m_to <= 16")
        if self.branch not in (PLUS, MINUS):
            raise InvalidInput(f"branch must be {PLUS} or {MINUS}")
        if not 0 < self.theta < 1:
            raise InvalidInput("theta must lie in (0, 1)")
        if self.samples < 1:
            raise InvalidInput("samples must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidInput("seed must be a 64-bit unsigned integer")
        if self.iter_cap < 0:
            raise InvalidInput("iter_cap must be non-negative")
        if self.escape_radius < 2:
            raise InvalidInput("escape_radius must be at least 2")
        if self.v_radius_multiplier <= 0:
            raise InvalidInput("v_radius_multiplier must be positive")
        if self.v_center_mode not in ("zero", "w"):
            raise InvalidInput("v_center_mode must be 'zero' or 'w'")
        if self.landing_target not in ("V", "U"):
            raise InvalidInput("landing_target must be 'V' or 'U'")
        if self.precision not in ("auto", "double", "extended"):
            raise InvalidInput("precision must be auto, double or extended")
        if self.boundary_samples < 256:
            raise InvalidInput("boundary_samples must be at least 256")
        if self.siegel_points < 64:
            raise InvalidInput("siegel_points must be at least 64")
        if not 0 < self.confidence < 1:
            raise InvalidInput("confidence must lie in (0, 1)")
        if self.workers < 1:
            raise InvalidInput("workers must be positive")
        return self

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidInput(f"unknown config keys: {sorted(unknown)}")
        return cls(**data).validate()

    def merged(self, **overrides) -> "RunConfig":
        vals = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **vals).validate()


def load_toml(path: str, command: str | None = None) -> dict:
    """Top-level keys, then the ``[defaults]`` table, then the command's own table."""
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    out = {k: v for k, v in data.items() if not isinstance(v, dict)}
    out.update(data.get("defaults", {}))
    if command:
        out.update(data.get(command, {}))
        out.update(data.get(command.replace("-", "_"), {}))
    known = {f.name for f in fields(RunConfig)}
    return {k: v for k, v in out.items() if k in known}
