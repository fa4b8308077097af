"""JSON reports (schema 1). Floats are written with repr so they round-trip exactly."""
from __future__ import annotations

import datetime as _dt
import json
import math
from dataclasses import dataclass, field
from importlib import metadata

from .errors import InvalidInput
from .paramsearch import FoundParameter

SCHEMA = 1


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def encode(obj):
    """JSON-safe form: complex as {re, im}, non-finite floats as strings."""
    if isinstance(obj, complex):
        return {"re": encode(obj.real), "im": encode(obj.imag)}
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else repr(obj)
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if hasattr(obj, "item") and callable(obj.item):  # numpy scalars
        return encode(obj.item())
    return obj


def parameter_record(fp: FoundParameter) -> dict:
    rec = {
        "label": fp.label, "m": fp.m, "period": fp.period, "branch": fp.branch,
        "c": fp.c, "c_lo": fp.c_lo, "residual": fp.residual,
        "precision": fp.precision.value, "seed_chain": fp.seed_chain,
    }
    if fp.theta is not None:
        rec["theta"] = fp.theta
    if fp.cycle_point is not None:
        rec["cycle_point"] = fp.cycle_point
        rec["cycle_point_lo"] = fp.cycle_point_lo
    return rec


@dataclass
class RunReport:
    command: str
    config: dict
    records: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    started: str | None = None
    finished: str | None = None
    argv: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return encode({
            "schema": SCHEMA, "tool": "feigenbench", "version": tool_version(),
            "command": self.command, "config": self.config,
            "started": self.started, "finished": self.finished,
            "records": self.records, "warnings": self.warnings, "argv": self.argv,
        })

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def load_report(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read report {path}: {exc}") from exc
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise InvalidInput("not a schema-1 report")
    return data


def numeric_fields(obj, prefix="") -> dict:
    """Flattened path -> value for every number in a report's records."""
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(numeric_fields(v, f"{prefix}/{k}"))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            out.update(numeric_fields(v, f"{prefix}[{i}]"))
    elif isinstance(obj, (int, float)) and not isinstance(obj, bool):
        out[prefix] = obj
    return out
