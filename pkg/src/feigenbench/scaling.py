"""Self-similarity tables: same-parity quotients of parameter displacements
z_m - c and of renormalized Siegel centers w_m."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import TooFewEntries
from .paramsearch import FoundParameter

PHI = (1 + math.sqrt(5)) / 2
BETA = (7 + 3 * math.sqrt(5)) / 2
UNSPECIFIED = "limit unspecified by source"


@dataclass(frozen=True)
class ScalingReport:
    """``ratios[k] = values[i] / values[j]`` for the index pair ``pairs[k] = (m_i, m_j)``, m_j = m_i + 2."""

    indices: list[int]
    values: list[complex]
    pairs: list[tuple[int, int]]
    ratios: list[complex]
    target: float | None
    deviations: list[float] | None
    note: str = ""
    extra: dict = field(default_factory=dict)

    def rows(self) -> list[dict]:
        vals = dict(zip(self.indices, self.values))
        out = []
        for k, (a, b) in enumerate(self.pairs):
            out.append({
                "m_from": a, "m_to": b,
                "value_re": vals[b].real, "value_im": vals[b].imag,
                "ratio_re": self.ratios[k].real, "ratio_im": self.ratios[k].imag,
                "ratio_abs": abs(self.ratios[k]),
                "deviation": "" if self.deviations is None else self.deviations[k],
            })
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        fields = ["m_from", "m_to", "value_re", "value_im", "ratio_re", "ratio_im",
                  "ratio_abs", "deviation"]
        wr = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        wr.writeheader()
        for row in self.rows():
            wr.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
        return buf.getvalue()


def _quotients(indices: Sequence[int], values: Sequence[complex]):
    if len(indices) != len(values):
        raise ValueError("indices and values must align")
    if len(values) < 3:
        raise TooFewEntries("need at least three entries")
    by_m = dict(zip(indices, values))
    pairs = [(m, m + 2) for m in sorted(by_m) if m + 2 in by_m]
    if not pairs:
        raise TooFewEntries("no same-parity pair of indices")
    pairs.sort(key=lambda p: p[1])
    ratios = [by_m[a] / by_m[b] for a, b in pairs]
    return pairs, ratios


def parameter_scaling_table(zm: Sequence[FoundParameter], c_siegel: complex) -> ScalingReport:
    """Quotients (z_m - c)/(z_{m+2} - c); the target is beta = (7 + 3 sqrt 5)/2."""
    zm = sorted(zm, key=lambda f: f.m)
    indices = [f.m for f in zm]
    values = [complex(f.value) - complex(c_siegel) for f in zm]
    pairs, ratios = _quotients(indices, values)
    dev = [abs(r - BETA) / BETA for r in ratios]
    return ScalingReport(indices, values, pairs, ratios, BETA, dev)


def displacement_table(indices: Sequence[int], values: Sequence[complex],
                       target: float | None = BETA) -> ScalingReport:
    pairs, ratios = _quotients(list(indices), [complex(v) for v in values])
    dev = None if target is None else [abs(r - target) / target for r in ratios]
    return ScalingReport(list(indices), [complex(v) for v in values], pairs, ratios, target, dev,
                         "" if target is not None else UNSPECIFIED)


def dynamical_scaling_table(w: Sequence[complex], indices: Sequence[int] | None = None) -> ScalingReport:
    """Quotients w_m / w_{m+2}; no target limit is asserted."""
    w = [complex(v) for v in w]
    if indices is None:
        indices = list(range(len(w)))
        # consecutive list entries are treated as consecutive same-parity terms
        pairs = [(k, k + 1) for k in range(len(w) - 1)]
        if len(w) < 3:
            raise TooFewEntries("need at least three entries")
        ratios = [w[a] / w[b] for a, b in pairs]
        return ScalingReport(indices, w, pairs, ratios, None, None, UNSPECIFIED,
                             {"index_step": 1})
    pairs, ratios = _quotients(list(indices), w)
    return ScalingReport(list(indices), w, pairs, ratios, None, None, UNSPECIFIED)


def beta_identity_error() -> float:
    return abs(BETA - PHI ** 4)
