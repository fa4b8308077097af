"""Monte Carlo estimates of the landing and escaping probabilities.

Sample i is drawn from its own Philox stream (key = seed, counter word 2 =
i), so any partition of the index range into worker chunks reproduces the
same points, and counts merge exactly.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from statistics import NormalDist
from typing import Callable

import numpy as np

from . import _kernels
from .errors import DivisionByZero, EmptyDomain, InvalidInput, NotInformative
from .numerics import DEFAULT_ESCAPE_RADIUS
from .renorm import QLRestriction, classify_landing_many, classify_return_many
from .siegel import SiegelDisk

DEFAULT_CAP = 10 ** 7
DEFAULT_CONFIDENCE = 0.95
DEFAULT_UNDETERMINED_BOUND = 0.01
_CANDIDATES = 16


@dataclass(frozen=True)
class ProbabilityEstimate:
    kind: str
    hits: int
    misses: int
    undetermined: int
    total: int
    point: float
    ci_lo: float
    ci_hi: float
    confidence: float
    seed: int
    iter_cap: int
    escape_radius: float
    undetermined_bound: float = DEFAULT_UNDETERMINED_BOUND

    @property
    def undetermined_fraction(self) -> float:
        return self.undetermined / self.total

    @property
    def informative(self) -> bool:
        return self.undetermined_fraction < self.undetermined_bound

    def to_dict(self) -> dict:
        d = asdict(self)
        d["informative"] = self.informative
        return d


def wilson_interval(k: int, n: int, confidence: float = DEFAULT_CONFIDENCE) -> tuple[float, float]:
    """Wilson score interval for k successes in n trials."""
    if n < 1:
        raise InvalidInput("wilson_interval needs n >= 1")
    if not 0 <= k <= n:
        raise InvalidInput("need 0 <= k <= n")
    if not 0 < confidence < 1:
        raise InvalidInput("confidence must be in (0, 1)")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = k / n
    z2n = z * z / n
    mid = (p + z2n / 2) / (1 + z2n)
    half = z * math.sqrt(p * (1 - p) / n + z2n / (4 * n)) / (1 + z2n)
    lo, hi = mid - half, mid + half
    # the exact endpoints at k = 0 and k = n
    if k == 0:
        lo = 0.0
    if k == n:
        hi = 1.0
    return max(0.0, lo), min(1.0, hi)


def make_estimate(kind, hits, misses, und, seed, cap, escape_radius,
                  confidence=DEFAULT_CONFIDENCE, undetermined_bound=DEFAULT_UNDETERMINED_BOUND):
    """Undetermined samples count as misses for the lower bound and hits for the upper."""
    total = hits + misses + und
    lo = wilson_interval(hits, total, confidence)[0]
    hi = wilson_interval(hits + und, total, confidence)[1]
    determined = hits + misses
    point = hits / determined if determined else 0.5
    return ProbabilityEstimate(kind, int(hits), int(misses), int(und), int(total), point, lo, hi,
                               confidence, int(seed), int(cap), float(escape_radius),
                               undetermined_bound)


# ------------------------------------------------------------ sampling

def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < 2 ** 64:
        raise InvalidInput("seed must be a 64-bit unsigned integer")
    return seed


def _stream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, index, 0]))


@dataclass(frozen=True)
class Region:
    """Rejection region: a bounding box, an optional disk, an optional polygon
    constraint (mode 1 inside, -1 outside, 0 none)."""

    x0: float
    x1: float
    y0: float
    y1: float
    disk_center: complex = 0j
    disk_radius: float = 0.0
    use_disk: bool = False
    poly_mode: int = 0
    px: np.ndarray = np.zeros(1)
    py: np.ndarray = np.zeros(1)


def siegel_region(disk: SiegelDisk) -> Region:
    x0, x1, y0, y1 = disk.bbox()
    return Region(x0, x1, y0, y1, poly_mode=1, px=disk.xs, py=disk.ys)


def annulus_region(r: QLRestriction) -> Region:
    c, R = r.v_center, r.v_radius
    return Region(c.real - R, c.real + R, c.imag - R, c.imag + R, c, R, True, -1, r.u_xs, r.u_ys)


def sample_region(region: Region, seed: int, start: int, stop: int) -> np.ndarray:
    """Points for sample indices start..stop-1, uniform in the region."""
    seed = _check_seed(seed)
    n = stop - start
    out = np.empty(n, dtype=complex)
    gens = [_stream(seed, i) for i in range(start, stop)]
    pending = np.arange(n)
    wx, wy = region.x1 - region.x0, region.y1 - region.y0
    rounds = 0
    while pending.size:
        u = np.stack([gens[k].random(2 * _CANDIDATES) for k in pending])
        cx = region.x0 + wx * u[:, 0::2]
        cy = region.y0 + wy * u[:, 1::2]
        idx = _kernels.first_accepted(cx, cy, region.disk_center.real, region.disk_center.imag,
                                      region.disk_radius, region.use_disk, region.poly_mode,
                                      region.px, region.py)
        ok = idx >= 0
        rows = np.nonzero(ok)[0]
        out[pending[rows]] = cx[rows, idx[rows]] + 1j * cy[rows, idx[rows]]
        pending = pending[~ok]
        rounds += 1
        if rounds > 64:
            raise EmptyDomain("rejection sampling found no point in the region")
    return out


def _partition(n: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(int(workers), n))
    bounds = [n * k // workers for k in range(workers + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(workers)]


def _count(region, seed, n, workers, classify: Callable):
    """Sum (hits, misses, undetermined) over worker chunks of the index range."""
    def chunk(bounds):
        pts = sample_region(region, seed, *bounds)
        return classify(pts)

    parts = _partition(n, workers)
    if len(parts) == 1:
        results = [chunk(parts[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(parts)) as ex:
            results = list(ex.map(chunk, parts))
    return tuple(int(sum(r[k] for r in results)) for k in range(3))


def estimate_eta(r: QLRestriction, domain: SiegelDisk, n: int, seed: int,
                 cap: int = DEFAULT_CAP, confidence: float = DEFAULT_CONFIDENCE,
                 workers: int = 1,
                 undetermined_bound: float = DEFAULT_UNDETERMINED_BOUND) -> ProbabilityEstimate:
    """Fraction of the Siegel disk whose orbit lands in the restriction's target."""
    if n < 1:
        raise InvalidInput("n must be at least 1")
    if not domain.area > 0:
        raise EmptyDomain("Siegel polygon has zero area")

    def classify(pts):
        codes, _ = classify_landing_many(pts, r, cap) if cap >= 1 else (
            np.full(len(pts), _kernels.UNDETERMINED), None)
        return (np.count_nonzero(codes == _kernels.LANDED),
                np.count_nonzero(codes == _kernels.ESCAPED),
                np.count_nonzero(codes == _kernels.UNDETERMINED))

    h, m, u = _count(siegel_region(domain), seed, n, workers, classify)
    return make_estimate("Eta", h, m, u, seed, cap, r.escape_radius, confidence,
                         undetermined_bound)


def estimate_xi(r: QLRestriction, n: int, seed: int, cap: int = DEFAULT_CAP,
                confidence: float = DEFAULT_CONFIDENCE, workers: int = 1,
                undetermined_bound: float = DEFAULT_UNDETERMINED_BOUND) -> ProbabilityEstimate:
    """Fraction of the annulus V minus U whose orbit never comes back to V."""
    if n < 1:
        raise InvalidInput("n must be at least 1")
    if not r.annulus_area > 0:
        raise EmptyDomain("annulus has zero area")

    def classify(pts):
        codes, _ = classify_return_many(pts, r, cap)
        return (np.count_nonzero(codes == _kernels.ESCAPED_FOREVER),
                np.count_nonzero(codes == _kernels.RETURNED),
                np.count_nonzero(codes == _kernels.UNDETERMINED))

    h, m, u = _count(annulus_region(r), seed, n, workers, classify)
    return make_estimate("Xi", h, m, u, seed, cap, r.escape_radius, confidence,
                         undetermined_bound)


def estimate_bernoulli(p: float, n: int, seed: int, workers: int = 1,
                       confidence: float = DEFAULT_CONFIDENCE) -> ProbabilityEstimate:
    """Synthetic classifier: sample i is a hit when its stream's first uniform is < p."""
    if not 0 <= p <= 1:
        raise InvalidInput("p must be in [0, 1]")
    seed = _check_seed(seed)

    def chunk(bounds):
        u = np.array([_stream(seed, i).random() for i in range(*bounds)])
        h = int(np.count_nonzero(u < p))
        return h, len(u) - h, 0

    parts = _partition(n, workers)
    with ThreadPoolExecutor(max_workers=len(parts)) as ex:
        results = list(ex.map(chunk, parts))
    h, m, u = (sum(r[k] for r in results) for k in range(3))
    return make_estimate("Synthetic", h, m, u, seed, 0, DEFAULT_ESCAPE_RADIUS, confidence)


# ------------------------------------------------------------ black hole

@dataclass(frozen=True)
class BlackHoleReport:
    ratio: float
    ratio_lo: float
    ratio_hi: float
    upper_unbounded: bool
    eta: ProbabilityEstimate
    xi: ProbabilityEstimate
    note: str = ("eta/xi ratio only: the criterion constant C depends on a priori bounds "
                 "that are not computed here, so no positive-area verdict is issued")

    def to_dict(self) -> dict:
        return {"ratio": self.ratio, "ratio_lo": self.ratio_lo,
                "ratio_hi": None if self.upper_unbounded else self.ratio_hi,
                "upper_unbounded": self.upper_unbounded, "note": self.note,
                "eta": self.eta.to_dict(), "xi": self.xi.to_dict()}


def blackhole_report(eta: ProbabilityEstimate, xi: ProbabilityEstimate,
                     undetermined_bound: float | None = None) -> BlackHoleReport:
    """eta/xi with the conservative interval [lo(eta)/hi(xi), hi(eta)/lo(xi)]."""
    for est in (eta, xi):
        bound = est.undetermined_bound if undetermined_bound is None else undetermined_bound
        if est.undetermined_fraction >= bound:
            raise NotInformative(f"{est.kind}: undetermined fraction {est.undetermined_fraction:.3g}")
    if xi.ci_hi == 0:
        raise DivisionByZero("xi interval is identically zero")
    ratio = eta.point / xi.point if xi.point > 0 else math.inf
    lo = eta.ci_lo / xi.ci_hi
    unbounded = xi.ci_lo == 0
    hi = math.inf if unbounded else eta.ci_hi / xi.ci_lo
    return BlackHoleReport(ratio, lo, hi, unbounded, eta, xi)
