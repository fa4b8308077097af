"""The Blaschke product B_a(z) = e^{2 pi i a} z^2 (z - 3)/(1 - 3z) on the circle.

On |z| = 1 it restricts to a critical circle homeomorphism with a cubic
critical point at z = 1. In angle coordinates its lift is

    F(x) = a + x - atan2(sin 2 pi x, 3 - cos 2 pi x) / pi,

which is what the compiled kernels evaluate.
"""
from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import BracketFailure, InvalidInput, OrbitDegenerate, TooFewEntries
from .rotation import (
    GOLDEN, RotationEstimate, RotationNumber, convergents, golden_q, rotation_number_estimate,
)

DEFAULT_ROTATION_ITERATES = 10 ** 6


@dataclass(frozen=True)
class BlaschkeMap:
    alpha: float

    def __post_init__(self):
        if not 0 <= self.alpha < 1:
            raise InvalidInput("alpha must lie in [0, 1)")

    def evaluate(self, z: complex) -> complex:
        return cmath.exp(2j * math.pi * self.alpha) * z * z * (z - 3) / (1 - 3 * z)

    def __call__(self, x: float) -> float:
        return _kernels.blaschke_lift(float(x), self.alpha)

    def iterate(self, x0: float, n: int) -> tuple[int, float]:
        """Integer and fractional parts of F^n(x0) - x0."""
        return _kernels.blaschke_iterate(float(x0), int(n), self.alpha)

    def orbit(self, x0: float, n: int) -> np.ndarray:
        return _kernels.blaschke_orbit(float(x0), int(n), self.alpha)


def blaschke_circle_lift(alpha: float) -> BlaschkeMap:
    return BlaschkeMap(alpha)


def rotation_number(alpha: float, n: int = DEFAULT_ROTATION_ITERATES) -> RotationEstimate:
    return rotation_number_estimate(BlaschkeMap(alpha), 0.0, n)


def tune_alpha(theta_target: float = GOLDEN, tol: float = 1e-6,
               max_bisections: int = 80, refine: int = 0) -> float:
    """alpha with |rho(B_alpha) - theta_target| < tol, by bisection on brackets.

    rho is non-decreasing in alpha, so a bracket [k/n, (k+1)/n] lying on one
    side of the target decides the half. The iterate count grows only while
    the bracket still contains the target; a bracket of width tol/2 that
    contains it ends the search. ``refine`` extra halvings steered by the
    Birkhoff average then pin alpha further.
    """
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    if not 0 < theta_target < 1:
        raise InvalidInput("theta_target must lie in (0, 1)")
    n_max = max(16, math.ceil(2.0 / tol))
    if rotation_number(0.0, 16).hi >= theta_target and rotation_number(0.0, n_max).hi >= theta_target:
        raise BracketFailure("theta_target not above the rotation number at alpha = 0")
    lo, hi = 0.0, 1.0
    best = None
    for _ in range(max_bisections):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        n = 1000
        while True:
            est = rotation_number(mid, min(n, n_max))
            if not est.contains(theta_target) or n >= n_max:
                break
            n *= 10
        if est.contains(theta_target):
            best = mid
            if refine <= 0:
                break
            refine -= 1
            if est.value < theta_target:
                lo = mid
            else:
                hi = mid
        elif est.hi < theta_target:
            lo = mid
        else:
            hi = mid
    if best is None:
        raise BracketFailure("bisection never bracketed theta_target")
    return best


@functools.lru_cache(maxsize=8)
def tuned_golden_alpha(tol: float = 1e-6) -> float:
    return tune_alpha(GOLDEN, tol)


def superstable_alpha(p: int, q: int) -> float:
    """alpha in [0, 1) whose critical point is periodic with rotation p/q: F^q(0) = p."""
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        k, frac = _kernels.blaschke_iterate(0.0, q, mid)
        if k + frac < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@functools.lru_cache(maxsize=4)
def golden_alpha_limit(levels: int = 25) -> float:
    """Limit of the superstable parameters at successive golden convergents.

    These converge geometrically to the golden parameter and pin it far
    below the bracket resolution of ``tune_alpha``.
    """
    conv = convergents(RotationNumber.golden(), levels)[-1]
    return superstable_alpha(conv.p, conv.q)


def critical_exponent(alpha: float, h: float = 1e-3, steps: int = 4) -> float:
    """Log-log slope of |F(h) - F(0)| against h near the critical angle (3 for cubic)."""
    F = BlaschkeMap(alpha)
    hs = h * 0.5 ** np.arange(steps)
    ds = np.array([abs(F(x) - F(0.0)) for x in hs])
    return float(np.polyfit(np.log(hs), np.log(ds), 1)[0])


# ----------------------------------------------------------------- tilings

@dataclass(frozen=True, eq=False)
class CircleTiling:
    """Level-n dynamical tiling: arcs between the critical-orbit points
    c_1 .. c_{q_n + q_{n+1} - 1}; the arc through c_0 is the central tile.

    ``tiles`` holds [a_k, b_k) with a_k in [0, 1) and b_k > a_k (b_k may
    exceed 1 for the arc crossing 0); ``tags`` holds |i - j| for the orbit
    indices of the endpoints (q_n, q_{n+1}, or q_{n+1} - q_n for the
    central tile).
    """

    level: int
    q_n: int
    q_n1: int
    tiles: np.ndarray
    tags: np.ndarray
    central: int
    endpoint_index: np.ndarray = field(repr=False)

    @property
    def lengths(self) -> np.ndarray:
        return self.tiles[:, 1] - self.tiles[:, 0]

    @property
    def count(self) -> int:
        return len(self.tiles)

    @property
    def combinatorics_ok(self) -> bool:
        """Every non-central tag is q_n or q_{n+1}."""
        t = np.delete(self.tags, self.central)
        return bool(np.all((t == self.q_n) | (t == self.q_n1)))

    @property
    def generation_map(self) -> dict[int, int]:
        return {k: int(t) for k, t in enumerate(self.tags)}


def tiling_from_angles(angles: np.ndarray, level: int, q_n: int, q_n1: int,
                       min_gap: float = 1e-12) -> CircleTiling:
    """Tiling from an orbit of angles with angles[0] the critical point."""
    count = q_n + q_n1 - 1
    if len(angles) < count + 1:
        raise InvalidInput("not enough orbit points for this level")
    idx = np.arange(1, count + 1)
    pts = np.mod(np.asarray(angles[1:count + 1], dtype=float), 1.0)
    order = np.argsort(pts, kind="stable")
    pts, idx = pts[order], idx[order]
    gaps = np.diff(np.append(pts, pts[0] + 1.0))
    if np.any(gaps < min_gap):
        raise OrbitDegenerate("two tile endpoints coincide")
    tiles = np.c_[pts, pts + gaps]
    nxt = np.roll(idx, -1)
    tags = np.abs(nxt - idx)
    c0 = float(np.mod(angles[0], 1.0))
    inside = ((c0 >= tiles[:, 0]) & (c0 < tiles[:, 1])) | \
             ((c0 + 1.0 >= tiles[:, 0]) & (c0 + 1.0 < tiles[:, 1]))
    central = int(np.nonzero(inside)[0][0])
    return CircleTiling(level, q_n, q_n1, tiles, tags, central, np.c_[idx, nxt])


def build_tiling(alpha: float, n: int) -> CircleTiling:
    """Level-n tiling of the Blaschke circle map (golden combinatorics)."""
    if n < 1:
        raise InvalidInput("level must be at least 1")
    q_n, q_n1 = golden_q(n), golden_q(n + 1)
    angles = BlaschkeMap(alpha).orbit(0.0, q_n + q_n1)
    return tiling_from_angles(angles, n, q_n, q_n1)


def rotation_tiling(theta: float, n: int) -> CircleTiling:
    """Same construction for the rigid rotation x -> x + theta."""
    q_n, q_n1 = golden_q(n), golden_q(n + 1)
    angles = np.mod(np.arange(q_n + q_n1 + 1) * theta, 1.0)
    return tiling_from_angles(angles, n, q_n, q_n1)


def cyclic_order_matches(angles: np.ndarray, theta: float, count: int) -> bool:
    """Cyclic order of the first ``count`` orbit angles equals that of {k theta}."""
    a = np.argsort(np.mod(angles[:count], 1.0), kind="stable")
    b = np.argsort(np.mod(np.arange(count) * theta, 1.0), kind="stable")
    k = int(np.nonzero(a == b[0])[0][0])
    return bool(np.array_equal(np.roll(a, -k), b))


def _blowup(values, window):
    """Strictly increasing over the window with increments that do not shrink.

    Increasing but decelerating sequences converge and are not counted.
    """
    tail = list(values[-window:])
    if len(tail) < window:
        return False
    inc = [b - a for a, b in zip(tail, tail[1:])]
    return all(d > 0 for d in inc) and inc[-1] >= inc[0]


@dataclass(frozen=True)
class GeometryReport:
    levels: list[int]
    adjacent_max: list[float]
    adjacent_min: list[float]
    parent_child_max: list[float]
    refinement_ok: bool

    def blowup(self, window: int = 4) -> bool:
        """Monotone blow-up in either ratio series over the last ``window`` levels."""
        return _blowup(self.adjacent_max, window) or _blowup(self.parent_child_max, window)

    def to_rows(self) -> list[dict]:
        rows = []
        for k, lev in enumerate(self.levels):
            rows.append({"level": lev, "adjacent_max": self.adjacent_max[k],
                         "adjacent_min": self.adjacent_min[k],
                         "parent_child_max": self.parent_child_max[k - 1] if k else None})
        return rows


def bounded_geometry_report(tilings: list[CircleTiling], tol: float = 1e-9) -> GeometryReport:
    """Adjacent-tile ratio spread per level and parent/child ratios across levels."""
    if len(tilings) < 2:
        raise TooFewEntries("need at least two consecutive levels")
    adj_max, adj_min, pc_max = [], [], []
    refinement_ok = True
    for t in tilings:
        L = t.lengths
        r = L / np.roll(L, -1)
        r = np.maximum(r, 1 / r)
        adj_max.append(float(r.max()))
        adj_min.append(float(r.min()))
    for parent, child in zip(tilings, tilings[1:]):
        starts = parent.tiles[:, 0]
        ratios = []
        for a, b in child.tiles:
            k = int(np.searchsorted(starts, a + tol, side="right") - 1)
            pa, pb = parent.tiles[k] if k >= 0 else parent.tiles[-1] - np.array([1.0, 1.0])
            if not (pa - tol <= a and b <= pb + tol):
                refinement_ok = False
                continue
            ratios.append((pb - pa) / (b - a))
        pc_max.append(float(max(ratios)) if ratios else math.inf)
    return GeometryReport([t.level for t in tilings], adj_max, adj_min, pc_max, refinement_ok)
