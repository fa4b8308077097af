"""Parameter-space search in the quadratic family.

Centers of hyperbolic components, parameters whose periodic cycle has a
prescribed multiplier (Siegel parameters of a renormalization), and the
golden-mean sequence ``z_m`` of Siegel parameters inside the largest
primitive copies of period q_m + q_{m-2} in the p_m/q_m-limb.
"""
from __future__ import annotations

import cmath
import json
import logging
import math
import os
import tempfile
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

import numpy as np
from filelock import FileLock

from . import _kernels
from .ddcomplex import DDComplex, Precision, promote, split_parts
from .errors import (
    BranchLost, CacheCorrupt, CycleCollision, CycleUnavailable, InvalidInput,
    NoConvergence, Overflow, WrongPeriod,
)
from .numerics import cardioid_point, newton_root, orbit_jets, orbit_with_derivatives
from .rotation import GOLDEN, convergents, RotationNumber, renormalization_period

log = logging.getLogger(__name__)

BETA = (7 + 3 * math.sqrt(5)) / 2
CENTER = "Center"
SIEGEL = "SiegelParam"
PLUS = "PlusImag"
MINUS = "MinusImag"
BASE_INDICES = (3, 4, 5)
CACHE_ENV = "FEIGENBENCH_CACHE"

CENTER_TOL = 1e-12
SIEGEL_TOL = 1e-10


@dataclass(frozen=True)
class FoundParameter:
    """A located parameter; ``c_lo`` carries the Extended tail (0 at Double)."""

    label: str
    m: int
    period: int
    c: complex
    residual: float
    branch: str = PLUS
    seed_chain: str = ""
    precision: Precision = Precision.DOUBLE
    c_lo: complex = 0j
    theta: float | None = None
    cycle_point: complex | None = None
    cycle_point_lo: complex = 0j
    iterations: int = field(default=0, compare=False)

    @property
    def value(self):
        if self.precision is Precision.EXTENDED:
            return DDComplex.from_parts(self.c, self.c_lo)
        return self.c

    @property
    def cycle_value(self):
        if self.cycle_point is None:
            return None
        if self.precision is Precision.EXTENDED:
            return DDComplex.from_parts(self.cycle_point, self.cycle_point_lo)
        return self.cycle_point


def cardioid_root(p: int, q: int) -> complex:
    """Root of the p/q-limb on the main cardioid."""
    if not (0 <= p < q) or math.gcd(p, q) != 1:
        raise InvalidInput("need 0 <= p < q with gcd(p, q) = 1")
    return cardioid_point(cmath.exp(2j * math.pi * p / q))


# ---------------------------------------------------------------- centers

def _center_eval(period):
    def f(c):
        z, _, dc = orbit_with_derivatives(c, 0.0 * c, period)
        return z, dc
    return f


def copy_size(c: complex, period: int) -> complex:
    """Standard size estimate of the copy of M centred at ``c`` (complex: size and orientation)."""
    c = complex(c)
    z = 0j
    lam = 1 + 0j
    b = 1 + 0j
    for _ in range(1, period):
        z = z * z + c
        lam = 2 * z * lam
        b += 1 / lam
    return 1 / (b * lam * lam)


def exact_period(c, period: int, rel_tol: float = 1e-10) -> int:
    """Smallest divisor d of ``period`` such that c is (numerically) a period-d center."""
    scale = max(1.0, abs(c))
    for d in range(1, period + 1):
        if period % d:
            continue
        try:
            z, _, dc = orbit_with_derivatives(c, 0.0 * c, d)
        except Overflow:
            continue
        if abs(dc) == 0:
            if abs(z) == 0:
                return d
            continue
        if abs(z / dc) < rel_tol * scale:
            return d
    return period


def find_center(period: int, seed, tol: float = CENTER_TOL, precision: str = "auto",
                max_steps: int = 80) -> FoundParameter:
    """Newton on c -> f_c^period(0).

    ``precision`` is "double", "extended" or "auto"; "auto" starts at Double
    and escalates to Extended when Double stalls above ``tol``.
    """
    if period < 1:
        raise InvalidInput("period must be at least 1")
    f = _center_eval(period)
    level = Precision.EXTENDED if precision == "extended" else Precision.DOUBLE
    x = promote(seed, level)
    iters = [0]

    def counted(c):
        iters[0] += 1
        return f(c)

    try:
        x = newton_root(counted, x, tol, max_steps=max_steps,
                        stall_ulps=1e3 if level is Precision.DOUBLE else 4.0)
    except NoConvergence as exc:
        if precision != "auto" or level is Precision.EXTENDED or exc.last is None:
            raise
        log.debug("period %d: escalating to Extended at %r", period, exc.last)
        level = Precision.EXTENDED
        x = newton_root(counted, DDComplex.coerce(exc.last), tol, max_steps=max_steps)
    d = exact_period(x, period)
    if d != period:
        raise WrongPeriod(f"converged to a center of period {d}", found=complex(x), exact_period=d)
    residual = abs(f(x)[0])
    hi, lo = split_parts(x)
    return FoundParameter(CENTER, 0, period, hi, residual, precision=level, c_lo=lo,
                          iterations=iters[0])


# ------------------------------------------------------- Siegel parameters

class _CycleTracker:
    """Evaluates multiplier(c) - target along a continued period-p cycle.

    The inner cycle solve starts from a first-order prediction off the best
    evaluation so far (which is the point damped Newton accepts).
    """

    def __init__(self, period, z, c, target, level):
        self.period = period
        self.level = level
        self.target = promote(target, level)
        self.best = None
        self.collided = False
        self.evals = 0
        self.anchor = (promote(c, level), promote(z, level), None)
        zc, jets = self._solve_cycle(self.anchor[0], self.anchor[1])
        self.anchor = (self.anchor[0], zc, jets)

    def _solve_cycle(self, c, z0):
        p = self.period

        def g(z):
            fz, dz, _ = orbit_with_derivatives(c, z, p)
            return fz - z, dz - 1.0

        scale = max(abs(z0), 1e-300)
        eps = self.level.eps
        try:
            z = newton_root(g, z0, 8 * eps * scale, max_steps=60)
        except NoConvergence as exc:
            if not exc.stalled or exc.last is None:
                raise CycleUnavailable("cycle solve failed") from exc
            z = exc.last
            if abs(g(z)[0]) > 1e-6 * scale:
                raise CycleUnavailable("cycle solve stalled far from a cycle") from exc
        return z, orbit_jets(c, z, p)

    def __call__(self, c):
        self.evals += 1
        c0, z0, jets0 = self.anchor
        _, a0, b0, _, _ = jets0
        dz_dc = -b0 / (a0 - 1.0)
        pred = dz_dc * (c - c0)
        try:
            z, jets = self._solve_cycle(c, z0 + pred)
        except (CycleUnavailable, Overflow):
            return complex("inf"), 1.0
        jump = abs((z - z0) - pred)
        if jump > 10 * abs(pred) + 1e3 * self.level.eps * max(abs(z0), 1e-12):
            self.collided = True
            return complex("inf"), 1.0
        _, a, b, a2, ab = jets
        value = a - self.target
        deriv = ab + a2 * (-b / (a - 1.0))
        r = abs(value)
        if self.best is None or r < self.best[0]:
            self.best = (r, c, z, jets)
            self.anchor = (c, z, jets)
        return value, deriv


def _solve_multiplier(period, c, z, target, level, tol):
    tracker = _CycleTracker(period, z, c, target, level)
    c_start = promote(c, level)
    _, a, *_ = tracker.anchor[2]
    if abs(a - tracker.target) < tol:
        return c_start, tracker.anchor[1], tracker.evals
    try:
        c_new = newton_root(tracker, c_start, tol, max_steps=60)
    except NoConvergence as exc:
        if tracker.collided and tracker.best is None:
            raise CycleCollision("cycle jumped branch during continuation") from exc
        if exc.stalled and tracker.best is not None and tracker.best[0] < 100 * tol:
            return tracker.best[1], tracker.best[2], tracker.evals
        if tracker.collided:
            raise CycleCollision("cycle jumped branch during continuation") from exc
        raise
    return c_new, tracker.best[2], tracker.evals


def multiplier_residual(c, z, period: int, theta: float) -> float:
    """|multiplier - e^{2 pi i theta}| of the cycle through the periodic point near z."""
    level = Precision.EXTENDED if isinstance(c, DDComplex) else Precision.DOUBLE
    tr = _CycleTracker(period, z, c, cmath.exp(2j * math.pi * theta), level)
    _, a, *_ = tr.anchor[2]
    return abs(a - tr.target)


def find_siegel_param(period: int, theta: float, seed, cycle_seed=0j,
                      tol: float = SIEGEL_TOL, precision: str = "auto",
                      max_halvings: int = 12) -> FoundParameter:
    """Parameter where the period-``period`` cycle continued from ``cycle_seed``
    at ``seed`` has multiplier e^{2 pi i theta}.

    The multiplier is continued linearly from its value at ``seed`` to the
    target (outer Newton on c, inner Newton for the cycle point); Extended
    precision polishes the end point when Double cannot reach ``tol``.
    """
    if period < 1:
        raise InvalidInput("period must be at least 1")
    target = cmath.exp(2j * math.pi * theta)
    level = Precision.EXTENDED if precision == "extended" else Precision.DOUBLE
    c = promote(seed, level)
    tr = _CycleTracker(period, cycle_seed, c, target, level)
    z = tr.anchor[1]
    mu0 = complex(tr.anchor[2][1])
    evals = tr.evals
    t, dt = 0.0, 0.25
    halvings = 0
    inner_tol = 1e-9 if level is Precision.DOUBLE else 1e-20
    while t < 1.0:
        t_new = min(1.0, t + dt)
        tgt = mu0 + t_new * (target - mu0)
        try:
            c_try, z_try, n = _solve_multiplier(period, c, z, tgt, level, inner_tol)
            evals += n
        except (NoConvergence, CycleCollision, CycleUnavailable):
            dt /= 2
            halvings += 1
            if halvings > max_halvings:
                raise
            continue
        c, z, t = c_try, z_try, t_new
        dt = min(0.25, dt * 1.5)
    final_tol = 1e-13 if level is Precision.DOUBLE else 1e-26
    try:
        c2, z2, n = _solve_multiplier(period, c, z, target, level, final_tol)
        c, z = c2, z2
        evals += n
    except NoConvergence:
        pass
    residual = multiplier_residual(c, z, period, theta)
    if residual >= tol and precision == "auto" and level is Precision.DOUBLE:
        level = Precision.EXTENDED
        c, z, n = _solve_multiplier(period, DDComplex.coerce(c), DDComplex.coerce(z), target,
                                    level, 1e-26)
        evals += n
        residual = multiplier_residual(c, z, period, theta)
    if near_parabolic(c, z, period) and residual >= tol:
        c, z = _polish_joint(period, c, z, target)
        residual = multiplier_residual(c, z, period, theta)
    if residual >= tol:
        raise NoConvergence(f"multiplier residual {residual:.3g} above {tol:g}", last=c)
    hi, lo = split_parts(c)
    zhi, zlo = split_parts(z)
    return FoundParameter(SIEGEL, 0, period, hi, residual, precision=level, c_lo=lo,
                          theta=theta, cycle_point=zhi, cycle_point_lo=zlo, iterations=evals)


def near_parabolic(c, z, period) -> bool:
    _, a, *_ = orbit_jets(c, z, period)
    return abs(a - 1.0) < 1e-6


def _polish_joint(period, c, z, target, steps=40):
    """Simultaneous Newton on (f^p(z) - z, (f^p)'(z) - target); used only where the
    cycle is near-parabolic and the inner solve is ill-conditioned."""
    for _ in range(steps):
        fz, a, b, a2, ab = orbit_jets(c, z, period)
        F, G = fz - z, a - target
        j11, j12, j21, j22 = a - 1.0, b, a2, ab
        det = j11 * j22 - j12 * j21
        if abs(det) == 0:
            break
        dz = (F * j22 - G * j12) / det
        dc = (G * j11 - F * j21) / det
        z, c = z - dz, c - dc
        if abs(dc) < 1e-17 * max(1.0, abs(c)) and abs(dz) < 1e-17:
            break
    return c, z


# -------------------------------------------------- limbs and parameter rays

def limb_angles(p: int, q: int) -> tuple[Fraction, Fraction]:
    """External angles of the two parameter rays landing at the p/q-limb root."""
    if not (0 < p < q) or math.gcd(p, q) != 1:
        raise InvalidInput("need 0 < p < q coprime")
    N = 2 ** q - 1
    for j in range(1, N):
        orbit = [Fraction(j * 2 ** k % N, N) for k in range(q)]
        if len(set(orbit)) < q:
            continue
        s = sorted(orbit)
        idx = {o: i for i, o in enumerate(s)}
        if all((idx[orbit[(k + 1) % q]] - idx[orbit[k]]) % q == p for k in range(q)):
            gaps = [(s[(i + 1) % q] - s[i]) % 1 for i in range(q)]
            i = min(range(q), key=gaps.__getitem__)
            return s[i], s[(i + 1) % q]
    raise InvalidInput(f"no rotation cycle for {p}/{q}")


def trace_parameter_ray(angle: Fraction, depth: int = 40, sharpness: int = 8,
                        start_log_potential: float = 4.0) -> list[complex]:
    """Points of the parameter ray at ``angle`` from far out towards M.

    Follows constant-angle points of decreasing potential with Newton on
    f_c^n(c) = exp(2^n (G + 2 pi i angle)).
    """
    angle = Fraction(angle)
    pts = []
    c = cmath.exp(start_log_potential + 2j * math.pi * float(angle))
    k = 0
    n = 1
    while n < depth:
        k += 1
        lr = start_log_potential * 2.0 ** (-k / sharpness)
        n = max(1, math.ceil(math.log2(18.0 / lr)))
        phase = float((angle * 2 ** n) % 1)
        target = cmath.exp(lr * 2 ** n + 2j * math.pi * phase)
        for _ in range(60):
            z, dz = c, 1.0 + 0j
            for _ in range(n):
                dz = 2 * z * dz + 1
                z = z * z + c
            step = (z - target) / dz
            c -= step
            if abs(step) < 1e-14 * abs(c):
                break
        pts.append(c)
    return pts


@dataclass(frozen=True)
class LimbRegion:
    p: int
    q: int
    xs: np.ndarray
    ys: np.ndarray

    def contains(self, c: complex) -> bool:
        c = complex(c)
        return bool(_kernels.point_in_polygon(c.real, c.imag, self.xs, self.ys))


def limb_region(p: int, q: int, depth: int = 40) -> LimbRegion:
    """Polygon bounded by the two limb rays and a far arc; contains the p/q-limb."""
    t_lo, t_hi = limb_angles(p, q)
    r_lo = trace_parameter_ray(t_lo, depth)
    r_hi = trace_parameter_ray(t_hi, depth)
    radius = abs(r_hi[0])
    arc = [cmath.rect(radius, 2 * math.pi * a)
           for a in np.linspace(float(t_hi), float(t_lo), 48)[1:-1]]
    pts = r_lo + r_hi[::-1] + arc
    return LimbRegion(p, q, np.array([z.real for z in pts]), np.array([z.imag for z in pts]))


def _grid_newton_centers(period, center, radius, n_grid, iters=80):
    xs = np.linspace(-radius, radius, n_grid)
    X, Y = np.meshgrid(xs, xs)
    seeds = (center + X + 1j * Y).ravel()
    seeds = seeds[np.abs(seeds - center) <= radius]
    c = seeds.copy()
    with np.errstate(all="ignore"):
        for _ in range(iters):
            z = np.zeros_like(c)
            dz = np.zeros_like(c)
            for _ in range(period):
                dz = 2 * z * dz + 1
                z = z * z + c
            c = c - z / dz
    with np.errstate(all="ignore"):
        z = np.zeros_like(c)
        for _ in range(period):
            z = z * z + c
    ok = np.isfinite(c) & (np.abs(z) < 1e-8)
    found: list[complex] = []
    for v in c[ok]:
        if all(abs(v - f) > 1e-9 for f in found):
            found.append(complex(v))
    return found


def base_copies(m: int, theta: float = GOLDEN, grid: int = 48,
                radius_gaps: float = 2.5) -> list[FoundParameter]:
    """The two largest period-P_m primitive copies in the p_m/q_m-limb, largest first."""
    conv = convergents(RotationNumber.golden(), m)[-1]
    p, q = conv.p, conv.q
    period = renormalization_period(m)
    root = cardioid_root(p, q)
    c_siegel = cardioid_point(cmath.exp(2j * math.pi * theta))
    gap = abs(root - c_siegel)
    region = limb_region(p, q)
    cands = []
    for v in _grid_newton_centers(period, root, radius_gaps * gap, grid):
        if not region.contains(v):
            continue
        try:
            fp = find_center(period, v)
        except (NoConvergence, WrongPeriod):
            continue
        if all(abs(fp.c - o.c) > 1e-9 for o in cands):
            cands.append(fp)
    cands.sort(key=lambda f: -abs(copy_size(f.c, period)))
    chain = f"limb-scan {p}/{q} grid={grid} radius={radius_gaps}*gap"
    return [replace(f, m=m, seed_chain=chain) for f in cands[:2]]


def branch_of(c: complex, m: int) -> str:
    """Oriented side of the copy relative to its limb root.

    Sign of Im(c * conj(root)) flipped for odd m, so the copies that
    correspond under the golden-mean self-similarity (limbs of alternating
    sides of c) share a label.
    """
    conv = convergents(RotationNumber.golden(), m)[-1]
    root = cardioid_root(conv.p, conv.q)
    s = (complex(c) * root.conjugate()).imag
    if m % 2:
        s = -s
    return PLUS if s > 0 else MINUS


# ------------------------------------------------------------------- cache

_RECORD_KEYS = ("label", "m", "period", "branch", "re", "im", "re_lo", "im_lo",
                "residual", "seed_chain")


def _to_record(fp: FoundParameter) -> dict:
    rec = {
        "label": fp.label, "m": fp.m, "period": fp.period, "branch": fp.branch,
        "re": fp.c.real, "im": fp.c.imag, "re_lo": fp.c_lo.real, "im_lo": fp.c_lo.imag,
        "residual": fp.residual, "seed_chain": fp.seed_chain,
        "precision": fp.precision.value,
    }
    if fp.theta is not None:
        rec["theta"] = fp.theta
    if fp.cycle_point is not None:
        rec.update(w_re=fp.cycle_point.real, w_im=fp.cycle_point.imag,
                   w_re_lo=fp.cycle_point_lo.real, w_im_lo=fp.cycle_point_lo.imag)
    return rec


def _from_record(rec: dict) -> FoundParameter:
    try:
        missing = [k for k in _RECORD_KEYS if k not in rec]
        if missing:
            raise CacheCorrupt(f"record missing {missing}")
        lo = complex(rec["re_lo"], rec["im_lo"])
        prec = Precision(rec.get("precision", "extended" if lo else "double"))
        w = complex(rec["w_re"], rec["w_im"]) if "w_re" in rec else None
        wlo = complex(rec.get("w_re_lo", 0.0), rec.get("w_im_lo", 0.0))
        return FoundParameter(rec["label"], int(rec["m"]), int(rec["period"]),
                              complex(rec["re"], rec["im"]), float(rec["residual"]),
                              rec["branch"], rec["seed_chain"], prec, lo,
                              rec.get("theta"), w, wlo)
    except (TypeError, ValueError, KeyError) as exc:
        raise CacheCorrupt(f"bad cache record: {exc}") from exc


class ParameterCache:
    """JSON array of parameter records, rewritten atomically under a file lock."""

    def __init__(self, path: str | os.PathLike | None = None):
        if path is None:
            path = os.environ.get(CACHE_ENV, os.path.join(os.getcwd(), "feigenbench_cache.json"))
        self.path = os.fspath(path)
        self._lock = FileLock(self.path + ".lock")
        self._records: dict[tuple, FoundParameter] = {}
        self.load()

    @staticmethod
    def key(label, m, branch, theta=None):
        return (label, m, branch, None if theta is None else round(theta, 15))

    def load(self) -> None:
        self._records = {}
        if not os.path.exists(self.path):
            return
        try:
            with open(self.path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CacheCorrupt(f"unreadable cache {self.path}: {exc}") from exc
        if not isinstance(data, list):
            raise CacheCorrupt("cache must be a JSON array")
        for rec in data:
            if not isinstance(rec, dict):
                raise CacheCorrupt("cache entries must be objects")
            fp = _from_record(rec)
            self._records[self.key(fp.label, fp.m, fp.branch, fp.theta)] = fp

    def get(self, label, m, branch, theta=None) -> FoundParameter | None:
        return self._records.get(self.key(label, m, branch, theta))

    def put(self, fp: FoundParameter) -> None:
        self._records[self.key(fp.label, fp.m, fp.branch, fp.theta)] = replace(fp, iterations=0)
        self.save()

    def records(self) -> list[FoundParameter]:
        return sorted(self._records.values(), key=lambda f: (f.label, f.branch, f.m))

    def save(self) -> None:
        with self._lock:
            # merge with whatever another writer stored meanwhile
            if os.path.exists(self.path):
                try:
                    with open(self.path) as fh:
                        for rec in json.load(fh):
                            fp = _from_record(rec)
                            self._records.setdefault(self.key(fp.label, fp.m, fp.branch, fp.theta), fp)
                except (OSError, json.JSONDecodeError, CacheCorrupt):
                    pass
            data = [_to_record(f) for f in self.records()]
            d = os.path.dirname(os.path.abspath(self.path))
            fd, tmp = tempfile.mkstemp(dir=d, prefix=".cache-", suffix=".json")
            try:
                with os.fdopen(fd, "w") as fh:
                    json.dump(data, fh, indent=1)
                os.replace(tmp, self.path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise


# ---------------------------------------------------------------- pipeline

def verify_parameter(fp: FoundParameter) -> float:
    """Recompute the defining residual from scratch at the declared precision."""
    c = fp.value
    if fp.label == CENTER:
        z, _, _ = orbit_with_derivatives(c, 0.0 * c, fp.period)
        return abs(z)
    if fp.cycle_point is None or fp.theta is None:
        raise CycleUnavailable("Siegel record lacks its cycle point")
    return multiplier_residual(c, fp.cycle_value, fp.period, fp.theta)


def _continuation_center(m, branch, prev, prev2, c_siegel):
    period = renormalization_period(m)
    d1 = complex(prev.c) - c_siegel
    if prev2 is not None:
        d2 = complex(prev2.c) - c_siegel
        seed = c_siegel + d1 * d1 / d2
        chain = f"ratio-extrapolation from m={prev.m},{prev2.m}"
    else:
        seed = c_siegel + d1 / BETA
        chain = f"beta-contraction from m={prev.m}"
    size_prev = abs(copy_size(prev.c, prev.period))

    def acceptable(fp):
        ratio_disp = abs(d1 / (fp.c - c_siegel))
        ratio_size = size_prev / abs(copy_size(fp.c, period))
        return (BETA / 2 < ratio_disp < 2 * BETA) and (BETA / 3 < ratio_size < 3 * BETA)

    try:
        fp = find_center(period, seed)
        if acceptable(fp):
            return replace(fp, m=m, branch=branch, seed_chain=chain)
    except (NoConvergence, WrongPeriod):
        pass
    # fall back to a local scan around the seed
    pred = abs(d1) / BETA
    best, score = None, math.inf
    for v in _grid_newton_centers(period, seed, 0.5 * pred, 16):
        try:
            fp = find_center(period, v)
        except (NoConvergence, WrongPeriod):
            continue
        if not acceptable(fp):
            continue
        s = abs(math.log(abs(d1 / (fp.c - c_siegel)) / BETA)) + \
            abs(math.log(size_prev / abs(copy_size(fp.c, period)) / BETA))
        if s < score:
            best, score = fp, s
    if best is None:
        raise BranchLost(f"no compatible period-{period} copy near the m={m} seed")
    return replace(best, m=m, branch=branch, seed_chain=chain + " + local scan")


def pipeline_center(m: int, branch: str = PLUS, cache: ParameterCache | None = None,
                    theta: float = GOLDEN) -> FoundParameter:
    """Center of the period-P_m copy on ``branch`` (cached)."""
    if m < 3:
        raise InvalidInput("pipeline indices start at m = 3")
    if cache is not None:
        hit = cache.get(CENTER, m, branch, theta)
        if hit is not None:
            return hit
    c_siegel = cardioid_point(cmath.exp(2j * math.pi * theta))
    if m in BASE_INDICES:
        cands = [replace(f, branch=branch_of(f.c, m)) for f in base_copies(m, theta)]
        chosen = [f for f in cands if f.branch == branch]
        if not chosen:
            raise BranchLost(f"no {branch} copy among the largest pair at m={m}")
        fp = chosen[0]
    else:
        prev = pipeline_center(m - 2, branch, cache, theta)
        prev2 = pipeline_center(m - 4, branch, cache, theta) if m - 4 >= 4 else None
        fp = _continuation_center(m, branch, prev, prev2, c_siegel)
    fp = replace(fp, theta=theta)
    if cache is not None:
        cache.put(fp)
    return fp


def zm_pipeline(m_from: int, m_to: int, branch: str = PLUS,
                cache: ParameterCache | None = None, theta: float = GOLDEN,
                precision: str = "auto") -> list[FoundParameter]:
    """Siegel parameters z_m, m_from <= m <= m_to, of the golden-mean copy sequence.

    m = 4 and m = 5 are located by a limb scan; every later index is seeded
    from the same-parity predecessors by geometric extrapolation towards the
    golden Siegel parameter.
    """
    if not (3 <= m_from <= m_to <= 16):
        raise InvalidInput("need 3 <= m_from <= m_to <= 16")
    if branch not in (PLUS, MINUS):
        raise InvalidInput(f"unknown branch {branch!r}")
    out = []
    for m in range(m_from, m_to + 1):
        if cache is not None:
            hit = cache.get(SIEGEL, m, branch, theta)
            if hit is not None:
                out.append(hit)
                continue
        try:
            center = pipeline_center(m, branch, cache, theta)
            sp = find_siegel_param(center.period, theta, center.value, 0j, precision=precision)
        except (NoConvergence, CycleCollision, CycleUnavailable, BranchLost, WrongPeriod) as exc:
            raise type(exc)(f"m={m}: {exc}") from exc
        sp = replace(sp, m=m, branch=branch, seed_chain=f"center m={m} [{center.seed_chain}]")
        if cache is not None:
            cache.put(sp)
        out.append(sp)
    return out


def golden_siegel_parameter(theta: float = GOLDEN) -> complex:
    return cardioid_point(cmath.exp(2j * math.pi * theta))


def pipeline_periods(ms: Iterable[int]) -> list[int]:
    return [renormalization_period(m) for m in ms]
