"""Quadratic-like restrictions g = f^p : U -> V and orbit classifiers.

V is a round disk; U is the component of g^{-1}(V) around the critical
point, whose boundary is traced as the connected double lift of the circle
dV. Landing and return statistics run the full map f, not g.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    InvalidInput, InvalidStart, NotClosed, NotCompactlyContained, TraceDiverged,
)
from .numerics import DEFAULT_ESCAPE_RADIUS
from .paramsearch import FoundParameter
from .siegel import shoelace_area

DEFAULT_RADIUS_MULTIPLIER = math.sqrt(38.0)
MIN_K = 256

LANDED, ESCAPED, UNDETERMINED = "Landed", "Escaped", "Undetermined"
RETURNED, ESCAPED_FOREVER = "Returned", "EscapedForever"
_LANDING_NAMES = {_kernels.LANDED: LANDED, _kernels.ESCAPED: ESCAPED,
                  _kernels.UNDETERMINED: UNDETERMINED}
_RETURN_NAMES = {_kernels.RETURNED: RETURNED, _kernels.ESCAPED_FOREVER: ESCAPED_FOREVER,
                 _kernels.UNDETERMINED: UNDETERMINED}


@dataclass(frozen=True)
class Outcome:
    kind: str
    step: int | None = None


@dataclass(frozen=True, eq=False)
class QLRestriction:
    """g = f_c^period restricted to U -> V, V = disk(v_center, v_radius)."""

    c: complex
    period: int
    w: complex
    v_center: complex
    v_radius: float
    u_boundary: np.ndarray
    param: FoundParameter | None = None
    escape_radius: float = DEFAULT_ESCAPE_RADIUS
    landing_target: str = "V"

    @property
    def u_xs(self) -> np.ndarray:
        return self.u_boundary.real.copy()

    @property
    def u_ys(self) -> np.ndarray:
        return self.u_boundary.imag.copy()

    @property
    def v_area(self) -> float:
        return math.pi * self.v_radius ** 2

    @property
    def u_area(self) -> float:
        return shoelace_area(self.u_boundary.real, self.u_boundary.imag)

    @property
    def annulus_area(self) -> float:
        return self.v_area - self.u_area

    def in_v(self, z) -> bool:
        return abs(complex(z) - self.v_center) < self.v_radius

    def in_u(self, z) -> bool:
        z = complex(z)
        return bool(_kernels.point_in_polygon(z.real, z.imag, self.u_xs, self.u_ys))

    def in_annulus_many(self, zs) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        in_v = np.abs(zs - self.v_center) < self.v_radius
        in_u = _kernels.points_in_polygon(zs.real.copy(), zs.imag.copy(), self.u_xs, self.u_ys)
        return in_v & ~in_u

    def g(self, z) -> complex:
        return complex(_kernels.iterate_derivs(complex(z), self.c, self.period)[0])


def _newton_preimage(c, period, z, target, tol, steps=30):
    """Newton on g(z) = target; stops at ``tol`` or when the step stagnates at
    the evaluation noise floor; the best iterate is returned if within ``tol``."""
    best = None
    for _ in range(steps):
        gz, d1, _ = _kernels.iterate_derivs(z, c, period)
        if not (math.isfinite(gz.real) and math.isfinite(gz.imag)) or d1 == 0:
            return None
        r = abs(gz - target)
        if best is None or r < best[0]:
            best = (r, z)
        if r < 0.01 * tol:
            break
        dz = (gz - target) / d1
        if abs(dz) < 1e-14 * abs(z) and r < tol:
            break
        z -= dz
    if best is not None and best[0] < tol:
        return best[1]
    return None


def _start_preimage(c, period, target, tol):
    """Preimage of ``target`` on the critical branch: start from the local
    square-root at the critical value and continue along the segment to it."""
    g0, _, g2 = _kernels.iterate_derivs(0j, c, period)
    if g2 == 0:
        raise TraceDiverged("critical point of g is degenerate")
    n_seg = 64
    z = None
    for k in range(1, n_seg + 1):
        s = (k / n_seg) ** 2
        v = g0 + s * (target - g0)
        if z is None:
            z = cmath.sqrt(2 * (v - g0) / g2)
        else:
            # first-order predictor along the segment
            _, d1, _ = _kernels.iterate_derivs(z, c, period)
            z = z + (v - v_prev) / d1
        z = _newton_preimage(c, period, z, v, tol)
        if z is None:
            raise TraceDiverged("lost the critical branch while seeding the trace")
        v_prev = v
    return z


def trace_U_boundary(c: complex, period: int, v_center: complex, v_radius: float,
                     K: int = 512, max_refine: int = 12) -> np.ndarray:
    """Connected double lift of dV through g = f_c^period, as 2K vertices.

    The angle of dV advances through 4 pi in 2K steps; each step predicts
    by dz = v'(t) dt / g'(z) (subdivided when the corrector fails) and
    corrects by Newton on g(z) = v(t).
    """
    if K < 1:
        raise InvalidInput("K must be positive")
    c = complex(c)
    v_center = complex(v_center)
    tol = 1e-10 * v_radius

    def v_of(t):
        return v_center + v_radius * cmath.exp(1j * t)

    z0 = _start_preimage(c, period, v_of(0.0), tol)
    dt = 4 * math.pi / (2 * K)
    pts = np.empty(2 * K, dtype=complex)
    z = z0
    for k in range(2 * K):
        pts[k] = z
        t0 = k * dt
        sub = 1
        while True:
            zz, ok = z, True
            for j in range(sub):
                ta = t0 + j * dt / sub
                tb = ta + dt / sub
                _, d1, _ = _kernels.iterate_derivs(zz, c, period)
                step = (v_of(tb) - v_of(ta)) / d1
                pred = zz + step
                zz = _newton_preimage(c, period, pred, v_of(tb), tol)
                # a correction comparable to the step itself signals a branch jump
                if zz is None or abs(zz - pred) > 0.3 * abs(step):
                    ok = False
                    break
            if ok:
                break
            sub *= 2
            if sub > 2 ** max_refine:
                raise TraceDiverged(f"corrector failed at step {k}")
        z = zz
    gap = abs(z - z0)
    if gap > 1e-9 * v_radius:
        raise NotClosed(f"trace endpoint misses start by {gap:.3g}")
    return pts


def winding_number(points: np.ndarray, center: complex) -> int:
    ang = np.angle(np.asarray(points) - center)
    d = np.diff(np.append(ang, ang[0]))
    d = (d + np.pi) % (2 * np.pi) - np.pi
    return int(round(d.sum() / (2 * np.pi)))


def restriction_for(c: complex, period: int, v_center: complex, v_radius: float,
                    K: int = 512, w: complex = 0j, param: FoundParameter | None = None,
                    escape_radius: float = DEFAULT_ESCAPE_RADIUS,
                    landing_target: str = "V") -> QLRestriction:
    """Trace and validate a restriction for an explicit disk V."""
    if K < MIN_K:
        raise InvalidInput(f"K must be at least {MIN_K}")
    if v_radius <= 0:
        raise InvalidInput("V radius must be positive")
    if landing_target not in ("V", "U"):
        raise InvalidInput("landing_target must be 'V' or 'U'")
    c = complex(c)
    g0 = _kernels.iterate_derivs(0j, c, period)[0]
    if abs(g0 - v_center) >= v_radius:
        raise NotCompactlyContained("critical value of g lies outside V")
    u = trace_U_boundary(c, period, v_center, v_radius, K)
    if np.any(np.abs(u - v_center) >= v_radius):
        raise NotCompactlyContained("traced U leaves V")
    if not _kernels.point_in_polygon(0.0, 0.0, u.real.copy(), u.imag.copy()):
        raise TraceDiverged("traced U does not enclose the critical point")
    return QLRestriction(c, period, complex(w), complex(v_center), float(v_radius), u,
                         param, escape_radius, landing_target)


def build_restriction(zm: FoundParameter, w, K: int = 512,
                      radius_multiplier: float = DEFAULT_RADIUS_MULTIPLIER,
                      center_mode: str = "zero", landing_target: str = "V",
                      escape_radius: float = DEFAULT_ESCAPE_RADIUS) -> QLRestriction:
    """Restriction of f_{z_m}^p to U -> V with V = disk(0 or w, radius_multiplier |w|)."""
    if center_mode not in ("zero", "w"):
        raise InvalidInput("center_mode must be 'zero' or 'w'")
    w = complex(w)
    center = 0j if center_mode == "zero" else w
    return restriction_for(complex(zm.c), zm.period, center, radius_multiplier * abs(w), K,
                           w=w, param=zm, escape_radius=escape_radius,
                           landing_target=landing_target)


# ---------------------------------------------------------------- classify

def classify_landing_many(zs, r: QLRestriction, cap: int) -> tuple[np.ndarray, np.ndarray]:
    """Outcome codes (see _kernels) and step counts for each start."""
    zs = np.asarray(zs, dtype=complex).ravel()
    use_poly = r.landing_target == "U"
    return _kernels.classify_landing_batch(
        zs.real.copy(), zs.imag.copy(), r.c.real, r.c.imag, r.v_center.real, r.v_center.imag,
        r.v_radius, r.escape_radius, int(cap), use_poly, r.u_xs, r.u_ys)


def classify_return_many(zs, r: QLRestriction, cap: int) -> tuple[np.ndarray, np.ndarray]:
    zs = np.asarray(zs, dtype=complex).ravel()
    return _kernels.classify_return_batch(
        zs.real.copy(), zs.imag.copy(), r.c.real, r.c.imag, r.v_center.real, r.v_center.imag,
        r.v_radius, r.escape_radius, int(cap))


def classify_landing(z0, r: QLRestriction, cap: int) -> Outcome:
    """First entry of the f-orbit of z0 into the landing target (default V)."""
    if cap < 1:
        raise InvalidInput("cap must be at least 1")
    code, step = classify_landing_many([z0], r, cap)
    kind = _LANDING_NAMES[int(code[0])]
    return Outcome(kind, None if kind == UNDETERMINED else int(step[0]))


def classify_return(z0, r: QLRestriction, cap: int) -> Outcome:
    """Whether the f-orbit of an annulus point comes back to V (n >= 1) before escaping."""
    if cap < 0:
        raise InvalidInput("cap must be non-negative")
    if not r.in_annulus_many([z0])[0]:
        raise InvalidStart("start point is not in the annulus V minus U")
    code, step = classify_return_many([z0], r, cap)
    kind = _RETURN_NAMES[int(code[0])]
    return Outcome(kind, None if kind == UNDETERMINED else int(step[0]))
