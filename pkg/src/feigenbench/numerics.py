"""Orbit iteration for z -> z**2 + c, derivative recursions and damped Newton.

Works on plain ``complex`` (Double) or :class:`DDComplex` (Extended) values;
mixing the two promotes to Extended.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .ddcomplex import DDComplex, Precision, common_precision, promote
from .errors import DerivativeVanished, InvalidInput, NoConvergence, Overflow

DEFAULT_ESCAPE_RADIUS = 100.0
_OVERFLOW_LIMIT = 1e150


class OrbitStatus(enum.Enum):
    BOUNDED = "bounded"
    ESCAPED = "escaped"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class OrbitResult:
    final: complex | DDComplex
    steps: int
    status: OrbitStatus
    escape_step: int | None = None


@dataclass(frozen=True)
class CycleData:
    period: int
    points: tuple
    multiplier: complex | DDComplex


def _finite(x) -> bool:
    if isinstance(x, DDComplex):
        return x.is_finite()
    return math.isfinite(x.real) and math.isfinite(x.imag)


def _abs2(x) -> float:
    if isinstance(x, DDComplex):
        x = complex(x)
    return x.real * x.real + x.imag * x.imag


def _square(z):
    return z.square() if isinstance(z, DDComplex) else z * z


def iterate_orbit(c, z0, cap: int, escape_radius: float = DEFAULT_ESCAPE_RADIUS) -> OrbitResult:
    """Iterate z -> z**2 + c from ``z0`` for at most ``cap`` steps.

    Escape at step k means |z_k| > escape_radius with all earlier iterates
    inside; the test compares squared moduli.
    """
    if cap < 0:
        raise InvalidInput("cap must be non-negative")
    if escape_radius < 2:
        raise InvalidInput("escape_radius must be at least 2")
    if not (_finite(c) and _finite(z0)):
        raise InvalidInput("non-finite input")
    prec = common_precision(c, z0)
    c = promote(c, prec)
    z = promote(z0, prec)
    r2 = escape_radius * escape_radius
    for k in range(cap + 1):
        if _abs2(z) > r2:
            return OrbitResult(z, k, OrbitStatus.ESCAPED, k)
        if k == cap:
            break
        z = _square(z) + c
    return OrbitResult(z, cap, OrbitStatus.BOUNDED)


def orbit_with_derivatives(c, z0, n: int):
    """Return (f^n(z0), d f^n/d z0, d f^n/d c)."""
    if n < 0:
        raise InvalidInput("n must be non-negative")
    prec = common_precision(c, z0)
    c = promote(c, prec)
    z = promote(z0, prec)
    dz = promote(1.0, prec)
    dc = promote(0.0, prec)
    for _ in range(n):
        dz = 2.0 * z * dz
        dc = 2.0 * z * dc + 1.0
        z = _square(z) + c
        if not _finite(z) or _abs2(z) > _OVERFLOW_LIMIT:
            raise Overflow("orbit left representable range")
    if not (_finite(dz) and _finite(dc)) or max(_abs2(dz), _abs2(dc)) > _OVERFLOW_LIMIT ** 2:
        raise Overflow("derivative left representable range")
    return z, dz, dc


def orbit_jets(c, z0, n: int):
    """Value plus first and mixed second derivatives of f^n.

    Returns (z_n, dz, dc, dzz, dzc) where dz = d/dz0, dc = d/dc,
    dzz = d^2/dz0^2 and dzc = d^2/dz0 dc.
    """
    prec = common_precision(c, z0)
    c = promote(c, prec)
    z = promote(z0, prec)
    one = promote(1.0, prec)
    dz, dc = one, promote(0.0, prec)
    dzz, dzc = promote(0.0, prec), promote(0.0, prec)
    for _ in range(n):
        dzz = 2.0 * (dz * dz + z * dzz)
        dzc = 2.0 * (dc * dz + z * dzc)
        dz = 2.0 * z * dz
        dc = 2.0 * z * dc + 1.0
        z = _square(z) + c
        if not _finite(z) or _abs2(z) > _OVERFLOW_LIMIT:
            raise Overflow("orbit left representable range")
    return z, dz, dc, dzz, dzc


def cardioid_point(multiplier: complex) -> complex:
    """Parameter whose fixed point has the given multiplier: c = l/2 - l^2/4."""
    return multiplier / 2 - multiplier * multiplier / 4


def cycle_of(c, z, period: int) -> CycleData:
    """Orbit points z, f(z), ... f^{p-1}(z) and the cycle multiplier."""
    pts = [z]
    mult = 1.0
    w = z
    for _ in range(period):
        mult = 2.0 * w * mult
        w = _square(w) + c
        pts.append(w)
    return CycleData(period, tuple(pts[:-1]), mult)


def newton_root(func: Callable, seed, tol: float, max_steps: int = 60,
                max_halvings: int = 20, stall_ulps: float = 4.0):
    """Damped Newton for an analytic ``func(x) -> (value, derivative)``.

    The step is halved while |value| fails to decrease strictly. Raises
    DerivativeVanished when |derivative| < 1e3 ulp of the working level and
    NoConvergence (``stalled=True``) when progress stops at the precision
    floor; the last iterate is attached to the exception.
    """
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    x = seed
    value, deriv = func(x)
    for _ in range(max_steps):
        res = abs(value)
        if res < tol:
            return x
        eps = common_precision(x, value).eps
        if abs(deriv) < 1e3 * eps:
            raise DerivativeVanished("derivative vanished", last=x)
        step = value / deriv
        lam = 1.0
        for _ in range(max_halvings + 1):
            x_new = x - step * lam
            try:
                v_new, d_new = func(x_new)
            except Overflow:
                lam *= 0.5
                continue
            if _finite(v_new) and abs(v_new) < res:
                break
            lam *= 0.5
        else:
            raise NoConvergence("no decrease after step halving", last=x, stalled=True)
        if abs(step) * lam <= stall_ulps * eps * max(abs(x), 1e-300) and abs(v_new) >= tol:
            raise NoConvergence("stalled at precision floor", last=x_new, stalled=True)
        x, value, deriv = x_new, v_new, d_new
    if abs(value) < tol:
        return x
    raise NoConvergence(f"no convergence in {max_steps} steps", last=x)


__all__ = [
    "DEFAULT_ESCAPE_RADIUS", "OrbitStatus", "OrbitResult", "CycleData", "Precision",
    "iterate_orbit", "orbit_with_derivatives", "orbit_jets", "cycle_of", "newton_root",
    "cardioid_point",
]
