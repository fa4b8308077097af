"""Siegel disks of z^2 + c from the critical orbit.

For bounded-type rotation numbers the closure of the critical orbit is the
disk boundary, so the orbit points ordered by internal angle {k theta}
give a polygonal approximation of it.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from shapely.geometry import LinearRing

from . import _kernels
from .ddcomplex import DDComplex
from .errors import CycleUnavailable, InvalidInput, OrbitEscaped, SelfIntersection
from .numerics import DEFAULT_ESCAPE_RADIUS, cardioid_point, cycle_of
from .paramsearch import SIEGEL, SIEGEL_TOL, FoundParameter, multiplier_residual

MIN_POINTS = 64


def siegel_quadratic_param(theta: float) -> complex:
    """c for which the fixed point e^{2 pi i theta}/2 has multiplier e^{2 pi i theta}."""
    return cardioid_point(cmath.exp(2j * math.pi * theta))


def shoelace_area(xs: np.ndarray, ys: np.ndarray) -> float:
    # fsum makes the result independent of where the vertex list starts
    terms = np.concatenate([xs * np.roll(ys, -1), -(ys * np.roll(xs, -1))])
    return 0.5 * abs(math.fsum(terms))


@dataclass(frozen=True, eq=False)
class SiegelDisk:
    c: complex
    theta: float
    n_points: int
    boundary: np.ndarray
    area: float

    @property
    def xs(self) -> np.ndarray:
        return self.boundary.real.copy()

    @property
    def ys(self) -> np.ndarray:
        return self.boundary.imag.copy()

    @property
    def alpha(self) -> complex:
        return cmath.exp(2j * math.pi * self.theta) / 2

    def bbox(self) -> tuple[float, float, float, float]:
        b = self.boundary
        return b.real.min(), b.real.max(), b.imag.min(), b.imag.max()

    def contains(self, z) -> bool:
        return siegel_membership(self, z)

    def contains_many(self, zs) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        return _kernels.points_in_polygon(zs.real.copy(), zs.imag.copy(), self.xs, self.ys)


def critical_orbit(c: complex, n: int, escape_radius: float = DEFAULT_ESCAPE_RADIUS) -> np.ndarray:
    out = np.empty(n, dtype=complex)
    z = 0j
    r2 = escape_radius * escape_radius
    for k in range(n):
        if z.real * z.real + z.imag * z.imag > r2:
            raise OrbitEscaped(f"critical orbit escaped at step {k}")
        out[k] = z
        z = z * z + c
    return out


def siegel_boundary(c, theta: float, n_points: int = 2 ** 14,
                    escape_radius: float = DEFAULT_ESCAPE_RADIUS,
                    check_simple: bool = True) -> SiegelDisk:
    """Boundary polygon: vertex k is the critical-orbit point with the k-th smallest {j theta}."""
    if n_points < MIN_POINTS:
        raise InvalidInput(f"n_points must be at least {MIN_POINTS}")
    c = complex(c)
    orbit = critical_orbit(c, n_points, escape_radius)
    angles = np.mod(np.arange(n_points) * theta, 1.0)
    order = np.argsort(angles, kind="stable")
    poly = orbit[order]
    if np.unique(poly).size != n_points:
        raise SelfIntersection("repeated boundary vertex")
    if check_simple and not LinearRing(np.c_[poly.real, poly.imag]).is_simple:
        raise SelfIntersection("boundary polygon is not simple")
    area = shoelace_area(poly.real, poly.imag)
    return SiegelDisk(c, theta, n_points, poly, area)


def siegel_membership(disk: SiegelDisk, z) -> bool:
    z = complex(z)
    return bool(_kernels.point_in_polygon(z.real, z.imag, disk.xs, disk.ys))


def renorm_siegel_center(zm: FoundParameter, theta: float):
    """The point of the neutral period-p cycle of f_{z_m} closest to 0."""
    if zm.label != SIEGEL:
        raise InvalidInput("renorm_siegel_center needs a SiegelParam")
    c = zm.value
    z = zm.cycle_value
    if z is None:
        if zm.period != 1:
            raise CycleUnavailable("no stored cycle point")
        z = cmath.exp(2j * math.pi * theta) / 2
        if isinstance(c, DDComplex):
            z = DDComplex.coerce(z)
    cyc = cycle_of(c, z, zm.period)
    w = min(cyc.points, key=abs)
    if abs(w) == 0 or multiplier_residual(c, w, zm.period, theta) >= SIEGEL_TOL:
        raise CycleUnavailable("stored cycle does not carry the target multiplier")
    return w
