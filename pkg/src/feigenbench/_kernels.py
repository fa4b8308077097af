"""Compiled inner loops.

All kernels iterate ``z -> z*z + c`` written out in real arithmetic exactly
as CPython evaluates complex ``z*z + c`` (re = x*x - y*y + cr,
im = (x*y + y*x) + ci), so scalar reference loops reproduce them bit for bit.
"""
import math

import numba as nb
import numpy as np

LANDED = 0
ESCAPED = 1
UNDETERMINED = 2
RETURNED = 0
ESCAPED_FOREVER = 1


@nb.njit(cache=True, nogil=True)
def point_in_polygon(x, y, px, py):
    """Even-odd crossing test against a closed polygon (implicit last edge)."""
    n = px.shape[0]
    inside = False
    j = n - 1
    for i in range(n):
        yi = py[i]
        yj = py[j]
        if (yi > y) != (yj > y):
            xcross = px[i] + (y - yi) * (px[j] - px[i]) / (yj - yi)
            if x < xcross:
                inside = not inside
        j = i
    return inside


@nb.njit(cache=True, nogil=True)
def points_in_polygon(xs, ys, px, py):
    out = np.empty(xs.shape[0], dtype=np.bool_)
    for k in range(xs.shape[0]):
        out[k] = point_in_polygon(xs[k], ys[k], px, py)
    return out


@nb.njit(cache=True, nogil=True)
def _in_target(x, y, vx, vy, r2, use_poly, px, py):
    dx = x - vx
    dy = y - vy
    if dx * dx + dy * dy >= r2:
        return False
    if use_poly:
        return point_in_polygon(x, y, px, py)
    return True


@nb.njit(cache=True, nogil=True)
def classify_landing_batch(zr, zi, cr, ci, vx, vy, vr, esc, cap, use_poly, px, py):
    """Outcome codes LANDED / ESCAPED / UNDETERMINED and the step count."""
    n = zr.shape[0]
    out = np.empty(n, dtype=np.int8)
    steps = np.empty(n, dtype=np.int64)
    r2 = vr * vr
    e2 = esc * esc
    for k in range(n):
        x = zr[k]
        y = zi[k]
        res = UNDETERMINED
        s = cap
        for j in range(cap + 1):
            if _in_target(x, y, vx, vy, r2, use_poly, px, py):
                res = LANDED
                s = j
                break
            if x * x + y * y > e2:
                res = ESCAPED
                s = j
                break
            if j == cap:
                break
            x, y = x * x - y * y + cr, (x * y + y * x) + ci
        out[k] = res
        steps[k] = s
    return out, steps


@nb.njit(cache=True, nogil=True)
def classify_return_batch(zr, zi, cr, ci, vx, vy, vr, esc, cap):
    """Outcome codes RETURNED / ESCAPED_FOREVER / UNDETERMINED and steps."""
    n = zr.shape[0]
    out = np.empty(n, dtype=np.int8)
    steps = np.empty(n, dtype=np.int64)
    r2 = vr * vr
    e2 = esc * esc
    for k in range(n):
        x = zr[k]
        y = zi[k]
        res = UNDETERMINED
        s = cap
        for j in range(1, cap + 1):
            x, y = x * x - y * y + cr, (x * y + y * x) + ci
            dx = x - vx
            dy = y - vy
            if dx * dx + dy * dy < r2:
                res = RETURNED
                s = j
                break
            if x * x + y * y > e2:
                res = ESCAPED_FOREVER
                s = j
                break
        out[k] = res
        steps[k] = s
    return out, steps


@nb.njit(cache=True, nogil=True)
def escape_counts_julia(cr, ci, x0, y1, dx, dy, w, h, cap, esc):
    """Escape step per pixel (cap when the orbit stays bounded); row 0 is the top."""
    out = np.empty((h, w), dtype=np.int64)
    e2 = esc * esc
    for j in range(h):
        y0 = y1 - (j + 0.5) * dy
        for i in range(w):
            x = x0 + (i + 0.5) * dx
            y = y0
            k = 0
            while k < cap and x * x + y * y <= e2:
                x, y = x * x - y * y + cr, (x * y + y * x) + ci
                k += 1
            out[j, i] = k if x * x + y * y > e2 else cap
    return out


@nb.njit(cache=True, nogil=True)
def escape_counts_parameter(x0, y1, dx, dy, w, h, cap, esc):
    out = np.empty((h, w), dtype=np.int64)
    e2 = esc * esc
    for j in range(h):
        ci = y1 - (j + 0.5) * dy
        for i in range(w):
            cr = x0 + (i + 0.5) * dx
            x = 0.0
            y = 0.0
            k = 0
            while k < cap and x * x + y * y <= e2:
                x, y = x * x - y * y + cr, (x * y + y * x) + ci
                k += 1
            out[j, i] = k if x * x + y * y > e2 else cap
    return out


@nb.njit(cache=True, nogil=True)
def blaschke_lift(x, alpha):
    t = 2.0 * math.pi * x
    return alpha + x - math.atan2(math.sin(t), 3.0 - math.cos(t)) / math.pi


@nb.njit(cache=True, nogil=True)
def blaschke_iterate(x0, n, alpha):
    """Integer and fractional parts of F^n(x0) - x0 for the Blaschke lift."""
    fl0 = math.floor(x0)
    x = x0 - fl0
    k = 0
    for _ in range(n):
        x = blaschke_lift(x, alpha)
        f = math.floor(x)
        k += int(f)
        x -= f
    frac = x - (x0 - fl0)
    f = math.floor(frac)
    return k + int(f), frac - f


@nb.njit(cache=True, nogil=True)
def blaschke_orbit(x0, n, alpha):
    """Angles (in [0,1)) of the first n+1 orbit points."""
    out = np.empty(n + 1)
    x = x0 - math.floor(x0)
    out[0] = x
    for k in range(1, n + 1):
        x = blaschke_lift(x, alpha)
        x -= math.floor(x)
        out[k] = x
    return out


@nb.njit(cache=True, nogil=True)
def iterate_derivs(z, c, n):
    """(f^n(z), (f^n)'(z), (f^n)''(z)) in complex Double."""
    d1 = 1.0 + 0.0j
    d2 = 0.0 + 0.0j
    for _ in range(n):
        d2 = 2.0 * (d1 * d1 + z * d2)
        d1 = 2.0 * z * d1
        z = z * z + c
    return z, d1, d2


@nb.njit(cache=True, nogil=True)
def iterate_points(zs, c, n):
    out = np.empty_like(zs)
    for k in range(zs.shape[0]):
        z = zs[k]
        for _ in range(n):
            z = z * z + c
        out[k] = z
    return out


@nb.njit(cache=True, nogil=True)
def first_accepted(cx, cy, dcx, dcy, dr, use_disk, poly_mode, px, py):
    """Index of the first acceptable candidate in each row, or -1.

    A candidate is acceptable when it lies in the disk (if ``use_disk``) and
    inside (poly_mode = 1) or outside (poly_mode = -1) the polygon.
    """
    n, m = cx.shape
    out = np.full(n, -1, dtype=np.int64)
    r2 = dr * dr
    for i in range(n):
        for j in range(m):
            x = cx[i, j]
            y = cy[i, j]
            if use_disk:
                ddx = x - dcx
                ddy = y - dcy
                if ddx * ddx + ddy * ddy >= r2:
                    continue
            if poly_mode != 0:
                inside = point_in_polygon(x, y, px, py)
                if (poly_mode == 1) != inside:
                    continue
            out[i] = j
            break
    return out
