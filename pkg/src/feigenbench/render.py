"""Escape-time rasters of Julia sets and parameter windows.

Pixels are sampled at their centres, row 0 at the top. Escape counts are
mapped to gray levels with integer arithmetic only, so PGM output is bit
exact for fixed inputs. Bounded pixels are black (0).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DegenerateWindow, InvalidInput
from .numerics import DEFAULT_ESCAPE_RADIUS

MIN_SIDE = 16


@dataclass(frozen=True)
class Window:
    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        vals = (self.x0, self.x1, self.y0, self.y1)
        if not all(math.isfinite(v) for v in vals) or self.x1 <= self.x0 or self.y1 <= self.y0:
            raise DegenerateWindow(f"degenerate window {vals}")

    @classmethod
    def centered(cls, center: complex, half_width: float, half_height: float | None = None):
        hh = half_width if half_height is None else half_height
        return cls(center.real - half_width, center.real + half_width,
                   center.imag - hh, center.imag + hh)

    def contains(self, z: complex) -> bool:
        return self.x0 <= z.real < self.x1 and self.y0 < z.imag <= self.y1


@dataclass(eq=False)
class Raster:
    counts: np.ndarray
    cap: int
    window: Window
    overlay: np.ndarray | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def height(self) -> int:
        return self.counts.shape[0]

    @property
    def width(self) -> int:
        return self.counts.shape[1]

    @property
    def bounded(self) -> np.ndarray:
        return self.counts >= self.cap

    def gray(self) -> np.ndarray:
        """uint8 levels: 0 for bounded, 255 for immediate escape, integer-scaled between."""
        c = np.minimum(self.counts, self.cap).astype(np.int64)
        g = 1 + (254 * (self.cap - c)) // max(self.cap, 1)
        g[c >= self.cap] = 0
        g = g.astype(np.uint8)
        if self.overlay is not None:
            mask = self.overlay > 0
            g[mask] = self.overlay[mask]
        return g

    def pixel_area(self) -> float:
        w = self.window
        return (w.x1 - w.x0) * (w.y1 - w.y0) / (self.width * self.height)


def _check_size(width: int, height: int):
    if width < MIN_SIDE or height < MIN_SIDE:
        raise InvalidInput(f"resolution must be at least {MIN_SIDE}x{MIN_SIDE}")


def render_julia(c: complex, window: Window, width: int, height: int, cap: int = 1000,
                 escape_radius: float = DEFAULT_ESCAPE_RADIUS) -> Raster:
    _check_size(width, height)
    c = complex(c)
    dx = (window.x1 - window.x0) / width
    dy = (window.y1 - window.y0) / height
    counts = _kernels.escape_counts_julia(c.real, c.imag, window.x0, window.y1, dx, dy,
                                          width, height, int(cap), float(escape_radius))
    return Raster(counts, int(cap), window)


def render_parameter_window(window: Window, width: int, height: int, cap: int = 1000,
                            markers=(), escape_radius: float = DEFAULT_ESCAPE_RADIUS) -> Raster:
    """Parameter-plane raster (orbit of 0 under z^2 + c); markers drawn as crosses."""
    _check_size(width, height)
    dx = (window.x1 - window.x0) / width
    dy = (window.y1 - window.y0) / height
    counts = _kernels.escape_counts_parameter(window.x0, window.y1, dx, dy, width, height,
                                              int(cap), float(escape_radius))
    r = Raster(counts, int(cap), window)
    for mk in markers:
        z = complex(getattr(mk, "c", mk))
        if not window.contains(z):
            msg = f"marker {z} lies outside the window"
            warnings.warn(msg)
            r.warnings.append(msg)
            continue
        draw_cross(r, z)
    return r


def world_to_pixel(z: complex, window: Window, width: int, height: int) -> tuple[int, int]:
    """(column, row) of the pixel containing z."""
    z = complex(z)
    col = math.floor((z.real - window.x0) / (window.x1 - window.x0) * width)
    row = math.floor((window.y1 - z.imag) / (window.y1 - window.y0) * height)
    return col, row


def pixel_center(col: int, row: int, window: Window, width: int, height: int) -> complex:
    dx = (window.x1 - window.x0) / width
    dy = (window.y1 - window.y0) / height
    return complex(window.x0 + (col + 0.5) * dx, window.y1 - (row + 0.5) * dy)


def _ensure_overlay(r: Raster) -> np.ndarray:
    if r.overlay is None:
        r.overlay = np.zeros(r.counts.shape, dtype=np.uint8)
    return r.overlay


def _plot(r: Raster, col: int, row: int, level: int):
    if 0 <= col < r.width and 0 <= row < r.height:
        _ensure_overlay(r)[row, col] = level


def draw_polyline(r: Raster, points, level: int = 200, closed: bool = True):
    pts = [complex(p) for p in points]
    if closed and pts:
        pts.append(pts[0])
    for a, b in zip(pts, pts[1:]):
        ca = world_to_pixel(a, r.window, r.width, r.height)
        cb = world_to_pixel(b, r.window, r.width, r.height)
        steps = max(abs(cb[0] - ca[0]), abs(cb[1] - ca[1]), 1)
        for k in range(steps + 1):
            z = a + (b - a) * (k / steps)
            _plot(r, *world_to_pixel(z, r.window, r.width, r.height), level)


def draw_circle(r: Raster, center: complex, radius: float, level: int = 128, n: int = 720):
    t = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    draw_polyline(r, center + radius * np.exp(1j * t), level)


def draw_cross(r: Raster, z: complex, size: int = 3, level: int = 255):
    col, row = world_to_pixel(z, r.window, r.width, r.height)
    for d in range(-size, size + 1):
        _plot(r, col + d, row, level)
        _plot(r, col, row + d, level)


def overlay_restriction(r: Raster, restriction) -> Raster:
    """Draw dV and the traced dU onto a raster."""
    draw_circle(r, restriction.v_center, restriction.v_radius, 128)
    draw_polyline(r, restriction.u_boundary, 200)
    return r


def pgm_bytes(r: Raster) -> bytes:
    g = r.gray()
    header = f"P5\n{r.width} {r.height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(g).tobytes()


def write_pgm(r: Raster, path) -> None:
    with open(path, "wb") as fh:
        fh.write(pgm_bytes(r))


def write_png(r: Raster, path) -> None:
    try:
        from PIL import Image
    except ImportError as exc:  # optional dependency
        raise InvalidInput("PNG output needs Pillow (pip install 'artifact[png]')") from exc
    Image.fromarray(r.gray(), mode="L").save(path)


def read_pgm(data: bytes) -> np.ndarray:
    parts = data.split(b"\n", 3)
    if parts[0] != b"P5":
        raise InvalidInput("not a binary PGM")
    w, h = map(int, parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w)
