"""Continued fractions, stationary rotation numbers and circle-map rotation numbers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidInput, NotHomeomorphism

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RotationNumber:
    """A rotation number given by its expansion.

    kind is one of ``"golden"`` (standard expansion [1, 1, 1, ...]),
    ``"stationary"`` (modified expansion [N, N, N, ...]_*) or ``"explicit"``
    (finite standard expansion with the given entries).
    """

    kind: str
    N: int | None = None
    entries: tuple[int, ...] = ()

    @classmethod
    def golden(cls) -> "RotationNumber":
        return cls("golden")

    @classmethod
    def stationary(cls, N: int) -> "RotationNumber":
        theta_stationary(N)
        return cls("stationary", N=N)

    @classmethod
    def explicit(cls, entries: Sequence[int]) -> "RotationNumber":
        entries = tuple(int(a) for a in entries)
        if not entries or any(a < 1 for a in entries):
            raise InvalidInput("explicit entries must be positive integers")
        return cls("explicit", entries=entries)

    @property
    def value(self) -> float:
        if self.kind == "golden":
            return GOLDEN
        if self.kind == "stationary":
            return theta_stationary(self.N)
        x = 0.0
        for a in reversed(self.entries):
            x = 1.0 / (a + x)
        return x


@dataclass(frozen=True)
class Approximant:
    p: int
    q: int
    m: int

    @property
    def value(self) -> float:
        return self.p / self.q


def theta_stationary(N: int) -> float:
    """Fixed point of the modified Gauss map with all entries N: (N - sqrt(N^2-4))/2."""
    if N < 3:
        raise InvalidInput("stationary rotation numbers need N >= 3 (N = 2 gives 1)")
    # rationalised form avoids cancellation for large N
    return 2.0 / (N + math.sqrt(N * N - 4.0))


def gauss_modified(theta: float) -> float:
    """theta -> -1/theta mod 1, in [0, 1)."""
    if theta == 0:
        raise ZeroDivisionError("gauss_modified is undefined at 0")
    y = -1.0 / theta
    return y - math.floor(y)


def gauss_standard(theta: float) -> float:
    if theta == 0:
        raise ZeroDivisionError("gauss_standard is undefined at 0")
    y = 1.0 / theta
    return y - math.floor(y)


def convergents(rho: RotationNumber, m_max: int) -> list[Approximant]:
    """Approximants p_m/q_m for m = 1..m_max.

    Standard expansions use q_m = a_m q_{m-1} + q_{m-2}; with all entries 1
    this gives q_1 = 1, q_2 = 2, q_3 = 3, ... The stationary modified
    expansion uses q_m = N q_{m-1} - q_{m-2}.
    """
    if m_max < 1:
        raise InvalidInput("m_max must be at least 1")
    out = []
    if rho.kind == "stationary":
        p2, q2, p1, q1 = -1, 0, 0, 1
        for m in range(1, m_max + 1):
            p, q = rho.N * p1 - p2, rho.N * q1 - q2
            out.append(Approximant(p, q, m))
            p2, q2, p1, q1 = p1, q1, p, q
        return out
    if rho.kind == "explicit" and m_max > len(rho.entries):
        raise InvalidInput("explicit expansion is shorter than m_max")
    p2, q2, p1, q1 = 1, 0, 0, 1
    for m in range(1, m_max + 1):
        a = 1 if rho.kind == "golden" else rho.entries[m - 1]
        p, q = a * p1 + p2, a * q1 + q2
        out.append(Approximant(p, q, m))
        p2, q2, p1, q1 = p1, q1, p, q
    return out


def golden_q(m: int) -> int:
    """Golden-mean denominators with q_0 = q_1 = 1 (q_m = F_{m+1})."""
    a, b = 1, 1
    for _ in range(m):
        a, b = b, a + b
    return a


def renormalization_period(m: int) -> int:
    """Period q_m + q_{m-2} of the copies used by the golden-mean pipeline (Lucas L_m)."""
    if m < 2:
        raise InvalidInput("period index needs m >= 2")
    return golden_q(m) + golden_q(m - 2)


def lucas(m: int) -> int:
    a, b = 2, 1
    for _ in range(m):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class RotationEstimate:
    value: float
    lo: float
    hi: float
    n: int

    def contains(self, theta: float) -> bool:
        return self.lo <= theta <= self.hi


def _check_lift(F: Callable[[float], float], x0: float, samples: int = 64) -> None:
    xs = x0 + np.linspace(0.0, 1.0, samples + 1)
    ys = np.array([F(float(x)) for x in xs])
    if np.any(np.diff(ys) < 0):
        raise NotHomeomorphism("lift is not monotone")
    if abs((ys[-1] - ys[0]) - 1.0) > 1e-9:
        raise NotHomeomorphism("lift does not have degree one")


def rotation_number_estimate(F: Callable[[float], float], x0: float, n: int) -> RotationEstimate:
    """Rotation number of a degree-one lift from ``n`` iterates.

    Returns the Birkhoff estimate (F^n(x0) - x0)/n together with the bracket
    [k/n, (k+1)/n], k = floor(F^n(x0) - x0), which always contains the true
    rotation number of a circle homeomorphism. Lifts exposing an
    ``iterate(x0, n)`` method (returning the integer and fractional parts of
    the displacement) use it as a fast path.
    """
    if n < 1:
        raise InvalidInput("n must be at least 1")
    _check_lift(F, x0)
    fast = getattr(F, "iterate", None)
    if fast is not None:
        k_int, frac = fast(x0, n)
    else:
        x = x0
        k_int = 0
        for _ in range(n):
            x = F(x)
            fl = math.floor(x)
            k_int += fl
            x -= fl
        # displacement = k_int + x - x0
        frac = x - (x0 - math.floor(x0))
        k_int += math.floor(frac) - math.floor(x0)
        frac -= math.floor(frac)
    disp_floor = int(k_int)
    est = (disp_floor + frac) / n
    return RotationEstimate(est, disp_floor / n, (disp_floor + 1) / n, n)
