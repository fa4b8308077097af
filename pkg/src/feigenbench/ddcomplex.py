"""Double-double complex arithmetic built from error-free transformations.

Each component is an unevaluated sum ``hi + lo`` of two doubles with
``|lo| <= ulp(hi)/2``, giving roughly 106 significant bits.
"""
from __future__ import annotations

import enum
import math

_SPLITTER = 134217729.0  # 2**27 + 1

DOUBLE_EPS = 2.0 ** -52
EXTENDED_EPS = 2.0 ** -104


class Precision(enum.Enum):
    DOUBLE = "double"
    EXTENDED = "extended"

    @property
    def eps(self) -> float:
        return DOUBLE_EPS if self is Precision.DOUBLE else EXTENDED_EPS


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(ah, al, bh, bl):
    s, e = two_sum(ah, bh)
    t, f = two_sum(al, bl)
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return quick_two_sum(s, e)


def dd_mul(ah, al, bh, bl):
    p, e = two_prod(ah, bh)
    e += ah * bl + al * bh
    return quick_two_sum(p, e)


class DDComplex:
    """Complex number with double-double real and imaginary parts.

    Mixed arithmetic with ``complex``/``float``/``int`` promotes to
    ``DDComplex``.
    """

    __slots__ = ("rh", "rl", "ih", "il")

    def __init__(self, rh=0.0, rl=0.0, ih=0.0, il=0.0):
        self.rh = float(rh)
        self.rl = float(rl)
        self.ih = float(ih)
        self.il = float(il)

    @classmethod
    def from_parts(cls, hi: complex, lo: complex = 0j) -> "DDComplex":
        rh, rl = quick_two_sum(float(hi.real), float(lo.real)) if lo else (hi.real, 0.0)
        ih, il = quick_two_sum(float(hi.imag), float(lo.imag)) if lo else (hi.imag, 0.0)
        return cls(rh, rl, ih, il)

    @classmethod
    def coerce(cls, x) -> "DDComplex":
        if isinstance(x, DDComplex):
            return x
        x = complex(x)
        return cls(x.real, 0.0, x.imag, 0.0)

    @property
    def hi(self) -> complex:
        return complex(self.rh, self.ih)

    @property
    def lo(self) -> complex:
        return complex(self.rl, self.il)

    @property
    def real(self):
        return self.rh + self.rl

    @property
    def imag(self):
        return self.ih + self.il

    def __complex__(self):
        return complex(self.rh + self.rl, self.ih + self.il)

    def __repr__(self):
        return f"DDComplex({self.rh!r}, {self.rl!r}, {self.ih!r}, {self.il!r})"

    def __eq__(self, other):
        o = DDComplex.coerce(other)
        return (self.rh, self.rl, self.ih, self.il) == (o.rh, o.rl, o.ih, o.il)

    def __hash__(self):
        return hash((self.rh, self.rl, self.ih, self.il))

    def is_finite(self) -> bool:
        return math.isfinite(self.rh) and math.isfinite(self.ih)

    def __neg__(self):
        return DDComplex(-self.rh, -self.rl, -self.ih, -self.il)

    def __add__(self, other):
        o = DDComplex.coerce(other)
        rh, rl = dd_add(self.rh, self.rl, o.rh, o.rl)
        ih, il = dd_add(self.ih, self.il, o.ih, o.il)
        return DDComplex(rh, rl, ih, il)

    __radd__ = __add__

    def __sub__(self, other):
        o = DDComplex.coerce(other)
        rh, rl = dd_add(self.rh, self.rl, -o.rh, -o.rl)
        ih, il = dd_add(self.ih, self.il, -o.ih, -o.il)
        return DDComplex(rh, rl, ih, il)

    def __rsub__(self, other):
        return DDComplex.coerce(other) - self

    def __mul__(self, other):
        o = DDComplex.coerce(other)
        ac = dd_mul(self.rh, self.rl, o.rh, o.rl)
        bd = dd_mul(self.ih, self.il, o.ih, o.il)
        ad = dd_mul(self.rh, self.rl, o.ih, o.il)
        bc = dd_mul(self.ih, self.il, o.rh, o.rl)
        rh, rl = dd_add(ac[0], ac[1], -bd[0], -bd[1])
        ih, il = dd_add(ad[0], ad[1], bc[0], bc[1])
        return DDComplex(rh, rl, ih, il)

    __rmul__ = __mul__

    def square(self) -> "DDComplex":
        aa = dd_mul(self.rh, self.rl, self.rh, self.rl)
        bb = dd_mul(self.ih, self.il, self.ih, self.il)
        ab = dd_mul(self.rh, self.rl, self.ih, self.il)
        rh, rl = dd_add(aa[0], aa[1], -bb[0], -bb[1])
        return DDComplex(rh, rl, 2.0 * ab[0], 2.0 * ab[1])

    def __truediv__(self, other):
        o = DDComplex.coerce(other)
        den = o.hi
        q1 = complex(self) / den
        r = self - DDComplex.coerce(q1) * o
        q2 = complex(r) / den
        return DDComplex.coerce(q1) + q2

    def __rtruediv__(self, other):
        return DDComplex.coerce(other) / self

    def __abs__(self):
        return abs(complex(self))


def precision_of(x) -> Precision:
    return Precision.EXTENDED if isinstance(x, DDComplex) else Precision.DOUBLE


def promote(x, precision: Precision):
    """Return ``x`` represented at ``precision`` (Extended never demotes silently)."""
    if precision is Precision.EXTENDED:
        return DDComplex.coerce(x)
    if isinstance(x, DDComplex):
        return complex(x)
    return complex(x)


def common_precision(*xs) -> Precision:
    return Precision.EXTENDED if any(isinstance(x, DDComplex) for x in xs) else Precision.DOUBLE


def split_parts(x) -> tuple[complex, complex]:
    """(hi, lo) complex pair; lo is 0 for Double values."""
    if isinstance(x, DDComplex):
        return x.hi, x.lo
    return complex(x), 0j
