"""Closed real intervals with outward rounding.

Every operation widens its result by one ulp on each side (``math.nextafter``)
so enclosures stay valid despite round-to-nearest floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_INF = math.inf


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _down2(x: float) -> float:
    # libm pow is not correctly rounded; allow a couple of ulps
    return _down(_down(x))


def _up2(x: float) -> float:
    return _up(_up(x))


@dataclass(frozen=True, slots=True)
class Interval:
    lo: float
    hi: float

    @staticmethod
    def point(x: float) -> "Interval":
        return Interval(x, x)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0.0 <= self.hi

    def __add__(self, other: "Interval | float") -> "Interval":
        if not isinstance(other, Interval):
            other = Interval(other, other)
        return Interval(_down(self.lo + other.lo), _up(self.hi + other.hi))

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "Interval | float") -> "Interval":
        if not isinstance(other, Interval):
            other = Interval(other, other)
        return Interval(_down(self.lo - other.hi), _up(self.hi - other.lo))

    def __rsub__(self, other: float) -> "Interval":
        return Interval(other, other) - self

    def __mul__(self, other: "Interval | float") -> "Interval":
        if not isinstance(other, Interval):
            if other >= 0:
                return Interval(_down(self.lo * other), _up(self.hi * other))
            return Interval(_down(self.hi * other), _up(self.lo * other))
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(_down(min(p)), _up(max(p)))

    __rmul__ = __mul__

    def __truediv__(self, other: "Interval | float") -> "Interval":
        if not isinstance(other, Interval):
            other = Interval(other, other)
        if other.lo <= 0.0 <= other.hi:
            raise ZeroDivisionError("interval divisor contains 0")
        q = (self.lo / other.lo, self.lo / other.hi, self.hi / other.lo, self.hi / other.hi)
        return Interval(_down(min(q)), _up(max(q)))

    def __pow__(self, p: int) -> "Interval":
        if p == 0:
            return Interval(1.0, 1.0)
        if p == 1:
            return self
        lo, hi = self.lo, self.hi
        if p % 2:
            return Interval(_down2(lo ** p), _up2(hi ** p))
        if lo >= 0:
            return Interval(max(0.0, _down2(lo ** p)), _up2(hi ** p))
        if hi <= 0:
            return Interval(max(0.0, _down2(hi ** p)), _up2(lo ** p))
        return Interval(0.0, _up2(max(-lo, hi) ** p))

    def intersect(self, other: "Interval") -> "Interval | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def split(self) -> tuple["Interval", "Interval"]:
        m = self.mid
        return Interval(self.lo, m), Interval(m, self.hi)

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"


def root_preimage(x: Interval, target: Interval, p: int) -> Interval | None:
    """Narrow ``x`` to the values whose ``p``-th power lies in ``target``."""
    if p == 1:
        return x.intersect(target)
    if p % 2:
        lo = math.copysign(abs(target.lo) ** (1.0 / p), target.lo)
        hi = math.copysign(abs(target.hi) ** (1.0 / p), target.hi)
        return x.intersect(Interval(_down2(lo), _up2(hi)))
    if target.hi < 0:
        return None
    r_hi = _up2(target.hi ** (1.0 / p))
    r_lo = max(0.0, _down2(target.lo ** (1.0 / p))) if target.lo > 0 else 0.0
    pos = x.intersect(Interval(r_lo, r_hi))
    neg = x.intersect(Interval(-r_hi, -r_lo))
    if pos is None:
        return neg
    if neg is None:
        return pos
    return pos.hull(neg)
