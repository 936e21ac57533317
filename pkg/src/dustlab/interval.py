"""Outward-rounded interval arithmetic in three flavours.

``Interval`` is the scalar float64 carrier used for every certified closed
form. ``IntervalArray`` is its numpy twin for grid scans. ``MPInterval`` runs
the same operations on mpmath floats at a chosen working precision and exists
for precision studies and cross-checks.

Enclosure contract: basic arithmetic results are widened by one float step
per operation (IEEE nearest rounding is off by at most half a step, and one
``nextafter`` step dominates that). ``sqrt`` is correctly rounded by IEEE 754,
so one step suffices there too. For ``log``/``exp``/``pow`` we assume the
libm/numpy implementations are within 3 units in the last place and widen by
four steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

_INF = math.inf

TRANS_STEPS = 4  # outward steps around transcendental function results


def _dn(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _dn_k(x: float, k: int) -> float:
    for _ in range(k):
        x = math.nextafter(x, -_INF)
    return x


def _up_k(x: float, k: int) -> float:
    for _ in range(k):
        x = math.nextafter(x, _INF)
    return x


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval [lo, hi] certified to contain a real value."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, x) -> "Interval":
        v = float(x)
        return cls(v, v)

    @classmethod
    def pi(cls) -> "Interval":
        # math.pi underestimates pi by about 1.2e-16, under one step.
        return cls(math.pi, _up(math.pi))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def strictly_above(self, other: "Interval") -> bool:
        return self.lo > other.hi

    def strictly_below(self, other: "Interval") -> bool:
        return self.hi < other.lo

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Interval":
        if isinstance(x, Interval):
            return x
        return Interval.exact(x)

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __add__(self, other):
        o = self._coerce(other)
        return Interval(_dn(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Interval(_dn(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(_dn(min(p)), _up(max(p)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise ZeroDivisionError(f"division by interval containing zero: {o}")
        p = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(_dn(min(p)), _up(max(p)))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if isinstance(n, Interval):
            return (self.log() * n).exp()
        if not isinstance(n, int):
            raise TypeError("only integer or Interval exponents are supported")
        if n < 0:
            return 1.0 / self.__pow__(-n)
        if n == 0:
            return Interval(1.0, 1.0)
        if n % 2 == 0:
            a, b = self.lo * self.lo, self.hi * self.hi
            lo = 0.0 if self.lo <= 0.0 <= self.hi else _dn(min(a, b))
            sq = Interval(lo, _up(max(a, b)))
            return sq if n == 2 else sq ** (n // 2)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def sqrt(self):
        if self.lo < 0:
            raise ValueError(f"sqrt of partially negative interval {self}")
        return Interval(max(0.0, _dn(math.sqrt(self.lo))), _up(math.sqrt(self.hi)))

    def log(self):
        if self.lo <= 0:
            raise ValueError(f"log of non-positive interval {self}")
        return Interval(_dn_k(math.log(self.lo), TRANS_STEPS),
                        _up_k(math.log(self.hi), TRANS_STEPS))

    def exp(self):
        return Interval(max(0.0, _dn_k(math.exp(self.lo), TRANS_STEPS)),
                        _up_k(math.exp(self.hi), TRANS_STEPS))


class IntervalArray:
    """Vectorised counterpart of Interval over numpy float64 arrays."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        self.lo = np.asarray(lo, dtype=np.float64)
        self.hi = np.asarray(hi, dtype=np.float64)
        if self.lo.shape != self.hi.shape:
            raise ValueError("bound arrays must share a shape")
        if np.any(self.lo > self.hi):
            raise ValueError("lower bounds exceed upper bounds")

    @classmethod
    def exact(cls, values) -> "IntervalArray":
        v = np.asarray(values, dtype=np.float64)
        return cls(v.copy(), v.copy())

    @classmethod
    def pi_like(cls, values) -> "IntervalArray":
        v = np.asarray(values, dtype=np.float64)
        return cls(np.full(v.shape, math.pi), np.full(v.shape, _up(math.pi)))

    @property
    def width(self):
        return self.hi - self.lo

    @staticmethod
    def _adn(x):
        return np.nextafter(x, -_INF)

    @staticmethod
    def _aup(x):
        return np.nextafter(x, _INF)

    @classmethod
    def _adn_k(cls, x, k):
        for _ in range(k):
            x = np.nextafter(x, -_INF)
        return x

    @classmethod
    def _aup_k(cls, x, k):
        for _ in range(k):
            x = np.nextafter(x, _INF)
        return x

    def _coerce(self, x) -> "IntervalArray":
        if isinstance(x, IntervalArray):
            return x
        v = np.broadcast_to(np.asarray(x, dtype=np.float64), self.lo.shape)
        return IntervalArray(v.copy(), v.copy())

    def __neg__(self):
        return IntervalArray(-self.hi, -self.lo)

    def __add__(self, other):
        o = self._coerce(other)
        return IntervalArray(self._adn(self.lo + o.lo), self._aup(self.hi + o.hi))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return IntervalArray(self._adn(self.lo - o.hi), self._aup(self.hi - o.lo))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = np.stack((self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi))
        return IntervalArray(self._adn(p.min(axis=0)), self._aup(p.max(axis=0)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if np.any((o.lo <= 0.0) & (o.hi >= 0.0)):
            raise ZeroDivisionError("division by interval containing zero")
        p = np.stack((self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi))
        return IntervalArray(self._adn(p.min(axis=0)), self._aup(p.max(axis=0)))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if isinstance(n, IntervalArray):
            return (self.log() * n).exp()
        if not isinstance(n, int):
            raise TypeError("only integer or IntervalArray exponents are supported")
        if n < 0:
            return 1.0 / self.__pow__(-n)
        if n == 0:
            return IntervalArray.exact(np.ones_like(self.lo))
        if n % 2 == 0:
            a, b = self.lo * self.lo, self.hi * self.hi
            lo = self._adn(np.minimum(a, b))
            lo[(self.lo <= 0.0) & (self.hi >= 0.0)] = 0.0
            sq = IntervalArray(lo, self._aup(np.maximum(a, b)))
            return sq if n == 2 else sq ** (n // 2)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def sqrt(self):
        if np.any(self.lo < 0):
            raise ValueError("sqrt of partially negative interval array")
        return IntervalArray(np.maximum(0.0, self._adn(np.sqrt(self.lo))),
                             self._aup(np.sqrt(self.hi)))

    def log(self):
        if np.any(self.lo <= 0):
            raise ValueError("log of non-positive interval array")
        return IntervalArray(self._adn_k(np.log(self.lo), TRANS_STEPS),
                             self._aup_k(np.log(self.hi), TRANS_STEPS))

    def exp(self):
        return IntervalArray(np.maximum(0.0, self._adn_k(np.exp(self.lo), TRANS_STEPS)),
                             self._aup_k(np.exp(self.hi), TRANS_STEPS))

    def item(self, i) -> Interval:
        return Interval(float(self.lo[i]), float(self.hi[i]))


class MPInterval:
    """Interval over mpmath floats at a fixed working precision (bits).

    mpmath arithmetic is correctly rounded and its elementary functions stay
    within a couple of ulps, so an eight-ulp outward nudge per operation keeps
    enclosures valid. Used for precision studies, not for the hot paths.
    """

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi, prec: int):
        self.lo = lo
        self.hi = hi
        self.prec = prec
        if lo > hi:
            raise ValueError(f"invalid interval [{lo}, {hi}]")

    @classmethod
    def exact(cls, x, prec: int) -> "MPInterval":
        with mpmath.workprec(prec):
            v = mpmath.mpf(x)
        return cls(v, v, prec)

    @classmethod
    def pi(cls, prec: int) -> "MPInterval":
        with mpmath.workprec(prec + 20):
            v = +mpmath.pi
            eps = mpmath.mpf(2) ** (3 - prec)
            return cls(v * (1 - eps), v * (1 + eps), prec)

    @property
    def width(self):
        return self.hi - self.lo

    def _nudge(self, lo, hi) -> "MPInterval":
        with mpmath.workprec(self.prec + 20):
            eps = mpmath.mpf(2) ** (3 - self.prec)
            pad_lo = abs(lo) * eps
            pad_hi = abs(hi) * eps
            return MPInterval(lo - pad_lo, hi + pad_hi, self.prec)

    def _coerce(self, x) -> "MPInterval":
        if isinstance(x, MPInterval):
            return x
        return MPInterval.exact(x, self.prec)

    def __neg__(self):
        return MPInterval(-self.hi, -self.lo, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        with mpmath.workprec(self.prec):
            return self._nudge(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        with mpmath.workprec(self.prec):
            return self._nudge(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        with mpmath.workprec(self.prec):
            p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
            return self._nudge(min(p), max(p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("division by interval containing zero")
        with mpmath.workprec(self.prec):
            p = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
            return self._nudge(min(p), max(p))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if isinstance(n, MPInterval):
            return (self.log() * n).exp()
        if not isinstance(n, int):
            raise TypeError("only integer or MPInterval exponents are supported")
        if n < 0:
            return 1.0 / self.__pow__(-n)
        if n == 0:
            return MPInterval.exact(1, self.prec)
        if n % 2 == 0:
            with mpmath.workprec(self.prec):
                a, b = self.lo * self.lo, self.hi * self.hi
                lo = 0 * a if self.lo <= 0 <= self.hi else min(a, b)
                sq = self._nudge(lo, max(a, b))
            return sq if n == 2 else sq ** (n // 2)
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def sqrt(self):
        if self.lo < 0:
            raise ValueError("sqrt of partially negative interval")
        with mpmath.workprec(self.prec):
            return self._nudge(mpmath.sqrt(self.lo), mpmath.sqrt(self.hi))

    def log(self):
        if self.lo <= 0:
            raise ValueError("log of non-positive interval")
        with mpmath.workprec(self.prec):
            return self._nudge(mpmath.log(self.lo), mpmath.log(self.hi))

    def exp(self):
        with mpmath.workprec(self.prec):
            return self._nudge(mpmath.exp(self.lo), mpmath.exp(self.hi))

    def __repr__(self):
        return f"MPInterval[{self.lo}, {self.hi}; prec={self.prec}]"
