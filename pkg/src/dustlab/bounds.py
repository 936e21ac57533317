"""Closed-form certified quantities: the valid-eps window, the four epsilon
sequences, normalized-volume bound functions, and the threshold radius.

Every closed form exists twice: a plain float evaluation for speed (the
``*_value`` functions) and an outward-rounded interval evaluation used by all
certified scans and comparisons. The interval forms follow the displayed
fractions term by term; no algebraic simplification is applied before
certified evaluation, which keeps the code auditable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .interval import Interval, IntervalArray, MPInterval

FAMILIES = ("basic_hi", "basic_lo", "windowed_hi", "windowed_lo")


@dataclass(frozen=True, slots=True)
class SequenceSpec:
    """One of the four null epsilon sequences, bound to a dust parameter.

    basic_hi:    eps_n = sqrt(1/2) * r^-n        (high-cluster witness)
    basic_lo:    eps_n = r^-n                    (low-cluster witness)
    windowed_hi: eps_n = 1/2 * (r-2)/r * r^-(n-1)   (window top, any r > 2)
    windowed_lo: eps_n = sqrt(1/2) * (r-2)/r * r^-n (window bottom, any r > 2)
    """

    family: str
    r: float

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown sequence family {self.family!r}")
        if not (self.r > 2.0):
            raise DomainError(f"sequences require r > 2, got {self.r}")


def sequence_eps(spec: SequenceSpec, n: int) -> float:
    if n < 1:
        raise DomainError(f"sequence index must be >= 1, got {n}")
    r = spec.r
    if spec.family == "basic_hi":
        return math.sqrt(0.5) * r ** -n
    if spec.family == "basic_lo":
        return r ** -n
    if spec.family == "windowed_hi":
        return 0.5 * ((r - 2.0) / r) * r ** -(n - 1)
    return math.sqrt(0.5) * ((r - 2.0) / r) * r ** -n


def valid_eps_range(r: float, n: int) -> tuple[float, float]:
    """The eps window at level n inside which the parallel set splits into
    4^n congruent components (touching at most in boundary segments)."""
    if not (r > 2.0):
        raise DomainError(f"window requires r > 2, got {r}")
    if n < 0:
        raise DomainError(f"level must be >= 0, got {n}")
    scale = r ** -n
    return (math.sqrt(0.5) * ((r - 2.0) / r) * scale, 0.5 * (r - 2.0) * scale)


def valid_eps_window(r: float, n: int) -> tuple[Interval, Interval]:
    """Outward-rounded enclosures of the two window endpoints."""
    if not (r > 2.0):
        raise DomainError(f"window requires r > 2, got {r}")
    if n < 0:
        raise DomainError(f"level must be >= 0, got {n}")
    R = Interval.exact(r)
    scale = (1.0 / R) ** n
    lo = Interval.exact(0.5).sqrt() * ((R - 2.0) / R) * scale
    hi = (R - 2.0) / 2.0 * scale
    return (lo, hi)


def eps_in_window(r: float, n: int, eps: float) -> bool:
    """Window membership with outward rounding (endpoints count as inside)."""
    lo, hi = valid_eps_window(r, n)
    return lo.lo <= eps <= hi.hi


def sequence_valid(spec: SequenceSpec, n: int) -> bool:
    """Does the n-th sequence element satisfy the component-window condition?

    The windowed families hit window endpoints by construction; the basic
    families fail for small r (basic_hi below r = 2 + sqrt(2), basic_lo
    below r = 4).
    """
    eps = sequence_eps(spec, n)
    level = n - 1 if spec.family == "windowed_hi" else n
    return eps_in_window(spec.r, level, eps)


def h_distance(r: float, n: int) -> float:
    """Smallest distance from the parallel-set boundary at the window-top
    epsilon to the component's core square: (1/2)((r-2)/r) r^-n sqrt(r^2-1)."""
    if not (r > 2.0):
        raise DomainError(f"h requires r > 2, got {r}")
    if n < 1:
        raise DomainError(f"level must be >= 1, got {n}")
    return 0.5 * ((r - 2.0) / r) * r ** -n * math.sqrt(r * r - 1.0)


def green_lower_bound_basic(r: float, n: int) -> float:
    """Certified-by-geometry lower bound for the fractal-boundary (green) area
    at eps = sqrt(1/2) r^-n: 4^n * 4 * (3/4) * r^-n * sqrt(1/2) * r^-n."""
    if not (r >= 30.0):
        raise DomainError(f"this bound is established for r >= 30, got {r}")
    if n < 1:
        raise DomainError(f"level must be >= 1, got {n}")
    return 4.0 ** n * 3.0 * math.sqrt(0.5) * r ** (-2 * n)


def green_upper_convex_hull(spec: SequenceSpec, n: int) -> float:
    """Convex-hull upper bound for the green area at the sequence epsilon:
    4^n * 4 * eps * r^-n."""
    if n < 1:
        raise DomainError(f"level must be >= 1, got {n}")
    return 4.0 ** n * 4.0 * sequence_eps(spec, n) * spec.r ** -n


# -- generic interval expressions --------------------------------------------
# R is a lifted interval (scalar, array, or mpmath flavor); PI matches it.

def _log4_base_r(R, PI):
    return R._coerce(4.0).log() / R.log()


def _f1_expr(R, PI):
    A = (R - 2.0) / R
    S = (R * R - 1.0).sqrt()
    num = (1.0 + 2.0 * A * S + 3.0 * A - (3.0 / R) * A * S
           + A * A * (R - S + R * R * PI / 4.0))
    L = _log4_base_r(R, PI)
    ln2 = R._coerce(2.0).log()
    den = ((R - 2.0) ** 2 / 4.0) * (L * ln2).exp() * (-(L * (R - 2.0).log())).exp()
    return num / den


def _f2_expr(R, PI):
    A = (R - 2.0) / R
    num = 1.0 + R._coerce(8.0).sqrt() * A + PI / 2.0 * A * A
    L = _log4_base_r(R, PI)
    ln2 = R._coerce(2.0).log()
    den = (A * A / 2.0) * (L * ln2 / 2.0).exp() * (-(L * A.log())).exp()
    return num / den


def _hi_bound_expr(R, PI):
    s = R._coerce(0.5).sqrt()
    num = 1.0 + 3.0 * s + PI / 2.0
    L = _log4_base_r(R, PI)
    ln2 = R._coerce(2.0).log()
    den = R._coerce(0.5) * (L * ln2 / 2.0).exp()
    return num / den


def _check_r(r: float, minimum: float = 2.0):
    if not (r > minimum):
        raise DomainError(f"requires r > {minimum}, got {r}")


def f1(r: float) -> Interval:
    """Certified lower-bound function for the normalized parallel-set area
    along the window-top epsilon sequence."""
    _check_r(r)
    return _f1_expr(Interval.exact(r), Interval.pi())


def f2(r: float) -> Interval:
    """Certified upper-bound function for the normalized parallel-set area
    along the window-bottom epsilon sequence."""
    _check_r(r)
    return _f2_expr(Interval.exact(r), Interval.pi())


def f1_grid(rs: np.ndarray) -> IntervalArray:
    rs = np.asarray(rs, dtype=np.float64)
    if np.any(rs <= 2.0):
        raise DomainError("grid values must exceed 2")
    return _f1_expr(IntervalArray.exact(rs), IntervalArray.pi_like(rs))


def f2_grid(rs: np.ndarray) -> IntervalArray:
    rs = np.asarray(rs, dtype=np.float64)
    if np.any(rs <= 2.0):
        raise DomainError("grid values must exceed 2")
    return _f2_expr(IntervalArray.exact(rs), IntervalArray.pi_like(rs))


def f1_mp(r: float, prec: int) -> MPInterval:
    _check_r(r)
    return _f1_expr(MPInterval.exact(r, prec), MPInterval.pi(prec))


def f2_mp(r: float, prec: int) -> MPInterval:
    _check_r(r)
    return _f2_expr(MPInterval.exact(r, prec), MPInterval.pi(prec))


def f1_value(r: float) -> float:
    """Hardware-float evaluation of f1 (plots and quick looks, not certified)."""
    _check_r(r)
    A = (r - 2.0) / r
    S = math.sqrt(r * r - 1.0)
    num = (1.0 + 2.0 * A * S + 3.0 * A - (3.0 / r) * A * S
           + A * A * (r - S + r * r * math.pi / 4.0))
    L = math.log(4.0) / math.log(r)
    den = (r - 2.0) ** 2 / 4.0 * 2.0 ** L * (r - 2.0) ** (-L)
    return num / den


def f2_value(r: float) -> float:
    """Hardware-float evaluation of f2 (plots and quick looks, not certified)."""
    _check_r(r)
    A = (r - 2.0) / r
    num = 1.0 + math.sqrt(8.0) * A + math.pi / 2.0 * A * A
    L = math.log(4.0) / math.log(r)
    den = 0.5 * A * A * 2.0 ** (L / 2.0) * A ** (-L)
    return num / den


def basic_hi_lower_bound(r: float) -> Interval:
    """Lower bound satisfied by every element of the normalized-area sequence
    at eps = sqrt(1/2) r^-n: (1 + 3 sqrt(1/2) + pi/2) / ((1/2) sqrt(2)^(log_r 4)).

    Strictly increasing in r on (1, inf)."""
    if not (r > 1.0):
        raise DomainError(f"requires r > 1, got {r}")
    return _hi_bound_expr(Interval.exact(r), Interval.pi())


def basic_hi_lower_bound_value(r: float) -> float:
    if not (r > 1.0):
        raise DomainError(f"requires r > 1, got {r}")
    L = math.log(4.0) / math.log(r)
    return (1.0 + 3.0 * math.sqrt(0.5) + math.pi / 2.0) / (0.5 * 2.0 ** (L / 2.0))


def basic_lo_upper_bound() -> Interval:
    """Upper bound for every element of the normalized-area sequence at
    eps = r^-n: the constant 5 + pi."""
    return 5.0 + Interval.pi()


def threshold_root(width: float = 1e-3) -> Interval:
    """Bisection enclosure of the unique r where the basic-family lower bound
    crosses 5 + pi; above it the two bounds certify separated clusters."""
    target = basic_lo_upper_bound()
    a, b = 29.0, 30.0
    if not basic_hi_lower_bound(a).strictly_below(target):
        raise DomainError("bisection bracket lost its sign at r = 29")
    if not basic_hi_lower_bound(b).strictly_above(target):
        raise DomainError("bisection bracket lost its sign at r = 30")
    while b - a > width:
        m = 0.5 * (a + b)
        g = basic_hi_lower_bound(m)
        if g.strictly_below(target):
            a = m
        elif g.strictly_above(target):
            b = m
        else:
            break  # enclosures too wide to certify the sign; return current bracket
    return Interval(a, b)


def normalization_factor(r: float, eps: float) -> Interval:
    """Enclosure of eps^(2 - D_r) with D_r = ln4 / ln r."""
    _check_r(r)
    if not (eps > 0.0):
        raise DomainError(f"eps must be positive, got {eps}")
    R = Interval.exact(r)
    E = 2.0 - (R._coerce(4.0).log() / R.log())
    return (E * Interval.exact(eps).log()).exp()
