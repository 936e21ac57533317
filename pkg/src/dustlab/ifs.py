"""Similarity maps, the corner Cantor-dust system, and construction geometry.

The dust with parameter r > 2 is the attractor of four homotheties of ratio
1/r that pin the unit square's corners. All maps here are axis-aligned with
identity orthogonal part; that restriction is deliberate and load-bearing for
the exact rectangle checks below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import DomainError, ResourceError

SQUARE_CAP_DEFAULT = 4 ** 12

# Acceptable relative residual when matching log-ratio quotients to rationals.
# Commensurability of floats beyond this resolution is reported as undetected.
_COMMENSURABILITY_RTOL = 1e-13
_DENOMINATOR_BOUND_DEFAULT = 10 ** 6


@dataclass(frozen=True, slots=True)
class Similarity:
    """Contractive homothety x -> ratio * x + translation (no rotation part)."""

    ratio: float
    translation: tuple[float, float]

    def __post_init__(self):
        if not (0.0 < self.ratio < 1.0):
            raise DomainError(f"similarity ratio must lie in (0,1), got {self.ratio}")

    def apply(self, point: tuple[float, float]) -> tuple[float, float]:
        return (self.ratio * point[0] + self.translation[0],
                self.ratio * point[1] + self.translation[1])


@dataclass(frozen=True, slots=True)
class Square:
    """Axis-aligned square given by its lower-left corner and side length."""

    x: float
    y: float
    side: float

    def center(self) -> tuple[float, float]:
        return (self.x + 0.5 * self.side, self.y + 0.5 * self.side)

    def corners(self) -> list[tuple[float, float]]:
        s = self.side
        return [(self.x, self.y), (self.x + s, self.y),
                (self.x + s, self.y + s), (self.x, self.y + s)]


@dataclass(frozen=True, slots=True)
class Word:
    """A composition address over the alphabet {1, 2, 3, 4}."""

    letters: tuple[int, ...]

    def __post_init__(self):
        if any(l not in (1, 2, 3, 4) for l in self.letters):
            raise DomainError(f"word letters must be in 1..4: {self.letters}")

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class SelfSimilarSystem:
    """An ordered list of similarities with an open rectangular feasible set."""

    maps: tuple[Similarity, ...]
    feasible_set: tuple[float, float, float, float] = (0.0, 1.0, 0.0, 1.0)

    def __post_init__(self):
        if len(self.maps) < 2:
            raise DomainError("a self-similar system needs at least two maps")

    def map_images(self) -> list[tuple[float, float, float, float]]:
        """Closed images (x0, x1, y0, y1) of the feasible rectangle."""
        fx0, fx1, fy0, fy1 = self.feasible_set
        out = []
        for m in self.maps:
            tx, ty = m.translation
            out.append((m.ratio * fx0 + tx, m.ratio * fx1 + tx,
                        m.ratio * fy0 + ty, m.ratio * fy1 + ty))
        return out

    def open_set_condition_holds(self) -> bool:
        """Strict separation check: images inside the feasible rectangle with
        pairwise disjoint closures. Touching images (r = 2 dust) fail."""
        fx0, fx1, fy0, fy1 = self.feasible_set
        boxes = self.map_images()
        for (x0, x1, y0, y1) in boxes:
            if not (fx0 <= x0 and x1 <= fx1 and fy0 <= y0 and y1 <= fy1):
                return False
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                a, b = boxes[i], boxes[j]
                overlap_x = min(a[1], b[1]) - max(a[0], b[0])
                overlap_y = min(a[3], b[3]) - max(a[2], b[2])
                if overlap_x >= 0.0 and overlap_y >= 0.0:
                    return False
        return True

    def word_image(self, word: Word) -> Square:
        """Image of the unit square under the composed map of a word."""
        ratio, tx, ty = 1.0, 0.0, 0.0
        for letter in reversed(word.letters):
            m = self.maps[letter - 1]
            ratio, tx, ty = (m.ratio * ratio,
                             m.ratio * tx + m.translation[0],
                             m.ratio * ty + m.translation[1])
        return Square(tx, ty, ratio)


@dataclass(frozen=True, slots=True)
class CantorDustParams:
    """Dust parameter r > 2 plus the derived box dimension ln4/ln r."""

    r: float
    dimension: float = field(init=False)

    def __post_init__(self):
        if not (self.r > 2.0):
            raise DomainError(f"dust parameter must satisfy r > 2, got {self.r}")
        object.__setattr__(self, "dimension", math.log(4.0) / math.log(self.r))


def build_cantor_dust(r: float) -> SelfSimilarSystem:
    """The four corner homotheties of ratio 1/r on the unit square.

    Requires r > 2: at r = 2 the four images tile the square with touching
    edges and the component decomposition used downstream breaks down.
    """
    if not (r > 2.0):
        raise DomainError(f"corner dust requires r > 2, got {r}")
    ratio = 1.0 / r
    t = (r - 1.0) / r
    maps = (
        Similarity(ratio, (0.0, 0.0)),
        Similarity(ratio, (t, 0.0)),
        Similarity(ratio, (t, t)),
        Similarity(ratio, (0.0, t)),
    )
    return SelfSimilarSystem(maps=maps)


def minkowski_dimension(r: float) -> float:
    if not (r > 2.0):
        raise DomainError(f"dimension formula applies for r > 2, got {r}")
    return math.log(4.0) / math.log(r)


def construction_squares(r: float, n: int) -> np.ndarray:
    """Lower-left corners of all level-n construction squares, word-ordered.

    Row k corresponds to the length-n word given by k's base-4 digits, most
    significant first; the side of each square is r**-n.
    """
    if n < 0:
        raise DomainError("construction level must be nonnegative")
    system = build_cantor_dust(r)
    t = np.array([m.translation for m in system.maps])
    pos = np.zeros((1, 2))
    inv = 1.0 / r
    for _ in range(n):
        pos = (t[:, None, :] + inv * pos[None, :, :]).reshape(-1, 2)
    return pos


def construction_step(system: SelfSimilarSystem, n: int,
                      cap: int = SQUARE_CAP_DEFAULT) -> list[Square]:
    """All 4^n level-n squares as Square objects, in lexicographic word order."""
    if n < 0:
        raise DomainError("construction level must be nonnegative")
    if 4 ** n > cap:
        raise ResourceError(f"4^{n} squares exceed the configured cap {cap}")
    ratio = system.maps[0].ratio
    r = 1.0 / ratio
    pos = construction_squares(r, n)
    side = ratio ** n
    return [Square(float(x), float(y), side) for x, y in pos]


def corner_points(r: float, n: int) -> np.ndarray:
    """All corner points of level-n construction squares (4^n x 4 rows).

    Every returned point lies in the attractor: unit-square corners are fixed
    points of the four maps and word images of attractor points stay inside.
    """
    pos = construction_squares(r, n)
    side = (1.0 / r) ** n
    offsets = np.array([(0.0, 0.0), (side, 0.0), (side, side), (0.0, side)])
    return (pos[:, None, :] + offsets[None, :, :]).reshape(-1, 2)


def lattice_base(ratios: list[float],
                 denominator_bound: int = _DENOMINATOR_BOUND_DEFAULT) -> Optional[float]:
    """Base of the lattice generated by the log-ratios, if one is detected.

    Returns e**a for the largest a > 0 with every ln(ratio) in a*Z, detected by
    matching the quotients ln(r_i)/ln(r_0) to rationals with denominator at
    most ``denominator_bound``. Quotients that admit no such rational within a
    relative residual of 1e-13 are treated as incommensurable and the function
    returns None. Equal ratios always yield 1/ratio.
    """
    if not ratios:
        raise DomainError("at least one ratio is required")
    for q in ratios:
        if not (0.0 < q < 1.0):
            raise DomainError(f"ratios must lie in (0,1), got {q}")
    logs = [math.log(q) for q in ratios]
    base_log = logs[0]
    fracs = []
    for l in logs:
        t = l / base_log  # positive: both logs are negative
        f = Fraction(t).limit_denominator(denominator_bound)
        if f <= 0:
            return None
        if abs(t - float(f)) > _COMMENSURABILITY_RTOL * max(1.0, abs(t)):
            return None
        fracs.append(f)
    q_lcm = math.lcm(*(f.denominator for f in fracs))
    nums = [f.numerator * (q_lcm // f.denominator) for f in fracs]
    g = math.gcd(*nums)
    # |base_log| * g / q_lcm is the largest common spacing of the logs
    a = abs(base_log) * g / q_lcm
    return math.exp(a)
