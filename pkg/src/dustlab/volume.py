"""Certified areas of eps-parallel sets, optionally restricted to a region.

The engine classifies quadtree cells with the certified center-distance
oracle and the Lipschitz bound, sums inside cells into both enclosure ends
and undecided cells into the upper end only, and refines in Morton order
until the enclosure width drops under the requested budget. Results are
bit-reproducible for a fixed configuration.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .backend import kernel
from .bounds import eps_in_window, normalization_factor, valid_eps_range
from .errors import DomainError, EpsOutOfRange
from .ifs import CantorDustParams
from .interval import Interval
from . import _pycore

MAX_DEPTH_DEFAULT = 40
CELL_CAP_DEFAULT = 400_000_000
SLACK_DEFAULT = 0.125  # per-cell distance tolerance, as a fraction of the half-diagonal
_EPS_LIMIT = 30.0      # keeps kernel coordinates inside the padded float domain


class RegionKind(Enum):
    PLANE = _pycore.REGION_PLANE
    UNIT_SQUARE = _pycore.REGION_UNIT
    GAP_CROSS = _pycore.REGION_CROSS
    GAP_CROSS_ARMS = _pycore.REGION_ARMS


@dataclass(frozen=True, slots=True)
class Region:
    """Rectilinear restriction region for area queries.

    GAP_CROSS is the open unit square minus the four corner squares of side
    1/r (the first-level gap set); GAP_CROSS_ARMS additionally removes the
    central square [1/r, 1-1/r]^2, leaving the four arm rectangles.
    """

    kind: RegionKind
    r: float | None = None

    def __post_init__(self):
        if self.kind in (RegionKind.GAP_CROSS, RegionKind.GAP_CROSS_ARMS):
            if self.r is None or not (self.r > 2.0):
                raise DomainError(f"{self.kind.name} region needs r > 2, got {self.r}")

    def area(self) -> Interval | None:
        """Closed-form region area (None for the whole plane)."""
        if self.kind is RegionKind.PLANE:
            return None
        if self.kind is RegionKind.UNIT_SQUARE:
            return Interval(1.0, 1.0)
        R = Interval.exact(self.r)
        cross = 1.0 - 4.0 / (R * R)
        if self.kind is RegionKind.GAP_CROSS:
            return cross
        return cross - (1.0 - 2.0 / R) ** 2


PLANE = Region(RegionKind.PLANE)


@dataclass(frozen=True, slots=True)
class VolumeResult:
    """Certified area enclosure plus refinement statistics."""

    enclosure: Interval
    cells_inside: int
    cells_outside: int
    cells_uncertain: int
    depth_reached: int
    cells_total: int
    budget_met: bool


def volume(params: CantorDustParams, eps: float, region: Region = PLANE,
           err_budget: float = 1e-4, *, max_depth: int = MAX_DEPTH_DEFAULT,
           cell_cap: int = CELL_CAP_DEFAULT,
           slack: float = SLACK_DEFAULT) -> VolumeResult:
    """Certified area of the eps-parallel set intersected with the region.

    When the budget cannot be met within the depth and cell caps the result
    is still a valid enclosure, flagged with budget_met=False.
    """
    if not (eps > 0.0):
        raise DomainError(f"eps must be positive, got {eps}")
    if eps > _EPS_LIMIT:
        raise DomainError(f"eps above the supported bound {_EPS_LIMIT}")
    if not (err_budget > 0.0):
        raise DomainError(f"error budget must be positive, got {err_budget}")
    if region.kind is not RegionKind.PLANE and region.kind is not RegionKind.UNIT_SQUARE:
        if abs(region.r - params.r) > 1e-12 * params.r:
            raise DomainError("region parameter r must match the dust parameter")
    lo, hi, n_in, n_out, n_unc, depth, cells, met = kernel.volume_region(
        params.r, eps, region.kind.value, err_budget, max_depth, cell_cap, slack)
    return VolumeResult(Interval(lo, hi), n_in, n_out, n_unc, depth, cells, met)


def normalized_volume(params: CantorDustParams, eps: float,
                      err_budget: float = 1e-4, **kw) -> Interval:
    """Enclosure of area(parallel set) / eps^(2 - D_r)."""
    return normalized_volume_result(params, eps, err_budget, **kw)[0]


def normalized_volume_result(params: CantorDustParams, eps: float,
                             err_budget: float = 1e-4,
                             **kw) -> tuple[Interval, VolumeResult]:
    res = volume(params, eps, PLANE, err_budget, **kw)
    return res.enclosure / normalization_factor(params.r, eps), res


@dataclass(frozen=True, slots=True)
class Decomposition:
    """Component split of the parallel-set area inside the eps window:
    core squares (blue), boundary quarter-discs (red), fractal remainder
    (green, certified enclosure)."""

    blue: float
    red: float
    green: Interval
    total: VolumeResult


def decompose_volume(params: CantorDustParams, n: int, eps: float,
                     err_budget: float = 1e-4, **kw) -> Decomposition:
    """Split area(parallel set) into 4^n r^-2n (blue), 4^n pi eps^2 (red,
    four quarter-discs per component), and the certified green remainder.

    Valid only for eps inside the level-n window; outside it the components
    are not disjoint and the split is meaningless.
    """
    if n < 0:
        raise DomainError(f"level must be >= 0, got {n}")
    if not eps_in_window(params.r, n, eps):
        lo, hi = valid_eps_range(params.r, n)
        raise EpsOutOfRange(
            f"eps={eps} outside the level-{n} window [{lo}, {hi}] for r={params.r}")
    res = volume(params, eps, PLANE, err_budget, **kw)
    R = Interval.exact(params.r)
    four_n = Interval.exact(4.0) ** n
    blue_iv = four_n * (1.0 / R) ** (2 * n)
    red_iv = four_n * Interval.pi() * Interval.exact(eps) ** 2
    green = res.enclosure - blue_iv - red_iv
    return Decomposition(blue=blue_iv.mid, red=red_iv.mid, green=green, total=res)
