"""Certified Euclidean distance from a point to the dust attractor.

The oracle runs branch and bound over the construction-square tree: the
distance to a square bounds the distance to the attractor inside it from
below, and the distance to its corner points (which all lie in the attractor)
bounds it from above. Pruned squares are certified not to contain a nearer
attractor point, so the returned enclosure always contains the true distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .backend import kernel
from .errors import DomainError, ResourceError, ToleranceError
from .ifs import CantorDustParams, Square
from ._pycore import STATUS_CAP, STATUS_IN, STATUS_OUT, TOL_FLOOR

NODE_CAP_DEFAULT = 1_000_000

# Public queries keep coordinates in a box where the kernels' absolute error
# pads dominate all rounding; see the float policy note in _pycore.
_COORD_LIMIT = 100.0


class CellVerdict(Enum):
    OUTSIDE = -1
    UNCERTAIN = 0
    INSIDE = 1


@dataclass(frozen=True, slots=True)
class DistanceResult:
    """Enclosure [lower, upper] of the distance, plus search effort."""

    lower: float
    upper: float
    nodes_expanded: int

    @property
    def width(self) -> float:
        return self.upper - self.lower


def distance_to_attractor(params: CantorDustParams, point: tuple[float, float],
                          tol: float, node_cap: int = NODE_CAP_DEFAULT) -> DistanceResult:
    """Certified distance enclosure of width at most tol.

    Certified widths below about 1e-12 are unattainable (the bound pads of the
    square tree dominate); such requests exhaust the node cap and fail loudly.
    """
    if not (tol > 0.0):
        raise ToleranceError(f"tolerance must be positive, got {tol}")
    px, py = float(point[0]), float(point[1])
    if abs(px) > _COORD_LIMIT or abs(py) > _COORD_LIMIT:
        raise DomainError(f"query point {point} outside the supported box "
                          f"[-{_COORD_LIMIT}, {_COORD_LIMIT}]^2")
    status, lo, hi, nodes = kernel.distance_query(params.r, px, py,
                                                  max(tol, TOL_FLOOR), node_cap)
    if status == STATUS_CAP:
        raise ResourceError(
            f"distance query at {point} exceeded the node cap {node_cap} "
            f"(requested tol {tol})")
    return DistanceResult(max(0.0, lo), hi, nodes)


def classify_cell(params: CantorDustParams, cell: Square, eps: float,
                  slack: float = 0.125,
                  node_cap: int = NODE_CAP_DEFAULT) -> CellVerdict:
    """Classify a cell against the eps-parallel set of the attractor.

    Inside means every point of the cell is within eps of the attractor,
    outside means no point is (strictly); both via the certified center
    distance combined with the 1-Lipschitz distance bound over the cell.
    """
    if not (eps > 0.0):
        raise DomainError(f"eps must be positive, got {eps}")
    status, _, _, _ = kernel.classify_box(
        params.r, cell.x, cell.x + cell.side, cell.y, cell.y + cell.side,
        eps, slack, node_cap)
    if status == STATUS_CAP:
        raise ResourceError(f"cell classification exceeded the node cap {node_cap}")
    if status == STATUS_IN:
        return CellVerdict.INSIDE
    if status == STATUS_OUT:
        return CellVerdict.OUTSIDE
    return CellVerdict.UNCERTAIN


def within_distance(params: CantorDustParams, point: tuple[float, float],
                    eps: float, node_cap: int = NODE_CAP_DEFAULT):
    """True/False if the point is certifiably inside/outside the eps-parallel
    set, None if the point sits within the resolution floor of the boundary."""
    if not (eps > 0.0):
        raise DomainError(f"eps must be positive, got {eps}")
    status, _, _, _ = kernel.threshold_query(params.r, float(point[0]),
                                             float(point[1]), eps, node_cap)
    if status == STATUS_IN:
        return True
    if status == STATUS_OUT:
        return False
    return None
