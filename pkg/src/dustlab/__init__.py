"""dustlab: certified eps-parallel-set areas of planar corner Cantor dusts.

The package computes rigorously enclosed areas of eps-neighborhoods of the
four-corner Cantor dusts with parameter r > 2, evaluates the closed-form
bound functions that separate the normalized-area clusters, and runs the
verification campaigns (gap-region recursion, bound-inequality scan,
oscillation sampling) behind the ``dustlab`` command line tool.
"""

from .backend import get_backend
from .bounds import (SequenceSpec, basic_hi_lower_bound, basic_lo_upper_bound,
                     eps_in_window, f1, f1_value, f2, f2_value,
                     green_lower_bound_basic, green_upper_convex_hull,
                     h_distance, normalization_factor, sequence_eps,
                     sequence_valid, threshold_root, valid_eps_range)
from .distance import (CellVerdict, DistanceResult, classify_cell,
                       distance_to_attractor, within_distance)
from .errors import (DegenerateError, DomainError, DustlabError, EpsOutOfRange,
                     ResourceError, ToleranceError)
from .ifs import (CantorDustParams, SelfSimilarSystem, Similarity, Square, Word,
                  build_cantor_dust, construction_step, corner_points,
                  lattice_base, minkowski_dimension)
from .interval import Interval, IntervalArray, MPInterval
from .volume import (PLANE, Decomposition, Region, RegionKind, VolumeResult,
                     decompose_volume, normalized_volume,
                     normalized_volume_result, volume)

__version__ = "0.1.0"
