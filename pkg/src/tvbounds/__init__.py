"""Lower bounds on total variation distance from means and variances.

The one-dimensional bound is tight and ships with constructors for the
discrete pairs that attain it; an embedded linear-programming oracle
re-derives the bound numerically as an independent check.  A trace bound
covers distributions on d-space.
"""

from .discrete import DiscreteDist, MomentSummary, check_moments, tv_distance
from .errors import (
    BadParameterError,
    DegenerateVarianceError,
    DimensionMismatchError,
    GapZeroError,
    TVBoundError,
    WitnessConstructionError,
)
from .moments import (
    BoundReport1D,
    MomentPair1D,
    MomentPairND,
    Moments1D,
    MomentsND,
    SiblingBranch,
    anchored_tv,
    bound_report,
    gap,
    radical_v,
    sibling_branch_tv,
    tv_lower_bound_1d,
    tv_lower_bound_nd,
    two_point_tv,
)
from .oracle import (
    GridSpec,
    LPStandardForm,
    OracleResult,
    OracleStatus,
    build_grid,
    check_nd_bound_random,
    formulate,
    minimize_tv_on_grid,
    solve,
)
from .witness import (
    WitnessKind,
    WitnessPair,
    construct_anchored_witness,
    construct_tight_witness,
    construct_two_point,
    construct_vanishing_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "BadParameterError",
    "BoundReport1D",
    "DegenerateVarianceError",
    "DimensionMismatchError",
    "DiscreteDist",
    "GapZeroError",
    "GridSpec",
    "LPStandardForm",
    "MomentPair1D",
    "MomentPairND",
    "Moments1D",
    "MomentsND",
    "MomentSummary",
    "OracleResult",
    "OracleStatus",
    "SiblingBranch",
    "TVBoundError",
    "WitnessConstructionError",
    "WitnessKind",
    "WitnessPair",
    "anchored_tv",
    "bound_report",
    "build_grid",
    "check_moments",
    "check_nd_bound_random",
    "construct_anchored_witness",
    "construct_tight_witness",
    "construct_two_point",
    "construct_vanishing_sequence",
    "formulate",
    "gap",
    "minimize_tv_on_grid",
    "radical_v",
    "sibling_branch_tv",
    "solve",
    "tv_distance",
    "tv_lower_bound_1d",
    "tv_lower_bound_nd",
    "two_point_tv",
]
