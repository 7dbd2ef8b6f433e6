"""Exact and bounded Gromov-Hausdorff distances on finite metric spaces."""
from .bounds import (
    Bound,
    BoundReport,
    ghc_bounds,
    ghc_lower_connectivity,
    ghc_upper_partition,
    lower_bounds,
    partition_map_pair,
    spectrum_hausdorff,
    upper_bound_diam,
)
from .estimators import GromovHausdorffDistance, PairwiseGromovHausdorff
from .exceptions import (
    GHDistError,
    MetricError,
    NotSquare,
    NonFiniteEntry,
    NonzeroDiagonal,
    Asymmetric,
    NegativeOrZeroOffDiagonal,
    TriangleViolation,
    EmptySubset,
    NegativeScale,
    DimensionMismatch,
    DuplicatePoint,
    SizeMismatch,
    EmptyComposition,
    TooLarge,
    EpsilonTooLarge,
    ModelHasEdges,
    OutOfRange,
    BadParameters,
    BadGrid,
    BudgetExceeded,
    BoundViolation,
)
from .fixtures import (
    Fixture,
    build_counterexample_checks,
    build_interval_stack,
    build_omega_space,
    build_shifted_pairs,
    build_triode,
    triode_seed,
)
from .geodesics import (
    InterpolantFamily,
    geodesic_defect,
    interpolate,
    polyline_length,
    step_table,
)
from .metric import (
    FiniteMetricSpace,
    SpaceInvariants,
    check_metric_space,
    diameter,
    dist_spectrum,
    from_points,
    hausdorff,
    invariants,
    one_point,
    scale,
    subspace,
    validate,
)
from .relations import (
    MapPair,
    Relation,
    codistortion,
    compose,
    compose_maps,
    corr_from_maps,
    dis_map_pair,
    distortion_map,
    distortion_rel,
    extract_map_pair,
    graph,
    is_correspondence,
)
from .search import (
    DistanceResult,
    check_isometry_rigidity,
    find_eps_isometry,
    gh_bruteforce,
    gh_exact,
    ghc_exact,
)
from .topology import (
    CombinatorialSpace,
    components,
    eps_graph,
    is_admissible,
    is_connected,
    is_incomparable,
    is_totally_disconnected,
    path_space,
)

__version__ = "0.1.0"
