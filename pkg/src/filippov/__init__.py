"""Planar piecewise-smooth vector fields split by a straight switching
line, specialized to the unfolding of a fold tangency meeting a saddle
on the line.

The core layer handles arbitrary affine half-plane fields: classifying
line points (crossing, sliding, escaping), the sliding vector field and
its equilibria, tangency detection, and event-driven integration of
trajectories that sew, slide, and exit tangencies correctly.  The
family layer adds the two-parameter fold-saddle normal forms and their
closed-form transition maps.  The atlas layer classifies parameter
space into cases, reduces cases to topological signatures, sweeps
grids, verifies the closed forms against independent numerics, and
renders portraits and bifurcation diagrams as deterministic SVG.
"""

from ._tol import DOMAIN, EPS0, T_MAX
from .atlas import (
    CaseGrid,
    CaseId,
    CellResult,
    CSV_HEADER,
    TopoSignature,
    VerifyItem,
    atlas_files,
    boundary_curves,
    classify_case,
    grid_to_csv,
    render_diagram,
    render_portrait,
    representative_params,
    sweep,
    topo_signature,
    verify,
)
from .core import AffineField, NonSmoothSystem, Point, lie, lie2
from .family import (
    DomainViolation,
    FoldSaddleParams,
    Landmarks,
    ParamOutOfRange,
    RelayPreset,
    Tau,
    VisibleFoldNoReturn,
    build_system,
    landmarks,
    lower_fold_x,
    params_from_dict,
    params_to_dict,
    pseudo_eq_closed_form,
    pseudo_eq_coeffs,
    pseudo_eq_roots,
    relay_preset,
    return_map_upper,
    saddle_map_affine,
)
from .integrator import (
    Arc,
    ArcSide,
    CanardCycle,
    CycleKind,
    CycleStability,
    LeftDomain,
    NoReturn,
    Termination,
    TerminationKind,
    TimeBudget,
    Trajectory,
    detect_separatrix_connection,
    detect_sigma_center,
    find_canard_cycles,
    first_return,
    flow_to_sigma,
    integrate,
    trajectory_to_csv,
)
from .switching import (
    FoldKind,
    PseudoEquilibrium,
    Segment,
    Side,
    SigmaClass,
    SigmaPartition,
    SigmaStability,
    Tangency,
    classify_sigma_point,
    direction_function,
    find_pseudo_equilibria,
    find_tangencies,
    partition_sigma,
    sliding_vector,
    sliding_vector_geometric,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AffineField",
    "Arc",
    "ArcSide",
    "CSV_HEADER",
    "CanardCycle",
    "CaseGrid",
    "CaseId",
    "CellResult",
    "CycleKind",
    "CycleStability",
    "DOMAIN",
    "DomainViolation",
    "EPS0",
    "FoldKind",
    "FoldSaddleParams",
    "Landmarks",
    "LeftDomain",
    "NoReturn",
    "NonSmoothSystem",
    "ParamOutOfRange",
    "Point",
    "PseudoEquilibrium",
    "RelayPreset",
    "Segment",
    "Side",
    "SigmaClass",
    "SigmaPartition",
    "SigmaStability",
    "T_MAX",
    "Tangency",
    "Tau",
    "Termination",
    "TerminationKind",
    "TimeBudget",
    "TopoSignature",
    "Trajectory",
    "VerifyItem",
    "VisibleFoldNoReturn",
    "atlas_files",
    "boundary_curves",
    "build_system",
    "classify_case",
    "classify_sigma_point",
    "detect_separatrix_connection",
    "detect_sigma_center",
    "direction_function",
    "find_canard_cycles",
    "find_pseudo_equilibria",
    "find_tangencies",
    "first_return",
    "flow_to_sigma",
    "grid_to_csv",
    "integrate",
    "landmarks",
    "lie",
    "lie2",
    "lower_fold_x",
    "params_from_dict",
    "params_to_dict",
    "partition_sigma",
    "pseudo_eq_closed_form",
    "pseudo_eq_coeffs",
    "pseudo_eq_roots",
    "relay_preset",
    "render_diagram",
    "render_portrait",
    "representative_params",
    "return_map_upper",
    "saddle_map_affine",
    "sliding_vector",
    "sliding_vector_geometric",
    "sweep",
    "topo_signature",
    "trajectory_to_csv",
    "verify",
]
