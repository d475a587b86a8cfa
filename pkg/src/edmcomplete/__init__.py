"""Low-rank Euclidean distance matrix completion by Douglas-Rachford reflections."""

from .edm import (
    HouseholderBlocks,
    PartialEDM,
    PointCloud,
    edm_from_points,
    householder_q,
    is_edm,
    merge_blocks,
    points_from_edm,
    split_blocks,
)
from .errors import InvalidInput, MissingRadius, NumericalFailure, ParseError
from .linalg import EigenDecomposition, frobenius_norm, symmetric_eig
from .metrics import AlignmentResult, edm_error, position_error, procrustes_align
from .observe import Mode, ObservationModel, build_partial_edm
from .pipeline import ReplicationRecord, RunReport, run_reconstruction
from .projections import (
    DataConstraint,
    RankEdmConstraint,
    project_data,
    project_rank_edm,
    project_rank_psd,
    reflect,
)
from .solver import (
    FeasibilityPair,
    SolverConfig,
    SolverResult,
    Termination,
    TraceRecord,
    douglas_rachford,
    douglas_rachford_periodic,
    relative_error_db,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentResult",
    "DataConstraint",
    "EigenDecomposition",
    "FeasibilityPair",
    "HouseholderBlocks",
    "InvalidInput",
    "MissingRadius",
    "Mode",
    "NumericalFailure",
    "ObservationModel",
    "ParseError",
    "PartialEDM",
    "PointCloud",
    "RankEdmConstraint",
    "ReplicationRecord",
    "RunReport",
    "SolverConfig",
    "SolverResult",
    "Termination",
    "TraceRecord",
    "build_partial_edm",
    "douglas_rachford",
    "douglas_rachford_periodic",
    "edm_error",
    "edm_from_points",
    "frobenius_norm",
    "householder_q",
    "is_edm",
    "merge_blocks",
    "points_from_edm",
    "position_error",
    "procrustes_align",
    "project_data",
    "project_rank_edm",
    "project_rank_psd",
    "reflect",
    "relative_error_db",
    "run_reconstruction",
    "split_blocks",
    "symmetric_eig",
    "__version__",
]
