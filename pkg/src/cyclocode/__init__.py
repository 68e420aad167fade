"""Improved Gilbert-Varshamov-type guarantees for cyclic-structure codes.

The pipeline: enumerate full-period cyclic shift classes, connect classes
closer than the target distance, find a large independent set, and expand
it into a hopping cyclic code (or its constant-weight, frequency-hopping,
or prefix-suffix-uncorrelated variants).  Next to the constructions sit
the closed-form bounds they are measured against and exact or Monte-Carlo
concentration experiments for the probabilistic ingredients.
"""

from .budget import DEFAULT_ENUMERATION_BUDGET, ENV_VAR, enumeration_budget
from .classgraph import (
    ClassGraph,
    DegreeStats,
    SparsityDiagnostics,
    build_graph,
    class_distance,
    degree_stats,
    sparsity_diagnostics,
)
from .codes import (
    CodeArtifact,
    CorrelationReport,
    Verdict,
    Violation,
    assemble,
    derive_fhs,
    derive_wmuc,
    hamming_correlation,
    read_code_file,
    verify_code,
    verify_fhs,
    verify_hcc,
    verify_ooc,
    verify_wmuc,
    write_code_file,
)
from .concentration import (
    CensusResult,
    TailEstimate,
    conditional_tail_weight_slice,
    exact_autodistance_census,
    exact_autodistance_census_cw,
    expected_shift_distance_bernoulli,
    expected_shift_distance_uniform,
    mc_tail,
    min_autodistance_histogram,
    min_autodistance_histogram_cw,
)
from .errors import (
    CapacityError,
    CodeFileFormatError,
    ContractViolation,
    DimensionMismatch,
    DivisionDomainError,
)
from .solver import (
    GreedyResult,
    SolveReport,
    SolverConfig,
    exact_mis,
    greedy_independent_set,
    solve_report,
)
from .volumes import (
    BoundReport,
    DecayRow,
    RealBound,
    TailCensusBound,
    autodistance_census_bound,
    ball_intersection_volume,
    ball_volume,
    bound_report,
    cw_autodistance_census_bound,
    cw_ball_volume,
    fhs_gv_bound,
    gv_bound,
    hcc_gv_bound,
    independence_lower_bound,
    intersection_decay_table,
    levenshtein_bound,
    linear_scale_hcc,
    linear_scale_ooc,
    mcdiarmid_tail,
)
from .words import (
    CyclicClass,
    Word,
    autocorrelation_distance,
    canonical_rotation,
    class_of,
    cyclic_shift,
    enumerate_classes,
    hamming_distance,
    min_cyclic_autodistance,
    period,
    weight,
    word,
    word_from_text,
    word_to_text,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # words
    "Word",
    "CyclicClass",
    "word",
    "word_from_text",
    "word_to_text",
    "cyclic_shift",
    "hamming_distance",
    "weight",
    "period",
    "autocorrelation_distance",
    "min_cyclic_autodistance",
    "canonical_rotation",
    "class_of",
    "enumerate_classes",
    # volumes and bounds
    "ball_volume",
    "cw_ball_volume",
    "gv_bound",
    "levenshtein_bound",
    "linear_scale_hcc",
    "linear_scale_ooc",
    "hcc_gv_bound",
    "fhs_gv_bound",
    "independence_lower_bound",
    "mcdiarmid_tail",
    "autodistance_census_bound",
    "cw_autodistance_census_bound",
    "ball_intersection_volume",
    "intersection_decay_table",
    "bound_report",
    "RealBound",
    "TailCensusBound",
    "BoundReport",
    "DecayRow",
    # concentration
    "CensusResult",
    "TailEstimate",
    "exact_autodistance_census",
    "exact_autodistance_census_cw",
    "min_autodistance_histogram",
    "min_autodistance_histogram_cw",
    "expected_shift_distance_uniform",
    "expected_shift_distance_bernoulli",
    "mc_tail",
    "conditional_tail_weight_slice",
    # graph
    "ClassGraph",
    "DegreeStats",
    "SparsityDiagnostics",
    "build_graph",
    "class_distance",
    "degree_stats",
    "sparsity_diagnostics",
    # solver
    "SolverConfig",
    "GreedyResult",
    "SolveReport",
    "greedy_independent_set",
    "exact_mis",
    "solve_report",
    # codes
    "CodeArtifact",
    "CorrelationReport",
    "Verdict",
    "Violation",
    "assemble",
    "verify_code",
    "verify_hcc",
    "verify_ooc",
    "verify_fhs",
    "verify_wmuc",
    "derive_fhs",
    "derive_wmuc",
    "hamming_correlation",
    "read_code_file",
    "write_code_file",
    # budget and errors
    "enumeration_budget",
    "DEFAULT_ENUMERATION_BUDGET",
    "ENV_VAR",
    "CapacityError",
    "CodeFileFormatError",
    "ContractViolation",
    "DimensionMismatch",
    "DivisionDomainError",
]
