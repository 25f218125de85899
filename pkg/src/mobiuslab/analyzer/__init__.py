"""Möbius-weighted averages, test functions, entropy and pair diagnostics."""

from mobiuslab.analyzer.averages import (
    CSV_COLUMNS,
    DEFAULT_CHECKPOINTS,
    ConvergenceReport,
    describe_point,
    log_checkpoints,
    read_report_csv,
    s_average,
    summary_json,
    validate_checkpoints,
    weighted_partial_sums,
)
from mobiuslab.analyzer.diagnostics import (
    DISJOINT,
    INSIDE,
    STRADDLING,
    BoundRow,
    ComponentRow,
    SolenoidSplit,
    TransferResult,
    asymptotic_transfer_check,
    classify_component,
    ergodic_bound_decomposition,
    solenoid_case_split,
    uniform_sup_diagnostic,
)
from mobiuslab.analyzer.entropy import (
    EXHAUSTIVE_LIMIT,
    EntropyEstimate,
    entropy_estimate,
    exhaustive_counts,
    max_separated_bruteforce,
    verify_separated_maximal,
)
from mobiuslab.analyzer.functions import (
    TestFunction,
    circle_cosine,
    constant_function,
    coordinate_function,
    distance_to,
    interval_cosine,
    psi_U,
    tabulated,
)
from mobiuslab.analyzer.pairs import ASYMPTOTIC, LI_YORKE, PROXIMAL, SEPARATED, PairVerdict, orbit_distances, pair_classify
