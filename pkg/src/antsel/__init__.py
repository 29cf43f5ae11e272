"""Receive antenna-subset selection for large MIMO arrays.

Capacity evaluation, optimal and heuristic subset selection with
complexity accounting, Gaussian approximations of the selection capacity
bounds, adaptive partial-CSI selection, and a reproducible Monte-Carlo
experiment harness.
"""

from .bounds import (
    GapModel,
    GaussianBound,
    QuadratureError,
    TrimmedSumParams,
    approx_ergodic_capacity,
    bf_bound_params,
    chi2_pdf,
    chi2_tail,
    chi2_tail_threshold,
    gap,
    mrc_bound_params,
    mrc_trimmed_params,
)
from .capacity import EfficiencyParams, capacity, efficient_capacity
from .channel import RngStream, derive_stream, row_norms_sq, row_subset, sample_channel
from .montecarlo import (
    CdfResult,
    ErgodicResult,
    ExperimentConfig,
    SummaryStats,
    SweepResult,
    ks_distance,
    run_cdf,
    run_ergodic,
    sample_bf_bound,
    sample_full_bound,
    sample_mrc_bound,
    sweep_csi,
)
from .selection import (
    SELECTORS,
    AdaptiveConfig,
    AdaptiveOutcome,
    CapacityBudgetError,
    SelectionResult,
    adaptive_select,
    bab_select,
    exhaustive_select,
    greedy_select,
    norm_select,
)

__version__ = "0.1.0"

__all__ = [
    "AdaptiveConfig",
    "AdaptiveOutcome",
    "CapacityBudgetError",
    "CdfResult",
    "EfficiencyParams",
    "ErgodicResult",
    "ExperimentConfig",
    "GapModel",
    "GaussianBound",
    "QuadratureError",
    "RngStream",
    "SELECTORS",
    "SelectionResult",
    "SummaryStats",
    "SweepResult",
    "TrimmedSumParams",
    "adaptive_select",
    "approx_ergodic_capacity",
    "bab_select",
    "bf_bound_params",
    "capacity",
    "chi2_pdf",
    "chi2_tail",
    "chi2_tail_threshold",
    "derive_stream",
    "efficient_capacity",
    "exhaustive_select",
    "gap",
    "greedy_select",
    "ks_distance",
    "mrc_bound_params",
    "mrc_trimmed_params",
    "norm_select",
    "row_norms_sq",
    "row_subset",
    "run_cdf",
    "run_ergodic",
    "sample_bf_bound",
    "sample_channel",
    "sample_full_bound",
    "sample_mrc_bound",
    "sweep_csi",
]
