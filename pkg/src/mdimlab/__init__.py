"""Finite-scale counting quantities for symbolic dynamics.

Covering/separation counts under dynamical metrics, Wasserstein and
Levy-Prokhorov distances on finite supports, static and dynamical
quantization numbers, four families of measure-theoretic entropy
surrogates, growth-rate estimators, and reproducible invariant suites
with exact brute-force oracles on small instances.
"""

from .metric_core import (
    FiniteMetricSpace,
    MetricAlphabet,
    Provenance,
    TruncationSpec,
    bowen_lift,
    pairwise_distance,
    truncation_window,
)
from .systems import (
    BlockParams,
    BlockUnion,
    BudgetExceeded,
    FullShift,
    Sample,
    SymbolicSystem,
    enumerate_states,
    full_shift,
    lift,
    make_block_system,
    make_grid_alphabet,
    make_reciprocal_alphabet,
)
from .covering import (
    BoxCount,
    CountKind,
    CountResult,
    Method,
    box_dimension_counts,
    count,
    greedy_net,
    interval_cover_count,
    max_separated_1d,
)
from .measures import (
    ComponentDecomposition,
    FiniteMeasure,
    ball_mass,
    convex_combine,
    dominates,
    product_measure,
)
from .transport import (
    Coupling,
    levy_prokhorov,
    levy_prokhorov_subsets,
    min_coupling_excess,
    optimal_coupling,
    wasserstein,
)
from .quantization import (
    QuantCurve,
    QuantizationResult,
    dynamical_quantization_curve,
    product_measure_rule,
    quantization_number,
    uniform_measure_rule,
)
from .entropy import (
    CoverSpec,
    KatokNumber,
    LocalDecay,
    PluginEntropy,
    brin_katok_average,
    brin_katok_local,
    katok_delta_table,
    katok_growth,
    katok_number,
    katok_number_space,
    make_ball_cover,
    product_ball_bounds,
    renyi_partition_entropy,
    renyi_plugin_entropy,
    shapira_number,
)
from .estimators import (
    DimensionReport,
    GrowthEstimate,
    counts_csv,
    dimension_report,
    full_shift_count_bounds,
    geometric_curve,
    growth_rate,
    report_summary,
)
from .suites import SUITE_NAMES, SuiteReport, replay, run_suite
from .solvers import NodeBudgetExceeded

__version__ = "0.1.0"
