"""Inequality measurement and egalitarian aggregation toolkit.

Profiles of individual utilities go in; inequality indices, Lorenz
curves, rank-discounted welfare totals, penalized aggregates, and
stress-test constructions come out. The CLI front end lives in
``welfare_lab.cli`` and renders optional figures next to its reports.
"""

from __future__ import annotations

from .aggregate import (
    AggregateSpec,
    AuditConfig,
    MonotonicityReport,
    Violation,
    atkinson_aggregate,
    f_aggregate,
    f_egal,
    f_util,
    gini_aggregate_derivative,
    gini_lambda_bound,
    monotonicity_audit,
    rank_gini,
)
from .choice_theory import (
    CalibrationTable,
    Lottery,
    ScenarioAssessment,
    ThresholdAuditReport,
    ThresholdRule,
    TrolleyScenario,
    calibrated_utility,
    deaths_delta,
    expected_deaths,
    expected_utility,
    harsanyi_social_value,
    scenarios_from_json,
    threshold_rule_audit,
)
from .core import (
    DEFAULT_TOLERANCE,
    PRINTED_VALUE_TOLERANCE,
    SortedProfileView,
    Tolerance,
    UtilityProfile,
    as_profile,
    parse_profile,
    replicate_profile,
    scale_profile,
    serialize_profile,
    sort_view,
)
from .errors import (
    DegenerateIdentical,
    DimensionMismatch,
    EmptyProfile,
    InvalidParams,
    InvalidReplication,
    InvalidScale,
    InvalidShape,
    LengthMismatch,
    NegativeValue,
    NonMonotoneBetas,
    NonPositiveValue,
    ParseError,
    WelfareError,
    ZeroMean,
    ZeroTotal,
)
from .lorenz import (
    LorenzCurve,
    RankWeightFn,
    gini_from_lorenz,
    lorenz_dominates,
    lorenz_from_profile,
    lorenz_max_gap,
    lorenz_value,
)
from .measures import (
    DEFAULT_TAGS,
    MEASURE_NAMES,
    ORIENTATION,
    FairnessParams,
    MeasureDescriptor,
    atkinson,
    descriptor,
    equally_distributed_equivalent,
    evaluate_measure,
    fairness_measure,
    fairness_params_from_epsilon,
    fairness_to_atkinson,
    gini,
    gini_pairwise,
    range_measure,
    relative_mean_deviation,
    std_dev_measure,
    variance_measure,
)
from .preorder import (
    ConsistencyReport,
    RankTier,
    RelationTable,
    check_preorder,
    deletion_probe,
    dominance_compare,
    rank_by_function,
    rank_induced_table,
)
from .rank_weighted import (
    DiscountFactor,
    LevelHistogram,
    irbd_replication_limit,
    level_histogram,
    w_irbd,
    w_ulbd,
    w_ulbd_from_histogram,
)
from .search import (
    CollapseReport,
    CollapseRung,
    ReversalWitness,
    ScaleGrid,
    UlbdConstruction,
    anomaly_threshold_m,
    build_ulbd_construction,
    demonstrate_irbd_collapse,
    find_scale_reversal,
    reversal_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateSpec",
    "AuditConfig",
    "CalibrationTable",
    "CollapseReport",
    "CollapseRung",
    "ConsistencyReport",
    "DEFAULT_TAGS",
    "DEFAULT_TOLERANCE",
    "DegenerateIdentical",
    "DimensionMismatch",
    "DiscountFactor",
    "EmptyProfile",
    "FairnessParams",
    "InvalidParams",
    "InvalidReplication",
    "InvalidScale",
    "InvalidShape",
    "LengthMismatch",
    "LevelHistogram",
    "LorenzCurve",
    "Lottery",
    "MEASURE_NAMES",
    "MeasureDescriptor",
    "MonotonicityReport",
    "NegativeValue",
    "NonMonotoneBetas",
    "NonPositiveValue",
    "ORIENTATION",
    "PRINTED_VALUE_TOLERANCE",
    "ParseError",
    "RankTier",
    "RankWeightFn",
    "RelationTable",
    "ReversalWitness",
    "ScaleGrid",
    "ScenarioAssessment",
    "SortedProfileView",
    "ThresholdAuditReport",
    "ThresholdRule",
    "Tolerance",
    "TrolleyScenario",
    "UlbdConstruction",
    "UtilityProfile",
    "Violation",
    "WelfareError",
    "ZeroMean",
    "ZeroTotal",
    "anomaly_threshold_m",
    "as_profile",
    "atkinson",
    "atkinson_aggregate",
    "build_ulbd_construction",
    "calibrated_utility",
    "check_preorder",
    "deaths_delta",
    "deletion_probe",
    "demonstrate_irbd_collapse",
    "descriptor",
    "dominance_compare",
    "equally_distributed_equivalent",
    "evaluate_measure",
    "expected_deaths",
    "expected_utility",
    "f_aggregate",
    "f_egal",
    "f_util",
    "fairness_measure",
    "fairness_params_from_epsilon",
    "fairness_to_atkinson",
    "find_scale_reversal",
    "gini",
    "gini_aggregate_derivative",
    "gini_from_lorenz",
    "gini_lambda_bound",
    "gini_pairwise",
    "harsanyi_social_value",
    "irbd_replication_limit",
    "level_histogram",
    "lorenz_dominates",
    "lorenz_from_profile",
    "lorenz_max_gap",
    "lorenz_value",
    "monotonicity_audit",
    "parse_profile",
    "rank_by_function",
    "rank_gini",
    "rank_induced_table",
    "range_measure",
    "relative_mean_deviation",
    "replicate_profile",
    "reversal_sweep",
    "scale_profile",
    "scenarios_from_json",
    "serialize_profile",
    "sort_view",
    "std_dev_measure",
    "threshold_rule_audit",
    "variance_measure",
    "w_irbd",
    "w_ulbd",
    "w_ulbd_from_histogram",
]
