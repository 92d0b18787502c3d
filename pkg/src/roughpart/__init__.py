"""Granular rough-set engine over finite universes.

The package provides graded and variable-precision approximation
operators driven by rough inclusion measures, substantial-parthood
predicates with their structural properties, rational approximations,
grade/precision correspondence partitions, and verification suites that
check every statement exhaustively on small universes.
"""

from .core import (
    CapExceeded,
    CheckReport,
    ESet,
    Granulation,
    RelationSpec,
    Universe,
    binding,
    build_neighborhood_granulation,
    check_admissibility,
    check_ggs_axioms,
    iter_submasks,
    neighborhood_map,
)
from .inclusion import (
    InclusionFn,
    VALID_AXIOMS,
    check_axiom,
    check_prif_implications,
    classify_rif,
    default_delta_sweep,
    dependence_degree,
    eval_bgrif,
    eval_cgrif,
    eval_classification_error,
    eval_k0,
    eval_k1,
    eval_k2,
    eval_kst,
    evaluate_axiom_instance,
    kappa_bgrif,
    kappa_k0,
    kappa_k1,
    kappa_k2,
    kappa_st,
)
from .approx import (
    ApproxSpec,
    GradedRegions,
    OPERATOR_IDS,
    Regions,
    bited_upper,
    classical_lower,
    classical_upper,
    graded_lower,
    graded_lower_strict,
    graded_regions,
    graded_upper,
    pointwise_lower,
    pointwise_upper,
    vprs_lower,
    vprs_negative,
    vprs_regions,
    vprs_star_lower,
    vprs_star_upper,
    vprs_upper,
)
from .parthood import (
    PARTHOOD_TAGS,
    PROPERTY_NAMES,
    ParthoodRelation,
    PropertyProfile,
    PropertyStatus,
    PuResult,
    analyze_properties,
    build_parthood,
    build_pu,
    equalizers,
)
from .rational import (
    LOWER_MODES,
    RationalResult,
    check_rational_proposition,
    rational_lower,
    rational_upper,
)
from .correspond import (
    GradeBlock,
    GradePartition,
    build_lower_correspondence,
    build_upper_correspondence,
    check_nonrepresentability,
    lower_threshold,
    upper_threshold,
)
from .verify import (
    ClauseOutcome,
    Counterexample,
    DiffReport,
    Fixture,
    SUITE_IDS,
    SuiteResult,
    TABLE_IDS,
    battery,
    compare_with_expected,
    counterexample_to_json,
    diff_report_to_json,
    diff_tables,
    fixture_from_table,
    load_expected_outcomes,
    load_parthood_claims,
    load_reference_table,
    random_granulation,
    run_theorem_suite,
    standard_fixture,
    suite_result_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxSpec",
    "CapExceeded",
    "CheckReport",
    "ClauseOutcome",
    "Counterexample",
    "DiffReport",
    "ESet",
    "Fixture",
    "GradeBlock",
    "GradePartition",
    "GradedRegions",
    "Granulation",
    "InclusionFn",
    "LOWER_MODES",
    "OPERATOR_IDS",
    "PARTHOOD_TAGS",
    "PROPERTY_NAMES",
    "ParthoodRelation",
    "PropertyProfile",
    "PropertyStatus",
    "PuResult",
    "RationalResult",
    "Regions",
    "RelationSpec",
    "SUITE_IDS",
    "SuiteResult",
    "TABLE_IDS",
    "Universe",
    "VALID_AXIOMS",
    "analyze_properties",
    "battery",
    "binding",
    "bited_upper",
    "build_lower_correspondence",
    "build_neighborhood_granulation",
    "build_parthood",
    "build_pu",
    "build_upper_correspondence",
    "check_admissibility",
    "check_axiom",
    "check_ggs_axioms",
    "check_nonrepresentability",
    "check_prif_implications",
    "check_rational_proposition",
    "classical_lower",
    "classical_upper",
    "classify_rif",
    "compare_with_expected",
    "counterexample_to_json",
    "default_delta_sweep",
    "dependence_degree",
    "diff_report_to_json",
    "diff_tables",
    "equalizers",
    "eval_bgrif",
    "eval_cgrif",
    "eval_classification_error",
    "eval_k0",
    "eval_k1",
    "eval_k2",
    "eval_kst",
    "evaluate_axiom_instance",
    "fixture_from_table",
    "graded_lower",
    "graded_lower_strict",
    "graded_regions",
    "graded_upper",
    "iter_submasks",
    "kappa_bgrif",
    "kappa_k0",
    "kappa_k1",
    "kappa_k2",
    "kappa_st",
    "load_expected_outcomes",
    "load_parthood_claims",
    "load_reference_table",
    "lower_threshold",
    "neighborhood_map",
    "pointwise_lower",
    "pointwise_upper",
    "random_granulation",
    "rational_lower",
    "rational_upper",
    "run_theorem_suite",
    "standard_fixture",
    "suite_result_to_json",
    "upper_threshold",
    "vprs_lower",
    "vprs_negative",
    "vprs_regions",
    "vprs_star_lower",
    "vprs_star_upper",
    "vprs_upper",
]
