"""Stable noncrossing matchings on two parallel lines.

Agents sit on two vertical lines, numbered top to bottom, and a matching is
drawn as straight segments between them.  The package decides existence of
fully stable noncrossing matchings, computes maximum-cardinality noncrossing
matchings whose blocking pairs all cross them, handles the length-1-list
special case in linear time, and builds the gadget instances showing the
weak-stability existence question is hard.  Exhaustive oracles back all of it.
"""

from .core import (
    ContractViolation,
    Instance,
    Matching,
    Notion,
    NOTIONS,
    Side,
    TIE_NOTIONS,
    blocks,
    check_notion,
    classify,
    compare,
    crosses,
    noncrossing_blocking_pairs,
)
from .formats import (
    FormatError,
    parse_dimacs,
    parse_instance,
    serialize_dimacs,
    serialize_instance,
)
from .generate import generate, generate_len1
from .greedy1 import (
    FirstChoiceGraph,
    build_first_choice_graph,
    weak_ssnm_len1,
    weak_ssnm_len1_women,
)
from .maxwsnm import (
    AugmentedInstance,
    DpState,
    WindowTables,
    augment,
    build_tables,
    conflicting,
    conflicting_naive,
    max_wsnm,
    max_wsnm_detailed,
)
from .oracle import (
    DEFAULT_GUARD,
    SizeGuard,
    SizeGuardExceeded,
    brute_all_stable,
    brute_exist_ssnm,
    brute_max_wsnm,
    enumerate_noncrossing_matchings,
    iter_stable_matchings,
)
from .reduction import (
    CnfFormula,
    GadgetPlan,
    assignment_from_matching,
    build_gadget_instance,
    matching_from_assignment,
    validate_tovey,
)
from .render import render_ascii, render_figure
from .ssnm import (
    SsnmResult,
    exist_ssnm,
    find_stable,
    gale_shapley,
    rural_hospitals_check,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentedInstance",
    "CnfFormula",
    "ContractViolation",
    "DEFAULT_GUARD",
    "DpState",
    "FirstChoiceGraph",
    "FormatError",
    "GadgetPlan",
    "Instance",
    "Matching",
    "NOTIONS",
    "Notion",
    "Side",
    "SizeGuard",
    "SizeGuardExceeded",
    "SsnmResult",
    "TIE_NOTIONS",
    "WindowTables",
    "assignment_from_matching",
    "augment",
    "blocks",
    "brute_all_stable",
    "brute_exist_ssnm",
    "brute_max_wsnm",
    "build_first_choice_graph",
    "build_gadget_instance",
    "build_tables",
    "check_notion",
    "classify",
    "compare",
    "conflicting",
    "conflicting_naive",
    "crosses",
    "enumerate_noncrossing_matchings",
    "exist_ssnm",
    "find_stable",
    "gale_shapley",
    "generate",
    "generate_len1",
    "iter_stable_matchings",
    "matching_from_assignment",
    "max_wsnm",
    "max_wsnm_detailed",
    "noncrossing_blocking_pairs",
    "parse_dimacs",
    "parse_instance",
    "render_ascii",
    "render_figure",
    "rural_hospitals_check",
    "serialize_dimacs",
    "serialize_instance",
    "validate_tovey",
    "weak_ssnm_len1",
    "weak_ssnm_len1_women",
]
