"""Bounded max-coloring of vertices and edges: approximation algorithms
with proven ratios, exact reference solvers, seeded generators, and the
chains-to-tree hardness reduction."""

from .edge_algos import (
    ColorCountBounds,
    convert_ec_tree,
    greedy_ec,
    harmonic_number,
    is_nice_solution,
    nice_color_count_bounds,
    setcover_approx,
    tree_delta_matchings,
    within_sqrt_ratio_bound,
)
from .errors import (
    BmcolorError,
    GuardExceededError,
    InfeasibleError,
    InvalidCertificateError,
    InvalidParameterError,
    InvalidStructureError,
    ParseError,
)
from .generators import (
    AdversarialResult,
    adversarial_greedy_search,
    gen_bipartite,
    gen_general,
    gen_random,
    gen_tree,
)
from .graphs import (
    Coloring,
    Mode,
    OrderedPartition,
    StructureInfo,
    ValidationReport,
    WeightedGraph,
    ordered_b_partition,
    structure_probe,
    validate_coloring,
)
from .oracle import (
    DEFAULT_SIZE_GUARD,
    ListColoringInstance,
    OracleResult,
    coloring_within_budget,
    exact_bounded_coloring_upto,
    list_coloring_decision,
    list_driven_minimum,
    oracle_opt,
    two_color_list_bounded,
)
from .reduction import (
    CHAIN_BOUND,
    ChainListInstance,
    ReductionOutput,
    build_hardness_instance,
    normalize_chain_list_instance,
    verify_yes_certificate,
    vertex_chain_to_edge_chain,
)
from .vertex_algos import (
    SchemeParams,
    scheme,
    split,
    tree_exact_fixed_k,
    vc_b_bipartite,
)

__version__ = "0.1.0"

__all__ = [
    "AdversarialResult",
    "BmcolorError",
    "CHAIN_BOUND",
    "ChainListInstance",
    "ColorCountBounds",
    "Coloring",
    "DEFAULT_SIZE_GUARD",
    "GuardExceededError",
    "InfeasibleError",
    "InvalidCertificateError",
    "InvalidParameterError",
    "InvalidStructureError",
    "ListColoringInstance",
    "Mode",
    "OracleResult",
    "OrderedPartition",
    "ParseError",
    "ReductionOutput",
    "SchemeParams",
    "StructureInfo",
    "ValidationReport",
    "WeightedGraph",
    "adversarial_greedy_search",
    "build_hardness_instance",
    "coloring_within_budget",
    "convert_ec_tree",
    "exact_bounded_coloring_upto",
    "gen_bipartite",
    "gen_general",
    "gen_random",
    "gen_tree",
    "greedy_ec",
    "harmonic_number",
    "is_nice_solution",
    "list_coloring_decision",
    "list_driven_minimum",
    "nice_color_count_bounds",
    "normalize_chain_list_instance",
    "oracle_opt",
    "ordered_b_partition",
    "scheme",
    "setcover_approx",
    "split",
    "structure_probe",
    "tree_delta_matchings",
    "tree_exact_fixed_k",
    "two_color_list_bounded",
    "validate_coloring",
    "vc_b_bipartite",
    "verify_yes_certificate",
    "vertex_chain_to_edge_chain",
    "within_sqrt_ratio_bound",
]
