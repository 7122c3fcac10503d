"""Capped k-center clustering: no color may exceed an alpha fraction of any cluster."""

from .core import (
    CAP_TOL,
    ClusteringSolution,
    ContractViolation,
    InfeasibleInstance,
    InputError,
    Instance,
    Point,
    RadiusGrid,
    candidate_radii,
    check_capped,
    distance,
    make_instance,
    nearest_assignment,
    solution_cost,
)
from .flow import (
    Arc,
    FlowNetwork,
    IntegralFlow,
    build_assignment_network,
    extract_assignment,
    max_flow_lower_bounds,
    network_to_dot,
)
from .greedy import GreedyConfig, greedy_k_center, lloyd_kcenter_round, random_baseline
from .halfcap import (
    Caplet,
    CapletDecomposition,
    caplet_decompose,
    connected_components,
    non_dominant_k_center,
    threshold_graph,
)
from .hardness import (
    BipartiteSeed,
    capped_cost_at_most,
    hardness_instance,
    min_capped_cost_unbounded,
    t_star_decomposition_exists,
)
from .harness import (
    CappedInstanceReport,
    RunConfig,
    brute_force_capped_opt,
    brute_force_kcenter_opt,
    evaluate,
    faster_algorithm,
    greedy_gold,
    make_balanced_instance,
    max_additive_violation,
    report_to_json,
    reports_to_csv,
)
from .lp_feasibility import (
    FractionalSolution,
    LinearSystem,
    SolverError,
    build_polytope,
    check_feasible,
    min_feasible_radius,
    validate_point,
)
from .lp_rounding import (
    FacilityMap,
    fair_k_center,
    reroute_fractional,
    select_separated_facilities,
)
from .matching import SimpleGraph, has_perfect_matching, max_matching
from .simplex import SolverStuck

__all__ = [
    "Arc",
    "BipartiteSeed",
    "CAP_TOL",
    "Caplet",
    "CapletDecomposition",
    "CappedInstanceReport",
    "ClusteringSolution",
    "ContractViolation",
    "FacilityMap",
    "FlowNetwork",
    "FractionalSolution",
    "GreedyConfig",
    "InfeasibleInstance",
    "InputError",
    "Instance",
    "IntegralFlow",
    "LinearSystem",
    "Point",
    "RadiusGrid",
    "RunConfig",
    "SimpleGraph",
    "SolverError",
    "SolverStuck",
    "brute_force_capped_opt",
    "brute_force_kcenter_opt",
    "build_assignment_network",
    "build_polytope",
    "candidate_radii",
    "caplet_decompose",
    "capped_cost_at_most",
    "check_capped",
    "check_feasible",
    "connected_components",
    "distance",
    "evaluate",
    "extract_assignment",
    "fair_k_center",
    "faster_algorithm",
    "greedy_gold",
    "greedy_k_center",
    "hardness_instance",
    "has_perfect_matching",
    "lloyd_kcenter_round",
    "make_balanced_instance",
    "make_instance",
    "max_additive_violation",
    "max_flow_lower_bounds",
    "max_matching",
    "min_capped_cost_unbounded",
    "min_feasible_radius",
    "nearest_assignment",
    "network_to_dot",
    "non_dominant_k_center",
    "random_baseline",
    "report_to_json",
    "reports_to_csv",
    "reroute_fractional",
    "select_separated_facilities",
    "solution_cost",
    "t_star_decomposition_exists",
    "threshold_graph",
    "validate_point",
]
