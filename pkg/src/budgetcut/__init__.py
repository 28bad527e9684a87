"""Budget-constrained minimum and maximum cuts in weighted graphs.

Every edge carries a weight (the objective) and a cost (charged against a
budget).  The package offers an exact branch-and-bound solver, a
Lagrangian heuristic for the minimum version, an exhaustive oracle for
small graphs and the supporting graph, min-cut and instance tooling.
"""

from .bnb import (
    MAX, MIN, Limits, SearchState, SolveReport, constrained_cut, is_tree,
    solve_by_blocks, solve_tree,
)
from .bounds import (
    fractional_max_bound, fractional_min_bound, min_cut_lower_bound, ranked_edges,
    residual_min_cut_bound,
)
from .graph import (
    Cut, DegeneratePartitionError, DisconnectedGraphError, Edge, GraphError,
    WeightedGraph, blocks, contract, evaluate_partition, validate_cut,
)
from .instances import (
    BudgetSpec, Instance, InstanceFormatError, compute_budget, generate_random,
    knapsack_to_cut, parse_dimacs, parse_instance, parse_items, read_instance,
    serialize_instance, serialize_solution,
)
from .lagrangian import DualReport, evaluate_lambda, kl_refine, solve_dual
from .mincut import budgeted_cut, budgeted_cut_phase, minimum_cut
from .oracle import (
    MAX_ORACLE_VERTICES, KnapsackItem, OracleSizeError, brute_force_cut, knapsack_dp,
    knapsack_exhaustive,
)

__version__ = "0.1.0"

__all__ = [
    "MAX", "MIN", "Limits", "SearchState", "SolveReport", "constrained_cut", "is_tree",
    "solve_by_blocks", "solve_tree", "fractional_max_bound", "fractional_min_bound",
    "min_cut_lower_bound", "ranked_edges", "residual_min_cut_bound", "Cut",
    "DegeneratePartitionError", "DisconnectedGraphError", "Edge", "GraphError",
    "WeightedGraph", "blocks", "contract", "evaluate_partition", "validate_cut",
    "BudgetSpec", "Instance", "InstanceFormatError", "compute_budget", "generate_random",
    "knapsack_to_cut", "parse_dimacs", "parse_instance", "parse_items", "read_instance",
    "serialize_instance", "serialize_solution", "DualReport", "evaluate_lambda",
    "kl_refine", "solve_dual", "budgeted_cut", "budgeted_cut_phase", "minimum_cut",
    "MAX_ORACLE_VERTICES", "KnapsackItem", "OracleSizeError", "brute_force_cut",
    "knapsack_dp", "knapsack_exhaustive", "bundled_instance", "bundled_names",
]


def bundled_instance(name: str = "f4") -> Instance:
    """Load one of the instances shipped in ``budgetcut/data``."""
    from importlib.resources import files

    return parse_instance(files(__name__).joinpath("data", f"{name}.txt").read_text(), name)


def bundled_names() -> list[str]:
    from importlib.resources import files

    return sorted(p.name[:-4] for p in files(__name__).joinpath("data").iterdir()
                  if p.name.endswith(".txt"))
