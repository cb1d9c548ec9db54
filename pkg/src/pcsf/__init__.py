"""Prize-collecting Steiner forest: moat growing with flow-based dynamic coloring.

``ipcsf_solve`` is the (2 - 1/n)-approximation; ``pcsf3_solve`` the base
solver it iterates.  All arithmetic is exact.
"""

from .coloring import (
    DynamicColoring,
    ValidityError,
    build_set_pair_graph,
    check_set_is_tight,
    extract_dynamic_coloring,
    find_delta_e,
    find_delta_p,
    reduce_tight_pairs,
)
from .core import (
    Edge,
    InvariantError,
    MoatFamily,
    PcsfError,
    PcsfInstance,
    Solution,
    StructuralError,
    VertexSet,
    cuts_pair,
    cutting_edges,
    solution_cost,
)
from .flow import BACKEND, Arc, FlowNetwork, MaxFlowResult, UnboundedFlowError, max_flow
from .formats import ParseError, format_instance, format_solution, parse_instance, parse_solution
from .harness import generate_instance, run_ratio_test
from .ipcsf import IterationRecord, ipcsf_solve, reduce_instance
from .oracle import Diagnostics, OracleLimitError, compute_diagnostics, exact_solve, verify_solution
from .pcsf3 import GrowthTrace, pcsf3_solve, prune_forest, replay
from .rational import INF, Rat

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "BACKEND",
    "Diagnostics",
    "DynamicColoring",
    "Edge",
    "FlowNetwork",
    "GrowthTrace",
    "INF",
    "InvariantError",
    "IterationRecord",
    "MaxFlowResult",
    "MoatFamily",
    "OracleLimitError",
    "ParseError",
    "PcsfError",
    "PcsfInstance",
    "Rat",
    "Solution",
    "StructuralError",
    "UnboundedFlowError",
    "ValidityError",
    "VertexSet",
    "build_set_pair_graph",
    "check_set_is_tight",
    "compute_diagnostics",
    "cuts_pair",
    "cutting_edges",
    "exact_solve",
    "extract_dynamic_coloring",
    "find_delta_e",
    "find_delta_p",
    "format_instance",
    "format_solution",
    "generate_instance",
    "ipcsf_solve",
    "max_flow",
    "parse_instance",
    "parse_solution",
    "pcsf3_solve",
    "prune_forest",
    "reduce_instance",
    "reduce_tight_pairs",
    "replay",
    "run_ratio_test",
    "solution_cost",
]
