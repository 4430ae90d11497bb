"""Clausal-partition constraint propagation for 3SAT, with verified witnesses."""

from .extract import Outcome, SolveOutcome, part_b_extract
from .formula import Clause, CnfFormula, Literal, parse_dimacs, emit_dimacs, reduce_to_3sat, verify_assignment
from .graph import build_graph
from .oracle import GeneratorConfig, enumerate_models, gen_random_3sat
from .partition import build_partition, pattern_index
from .propagate import Status, propagate_to_fixpoint
from .solver import solve

__all__ = [
    "Clause", "CnfFormula", "GeneratorConfig", "Literal", "Outcome", "SolveOutcome", "Status",
    "build_graph", "build_partition", "emit_dimacs", "enumerate_models", "gen_random_3sat",
    "parse_dimacs", "part_b_extract", "pattern_index", "propagate_to_fixpoint",
    "reduce_to_3sat", "solve", "verify_assignment",
]
