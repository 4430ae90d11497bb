"""End-to-end pipeline: reduce, partition, graph, Part A, optional Part B."""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb

from .extract import DEFAULT_BUDGET, Outcome, SolveOutcome, part_b_extract
from .formula import CnfFormula, reduce_to_3sat
from .graph import InstanceGraph, build_graph
from .partition import ClauseElement, assert_initial_constraints, build_partition
from .propagate import EngineState, Status, SteadyStateReport, propagate_to_fixpoint


@dataclass
class Prepared:
    original: CnfFormula
    reduced: CnfFormula
    elements: list[ClauseElement]
    graph: InstanceGraph


def prepare(f: CnfFormula) -> Prepared:
    reduced = reduce_to_3sat(f)
    elements = [assert_initial_constraints(e) for e in build_partition(reduced)]
    return Prepared(f, reduced, elements, build_graph(elements))


def part_a(p: Prepared, order: str = "worklist", seed: int | None = None,
           early_exit: bool = False) -> tuple[EngineState, SteadyStateReport]:
    state = EngineState.from_elements(p.elements)
    return state, propagate_to_fixpoint(state, p.graph, order=order, seed=seed, early_exit=early_exit)


def bound_checks(p: Prepared, report: SteadyStateReport) -> dict[str, bool]:
    """Counter-level checks of the size and work bounds the method guarantees."""
    n = p.reduced.num_vars
    short = sum(1 for e in p.elements if len(e.real_vars) < 3)
    gs = p.graph.stats()
    c = report.counters
    checks = {
        "bits_inserted <= 8*|D|": c["bits_inserted"] <= 8 * len(p.elements),
        "|D| <= C(n,3) + short": len(p.elements) <= comb(n, 3) + short,
        # padding ids inflate the id range but never the degree
        "max_degree <= 3n^2 + 3n": gs.max_degree <= 3 * n * n + 3 * n,
    }
    if c["sweeps"] <= 1:  # worklist modes
        checks["activations <= 2|E| + changes*max_degree"] = (
            c["activations"] <= 2 * gs.edge_count + c["changes"] * gs.max_degree
        )
    return checks


def solve(
    f: CnfFormula,
    extract: bool = False,
    order: str = "worklist",
    seed: int | None = None,
    vertex_order: str = "key",
    max_backtracks: int = DEFAULT_BUDGET,
) -> SolveOutcome:
    """Run Part A and, with ``extract``, Part B.

    Without ``extract`` a Part A candidate is reported as UNKNOWN: it is not
    a proof of satisfiability.
    """
    t0 = time.perf_counter()
    if f.has_empty_clause:
        return SolveOutcome(Outcome.UNSAT, reason="empty clause",
                            stats={"part_a": "skipped", "wall_time": time.perf_counter() - t0})
    p = prepare(f)
    state, report = part_a(p, order=order, seed=seed)
    stats = {
        "elements": len(p.elements),
        "edges": len(p.graph.edges),
        "aux_vars": p.reduced.stats.auxiliary_vars,
        "part_a_status": report.status.value,
        **{k: v for k, v in report.counters.items()},
        "bounds": bound_checks(p, report),
    }
    if report.status is Status.UNSAT:
        stats["wall_time"] = time.perf_counter() - t0
        return SolveOutcome(Outcome.UNSAT, reason="part A: element with no admissible assignment", stats=stats)
    if not extract:
        stats["wall_time"] = time.perf_counter() - t0
        return SolveOutcome(Outcome.UNKNOWN, reason="part A candidate (not verified)", stats=stats)
    out = part_b_extract(state, p.graph, p.elements, p.reduced, f,
                         budget=max_backtracks, vertex_order=vertex_order)
    stats["backtracks"] = out.stats["backtracks"]
    stats["part_b_implications"] = out.stats["implications"] - report.counters["implications"]
    stats["wall_time"] = time.perf_counter() - t0
    out.stats = stats
    return out
