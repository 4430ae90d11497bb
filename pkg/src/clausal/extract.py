"""Part B: pin one admissible assignment per element, propagate, backtrack on conflict.

Every positive result is checked against the original formula before it is
reported as satisfiable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .formula import Assignment, CnfFormula, verify_assignment
from .graph import InstanceGraph
from .partition import FULL, ClauseElement, admissible_indices, pattern_values
from .propagate import EngineState, Status, propagate_to_fixpoint

DEFAULT_BUDGET = 10_000


class Outcome(enum.Enum):
    UNSAT = "UNSAT"
    SAT_VERIFIED = "SAT-VERIFIED"
    UNKNOWN = "UNKNOWN"


class InconsistentAssignment(ValueError):
    """Two pinned elements disagree on a shared variable."""


@dataclass
class SolveOutcome:
    status: Outcome
    assignment: Assignment | None = None
    reason: str = ""
    stats: dict = field(default_factory=dict)

    def witness_line(self) -> str:
        if self.assignment is None:
            raise ValueError("no witness")
        return witness_line(self.assignment)


@dataclass(frozen=True)
class Snapshot:
    r: tuple[int, ...]
    depth: int


def snapshot(state: EngineState, depth: int = 0) -> Snapshot:
    return Snapshot(tuple(state.r), depth)


def restore(state: EngineState, snap: Snapshot) -> None:
    state.r[:] = snap.r


def witness_line(assignment: Assignment) -> str:
    lits = [v if assignment[v] else -v for v in sorted(assignment)]
    return "v " + " ".join(map(str, lits + [0]))


def select_and_pin(state: EngineState, vertex: int, index: int) -> bool:
    """Make ``index`` the only admissible assignment of ``vertex``."""
    r = state.r[vertex]
    if r >> index & 1:
        raise ValueError(f"index {index} is already constrained in vertex {vertex}")
    new = FULL & ~(1 << index)
    state.r[vertex] = new
    return new != r


def read_off_assignment(
    state: EngineState, elements: list[ClauseElement], num_vars: int
) -> Assignment:
    """Variable values implied by fully pinned elements; padding ids are dropped.

    Variables that occur in no element default to False.
    """
    out: Assignment = {}
    for e, r in zip(elements, state.r):
        adm = admissible_indices(r)
        if len(adm) != 1:
            raise InconsistentAssignment(f"element {e.key} is not pinned (R=0x{r:02X})")
        for v, val in zip(e.key, pattern_values(adm[0])):
            if v not in e.real_vars:
                continue
            if out.setdefault(v, val) != val:
                raise InconsistentAssignment(f"variable {v} takes both values")
    for v in range(1, num_vars + 1):
        out.setdefault(v, False)
    return {v: out[v] for v in range(1, num_vars + 1)}


def _choose_vertex(state: EngineState, unpinned: list[int], vertex_order: str) -> int:
    if vertex_order == "key":
        return unpinned[0]
    if vertex_order == "most-constrained":
        return min(unpinned, key=lambda v: (len(admissible_indices(state.r[v])), v))
    raise ValueError(f"unknown vertex order {vertex_order!r}")


def part_b_extract(
    state: EngineState,
    graph: InstanceGraph,
    elements: list[ClauseElement],
    reduced: CnfFormula,
    original: CnfFormula,
    budget: int = DEFAULT_BUDGET,
    vertex_order: str = "key",
) -> SolveOutcome:
    """Search the space left by Part A for a verified satisfying assignment.

    ``state`` must be at a Part A fixpoint with no empty element; it is
    modified in place. Vertices are pinned once each, lowest admissible
    index first; a pin whose propagation empties some element is undone and
    the next index tried, with chronological backtracking when a vertex runs
    out of options. More than ``budget`` failed pins gives UNKNOWN; an
    exhausted search proves UNSAT.
    """
    if state.has_empty():
        raise ValueError("Part B requires a candidate (no empty element) fixpoint")

    backtracks = 0
    # frames: (vertex, untried indices, snapshot taken before pinning)
    stack: list[tuple[int, list[int], Snapshot]] = []
    unpinned = list(graph.vertices)

    def stats() -> dict:
        return {"backtracks": backtracks, "max_depth": max_depth, **state.counters.as_dict()}

    max_depth = 0
    descend = True
    while True:
        if descend:
            if not unpinned:
                try:
                    a = read_off_assignment(state, elements, reduced.num_vars)
                except InconsistentAssignment as exc:
                    return SolveOutcome(Outcome.UNKNOWN, reason=f"inconsistent read-off: {exc}", stats=stats())
                witness = original.project(a)
                if not verify_assignment(original, witness):
                    return SolveOutcome(Outcome.UNKNOWN, reason="witness failed verification", stats=stats())
                return SolveOutcome(Outcome.SAT_VERIFIED, witness, stats=stats())
            v = _choose_vertex(state, unpinned, vertex_order)
            unpinned.remove(v)
            stack.append((v, admissible_indices(state.r[v]), snapshot(state, len(stack))))
            max_depth = max(max_depth, len(stack))

        v, options, snap = stack[-1]
        placed = False
        while options:
            idx = options.pop(0)
            restore(state, snap)
            select_and_pin(state, v, idx)
            rep = propagate_to_fixpoint(state, graph, start=[v], early_exit=True)
            if rep.status is Status.CANDIDATE:
                placed = True
                break
            backtracks += 1
            if backtracks > budget:
                restore(state, stack[0][2])
                return SolveOutcome(Outcome.UNKNOWN, reason="backtrack budget exhausted", stats=stats())
        if placed:
            descend = True
            continue
        restore(state, snap)
        stack.pop()
        unpinned.insert(0, v)
        unpinned.sort()
        if not stack:
            return SolveOutcome(Outcome.UNSAT, reason="reduced space exhausted", stats=stats())
        descend = False
