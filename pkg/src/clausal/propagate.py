"""The implication operator and the fixpoint engine (Part A)."""

from __future__ import annotations

import enum
import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from .graph import EdgeLink, InstanceGraph, MaskTable
from .partition import FULL, ClauseElement, admissible_indices

ORDERS = ("worklist", "fifo", "lifo", "sweep", "shuffle")


class InvariantViolation(RuntimeError):
    pass


class Status(enum.Enum):
    CANDIDATE = "candidate"  # every element still admits something
    UNSAT = "unsat"  # some element has R == 0xFF


@dataclass
class Counters:
    sweeps: int = 0
    implications: int = 0
    activations: int = 0
    changes: int = 0
    bits_inserted: int = 0

    def as_dict(self) -> dict:
        return dict(vars(self))


@dataclass
class EngineState:
    r: list[int]
    counters: Counters = field(default_factory=Counters)

    @classmethod
    def from_elements(cls, elements: list[ClauseElement]) -> "EngineState":
        """Start from each element's own clauses (the explicit constraints)."""
        return cls([e.constraint_bits | e.clause_bits for e in elements])

    def copy(self) -> "EngineState":
        return EngineState(list(self.r), Counters(**self.counters.as_dict()))

    def has_empty(self) -> bool:
        return FULL in self.r


@dataclass
class SteadyStateReport:
    status: Status
    r: tuple[int, ...]
    admissible_counts: tuple[int, ...]
    counters: dict

    def to_json(self, graph: InstanceGraph | None = None) -> str:
        obj = {"elements": len(self.r)}
        if graph is not None:
            obj["edges"] = len(graph.edges)
        obj.update(
            sweeps=self.counters["sweeps"],
            implications=self.counters["implications"],
            bits_inserted=self.counters["bits_inserted"],
            status=self.status.value,
        )
        return json.dumps(obj)


def project_inadmissible(r: int, masks: MaskTable) -> list[tuple[bool, ...]]:
    """Shared-variable patterns all of whose extensions are constrained in ``r``."""
    return [p for p, src, _ in masks if r & src == src]


def imposed_bits(r_src: int, masks: MaskTable) -> int:
    out = 0
    for _, src, dst in masks:
        if r_src & src == src:
            out |= dst
    return out


def implication(r: list[int], src: int, dst: int, edge: EdgeLink) -> bool:
    """Impose ``src`` onto ``dst`` along ``edge``; True if ``r[dst]`` grew."""
    add = imposed_bits(r[src], edge.masks_from(src))
    new = r[dst] | add
    if new == r[dst]:
        return False
    r[dst] = new
    return True


def _popcount(x: int) -> int:
    return bin(x).count("1")


def propagate_to_fixpoint(
    state: EngineState,
    graph: InstanceGraph,
    order: str = "worklist",
    seed: int | None = None,
    early_exit: bool = False,
    start: list[int] | None = None,
    observer: Callable[[int, int, int, int], None] | None = None,
) -> SteadyStateReport:
    """Apply the implication operator along edges until nothing changes.

    ``order`` picks how pending directed edges are processed: ``worklist``/
    ``fifo`` (queue), ``lifo`` (stack), ``shuffle`` (uniform random pick,
    seeded) or ``sweep`` (repeat a full pass over every vertex's edges until a
    pass changes nothing). The fixpoint does not depend on it.

    ``start`` restricts the initial worklist to edges leaving those vertices
    (ignored by ``sweep``). ``observer(src, dst, old, new)`` is called after
    every operator application.
    """
    if order not in ORDERS:
        raise ValueError(f"unknown order {order!r}")
    r = state.r
    c = state.counters
    edges = graph.edges
    cap = 8 * len(r) - sum(_popcount(x) for x in r)
    inserted_here = 0

    def apply(eid: int, src: int) -> int | None:
        nonlocal inserted_here
        e = edges[eid]
        dst = e.other(src)
        old = r[dst]
        c.implications += 1
        c.activations += 1
        changed = implication(r, src, dst, e)
        if observer is not None:
            observer(src, dst, old, r[dst])
        if not changed:
            return None
        gained = _popcount(r[dst] ^ old)
        c.changes += 1
        c.bits_inserted += gained
        inserted_here += gained
        if inserted_here > cap:
            raise InvariantViolation("more constraint bits inserted than exist")
        return dst

    if order == "sweep":
        while True:
            c.sweeps += 1
            any_change = False
            for v in graph.vertices:
                for eid in graph.adjacency[v]:
                    dst = apply(eid, v)
                    if dst is not None:
                        any_change = True
                        if early_exit and r[dst] == FULL:
                            return _report(state)
            if not any_change:
                return _report(state)

    sources = graph.vertices if start is None else start
    pending = [(eid, v) for v in sources for eid in graph.adjacency[v]]
    queued = set(pending)
    rng = random.Random(seed)
    if order == "lifo":
        pending.reverse()
    work = deque(pending)
    c.sweeps += 1
    while work:
        if order == "shuffle":
            i = rng.randrange(len(work))
            work[i], work[-1] = work[-1], work[i]
            item = work.pop()
        elif order == "lifo":
            item = work.pop()
        else:
            item = work.popleft()
        queued.discard(item)
        dst = apply(*item)
        if dst is None:
            continue
        if early_exit and r[dst] == FULL:
            break
        for eid in graph.adjacency[dst]:
            nxt = (eid, dst)
            if nxt not in queued:
                queued.add(nxt)
                work.append(nxt)
    return _report(state)


def _report(state: EngineState) -> SteadyStateReport:
    status = Status.UNSAT if state.has_empty() else Status.CANDIDATE
    return SteadyStateReport(
        status,
        tuple(state.r),
        tuple(len(admissible_indices(x)) for x in state.r),
        state.counters.as_dict(),
    )


def classify(report: SteadyStateReport) -> Status:
    """UNSAT is trustworthy; CANDIDATE is only a heuristic positive."""
    return Status.UNSAT if any(x == FULL for x in report.r) else Status.CANDIDATE
