"""Clausal partition and the 8-bit encodings of clause and constraint sets.

An element is keyed by an ascending triple of variable ids. Each of the 8
assignments to the triple has an index

    index = 4*[v1 is False] + 2*[v2 is False] + [v3 is False]

so bit ``i`` of a constraint vector ``R`` marks assignment ``i`` as
inadmissible. With this ordering the "value is True" masks per position are
0b00001111, 0b00110011 and 0b01010101.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import product

from .formula import Clause, CnfFormula

FULL = 0xFF

TripleKey = tuple[int, int, int]


def pattern_index(values: tuple[bool, bool, bool]) -> int:
    v1, v2, v3 = values
    return 4 * (not v1) + 2 * (not v2) + (not v3)


def pattern_values(index: int) -> tuple[bool, bool, bool]:
    if not 0 <= index < 8:
        raise ValueError(f"pattern index out of range: {index}")
    return (not index & 4, not index & 2, not index & 1)


def _value_mask(position: int, value: bool) -> int:
    return sum(1 << i for i in range(8) if pattern_values(i)[position - 1] == value)


T_MASKS = tuple(_value_mask(p, True) for p in (1, 2, 3))
F_MASKS = tuple(_value_mask(p, False) for p in (1, 2, 3))


@lru_cache(maxsize=None)
def pattern_masks(positions: tuple[int, ...]) -> tuple[tuple[tuple[bool, ...], int], ...]:
    """For each assignment to the given triple positions, the mask of its extensions.

    Patterns come in lexicographic order with True first, e.g. for two
    positions: (T,T), (T,F), (F,T), (F,F).
    """
    out = []
    for pat in product((True, False), repeat=len(positions)):
        mask = 0
        for i in range(8):
            vals = pattern_values(i)
            if all(vals[p - 1] == v for p, v in zip(positions, pat)):
                mask |= 1 << i
        out.append((pat, mask))
    return tuple(out)


def impose_constraint_bit(state: int, bit: int) -> int:
    """One transition of the constraint state machine: mark assignment ``bit`` inadmissible."""
    return state | (1 << bit)


def variable_domain(r: int, position: int) -> frozenset[bool]:
    """Values still admissible for the variable at ``position`` (1..3) under ``r``."""
    dom = set()
    if r & T_MASKS[position - 1] != T_MASKS[position - 1]:
        dom.add(True)
    if r & F_MASKS[position - 1] != F_MASKS[position - 1]:
        dom.add(False)
    return frozenset(dom)


def admissible_indices(r: int) -> list[int]:
    return [i for i in range(8) if not r >> i & 1]


def clause_constraint_bit(c: Clause, key: TripleKey) -> int:
    """Bits of the assignments to ``key`` that falsify ``c``.

    A clause over all three key variables has a single falsifier; one over
    two of them leaves one position free (2 bits), over one variable 4 bits.
    """
    fixed = {}
    for lit in c.literals:
        if lit.var not in key:
            raise ValueError(f"variable {lit.var} of clause not in key {key}")
        fixed[key.index(lit.var) + 1] = lit.negated  # falsifier sets each literal false
    positions = tuple(sorted(fixed))
    target = tuple(fixed[p] for p in positions)
    for pat, mask in pattern_masks(positions):
        if pat == target:
            return mask
    raise AssertionError("unreachable")


@dataclass
class ClauseElement:
    key: TripleKey
    clause_bits: int = 0
    constraint_bits: int = 0
    clauses: list[Clause] = field(default_factory=list)
    # variables of ``key`` that occur in the formula; the rest are padding
    real_vars: tuple[int, ...] = ()

    @property
    def satisfying_bits(self) -> int:
        return ~self.constraint_bits & FULL

    @property
    def padding(self) -> tuple[int, ...]:
        return tuple(v for v in self.key if v not in self.real_vars)

    def dump(self, r: int | None = None) -> str:
        r = self.constraint_bits if r is None else r
        v1, v2, v3 = self.key
        return f"({v1},{v2},{v3}) C=0x{self.clause_bits:02X} R=0x{r:02X} S=0x{~r & FULL:02X}"


def build_partition(f: CnfFormula) -> list[ClauseElement]:
    """Group clauses by their variable set, ignoring polarity.

    Groups with fewer than three variables get fresh padding ids (above
    ``f.num_vars``, unique per element) so every element is a triple.
    ``constraint_bits`` starts at 0; see :func:`assert_initial_constraints`.
    Returned elements are sorted by key.
    """
    groups: dict[tuple[int, ...], list[Clause]] = {}
    for c in f.clauses:
        vs = tuple(sorted(c.variables))
        if not vs:
            raise ValueError("empty clause cannot be placed in a partition element")
        if len(vs) > 3:
            raise ValueError(f"clause {c} has {len(vs)} variables; reduce to 3SAT first")
        groups.setdefault(vs, []).append(c)

    next_pad = f.num_vars + 1
    elements = []
    for vs in sorted(groups):
        key = list(vs)
        while len(key) < 3:
            key.append(next_pad)
            next_pad += 1
        key = tuple(key)
        bits = 0
        for c in groups[vs]:
            bits |= clause_constraint_bit(c, key)
        elements.append(ClauseElement(key, bits, 0, groups[vs], vs))
    elements.sort(key=lambda e: e.key)
    return elements


def assert_initial_constraints(e: ClauseElement) -> ClauseElement:
    return replace(e, constraint_bits=e.constraint_bits | e.clause_bits)


def dump_elements(elements: list[ClauseElement], rs: list[int] | None = None) -> str:
    if rs is None:
        return "\n".join(e.dump() for e in elements)
    return "\n".join(e.dump(r) for e, r in zip(elements, rs))
