"""CNF data model, DIMACS reading/writing, 3SAT reduction and assignment checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

Assignment = dict[int, bool]


class DimacsError(ValueError):
    """Raised for malformed DIMACS input."""


@dataclass(frozen=True, order=True)
class Literal:
    var: int
    negated: bool = False

    def __post_init__(self):
        if self.var < 1:
            raise ValueError(f"variable ids start at 1, got {self.var}")

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        return cls(abs(lit), lit < 0)

    def to_int(self) -> int:
        return -self.var if self.negated else self.var

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.negated)

    def value(self, assignment: Mapping[int, bool]) -> bool:
        return assignment[self.var] != self.negated


@dataclass(frozen=True)
class Clause:
    literals: tuple[Literal, ...]

    @classmethod
    def from_ints(cls, lits: Iterable[int]) -> "Clause":
        return cls(tuple(Literal.from_int(x) for x in lits))

    def to_ints(self) -> list[int]:
        return [lit.to_int() for lit in self.literals]

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(lit.var for lit in self.literals)

    def is_tautology(self) -> bool:
        seen = {lit.to_int() for lit in self.literals}
        return any(-x in seen for x in seen)

    def dedup(self) -> "Clause":
        out: list[Literal] = []
        for lit in self.literals:
            if lit not in out:
                out.append(lit)
        return Clause(tuple(out))

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return any(lit.value(assignment) for lit in self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        if not self.literals:
            return "()"
        return " | ".join(("~" if l.negated else "") + f"x{l.var}" for l in self.literals)


@dataclass(frozen=True)
class FormulaStats:
    header_clauses: int = 0
    tautologies_dropped: int = 0
    duplicate_literals_removed: int = 0
    auxiliary_vars: int = 0


@dataclass(frozen=True)
class CnfFormula:
    """A conjunction of clauses over variables ``1..num_vars``.

    Reduced formulas keep ``original_num_vars``: variables above it are
    auxiliaries introduced by clause splitting and are dropped when an
    assignment is projected back.
    """

    num_vars: int
    clauses: tuple[Clause, ...]
    origin: str = "original"
    original_num_vars: int | None = None
    stats: FormulaStats = field(default_factory=FormulaStats, compare=False)

    def __post_init__(self):
        if self.original_num_vars is None:
            object.__setattr__(self, "original_num_vars", self.num_vars)
        for c in self.clauses:
            for lit in c.literals:
                if lit.var > self.num_vars:
                    raise ValueError(f"variable {lit.var} exceeds num_vars={self.num_vars}")

    @classmethod
    def from_ints(cls, num_vars: int, clauses: Iterable[Iterable[int]], **kw) -> "CnfFormula":
        return cls(num_vars, tuple(Clause.from_ints(c) for c in clauses), **kw)

    def to_ints(self) -> list[list[int]]:
        return [c.to_ints() for c in self.clauses]

    @property
    def has_empty_clause(self) -> bool:
        return any(len(c) == 0 for c in self.clauses)

    def project(self, assignment: Mapping[int, bool]) -> Assignment:
        """Restrict an assignment to the original (pre-reduction) variables."""
        return {v: bool(assignment[v]) for v in range(1, self.original_num_vars + 1)}


def normalize(num_vars: int, clauses: Iterable[Clause], header_clauses: int | None = None) -> CnfFormula:
    """Drop tautologies and repeated literals. Idempotent."""
    kept = []
    taut = dups = 0
    clauses = list(clauses)
    for c in clauses:
        if c.is_tautology():
            taut += 1
            continue
        d = c.dedup()
        dups += len(c) - len(d)
        kept.append(d)
    stats = FormulaStats(
        header_clauses=len(clauses) if header_clauses is None else header_clauses,
        tautologies_dropped=taut,
        duplicate_literals_removed=dups,
    )
    return CnfFormula(num_vars, tuple(kept), stats=stats)


def parse_dimacs(text: str | bytes) -> CnfFormula:
    """Parse DIMACS CNF text into a normalized formula.

    An empty clause (a bare ``0``) is kept: the formula is then trivially
    unsatisfiable, which is a result rather than a parse error.
    """
    if isinstance(text, bytes):
        text = text.decode()
    num_vars = num_clauses = None
    clauses: list[Clause] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: bad header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: bad header {line!r}") from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError(f"line {lineno}: negative counts in header")
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(Clause.from_ints(current))
                current = []
            elif abs(lit) > num_vars:
                raise DimacsError(
                    f"line {lineno}: variable {abs(lit)} exceeds declared {num_vars}"
                )
            else:
                current.append(lit)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("unterminated final clause")
    return normalize(num_vars, clauses, header_clauses=num_clauses)


def emit_dimacs(f: CnfFormula, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    for c in f.clauses:
        lines.append(" ".join(map(str, c.to_ints() + [0])))
    return "\n".join(lines) + "\n"


def reduce_to_3sat(f: CnfFormula) -> CnfFormula:
    """Split clauses longer than 3 literals by left-to-right chaining.

    ``(a|b|c|d|e)`` becomes ``(a|b|x1) & (~x1|c|x2) & (~x2|d|e)`` with fresh
    ``x1, x2`` numbered after every existing variable.
    """
    next_var = f.num_vars + 1
    out: list[Clause] = []
    for c in f.clauses:
        lits = list(c.literals)
        if len(lits) <= 3:
            out.append(c)
            continue
        x = Literal(next_var)
        next_var += 1
        out.append(Clause((lits[0], lits[1], x)))
        rest = lits[2:]
        while len(rest) > 2:
            y = Literal(next_var)
            next_var += 1
            out.append(Clause((-x, rest[0], y)))
            x, rest = y, rest[1:]
        out.append(Clause((-x, *rest)))
    aux = next_var - 1 - f.num_vars
    stats = FormulaStats(
        header_clauses=f.stats.header_clauses,
        tautologies_dropped=f.stats.tautologies_dropped,
        duplicate_literals_removed=f.stats.duplicate_literals_removed,
        auxiliary_vars=aux,
    )
    return CnfFormula(
        next_var - 1,
        tuple(out),
        origin="reduced",
        original_num_vars=f.original_num_vars,
        stats=stats,
    )


def verify_assignment(f: CnfFormula, a: Mapping[int, bool]) -> bool:
    """True iff every clause of ``f`` has a literal made true by ``a``.

    ``a`` must cover every variable ``1..f.num_vars``; a missing variable is an
    error, not a falsified literal.
    """
    missing = [v for v in range(1, f.num_vars + 1) if v not in a]
    if missing:
        raise ValueError(f"assignment missing variables {missing[:10]}")
    return all(c.satisfied_by(a) for c in f.clauses)
