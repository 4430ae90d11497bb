"""Oracle-labelled instance batteries and the soundness cross-check."""

from __future__ import annotations

import statistics
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from .extract import Outcome, SolveOutcome
from .formula import CnfFormula, emit_dimacs, parse_dimacs, verify_assignment
from .oracle import DENSITIES, GeneratorConfig, gen_random_3sat, is_satisfiable
from .solver import solve

MANIFEST = "manifest.txt"


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    seed: int
    n: int
    m: int
    expected: str  # "sat" | "unsat"

    @property
    def filename(self) -> str:
        return f"n{self.n:02d}_m{self.m:03d}_s{self.seed}.cnf"

    def line(self) -> str:
        return f"{self.seed} {self.n} {self.m} expected={self.expected}"

    @classmethod
    def parse(cls, line: str) -> "ManifestEntry":
        parts = line.split()
        if len(parts) != 4 or not parts[3].startswith("expected="):
            raise ManifestError(f"bad manifest line {line!r}")
        expected = parts[3].split("=", 1)[1]
        if expected not in ("sat", "unsat"):
            raise ManifestError(f"bad label in {line!r}")
        return cls(int(parts[0]), int(parts[1]), int(parts[2]), expected)

    @property
    def density(self) -> str:
        d = self.m / self.n
        near = min(DENSITIES, key=lambda x: abs(x - d))
        return f"{near:g}" if abs(near - d) <= 0.5 / self.n else f"{d:.2f}"


def read_manifest(path: Path) -> list[ManifestEntry]:
    text = Path(path).read_text()
    return [ManifestEntry.parse(l) for l in text.splitlines() if l.strip() and not l.startswith("#")]


def write_battery(configs: Iterable[GeneratorConfig], out_dir: Path) -> list[ManifestEntry]:
    """Write one ``.cnf`` per config plus an oracle-labelled manifest."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for cfg in configs:
        f = gen_random_3sat(cfg)
        e = ManifestEntry(cfg.seed, cfg.num_vars, cfg.num_clauses,
                          "sat" if is_satisfiable(f) else "unsat")
        (out_dir / e.filename).write_text(
            emit_dimacs(f, comments=[f"seed={cfg.seed} n={cfg.num_vars} m={cfg.num_clauses}"])
        )
        entries.append(e)
    (out_dir / MANIFEST).write_text("".join(e.line() + "\n" for e in entries))
    return entries


def load_instance(entry: ManifestEntry, directory: Path) -> CnfFormula:
    path = Path(directory) / entry.filename
    if not path.exists():
        raise ManifestError(f"instance file missing: {path.name}")
    f = parse_dimacs(path.read_text())
    regen = gen_random_3sat(GeneratorConfig(entry.seed, entry.n, entry.m))
    if f.num_vars != entry.n or f.to_ints() != regen.to_ints():
        raise ManifestError(f"{path.name} does not match its manifest line")
    return f


@dataclass
class InstanceResult:
    entry: ManifestEntry
    outcome: str
    part_a: str
    backtracks: int
    witness_ok: bool | None
    bounds_ok: bool


@dataclass
class CheckSummary:
    results: list[InstanceResult] = field(default_factory=list)

    @property
    def false_negatives(self) -> list[InstanceResult]:
        return [r for r in self.results if r.entry.expected == "sat" and r.outcome == "UNSAT"]

    @property
    def bad_sat_claims(self) -> list[InstanceResult]:
        return [r for r in self.results if r.outcome == "SAT-VERIFIED"
                and (r.entry.expected == "unsat" or not r.witness_ok)]

    @property
    def bound_failures(self) -> list[InstanceResult]:
        return [r for r in self.results if not r.bounds_ok]

    @property
    def ok(self) -> bool:
        return not (self.false_negatives or self.bad_sat_claims or self.bound_failures)

    def rates(self) -> list[dict]:
        """Per density bucket: how often Part A says candidate on UNSAT instances."""
        buckets: dict[str, list[InstanceResult]] = defaultdict(list)
        for r in self.results:
            buckets[r.entry.density].append(r)
        rows = []
        for d in sorted(buckets, key=float):
            rs = buckets[d]
            unsat = [r for r in rs if r.entry.expected == "unsat"]
            fp = [r for r in unsat if r.part_a == "candidate"]
            sat_bt = [r.backtracks for r in rs if r.entry.expected == "sat"]
            rows.append({
                "density": d,
                "instances": len(rs),
                "sat": len(rs) - len(unsat),
                "unsat": len(unsat),
                "candidate_on_unsat": len(fp),
                "fp_rate": len(fp) / len(unsat) if unsat else 0.0,
                "outcomes_on_fp": dict(Counter(r.outcome for r in fp)),
                "backtracks_median": statistics.median(sat_bt) if sat_bt else 0,
                "backtracks_max": max(sat_bt, default=0),
            })
        return rows

    def table(self) -> str:
        head = f"{'density':>7} {'inst':>5} {'sat':>5} {'unsat':>5} {'A-cand/unsat':>12} {'fp_rate':>8} {'bt_med':>6} {'bt_max':>6}"
        lines = [head]
        for row in self.rates():
            lines.append(
                f"{row['density']:>7} {row['instances']:>5} {row['sat']:>5} {row['unsat']:>5} "
                f"{row['candidate_on_unsat']:>12} {row['fp_rate']:>8.3f} "
                f"{row['backtracks_median']:>6g} {row['backtracks_max']:>6}"
            )
        lines.append(
            f"false negatives: {len(self.false_negatives)}  "
            f"unverified SAT claims: {len(self.bad_sat_claims)}  "
            f"bound failures: {len(self.bound_failures)}"
        )
        return "\n".join(lines)


Solver = Callable[..., SolveOutcome]


def check_instance(entry: ManifestEntry, f: CnfFormula, solver: Solver = solve,
                   budget: int | None = None) -> InstanceResult:
    budget = 1 << entry.n if budget is None else budget
    out = solver(f, extract=True, max_backtracks=budget)
    witness_ok = None
    if out.status is Outcome.SAT_VERIFIED:
        witness_ok = out.assignment is not None and verify_assignment(f, out.assignment)
    bounds = out.stats.get("bounds", {})
    return InstanceResult(
        entry,
        out.status.value,
        out.stats.get("part_a_status", "unsat"),
        out.stats.get("backtracks", 0),
        witness_ok,
        all(bounds.values()),
    )


def _check_one(args) -> InstanceResult:
    entry, directory, budget = args
    return check_instance(entry, load_instance(entry, directory), budget=budget)


def check_battery(entries: list[ManifestEntry], directory: Path, solver: Solver | None = None,
                  budget: int | None = None, jobs: int = 1) -> CheckSummary:
    """Solve every instance and compare against the oracle labels.

    ``jobs > 1`` farms instances out to worker processes (default solver only).
    """
    solver = solve if solver is None else solver
    if jobs > 1 and solver is solve:
        for e in entries:  # fail fast on mismatches before forking
            if not (Path(directory) / e.filename).exists():
                raise ManifestError(f"instance file missing: {e.filename}")
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_check_one, [(e, directory, budget) for e in entries], chunksize=16))
    else:
        results = [check_instance(e, load_instance(e, directory), solver, budget) for e in entries]
    return CheckSummary(results)
