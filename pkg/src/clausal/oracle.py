"""Exhaustive model enumeration and a seeded random 3SAT generator.

Both are desk-scale ground truth for the propagation engine, never a
practical solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .formula import Assignment, CnfFormula

MAX_ORACLE_VARS = 25
_CHUNK = 1 << 20

DENSITIES = (2.0, 3.0, 4.0, 4.26, 5.0, 6.0)


@dataclass
class ModelSet:
    """Satisfying assignments, each packed as an int: bit ``v-1`` holds variable ``v``."""

    num_vars: int
    count: int
    codes: np.ndarray  # uint32, ascending; truncated to ``max_models`` if requested

    def __len__(self) -> int:
        return self.count

    def __bool__(self) -> bool:
        return self.count > 0

    def as_bool_matrix(self) -> np.ndarray:
        """Shape (stored models, num_vars); column ``v-1`` is variable ``v``."""
        bits = np.arange(self.num_vars, dtype=np.uint32)
        return (self.codes[:, None] >> bits) & 1 == 1

    def assignments(self) -> list[Assignment]:
        return [decode(int(c), self.num_vars) for c in self.codes]

    def __contains__(self, a: Assignment) -> bool:
        code = encode(a, self.num_vars)
        i = np.searchsorted(self.codes, code)
        return bool(i < len(self.codes) and self.codes[i] == code)


def encode(a: Assignment, num_vars: int) -> int:
    return sum(1 << (v - 1) for v in range(1, num_vars + 1) if a[v])


def decode(code: int, num_vars: int) -> Assignment:
    return {v: bool(code >> (v - 1) & 1) for v in range(1, num_vars + 1)}


def enumerate_models(f: CnfFormula, max_models: int | None = None) -> ModelSet:
    n = f.num_vars
    if n > MAX_ORACLE_VARS:
        raise ValueError(f"oracle refuses {n} variables (limit {MAX_ORACLE_VARS})")
    total = 1 << n
    bits = np.arange(n, dtype=np.uint32)
    found = []
    count = 0
    for lo in range(0, total, _CHUNK):
        codes = np.arange(lo, min(total, lo + _CHUNK), dtype=np.uint32)
        vals = (codes[:, None] >> bits) & 1 == 1
        ok = np.ones(len(codes), dtype=bool)
        for c in f.clauses:
            sat = np.zeros(len(codes), dtype=bool)
            for lit in c.literals:
                col = vals[:, lit.var - 1]
                sat |= ~col if lit.negated else col
            ok &= sat
        hit = codes[ok]
        count += len(hit)
        if max_models is None or sum(map(len, found)) < max_models:
            found.append(hit)
    codes = np.concatenate(found) if found else np.zeros(0, dtype=np.uint32)
    if max_models is not None:
        codes = codes[:max_models]
    return ModelSet(n, count, codes)


def is_satisfiable(f: CnfFormula) -> bool:
    return enumerate_models(f, max_models=1).count > 0


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    num_vars: int
    num_clauses: int

    def __post_init__(self):
        if self.num_vars < 3:
            raise ValueError("need at least 3 variables for 3SAT clauses")
        if self.num_clauses < 0 or self.seed < 0:
            raise ValueError("seed and clause count must be non-negative")


def gen_random_3sat(cfg: GeneratorConfig) -> CnfFormula:
    """Clauses on 3 distinct uniform variables with uniform polarities.

    Uses numpy's PCG64 stream seeded with ``cfg.seed``: the same config
    always yields the same formula.
    """
    rng = np.random.default_rng(cfg.seed)
    m, n = cfg.num_clauses, cfg.num_vars
    vars_ = np.argsort(rng.random((m, n)), axis=1)[:, :3] + 1
    signs = np.where(rng.random((m, 3)) < 0.5, -1, 1)
    lits = (vars_ * signs).tolist()
    return CnfFormula.from_ints(n, lits)


def battery_configs(seed: int, per_cell: int, n_values=range(4, 13),
                    densities=DENSITIES) -> list[GeneratorConfig]:
    """Seeded grid of instances: ``per_cell`` per (n, density) pair.

    Instance seeds are drawn from a SeedSequence so each manifest line is
    self-contained.
    """
    cells = [(n, d) for n in n_values for d in densities]
    seeds = np.random.SeedSequence(seed).generate_state(len(cells) * per_cell, dtype=np.uint32)
    out = []
    k = 0
    for n, d in cells:
        for _ in range(per_cell):
            out.append(GeneratorConfig(int(seeds[k]), n, int(round(d * n))))
            k += 1
    return out
