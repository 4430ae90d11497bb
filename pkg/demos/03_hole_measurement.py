# %% [markdown]
# # How often does Part A say "candidate" on unsatisfiable input?
#
# Part A never rejects a satisfiable formula, but it can fail to reject an
# unsatisfiable one. Here we label a small random battery with the exhaustive
# oracle and tabulate false positives by clause density. Every false positive
# still ends as UNSAT (search exhausted) or UNKNOWN after Part B.

# %%
from clausal.battery import CheckSummary, ManifestEntry, check_instance
from clausal.oracle import battery_configs, gen_random_3sat, is_satisfiable

results = []
for cfg in battery_configs(seed=1, per_cell=20, n_values=range(6, 11)):
    f = gen_random_3sat(cfg)
    entry = ManifestEntry(cfg.seed, cfg.num_vars, cfg.num_clauses, "sat" if is_satisfiable(f) else "unsat")
    results.append(check_instance(entry, f))

summary = CheckSummary(results)
print(summary.table())
assert summary.ok
