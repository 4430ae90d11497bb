# %% [markdown]
# # The five-variable worked instance, end to end
#
# Nine clauses over a1..a5 fall into three triples. We assert each element's
# own clauses, propagate across shared variables, then pin and extract a
# witness.

# %%
from clausal.formula import CnfFormula, verify_assignment
from clausal.partition import dump_elements
from clausal.solver import part_a, prepare, solve

f = CnfFormula.from_ints(5, [
    [1, -2, -3], [-1, 2, -3], [-1, -2, 3],
    [2, -3, -4], [-2, -3, 4], [-2, -3, -4],
    [-3, 4, 5], [-3, -4, 5], [-3, -4, -5],
])
p = prepare(f)
print("explicit constraints")
print(dump_elements(p.elements))

# %% [markdown]
# Only one bit moves: (a2,a3)=(T,T) is excluded by the middle element and is
# imposed on the first one (index 0, i.e. TTT).

# %%
state, report = part_a(p)
print("\nsteady state")
print(dump_elements(p.elements, state.r))
print(report.to_json(p.graph))

# %%
out = solve(f, extract=True)
print("\n", out.status.value, out.witness_line())
assert verify_assignment(f, out.assignment)
