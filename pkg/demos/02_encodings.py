# %% [markdown]
# # Bit encodings
#
# Index i of an 8-bit vector is the assignment (v1,v2,v3) with
# i = 4*[v1 False] + 2*[v2 False] + [v3 False].

# %%
from itertools import product

from clausal.graph import edge_masks
from clausal.partition import T_MASKS, pattern_index, variable_domain
from clausal.propagate import project_inadmissible

for vals in product((True, False), repeat=3):
    print("".join("TF"[not v] for v in vals), pattern_index(vals))

print("value-True masks:", [f"{m:08b}" for m in T_MASKS])

# %% [markdown]
# Constraint state 47 (00101111): every a1=T pattern is constrained, so
# projecting onto (a1, a2) excludes (T,T) and (T,F).

# %%
table = edge_masks((1, 2, 3), (1, 2, 4))
print("inadmissible on (a1,a2):", project_inadmissible(47, table))
print("domains:", [sorted(variable_domain(47, p)) for p in (1, 2, 3)])
