# %% [markdown]
# # Trace fields, discreteness and the predicted limit set structure

# %%
import pathlib

from arithlimit.config import load_config
from arithlimit.isometry import star_embedding
from arithlimit.limitsets import (discreteness_report, enumerate_elements, mixed_upgrade_search,
                                  predict_structure, product_structure_check,
                                  sample_furstenberg, trace_field_profile)

CONFIGS = pathlib.Path(__file__).resolve().parents[1] / "src" / "arithlimit" / "configs"

for name in ("rational_diagonal", "generic_sqrt2", "mixed", "full_boundary", "quaternion"):
    c = load_config(CONFIGS / f"{name}.cfg")
    E = enumerate_elements(c.group, 5)
    prof = trace_field_profile(c.group, c.ambient)
    rep = discreteness_report(c.group, E)
    pred = predict_structure(c.group, prof, rep)
    m = pred.m if pred.m is not None else f"{pred.m_min}..{pred.m_max}"
    print(f"{name:18s} k={prof.k}  statuses {[s.value for s in rep.statuses]}")
    print(f"{'':18s} m={m}  dim P={pred.predicted_dim_P}  F: {pred.predicted_F}")

# %% [markdown]
# Multiplying the mixed generator by a hyperbolic one upgrades it.

# %%
c = load_config(CONFIGS / "mixed.cfg")
M, E = c.group.generators
up = mixed_upgrade_search(star_embedding(M, 2), star_embedding(E, 2), 2)
print("m =", up.m, up.tclass)

# %% [markdown]
# When both projections are nondiscrete the Furstenberg sample spreads over
# the whole square; the empty-square bound measures how well.

# %%
c = load_config(CONFIGS / "full_boundary.cfg")
F = sample_furstenberg(enumerate_elements(c.group, 8))
print(product_structure_check(F, k=1))
