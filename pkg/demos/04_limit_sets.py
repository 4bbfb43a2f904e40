# %% [markdown]
# # Sampling projective and Furstenberg limit sets
# Two shipped configurations: rational generators (all conjugate
# components equal) and a generic pair over Q(sqrt 2).

# %%
import pathlib

import numpy as np

from arithlimit.config import load_config
from arithlimit.limitsets import (enumerate_elements, hull_progression, orbit_boundary_estimate,
                                  sample_furstenberg, sample_projective)

CONFIGS = pathlib.Path(__file__).resolve().parents[1] / "src" / "arithlimit" / "configs"

diag = load_config(CONFIGS / "rational_diagonal.cfg")
E = enumerate_elements(diag.group, 6)
print(len(E), "elements")
print("directions:", {d.coords for d, _ in sample_projective(E).points})
F = sample_furstenberg(E)
print("alpha1 == alpha2 everywhere:", all(x[0].alpha == x[1].alpha for x, _ in F.points))

# %% [markdown]
# The generic pair has a one-dimensional projective limit set; its
# sampled interval grows and fills in with the word length.

# %%
gen = load_config(CONFIGS / "generic_sqrt2.cfg")
E = enumerate_elements(gen.group, 7)
for L, hs in hull_progression(E, range(3, 8)):
    print(f"L={L}  count {hs.count:5d}  hull [{hs.lo:.5f}, {hs.hi:.5f}]  gap {hs.max_gap:.5f}")

# %%
thetas = np.array([d.theta for d, _ in sample_projective(E).points])
print("theta quartiles", np.round(np.quantile(thetas, [0, 0.25, 0.5, 0.75, 1]), 5))

# %% [markdown]
# The orbit of a point along the axis recovers both the boundary point and
# the translation direction.

# %%
rec = next(r for r in E if r.tclass.kind.value == "Hyperbolic" and len(r.word) == 3)
h = gen.group.star(rec.element)
xis, d = orbit_boundary_estimate(h, N=20)
print(E.word_str(rec), [round(x.alpha, 10) for x in xis], np.round(d.coords, 10))
