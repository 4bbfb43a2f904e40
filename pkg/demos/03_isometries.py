# %% [markdown]
# # Isometries of the hyperbolic plane and their Galois conjugates

# %%
import math

from arithlimit.isometry import (ExactMobius, Mobius, apply_boundary, classify, classify_tuple,
                                 find_schottky_powers, fixed_points, hyp_distance,
                                 star_embedding, translation_direction)
from arithlimit.numfield import make_field

K = make_field("x^2 - 2")
t = K.gen

# %% [markdown]
# A floating hyperbolic element and its dynamics on the boundary.

# %%
g = Mobius.from_matrix([[2, 1], [1, 1]])
c = classify(g)
print(c, "closed form", 2 * math.acosh(1.5))
att, rep = fixed_points(g)
print("attractive", att.x, "repulsive", rep.x)
print("g fixes att:", apply_boundary(g, att) == att)
print("d(i, 2i) =", hyp_distance(1j, 2j))

# %% [markdown]
# Exact elements over K act at both places at once.  The first one is
# hyperbolic at one place and elliptic of infinite order at the other.

# %%
M = ExactMobius.from_rows([[1 + t, t], [1, 1]], K)
E = ExactMobius.from_rows([[1 + t, 0], [0, t - 1]], K)
print("M:", classify_tuple(star_embedding(M, 2)))
print("E:", classify_tuple(star_embedding(E, 2)))
print("direction of E:", translation_direction(star_embedding(E, 2)).coords)
W = M * E * M * E.inverse() * E.inverse()
print("direction of", "M E M E^-2:", translation_direction(star_embedding(W, 2)).coords)

# %% [markdown]
# Ping-pong: powers of two hyperbolics generate a Schottky group.

# %%
h = Mobius.from_matrix([[1, 1], [1, 2]])
sp = find_schottky_powers(g, h, 5)
print("Schottky powers", (sp.m, sp.n), "min gap", round(sp.certificate.min_gap, 4))
