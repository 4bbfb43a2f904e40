# %% [markdown]
# # Exact arithmetic in Q(sqrt 2) and a cubic field
# Elements are stored in the power basis 1, t, ..., t^(n-1); every real
# embedding comes with a certified interval.

# %%
from fractions import Fraction

from arithlimit.numfield import element_degree, is_integral, make_field, subfield_dimension

K = make_field("x^2 - 2")
t = K.gen
print(K, [float(p.mid) for p in K.places])  # place 1 is +sqrt 2

# %%
x = 1 + t
print("x * x =", x * x)
print("1 / x =", 1 / x)  # -1 + t
for place in (1, 2):
    iv = x.embed(place, Fraction(1, 10 ** 20))
    print(f"place {place}: [{float(iv.lo):.15f}, {float(iv.hi):.15f}]  width {float(iv.width):.1e}")

# %% [markdown]
# Degrees and generated subfields.

# %%
print(element_degree(t), element_degree(t * t), element_degree(Fraction(3, 2) + 0 * t))
print(subfield_dimension([2 + t]).dimension, subfield_dimension([t * t]).dimension)
print(is_integral(t), is_integral(t / 2))

# %%
C = make_field("x^3 - 3*x - 1")
u = C.gen
print("cubic places", [round(float(p.mid), 8) for p in C.places])
print("conjugates of u^2 - 1:", [round((u * u - 1).to_float(j), 8) for j in (1, 2, 3)])
