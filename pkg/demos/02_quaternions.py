# %% [markdown]
# # Quaternion algebras over Q(sqrt 2)
# A = (3, t / K) splits at both real places since a = 3 > 0; the algebra
# (t, -1 / K) is ramified where t = -sqrt 2.

# %%
import numpy as np

from arithlimit.numfield import make_field
from arithlimit.quatalg import (QuaternionAlgebra, matrix_embedding, order_membership,
                                quat_mul, ramified_at, reduced_norm)

K = make_field("x^2 - 2")
t = K.gen
A = QuaternionAlgebra(K, 3, t)
print("ramified:", [ramified_at(A, j) for j in (1, 2)], "unramified places", A.unramified_places)
B = QuaternionAlgebra(K, t, -1)
print("(t, -1) ramified:", [ramified_at(B, j) for j in (1, 2)])

# %%
i, j = A.i, A.j
print("i j =", quat_mul(i, j).coords)
print("j i =", quat_mul(j, i).coords)
print("nrd(i) =", reduced_norm(i))

# %% [markdown]
# Two norm-one units of the standard order.

# %%
P = A(2, 1, 0, 0)
Q = A(3 + 2 * t, 0, 2 + 2 * t, 0)
for name, q in (("P", P), ("Q", Q)):
    print(name, "nrd =", reduced_norm(q), "in order:", order_membership(q))

m = matrix_embedding(quat_mul(P, Q), 1)
print(np.round(m, 6))
print("homomorphism error", np.abs(m - matrix_embedding(P, 1) @ matrix_embedding(Q, 1)).max())
print("det", np.linalg.det(m))
