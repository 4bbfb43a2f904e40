"""Quaternion algebras (a, b / K) over a totally real field.

Quaternions are written ``x + y i + z j + w ij`` with i^2 = a, j^2 = b and
ij = -ji.  At a real place where the algebra splits, the embedding into
M(2, R) is the fixed (non-canonical) choice

    q -> [[x + y*alpha, z + w*alpha], [b*(z - w*alpha), x - y*alpha]],
    alpha = sqrt(phi(a)),

used when phi(a) > 0.  When phi(a) < 0 (and therefore phi(b) > 0) the roles
of (a, i) and (b, j) are exchanged:

    q -> [[x + z*beta, y - w*beta], [a*(y + w*beta), x - z*beta]],
    beta = sqrt(phi(b)).

Either way the determinant is phi(nrd(q)).
"""

from dataclasses import dataclass

import mpmath
import numpy as np

from . import numfield
from .errors import RamifiedPlace


@dataclass(frozen=True, eq=False)
class QuaternionAlgebra:
    field: object
    a: object
    b: object

    def __post_init__(self):
        K = self.field
        object.__setattr__(self, "a", K(self.a))
        object.__setattr__(self, "b", K(self.b))
        if self.a.is_zero() or self.b.is_zero():
            raise ValueError("quaternion algebra parameters must be nonzero")

    @property
    def unramified_places(self):
        return [p for p in range(1, self.field.degree + 1) if not ramified_at(self, p)]

    def __call__(self, x=0, y=0, z=0, w=0):
        K = self.field
        return Quaternion(self, K(x), K(y), K(z), K(w))

    @property
    def i(self):
        return self(0, 1)

    @property
    def j(self):
        return self(0, 0, 1)

    @property
    def ij(self):
        return self(0, 0, 0, 1)

    def __repr__(self):
        return f"QuaternionAlgebra(a={self.a}, b={self.b} over {self.field!r})"


class Quaternion:
    """Element of a :class:`QuaternionAlgebra`.

    Norm-one quaternions double as exact group elements: they support the
    same protocol as :class:`arithlimit.isometry.ExactMobius` (``trace``,
    ``inverse``, ``key``, ``at_place`` ...), with the sign normalized so the
    first nonzero coordinate is positive at place 1.
    """

    __slots__ = ("algebra", "x", "y", "z", "w")

    def __init__(self, algebra, x, y, z, w):
        self.algebra = algebra
        self.x, self.y, self.z, self.w = x, y, z, w

    @property
    def field(self):
        return self.algebra.field

    @property
    def coords(self):
        return (self.x, self.y, self.z, self.w)

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "Quaternion({}, {}, {}, {})".format(*self.coords)

    def __add__(self, other):
        return Quaternion(self.algebra, *(p + q for p, q in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Quaternion(self.algebra, *(p - q for p, q in zip(self.coords, other.coords)))

    def __neg__(self):
        return Quaternion(self.algebra, -self.x, -self.y, -self.z, -self.w)

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return quat_mul(self, other)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.algebra(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return Quaternion(self.algebra, self.x, -self.y, -self.z, -self.w)

    # --- group-element protocol ---------------------------------------------

    def inverse(self):
        n = reduced_norm(self)
        inv = n.inverse()
        c = self.conjugate()
        return Quaternion(self.algebra, *(v * inv for v in c.coords))

    def trace(self):
        """Reduced trace 2x; the trace of every matrix embedding."""
        return self.x + self.x

    def canonical(self):
        for v in self.coords:
            s = v.sign(1)
            if s > 0:
                return self
            if s < 0:
                return -self
        return self

    def is_identity(self):
        return self.y.is_zero() and self.z.is_zero() and self.w.is_zero()

    @property
    def key(self):
        return tuple((v.nums, v.den) for v in self.canonical().coords)

    def entries(self):
        return self.coords

    def at_place(self, place):
        from .isometry import Mobius
        return Mobius.from_mp(matrix_embedding_mp(self, place), normalize=reduced_norm(self) != 1)

    def at_place_float(self, place):
        from .isometry import Mobius
        return Mobius.from_matrix(matrix_embedding(self, place),
                                  normalize=reduced_norm(self) != 1)


def quat_mul(p, q):
    A = p.algebra
    a, b = A.a, A.b
    x1, y1, z1, w1 = p.coords
    x2, y2, z2, w2 = q.coords
    ab = a * b
    return Quaternion(
        A,
        x1 * x2 + a * (y1 * y2) + b * (z1 * z2) - ab * (w1 * w2),
        x1 * y2 + y1 * x2 - b * (z1 * w2) + b * (w1 * z2),
        x1 * z2 + z1 * x2 + a * (y1 * w2) - a * (w1 * y2),
        x1 * w2 + w1 * x2 + y1 * z2 - z1 * y2,
    )


def reduced_norm(q):
    a, b = q.algebra.a, q.algebra.b
    return q.x * q.x - a * (q.y * q.y) - b * (q.z * q.z) + (a * b) * (q.w * q.w)


def ramified_at(A, place):
    """True iff phi_place(a) < 0 and phi_place(b) < 0 (Hamilton quaternions)."""
    return A.a.sign(place) < 0 and A.b.sign(place) < 0


def matrix_embedding_mp(q, place):
    """Entries (a, b, c, d) of the embedding at ``place`` as mpf values."""
    A = q.algebra
    if ramified_at(A, place):
        raise RamifiedPlace(f"algebra is ramified at place {place}")
    x, y, z, w = (v.mp(place) for v in q.coords)
    pa, pb = A.a.mp(place), A.b.mp(place)
    with mpmath.workdps(numfield.MP_DPS + 10):
        if A.a.sign(place) > 0:
            al = mpmath.sqrt(pa)
            return (x + y * al, z + w * al, pb * (z - w * al), x - y * al)
        be = mpmath.sqrt(pb)
        return (x + z * be, y - w * be, pa * (y + w * be), x - z * be)


def matrix_embedding(q, place):
    """2x2 float matrix of ``q`` at an unramified ``place``."""
    return np.array([float(v) for v in matrix_embedding_mp(q, place)]).reshape(2, 2)


def order_membership(q):
    """True iff q lies in the standard order spanned by 1, i, j, ij over Z[t]."""
    return all(numfield.in_power_basis_order(v) for v in q.coords)
