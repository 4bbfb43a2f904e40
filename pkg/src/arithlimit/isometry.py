"""Isometries of the hyperbolic plane and r-tuples of them.

Two representations of an element of PSL(2, R) are used side by side:

* :class:`Mobius` holds floating entries, optionally shadowed by
  high-precision ``mpmath`` values when it was obtained by evaluating an
  exact element at a place;
* :class:`ExactMobius` holds entries in a number field K with determinant
  exactly 1.  Its Galois conjugates give the components of the star
  embedding g* = (phi_1(g), ..., phi_r(g)).

Classification of exact elements is exact: the sign of tr^2 - 4 at a place is
certified by interval refinement, and finite order of an elliptic is decided
from the trace recurrence tr(g^m) = tr(g) tr(g^(m-1)) - tr(g^(m-2)).

The boundary of the upper half-plane is the projective line; (1:0) is
infinity and fixed points are eigenvectors.
"""

from dataclasses import dataclass, field
from enum import Enum
import math
import sys

import mpmath

from . import numfield
from .errors import (CommonFixedPoint, DetNotOne, InfinityFixed, NoTranslation,
                     NotFound, NotHyperbolic, UndecidableOrder)

PARABOLIC_BAND = 1e-9
SCHOTTKY_MARGIN = 1e-9


# --- finite-order bookkeeping ------------------------------------------------

def _euler_phi(m):
    result, p, k = m, 2, m
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


def finite_order_bound(degree):
    """Largest possible PSL order of an elliptic with trace in a degree-``degree`` field.

    An elliptic of order m has trace +-2 cos(pi k / m), of degree phi(2m)/2
    over Q, so only m with phi(2m) <= 2 * degree can occur.  The result is
    padded to at least 60.
    """
    best = 1
    for m in range(1, 400):
        if _euler_phi(2 * m) <= 2 * degree:
            best = m
    return max(best, 60)


# |trace| values of finite-order elliptics whose trace has degree <= 2
FINITE_ORDER_TRACES_DEG2 = {
    2: "0", 3: "1", 4: "sqrt(2)", 6: "sqrt(3)",
    5: "(sqrt(5)+1)/2 or (sqrt(5)-1)/2", 10: "(sqrt(5)+1)/2 or (sqrt(5)-1)/2",
}


# --- boundary points and directions ------------------------------------------

@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    """Point (u : v) of the projective line, stored normalized.

    ``u**2 + v**2 == 1`` with ``v > 0``, or ``v == 0`` and ``u == 1`` for
    infinity.  ``alpha`` is the canonical angle (atan2(v, u) mod pi) / pi in
    [0, 1).
    """

    u: float
    v: float
    alpha: float

    @classmethod
    def from_pair(cls, u, v):
        if isinstance(u, mpmath.mpf) or isinstance(v, mpmath.mpf):
            with mpmath.workdps(numfield.MP_DPS):
                u, v = mpmath.mpf(u), mpmath.mpf(v)
                if u == 0 and v == 0:
                    raise ValueError("(0:0) is not a projective point")
                if v < 0 or (v == 0 and u < 0):
                    u, v = -u, -v
                n = mpmath.hypot(u, v)
                u, v = u / n, v / n
                alpha = mpmath.atan2(v, u) / mpmath.pi
                if alpha >= 1:
                    alpha = alpha - 1
                return cls(float(u) + 0.0, float(v) + 0.0, float(alpha))
        u, v = float(u), float(v)
        if u == 0 and v == 0:
            raise ValueError("(0:0) is not a projective point")
        if v < 0 or (v == 0 and u < 0):
            u, v = -u, -v
        n = math.hypot(u, v)
        u, v = u / n + 0.0, v / n + 0.0  # drop negative zeros
        alpha = math.atan2(v, u) / math.pi
        if alpha >= 1:
            alpha -= 1
        return cls(u, v, alpha)

    @classmethod
    def from_real(cls, x):
        if x == math.inf or x == -math.inf:
            return cls.from_pair(1, 0)
        return cls.from_pair(x, 1)

    @property
    def x(self):
        """Real coordinate u/v (``inf`` for the point at infinity)."""
        return math.inf if self.v == 0 else self.u / self.v

    def isclose(self, other, tol=1e-12):
        return abs(self.u * other.v - self.v * other.u) <= tol

    def __eq__(self, other):
        # projective equality up to a few ulps of the unit representatives
        if not isinstance(other, BoundaryPoint):
            return NotImplemented
        return self.isclose(other, 4 * sys.float_info.epsilon)

    __hash__ = None


@dataclass(frozen=True)
class Direction:
    """Point of RP^(r-1) with nonnegative coordinates summing to 1."""

    coords: tuple

    @classmethod
    def from_lengths(cls, lengths):
        if any(v < 0 for v in lengths):
            raise ValueError("lengths must be nonnegative")
        with mpmath.workdps(numfield.MP_DPS):
            total = mpmath.fsum(mpmath.mpf(v) for v in lengths)
            if total == 0:
                raise NoTranslation("all translation lengths vanish")
            return cls(tuple(float(mpmath.mpf(v) / total) for v in lengths))

    @property
    def r(self):
        return len(self.coords)

    @property
    def theta(self):
        """Chart coordinate w_2/(w_1 + w_2) for r = 2."""
        if self.r != 2:
            raise ValueError("theta is defined for r = 2")
        return self.coords[1]

    def is_regular(self):
        return all(c > 0 for c in self.coords)


# --- Mobius transformations --------------------------------------------------

@dataclass(frozen=True)
class Mobius:
    """Floating element of PSL(2, R), det 1, first nonzero entry positive."""

    a: float
    b: float
    c: float
    d: float
    mp: tuple = field(default=None, compare=False, repr=False)

    @classmethod
    def from_matrix(cls, m, normalize=True):
        """From a real 2x2 matrix; ``normalize=False`` trusts det = 1 as in ``from_mp``."""
        (a, b), (c, d) = [[float(v) for v in row] for row in m]
        if not normalize:
            return cls._signed(a, b, c, d, None)
        det = a * d - b * c
        if det <= 0:
            raise DetNotOne(f"determinant {det} is not positive")
        if det != 1.0:
            s = math.sqrt(det)
            a, b, c, d = a / s, b / s, c / s, d / s
        return cls._signed(a, b, c, d, None)

    @classmethod
    def from_mp(cls, entries, normalize=True):
        """From high-precision entries; ``normalize=False`` trusts det = 1.

        Images of exact elements have determinant exactly 1, and for large
        entries a numerical det would only reflect cancellation.
        """
        with mpmath.workdps(numfield.MP_DPS + 10):
            entries = tuple(mpmath.mpf(v) for v in entries)
            if normalize:
                a, b, c, d = entries
                det = a * d - b * c
                if det <= 0:
                    raise DetNotOne("determinant is not positive")
                if abs(det - 1) > mpmath.mpf(10) ** (-numfield.MP_DPS + 5):
                    s = mpmath.sqrt(det)
                    entries = tuple(v / s for v in entries)
            first = next((v for v in entries if v != 0), 1)
            if first < 0:
                entries = tuple(-v for v in entries)
        return cls(*(float(v) for v in entries), mp=entries)

    @classmethod
    def _signed(cls, a, b, c, d, mp):
        first = next((v for v in (a, b, c, d) if v != 0), 1.0)
        if first < 0:
            a, b, c, d = -a, -b, -c, -d
        return cls(a, b, c, d, mp)

    @property
    def matrix(self):
        import numpy as np
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def trace(self):
        return abs(self.a + self.d)

    def __mul__(self, other):
        if self.mp is not None and other.mp is not None:
            a, b, c, d = self.mp
            e, f, g, h = other.mp
            with mpmath.workdps(numfield.MP_DPS + 10):
                return Mobius.from_mp((a * e + b * g, a * f + b * h,
                                       c * e + d * g, c * f + d * h))
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mobius._signed(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, None)

    def inverse(self):
        if self.mp is not None:
            a, b, c, d = self.mp
            return Mobius.from_mp((d, -b, -c, a))
        return Mobius._signed(self.d, -self.b, -self.c, self.a, None)

    def __pow__(self, k):
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = IDENTITY if self.mp is None else Mobius.from_mp((1, 0, 0, 1))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, z):
        """Action on a point of the upper half-plane (complex number)."""
        if self.mp is not None:
            a, b, c, d = self.mp
            with mpmath.workdps(numfield.MP_DPS + 10):
                return (a * z + b) / (c * z + d)
        return (self.a * z + self.b) / (self.c * z + self.d)

    def _entries(self, high=False):
        if high and self.mp is not None:
            return self.mp
        return (self.a, self.b, self.c, self.d)


IDENTITY = Mobius(1.0, 0.0, 0.0, 1.0, mp=None)


class ExactMobius:
    """Element of SL(2, K) with det exactly 1, taken up to sign."""

    __slots__ = ("a", "b", "c", "d", "_key")

    def __init__(self, a, b, c, d, check=True):
        K = next((v.field for v in (a, b, c, d) if isinstance(v, numfield.FieldElement)), None)
        if K is None:
            raise TypeError("at least one entry must be a FieldElement")
        a, b, c, d = K(a), K(b), K(c), K(d)
        if check and a * d - b * c != 1:
            raise DetNotOne(f"determinant {a * d - b * c} is not 1")
        for v in (a, b, c, d):
            s = v.sign(1)
            if s:
                if s < 0:
                    a, b, c, d = -a, -b, -c, -d
                break
        self.a, self.b, self.c, self.d = a, b, c, d
        self._key = None

    @classmethod
    def from_rows(cls, rows, field=None):
        (a, b), (c, d) = rows
        if field is not None:
            a, b, c, d = field(a), field(b), field(c), field(d)
        return cls(a, b, c, d)

    @property
    def field(self):
        return self.a.field

    @property
    def key(self):
        if self._key is None:
            self._key = tuple((v.nums, v.den) for v in (self.a, self.b, self.c, self.d))
        return self._key

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, ExactMobius):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "ExactMobius([[{}, {}], [{}, {}]])".format(self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return ExactMobius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h,
                           check=False)

    def inverse(self):
        return ExactMobius(self.d, -self.b, -self.c, self.a, check=False)

    def __pow__(self, k):
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        K = self.field
        result = ExactMobius(K.one, K.zero, K.zero, K.one, check=False)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def trace(self):
        return self.a + self.d

    def is_identity(self):
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def at_place(self, place):
        return Mobius.from_mp(tuple(v.mp(place) for v in self.entries()), normalize=False)

    def at_place_float(self, place):
        """Plain floating image at ``place`` (no high-precision shadow)."""
        a, b, c, d = (v.approx(place) for v in self.entries())
        return Mobius.from_matrix([[a, b], [c, d]], normalize=False)


def exact_identity(field):
    return ExactMobius(field.one, field.zero, field.zero, field.one, check=False)


# --- classification ----------------------------------------------------------

class Kind(Enum):
    IDENTITY = "Identity"
    PARABOLIC = "Parabolic"
    ELLIPTIC_FINITE = "EllipticFinite"
    ELLIPTIC_INFINITE = "EllipticInfinite"
    HYPERBOLIC = "Hyperbolic"

    @property
    def is_elliptic(self):
        return self in (Kind.ELLIPTIC_FINITE, Kind.ELLIPTIC_INFINITE)


class TupleKind(Enum):
    IDENTITY = "Identity"
    HYPERBOLIC = "Hyperbolic"
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    MIXED = "Mixed"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    length: float = 0.0
    order: int = None
    length_mp: object = field(default=None, compare=False, repr=False)

    def __str__(self):
        if self.kind is Kind.HYPERBOLIC:
            return f"Hyperbolic(l={self.length:.12g})"
        if self.kind is Kind.ELLIPTIC_FINITE:
            return f"EllipticFinite({self.order})"
        return self.kind.value


@dataclass(frozen=True)
class TupleClass:
    kind: TupleKind
    per_component: tuple

    def __str__(self):
        return "{}: {}".format(self.kind.value, ", ".join(str(c) for c in self.per_component))


def _hyperbolic_length(trace_mp):
    with mpmath.workdps(numfield.MP_DPS):
        return 2 * mpmath.acosh(abs(trace_mp) / 2)


def classify_exact(g, place=1, finite_order_bound=None):
    """Exact classification of phi_place(g) for an exact group element."""
    if g.is_identity():
        return Classification(Kind.IDENTITY)
    T = g.trace()
    s = (T * T - 4).sign(place)
    if s > 0:
        ell = _hyperbolic_length(T.mp(place))
        return Classification(Kind.HYPERBOLIC, float(ell), None, ell)
    if s == 0:
        return Classification(Kind.PARABOLIC)
    order = elliptic_order(T, finite_order_bound, place)
    if order is None:
        return Classification(Kind.ELLIPTIC_INFINITE)
    return Classification(Kind.ELLIPTIC_FINITE, 0.0, order)


def elliptic_order(trace, bound=None, place=1):
    """Smallest m with g^m = +-I for an elliptic g of the given trace, or None.

    A float screen at ``place`` proposes the only possible order: g^m = +-I
    forces m * theta / pi to be an integer, theta = arccos(|tr| / 2); the float
    test admits false positives only, and a candidate is confirmed exactly by
    the trace recurrence.
    """
    if bound is None:
        bound = finite_order_bound(trace.field.degree)
    q = math.acos(min(1.0, abs(float(trace.mp(place))) / 2)) / math.pi
    candidate = next((m for m in range(1, bound + 1)
                      if abs(q * m - round(q * m)) < 1e-9 * m), None)
    if candidate is None:
        return None
    prev, cur = trace.field.one * 2, trace
    for m in range(1, candidate + 1):
        if cur == 2 or cur == -2:
            return m
        prev, cur = cur, trace * cur - prev
    return None


def classify_float(g, finite_order_bound=60, tol=PARABOLIC_BAND):
    a, b, c, d = g.a, g.b, g.c, g.d
    if max(abs(a - 1), abs(b), abs(c), abs(d - 1)) < tol:
        return Classification(Kind.IDENTITY)
    tr = abs(a + d)
    if abs(tr - 2) < tol:
        if tr == 2.0:
            return Classification(Kind.PARABOLIC)
        raise UndecidableOrder(f"|trace| = {tr!r} lies within {tol} of 2")
    if tr > 2:
        ell = 2 * math.acosh(tr / 2)
        return Classification(Kind.HYPERBOLIC, ell, None, ell)
    theta = math.acos(tr / 2)  # half the rotation angle
    for m in range(1, finite_order_bound + 1):
        q = m * theta / math.pi
        if abs(q - round(q)) < tol * m:
            return Classification(Kind.ELLIPTIC_FINITE, 0.0, m)
    return Classification(Kind.ELLIPTIC_INFINITE)


def classify(g, finite_order_bound=None, place=1):
    """Classify a :class:`Mobius` (floating) or an exact element at ``place``."""
    if isinstance(g, Mobius):
        return classify_float(g, finite_order_bound or 60)
    return classify_exact(g, place, finite_order_bound)


# --- tuples ------------------------------------------------------------------

@dataclass(frozen=True)
class IsometryTuple:
    components: tuple
    source: object = field(default=None, compare=False)

    @property
    def r(self):
        return len(self.components)

    def __mul__(self, other):
        if self.source is not None and other.source is not None:
            return star_embedding(self.source * other.source, self.r)
        return IsometryTuple(tuple(p * q for p, q in zip(self.components, other.components)))

    def inverse(self):
        if self.source is not None:
            return star_embedding(self.source.inverse(), self.r)
        return IsometryTuple(tuple(p.inverse() for p in self.components))

    def __pow__(self, k):
        if self.source is not None:
            return star_embedding(self.source ** k, self.r)
        return IsometryTuple(tuple(p ** k for p in self.components))


def star_embedding(M, r):
    """The tuple (phi_1(M), ..., phi_r(M)) of Galois-conjugate actions."""
    if isinstance(M, (list, tuple)):
        M = ExactMobius.from_rows(M)
    if isinstance(M, ExactMobius) and M.a * M.d - M.b * M.c != 1:
        raise DetNotOne("determinant is not 1")
    if r > M.field.degree:
        raise ValueError(f"r = {r} exceeds the field degree {M.field.degree}")
    return IsometryTuple(tuple(M.at_place(j) for j in range(1, r + 1)), M)


def tuple_kind(per_component):
    kinds = [c.kind for c in per_component]
    if all(k is Kind.IDENTITY for k in kinds):
        return TupleKind.IDENTITY
    if all(k is Kind.HYPERBOLIC for k in kinds):
        return TupleKind.HYPERBOLIC
    if all(k.is_elliptic for k in kinds):
        return TupleKind.ELLIPTIC
    if all(k is Kind.PARABOLIC for k in kinds):
        return TupleKind.PARABOLIC
    return TupleKind.MIXED


def classify_element(g, r, finite_order_bound=None):
    """TupleClass of the star embedding of an exact element, without building it."""
    if g.is_identity():
        per = (Classification(Kind.IDENTITY),) * r
        return TupleClass(TupleKind.IDENTITY, per)
    per = tuple(classify_exact(g, j, finite_order_bound) for j in range(1, r + 1))
    return TupleClass(tuple_kind(per), per)


def classify_tuple(g, finite_order_bound=None):
    if g.source is not None:
        return classify_element(g.source, g.r, finite_order_bound)
    per = tuple(classify_float(c, finite_order_bound or 60) for c in g.components)
    return TupleClass(tuple_kind(per), per)


def direction_from_class(tc):
    return Direction.from_lengths(
        [c.length_mp if c.length_mp is not None else c.length for c in tc.per_component])


def translation_direction(g):
    """Normalized translation direction (l(g_1) : ... : l(g_r))."""
    return direction_from_class(classify_tuple(g))


# --- boundary dynamics -------------------------------------------------------

def apply_boundary(g, xi):
    a, b, c, d = g.a, g.b, g.c, g.d
    return BoundaryPoint.from_pair(a * xi.u + b * xi.v, c * xi.u + d * xi.v)


def fixed_points(g):
    """(attractive, repulsive) fixed points of a hyperbolic :class:`Mobius`."""
    tr = g.a + g.d
    if abs(tr) <= 2 + PARABOLIC_BAND:
        raise NotHyperbolic(f"|trace| = {abs(tr)} is not > 2")
    if g.mp is not None:
        with mpmath.workdps(numfield.MP_DPS + 10):
            a, b, c, d = g.mp
            tr = a + d
            root = mpmath.sqrt(tr * tr - 4)
            sgn = 1 if tr > 0 else -1
            lam_big = (tr + sgn * root) / 2
            lam_small = 1 / lam_big
            return (BoundaryPoint.from_pair(*_scaled(_eigvec(a, b, c, d, lam_big))),
                    BoundaryPoint.from_pair(*_scaled(_eigvec(a, b, c, d, lam_small))))
    a, b, c, d = g.a, g.b, g.c, g.d
    root = math.sqrt(tr * tr - 4)
    lam_big = (tr + math.copysign(root, tr)) / 2
    lam_small = 1 / lam_big
    return (BoundaryPoint.from_pair(*_eigvec(a, b, c, d, lam_big)),
            BoundaryPoint.from_pair(*_eigvec(a, b, c, d, lam_small)))


def _scaled(vec):
    # float pair with the same ratio; the angle needs no extra precision
    m = max(abs(vec[0]), abs(vec[1]))
    return float(vec[0] / m), float(vec[1] / m)


def _eigvec(a, b, c, d, lam):
    v1 = (b, lam - a)
    v2 = (lam - d, c)
    if abs(v1[0]) + abs(v1[1]) >= abs(v2[0]) + abs(v2[1]):
        return v1
    return v2


def hyp_distance(z, w):
    """Hyperbolic distance in the upper half-plane."""
    if isinstance(z, mpmath.mpc) or isinstance(w, mpmath.mpc):
        with mpmath.workdps(numfield.MP_DPS):
            return mpmath.acosh(1 + abs(z - w) ** 2 / (2 * mpmath.im(z) * mpmath.im(w)))
    return math.acosh(1 + abs(z - w) ** 2 / (2 * z.imag * w.imag))


# --- Schottky certificates ---------------------------------------------------

@dataclass(frozen=True)
class Disk:
    center: float
    radius: float
    label: str


@dataclass(frozen=True)
class SchottkyCertificate:
    """Pairwise disjoint isometric circles of the generators and their inverses."""

    disks: tuple
    min_gap: float
    conjugator: Mobius = None


def isometric_disks(g, label="g"):
    if abs(g.c) == 0:
        raise InfinityFixed(f"{label} fixes infinity; conjugate first")
    rad = 1 / abs(g.c)
    return (Disk(-g.d / g.c, rad, label), Disk(g.a / g.c, rad, label + "^-1"))


def schottky_certificate(g, *more, conjugator=None):
    """Ping-pong certificate for <g, ...> or ``None`` when absent.

    Closed isometric disks of all generators and inverses must be pairwise
    disjoint; then the group is free, discrete and purely hyperbolic.
    ``conjugator`` C replaces every generator x by C x C^-1 first.
    """
    gens = (g,) + more
    for k, x in enumerate(gens):
        if classify_float_kind(x) is not Kind.HYPERBOLIC:
            raise NotHyperbolic(f"generator {k} is not hyperbolic")
    if conjugator is not None:
        ci = conjugator.inverse()
        gens = tuple(conjugator * x * ci for x in gens)
    disks = []
    for k, x in enumerate(gens):
        disks.extend(isometric_disks(x, f"g{k}"))
    gap = math.inf
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            p, q = disks[i], disks[j]
            gap = min(gap, abs(p.center - q.center) - p.radius - q.radius)
    scale = max(1.0, max(abs(dk.center) + dk.radius for dk in disks))
    if gap > SCHOTTKY_MARGIN * scale:
        return SchottkyCertificate(tuple(disks), gap, conjugator)
    return None


def classify_float_kind(g):
    tr = abs(g.a + g.d)
    if tr > 2 + PARABOLIC_BAND:
        return Kind.HYPERBOLIC
    if tr < 2 - PARABOLIC_BAND:
        return Kind.ELLIPTIC_INFINITE
    return Kind.PARABOLIC


def rotation(theta):
    """Elliptic rotation about i by angle 2*theta."""
    c, s = math.cos(theta), math.sin(theta)
    return Mobius(c, -s, s, c)


def _fixed_point_alphas(gens):
    alphas = []
    for x in gens:
        att, rep = fixed_points(x)
        alphas.extend([att.alpha, rep.alpha])
    return alphas


def infinity_conjugator(gens, min_sep=0.05):
    """Identity if no generator fixes infinity, else a rotation moving infinity clear.

    The rotation C is chosen from theta = k*pi/24 so that C^-1(infinity) is at
    canonical-angle distance > ``min_sep`` from every fixed point.
    """
    if all(abs(x.c) > 0 for x in gens):
        return None
    alphas = _fixed_point_alphas(gens)
    for k in range(1, 24):
        C = rotation(k * math.pi / 24)
        pole = apply_boundary(C.inverse(), BoundaryPoint.from_pair(1, 0)).alpha
        if all(min(abs(pole - a), 1 - abs(pole - a)) > min_sep for a in alphas):
            return C
    raise InfinityFixed("no rotation moves infinity away from the fixed points")


@dataclass(frozen=True)
class SchottkyPowers:
    m: int
    n: int
    certificate: SchottkyCertificate


def find_schottky_powers(g, h, maxpow):
    """Lexicographically smallest (m, n) with <g^m, h^n> certified Schottky."""
    for k, x in enumerate((g, h)):
        if classify_float_kind(x) is not Kind.HYPERBOLIC:
            raise NotHyperbolic(f"argument {k} is not hyperbolic")
    ga, gr = fixed_points(g)
    ha, hr = fixed_points(h)
    for p in (ga, gr):
        for q in (ha, hr):
            if p.isclose(q, 1e-9):
                raise CommonFixedPoint("g and h share a fixed point")
    C = infinity_conjugator((g, h))
    for m in range(1, maxpow + 1):
        gm = g ** m
        for n in range(1, maxpow + 1):
            cert = schottky_certificate(gm, h ** n, conjugator=C)
            if cert is not None:
                return SchottkyPowers(m, n, cert)
    raise NotFound(f"no Schottky powers with m, n <= {maxpow}")


def axis_point(g, z0=1j):
    """Orthogonal projection of ``z0`` onto the axis of a hyperbolic ``g``."""
    att, rep = fixed_points(g)
    return _project_to_geodesic(att, rep, z0)


def _project_to_geodesic(p, q, z0):
    """Closest point to ``z0`` on the geodesic with endpoints ``p``, ``q``."""
    with mpmath.workdps(numfield.MP_DPS + 10):
        z0 = mpmath.mpc(z0)
        if p.v == 0 or q.v == 0:
            x = mpmath.mpf((q if p.v == 0 else p).x)
            return mpmath.mpc(x, abs(z0 - x))
        x1, x2 = mpmath.mpf(p.x), mpmath.mpf(q.x)
        # w = (z - x1)/(z - x2) sends the geodesic onto the imaginary axis
        w = (z0 - x1) / (z0 - x2)
        w_proj = mpmath.mpc(0, abs(w) if mpmath.im(w) > 0 else -abs(w))
        return (x1 - x2 * w_proj) / (1 - w_proj)
