"""Word enumeration, limit-set samplers and structure prediction.

A finitely generated group Gamma is given by exact generators over K (matrices
or norm-one quaternions).  Its elements are enumerated breadth-first by word
length and deduplicated by canonical exact entries.  From the enumeration we
sample

* translation directions of hyperbolic (and mixed) tuples, a point cloud in
  the simplex of RP^(r-1) with nonnegative coordinates;
* componentwise attractive fixed points of hyperbolic tuples, a point cloud in
  the product of r boundary circles.

The remaining functions compute the invariants that predict the shape of
these sets: the degree of the trace field of the squares subgroup, per-place
discreteness certificates, and the resulting dimension counts.
"""

from dataclasses import dataclass, field
from enum import Enum
import math

import mpmath
import numpy as np

from . import numfield
from .errors import (BudgetExceeded, EmptySample, InconsistentInput, NotFound,
                     NotHyperbolic, NotIntegral, NotStabilized, PreconditionError,
                     Unverifiable, DetNotOne, NormNotOne)
from .isometry import (Direction, ExactMobius, IsometryTuple, Kind, Mobius,
                       TupleKind, axis_point, classify_element, classify_float,
                       classify_float_kind,
                       classify_tuple, direction_from_class, finite_order_bound,
                       fixed_points, hyp_distance, BoundaryPoint,
                       infinity_conjugator, rotation, schottky_certificate,
                       star_embedding)
from .quatalg import Quaternion, order_membership, reduced_norm, ramified_at


# --- configuration -----------------------------------------------------------

@dataclass(eq=False)
class GroupConfig:
    """Generators of Gamma together with the number of places used.

    ``generators`` are :class:`ExactMobius` or norm-one :class:`Quaternion`
    values.  With ``check`` the generators must be integral (all power-basis
    coordinates in Z) and have determinant (or reduced norm) 1.
    """

    field: numfield.NumberField
    r: int
    generators: tuple
    labels: tuple = None
    algebra: object = None
    check: bool = True

    def __post_init__(self):
        self.generators = tuple(self.generators)
        if not self.generators:
            raise ValueError("at least one generator is required")
        if self.labels is None:
            self.labels = tuple(f"g{k + 1}" for k in range(len(self.generators)))
        self.labels = tuple(self.labels)
        if len(self.labels) != len(self.generators):
            raise ValueError("one label per generator is required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("generator labels must be distinct")
        if self.r < 1 or self.r > self.field.degree:
            raise ValueError(f"r = {self.r} must lie in 1..{self.field.degree}")
        if self.algebra is not None:
            for p in range(1, self.r + 1):
                if ramified_at(self.algebra, p):
                    raise ValueError(f"the algebra is ramified at used place {p}")
        if self.check:
            for lab, g in zip(self.labels, self.generators):
                _validate_generator(lab, g)

    @property
    def letters(self):
        """Generators and inverses in label order: g1, g1^-1, g2, g2^-1, ..."""
        out = []
        for g in self.generators:
            out.extend((g, g.inverse()))
        return out

    def word_str(self, word):
        return format_word(word, self.labels)

    def evaluate(self, word):
        """Exact value of a word given as a tuple of letter indices."""
        letters = self.letters
        result = identity_like(self.generators[0])
        for li in word:
            result = result * letters[li]
        return result

    def star(self, g):
        return star_embedding(g, self.r)


def _validate_generator(label, g):
    if isinstance(g, Quaternion):
        if reduced_norm(g) != 1:
            raise NormNotOne(f"generator {label} has reduced norm {reduced_norm(g)}")
        if not order_membership(g):
            raise NotIntegral(f"generator {label} is not in the standard order")
        return
    if g.a * g.d - g.b * g.c != 1:
        raise DetNotOne(f"generator {label} does not have determinant 1")
    for v in g.entries():
        if not numfield.in_power_basis_order(v):
            raise NotIntegral(f"generator {label} has non-integral entry {v}")


def identity_like(g):
    if isinstance(g, Quaternion):
        return g.algebra(1)
    K = g.field
    return ExactMobius(K.one, K.zero, K.zero, K.one, check=False)


def format_word(word, labels):
    if not word:
        return "1"
    parts = []
    for li in word:
        lab = labels[li // 2]
        parts.append(lab if li % 2 == 0 else lab + "^-1")
    return ".".join(parts)


def parse_word(text, labels):
    if text == "1":
        return ()
    index = {lab: 2 * k for k, lab in enumerate(labels)}
    word = []
    for part in text.split("."):
        if part.endswith("^-1"):
            word.append(index[part[:-3]] + 1)
        else:
            word.append(index[part])
    return tuple(word)


# --- enumeration -------------------------------------------------------------

class ElementRecord:
    """One distinct group element with its shortest witnessing word."""

    __slots__ = ("element", "word", "tclass")

    def __init__(self, element, word, tclass=None):
        self.element = element
        self.word = word
        self.tclass = tclass

    def __repr__(self):
        return f"ElementRecord(word={self.word}, tclass={self.tclass})"


class ElementSet:
    """Distinct values of reduced words of length <= ``max_word_length``.

    ``records`` maps the canonical key of each element to its record.  Records
    are stored in enumeration order: by length, then lexicographically in the
    letter order g1 < g1^-1 < g2 < ...
    """

    def __init__(self, config, max_word_length, records):
        self.config = config
        self.max_word_length = max_word_length
        self.records = records

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records.values())

    def __contains__(self, g):
        return g.key in self.records

    def lookup(self, g):
        return self.records.get(g.key)

    def restrict(self, L):
        """The element set of word length <= L (a prefix of this one)."""
        if L > self.max_word_length:
            raise ValueError("cannot extend an element set by restriction")
        recs = {k: rec for k, rec in self.records.items() if len(rec.word) <= L}
        return ElementSet(self.config, L, recs)

    def word_str(self, rec):
        return self.config.word_str(rec.word)


def enumerate_elements(cfg, L, budget=None, classify=True):
    """All distinct elements given by reduced words of length <= L.

    Breadth-first: the frontier of new elements at length l is extended by
    every letter except the inverse of its last one.  A product already seen
    is dropped, so each element keeps its shortest, lexicographically first
    word.  ``budget`` caps the number of stored elements.
    """
    if L < 0:
        raise ValueError("L must be nonnegative")
    letters = cfg.letters
    ident = identity_like(cfg.generators[0])
    records = {ident.key: ElementRecord(ident, ())}
    frontier = [records[ident.key]]
    for _ in range(L):
        new = []
        for rec in frontier:
            last = rec.word[-1] if rec.word else None
            for li, letter in enumerate(letters):
                if last is not None and li == last ^ 1:
                    continue
                val = rec.element * letter
                key = val.key
                if key in records:
                    continue
                nrec = ElementRecord(val, rec.word + (li,))
                records[key] = nrec
                new.append(nrec)
                if budget is not None and len(records) > budget:
                    raise BudgetExceeded(f"more than {budget} elements")
        frontier = new
        if not frontier:
            break
    es = ElementSet(cfg, L, records)
    if classify:
        classify_records(es)
    return es


def classify_records(es):
    bound = finite_order_bound(es.config.field.degree)
    r = es.config.r
    for rec in es:
        if rec.tclass is None:
            rec.tclass = classify_element(rec.element, r, bound)
    return es


def reduced_words(ngens, L):
    """All freely reduced words of length <= L as tuples of letter indices."""
    words = [()]
    level = [()]
    for _ in range(L):
        nxt = []
        for w in level:
            for li in range(2 * ngens):
                if w and li == w[-1] ^ 1:
                    continue
                nxt.append(w + (li,))
        words.extend(nxt)
        level = nxt
    return words


# --- samplers ----------------------------------------------------------------

class SampleMode(Enum):
    PROJECTIVE_LIMIT = "ProjectiveLimit"
    LIMIT_CONE = "LimitCone"


@dataclass
class DirectionSample:
    mode: SampleMode
    points: list  # of (Direction, word string)

    @property
    def r(self):
        return self.points[0][0].r if self.points else None

    def __len__(self):
        return len(self.points)


@dataclass
class FurstenbergSample:
    points: list  # of (tuple of BoundaryPoint, word string)

    def __len__(self):
        return len(self.points)


def _qualifies(tc, mode):
    if tc.kind is TupleKind.HYPERBOLIC:
        return True
    if mode is SampleMode.LIMIT_CONE and tc.kind is TupleKind.MIXED:
        kinds = [c.kind for c in tc.per_component]
        return (any(k is Kind.HYPERBOLIC for k in kinds)
                and all(k is Kind.HYPERBOLIC or k.is_elliptic for k in kinds))
    return False


def sample_projective(E, mode=SampleMode.PROJECTIVE_LIMIT):
    """Translation directions of qualifying tuples, one per distinct direction."""
    mode = SampleMode(mode)
    seen = set()
    points = []
    for rec in E:
        if not _qualifies(rec.tclass, mode):
            continue
        d = direction_from_class(rec.tclass)
        if d.coords in seen:
            continue
        seen.add(d.coords)
        points.append((d, E.word_str(rec)))
    return DirectionSample(mode, points)


def sample_furstenberg(E):
    """Componentwise attractive fixed points of all hyperbolic tuples."""
    r = E.config.r
    points = []
    for rec in E:
        if rec.tclass.kind is not TupleKind.HYPERBOLIC:
            continue
        xi = tuple(fixed_points(rec.element.at_place_float(j))[0] for j in range(1, r + 1))
        points.append((xi, E.word_str(rec)))
    return FurstenbergSample(points)


def _ray_endpoint(o, p):
    """Boundary point hit by the geodesic ray from ``o`` through ``p``."""
    with mpmath.workdps(numfield.MP_DPS + 10):
        o, p = mpmath.mpc(o), mpmath.mpc(p)
        # disk model centered at o: zeta = (z - o)/(z - conj(o))
        zeta = (p - o) / (p - mpmath.conj(o))
        zeta = zeta / abs(zeta)
        num = o - zeta * mpmath.conj(o)
        den = 1 - zeta
        # (num : den) has a real ratio; scale by the conjugate of the larger part
        ref = mpmath.conj(num if abs(num) >= abs(den) else den)
        return BoundaryPoint.from_pair(mpmath.re(num * ref), mpmath.re(den * ref))


def orbit_boundary_estimate(h, basepoint=None, N=20):
    """Estimate (xi_F, direction) of a hyperbolic tuple from the orbit of a basepoint.

    Each component h_j is applied N times to the basepoint o_j; the boundary
    estimate is the endpoint of the ray from o_j through h_j^N o_j and the
    direction estimate is the normalized vector of displacements
    d(o_j, h_j^N o_j).
    ``basepoint=None`` puts o_j on the axis of h_j (the projection of i),
    where the displacement is exactly N times the translation length.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    tc = classify_tuple(h)
    if tc.kind is not TupleKind.HYPERBOLIC:
        raise NotHyperbolic(f"tuple is {tc.kind.value}, not Hyperbolic")
    if basepoint is None:
        basepoint = tuple(axis_point(c) for c in h.components)
    if len(basepoint) != h.r:
        raise ValueError("basepoint must have one point per component")
    xis, dists = [], []
    for o, comp in zip(basepoint, h.components):
        with mpmath.workdps(numfield.MP_DPS + 10):
            o = mpmath.mpc(o)
        p = o
        for _ in range(N):
            p = _apply_point(comp, p)
        xis.append(_ray_endpoint(o, p))
        dists.append(hyp_distance(o, p))
    return tuple(xis), Direction.from_lengths(dists)


def _apply_point(g, z):
    """g(z) with the imaginary part taken as Im(z) / |cz + d|^2 (det g = 1)."""
    with mpmath.workdps(numfield.MP_DPS + 10):
        a, b, c, d = g.mp if g.mp is not None else (g.a, g.b, g.c, g.d)
        den = c * z + d
        n2 = abs(den) ** 2
        re = mpmath.re((a * z + b) * mpmath.conj(den)) / n2
        return mpmath.mpc(re, mpmath.im(z) / n2)


# --- trace fields ------------------------------------------------------------

@dataclass(frozen=True)
class TraceFieldProfile:
    degree: int
    ambient_degree: int
    k: int
    per_place_degree: tuple
    per_place_k: tuple
    blocks: tuple  # classes of places 1..r with equal restriction to the trace field
    stabilized_at: int = 4

    def __str__(self):
        return (f"subgroup trace field degree {self.degree}, ambient degree "
                f"{self.ambient_degree}, k = {self.k}")


def square_traces(generators, max_len):
    """Traces of all reduced words of length <= max_len in the squared generators."""
    sq = [g * g for g in generators]
    letters = []
    for g in sq:
        letters.extend((g, g.inverse()))
    out = []
    level = [((), identity_like(generators[0]))]
    for _ in range(max_len):
        nxt = []
        for w, val in level:
            for li, x in enumerate(letters):
                if w and li == w[-1] ^ 1:
                    continue
                nxt.append((w + (li,), val * x))
        out.extend(v.trace() for _, v in nxt)
        level = nxt
    return out


def _trace_field(generators, max_len=3):
    K = generators[0].field
    short = square_traces(generators, max_len)
    basis = numfield.subfield_basis(short + [K.one])
    longer = square_traces(generators, max_len + 1)
    grown = numfield.subfield_basis(longer + [K.one])
    if len(grown) > len(basis):
        raise NotStabilized(
            f"trace field dimension grew from {len(basis)} to {len(grown)} at length {max_len + 1}")
    return basis


PLACE_SEPARATION = numfield.Fraction(1, 10 ** 30)


def _place_classes(basis, places):
    """Partition ``places`` by the restriction of their embeddings to span(basis).

    Two places restrict equally iff every basis element has equal images.
    Images are compared through enclosures of width 1e-30; distinct
    conjugates of desk-scale elements are separated far more widely.
    """
    encl = {p: [b.embed(p, PLACE_SEPARATION) for b in basis] for p in places}
    classes = []
    for p in places:
        for cl in classes:
            if all(x.overlaps(y) for x, y in zip(encl[p], encl[cl[0]])):
                cl.append(p)
                break
        else:
            classes.append([p])
    return [tuple(cl) for cl in classes]


def trace_field_profile(cfg, ambient=None):
    """Degrees of the trace fields of Gamma^(2) and Delta^(2) and their ratio k.

    ``ambient=None`` stands for the Hilbert modular group over K, whose trace
    field is K itself.  The ratio is also recomputed at every place as the
    ratio of the sizes of the classes of places with equal restriction to the
    two trace fields.
    """
    K = cfg.field
    n = K.degree
    basis = _trace_field(cfg.generators)
    d = len(basis)
    if ambient is not None:
        amb_basis = _trace_field(ambient.generators)
        # the subgroup trace field must lie in the ambient one
        echelon = numfield._Echelon(n)
        for b in amb_basis:
            echelon.add(b.coords)
        if any(echelon.reduce(b.coords) != [0] * n for b in basis):
            raise InconsistentInput("the subgroup trace field is not contained in the ambient one")
    else:
        amb_basis = [K.one] + [K.gen ** i for i in range(1, n)]
    D = len(amb_basis)
    if D % d:
        raise InconsistentInput(f"degree {d} does not divide the ambient degree {D}")
    places = list(range(1, n + 1))
    sub_classes = _place_classes(basis, places)
    amb_classes = _place_classes(amb_basis, places)
    per_k = []
    for j in places:
        cs = next(c for c in sub_classes if j in c)
        ca = next(c for c in amb_classes if j in c)
        per_k.append(len(cs) // len(ca))
    per_deg = tuple(len(sub_classes) for _ in places)
    if len(sub_classes) != d or len(amb_classes) != D or any(v != D // d for v in per_k):
        raise InconsistentInput("trace field degree depends on the place")
    blocks = []
    for cl in sub_classes:
        blk = tuple(p for p in cl if p <= cfg.r)
        if blk:
            blocks.append(blk)
    return TraceFieldProfile(d, D, D // d, per_deg, tuple(per_k), tuple(sorted(blocks)))


# --- discreteness ------------------------------------------------------------

class Status(Enum):
    DISCRETE = "DiscreteCertified"
    NONDISCRETE = "NondiscreteCertified"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PlaceStatus:
    place: int
    status: Status
    evidence: str = ""


@dataclass(frozen=True)
class DiscretenessReport:
    places: tuple

    def status(self, place):
        return self.places[place - 1].status

    @property
    def statuses(self):
        return tuple(p.status for p in self.places)

    def count(self, status):
        return sum(1 for p in self.places if p.status is status)


def jorgensen_quantity(A, B, place=1):
    """|tr(A)^2 - 4| + |tr[A, B] - 2| at a place, as an exact field element."""
    t = A.trace()
    x = t * t - 4
    comm = A * B * A.inverse() * B.inverse()
    y = comm.trace()
    # the commutator trace does not depend on the sign choice of A and B
    y = y - 2
    return _abs_at(x, place) + _abs_at(y, place)


def _abs_at(x, place):
    return -x if x.sign(place) < 0 else x


def _entries_in_Z(g):
    if isinstance(g, Quaternion):
        return False
    return all(v.is_rational() and v.den == 1 for v in g.entries())


def _nonelementary_witness(E, place, allowed_letters=None):
    """Words of two hyperbolics at ``place`` with disjoint fixed-point pairs."""
    seen = []
    for rec in E:
        if allowed_letters is not None and any(li // 2 not in allowed_letters for li in rec.word):
            continue
        tc = rec.tclass
        if tc is None or tc.per_component[place - 1].kind is not Kind.HYPERBOLIC:
            continue
        att, rep = fixed_points(rec.element.at_place_float(place))
        for (w, a2, r2) in seen:
            if not any(p.isclose(q, 1e-9) for p in (att, rep) for q in (a2, r2)):
                return (w, E.word_str(rec))
        if len(seen) < 24:
            seen.append((E.word_str(rec), att, rep))
    return None


def _schottky_at(gens):
    """Try conjugating rotations until the isometric disks of ``gens`` separate."""
    if any(classify_float_kind(g) is not Kind.HYPERBOLIC for g in gens):
        return None
    try:
        first = infinity_conjugator(gens)
    except Exception:
        first = rotation(math.pi / 7)
    candidates = [first] + [rotation(k * math.pi / 24) for k in range(1, 24)]
    for C in candidates:
        conj = [g if C is None else C * g * C.inverse() for g in gens]
        if any(x.c == 0 for x in conj):
            continue
        cert = schottky_certificate(*gens, conjugator=C)
        if cert is not None:
            return cert
    return None


def discreteness_report(cfg, E):
    """Per-place discreteness status with witnesses or certificates.

    Nondiscreteness at place j is certified by an elliptic of infinite order
    in p_j(Gamma), or by a generator pair violating the Jorgensen inequality
    inside a nonelementary subgroup (two hyperbolics without common fixed
    points built from that pair).  Discreteness is certified by a ping-pong
    certificate for the generators at j, or by all generator entries being
    rational integers (a subgroup of SL(2, Z)).
    """
    out = []
    gens = cfg.generators
    for j in range(1, cfg.r + 1):
        nondisc = None
        for rec in E:
            if rec.tclass.per_component[j - 1].kind is Kind.ELLIPTIC_INFINITE:
                nondisc = f"EllipticInfinite witness {E.word_str(rec)}"
                break
        if nondisc is None:
            for a in range(len(gens)):
                for b in range(len(gens)):
                    if a == b:
                        continue
                    J = jorgensen_quantity(gens[a], gens[b], j)
                    if (J - 1).sign(j) >= 0:
                        continue
                    wit = _nonelementary_witness(E, j, {a, b})
                    if wit is not None:
                        nondisc = (f"Jorgensen quantity {numfield.format_element(J)} < 1 for "
                                   f"({cfg.labels[a]}, {cfg.labels[b]}); nonelementary via "
                                   f"{wit[0]}, {wit[1]}")
                        break
                if nondisc:
                    break
        disc = None
        if all(_entries_in_Z(g) for g in gens):
            disc = "generators lie in SL(2, Z)"
        else:
            comps = [g.at_place(j) for g in gens]
            cert = _schottky_at(comps)
            if cert is not None:
                disc = f"Schottky certificate, min gap {cert.min_gap:.6g}"
        if nondisc and disc:
            raise InconsistentInput(f"place {j}: both {nondisc} and {disc}")
        if nondisc:
            out.append(PlaceStatus(j, Status.NONDISCRETE, nondisc))
        elif disc:
            out.append(PlaceStatus(j, Status.DISCRETE, disc))
        else:
            out.append(PlaceStatus(j, Status.UNKNOWN, ""))
    return DiscretenessReport(tuple(out))


# --- structure prediction ----------------------------------------------------

@dataclass(frozen=True)
class StructurePrediction:
    m_min: int
    m_max: int
    k: int
    predicted_dim_P: int
    predicted_F: str
    candidates: tuple  # (m, descriptor, dim F) for each admissible m
    zariski_blocks: tuple

    @property
    def m(self):
        return self.m_min if self.m_min == self.m_max else None


def _descriptor(m, k, has_discrete):
    e = m // k
    if has_discrete:
        return f"L x (dH2)^{e}", 1 + e
    if k == 1:
        return "full Furstenberg boundary", e
    return f"(dH2)^{e}", e


def predict_structure(cfg, profile, report):
    """Dimension of the projective limit set and shape of the Furstenberg one.

    With m nondiscrete projections among r and degree ratio k, the
    projective limit set has dimension r/k - 1.  A discrete projection
    contributes a Fuchsian limit set factor L and each nondiscrete block of
    k conjugate places a full circle.  Unknown statuses widen m to a range.
    """
    r, k = cfg.r, profile.k
    if r % k:
        raise InconsistentInput(f"k = {k} does not divide r = {r}")
    n_nd = report.count(Status.NONDISCRETE)
    n_unk = report.count(Status.UNKNOWN)
    m_min, m_max = n_nd, n_nd + n_unk
    dim_P = r // k - 1
    if n_unk == 0 and m_min % k:
        raise InconsistentInput(f"m = {m_min} nondiscrete places is not divisible by k = {k}")
    cands = []
    for m in range(m_min, m_max + 1):
        if m % k:
            continue
        desc, dim_F = _descriptor(m, k, m < r)
        if dim_F > 1 + dim_P:
            raise InconsistentInput(f"{desc} would exceed dim P + 1 = {1 + dim_P}")
        cands.append((m, desc, dim_F))
    if not cands:
        raise InconsistentInput("no admissible number of nondiscrete places")
    blocks = profile.blocks
    if any(len(b) != k for b in blocks) or sum(len(b) for b in blocks) != r:
        raise InconsistentInput(f"Zariski blocks {blocks} are not {r // k} blocks of size {k}")
    predicted = cands[0][1] if len(cands) == 1 else " | ".join(c[1] for c in cands)
    return StructurePrediction(m_min, m_max, k, dim_P, predicted, tuple(cands), blocks)


# --- mixed upgrade -----------------------------------------------------------

@dataclass(frozen=True)
class MixedUpgrade:
    m: int
    element: object
    tclass: object


def mixed_upgrade_search(g, h, kk, maxm=200):
    """Smallest m <= maxm with g^m h hyperbolic at places 1..kk and elliptic at kk+1.

    ``g`` must be hyperbolic at places 1..kk-1 and elliptic of infinite order
    at kk..r; ``h`` must be hyperbolic.  When kk = r only hyperbolicity at
    every place is required.
    """
    if g.source is None or h.source is None:
        raise PreconditionError("exact tuples are required")
    r = g.r
    if not 1 <= kk <= r:
        raise PreconditionError(f"index {kk} outside 1..{r}")
    gc, hc = classify_tuple(g), classify_tuple(h)
    kinds = [c.kind for c in gc.per_component]
    if (any(k is not Kind.HYPERBOLIC for k in kinds[:kk - 1])
            or any(k is not Kind.ELLIPTIC_INFINITE for k in kinds[kk - 1:])):
        raise PreconditionError(f"g is {gc}, not of the required mixed pattern")
    if hc.kind is not TupleKind.HYPERBOLIC:
        raise PreconditionError(f"h is {hc}, not Hyperbolic")
    bound = finite_order_bound(g.source.field.degree)
    gm = identity_like(g.source)
    for m in range(1, maxm + 1):
        gm = gm * g.source
        w = gm * h.source
        tc = classify_element(w, r, bound)
        per = [c.kind for c in tc.per_component]
        if all(k is Kind.HYPERBOLIC for k in per[:kk]) and (kk == r or per[kk].is_elliptic):
            return MixedUpgrade(m, w, tc)
    raise NotFound(f"no upgrade with m <= {maxm}")


# --- hull statistics ---------------------------------------------------------

@dataclass(frozen=True)
class HullStats:
    count: int
    lo: float = None
    hi: float = None
    length: float = None
    max_gap: float = None
    vertices: tuple = ()


def hull_stats(D):
    """Convex hull of a direction sample in the simplex chart.

    For r = 2 the hull is the interval spanned by theta = w2/(w1 + w2) with
    its largest interior gap; for r >= 3 the vertex list of the hull of the
    first r-1 coordinates.
    """
    if len(D) == 0:
        raise EmptySample("direction sample is empty")
    r = D.r
    pts = np.array([d.coords for d, _ in D.points])
    if r == 2:
        th = np.unique(pts[:, 1])
        gap = float(np.max(np.diff(th))) if len(th) > 1 else 0.0
        lo, hi = float(th[0]), float(th[-1])
        return HullStats(len(D), lo, hi, hi - lo, gap, ((lo,), (hi,)))
    chart = np.unique(pts[:, :-1], axis=0)
    if len(chart) <= r - 1:
        return HullStats(len(D), vertices=tuple(map(tuple, chart)))
    from scipy.spatial import ConvexHull, QhullError
    try:
        hull = ConvexHull(chart)
        verts = chart[np.sort(hull.vertices)]
    except QhullError:
        verts = chart
    return HullStats(len(D), vertices=tuple(map(tuple, verts)))


def hull_progression(E, lengths, mode=SampleMode.PROJECTIVE_LIMIT):
    """hull_stats of the sub-samples of word length <= L for each L."""
    out = []
    for L in lengths:
        out.append((L, hull_stats(sample_projective(E.restrict(L), mode))))
    return out


# --- product structure -------------------------------------------------------

@dataclass(frozen=True)
class ProductDiagnostic:
    mode: str
    count: int
    max_alpha_gap: float = None
    empty_box: float = None
    insufficient: bool = False


EMPTY_BOX_GRID = 512


def largest_empty_square(points):
    """Side of the largest axis-parallel square in [0,1]^2 with no point inside.

    For each candidate left edge x0 (0 or a point's x) the points to its right
    are added in order of x; with the first c of them active, a square of side
    s in (x_c - x0, x_(c+1) - x0] fits iff some gap between consecutive active
    y-values (0 and 1 included) is at least s.  Gaps are tracked by deleting
    points from a sorted linked list, so each x0 costs linear time.
    """
    pts = sorted(set((float(x), float(y)) for x, y in points))
    if not pts:
        return 1.0
    xs = [p[0] for p in pts]
    best = 0.0
    for x0 in [0.0] + xs:
        right = [p for p in pts if p[0] > x0]
        lim = 1.0 - x0
        if not right:
            best = max(best, lim)
            continue
        # linked list over y-sorted order, with sentinels 0 and 1
        order = sorted(range(len(right)), key=lambda i: right[i][1])
        ys = [0.0] + [right[i][1] for i in order] + [1.0]
        pos = {i: k + 1 for k, i in enumerate(order)}
        prev = list(range(-1, len(ys) - 1))
        nxt = list(range(1, len(ys) + 1))
        gap_all = max(ys[k + 1] - ys[k] for k in range(len(ys) - 1))
        # G[c] = max gap with the first c points (x order) active
        G = [0.0] * (len(right) + 1)
        G[len(right)] = gap_all
        g = gap_all
        for c in range(len(right), 0, -1):
            k = pos[c - 1]
            p, q = prev[k], nxt[k]
            nxt[p], prev[q] = q, p
            g = max(g, ys[q] - ys[p])
            G[c - 1] = g
        dx = [p[0] - x0 for p in right]
        for c in range(len(right) + 1):
            low = dx[c - 1] if c > 0 else 0.0
            high = dx[c] if c < len(right) else math.inf
            s = min(high, G[c], lim)
            if s > low:
                best = max(best, s)
    return best


def empty_square_bound(points, G=EMPTY_BOX_GRID):
    """Upper bound on :func:`largest_empty_square` from a G x G occupancy grid.

    Any empty square of side s contains a block of at least sG - 2 whole empty
    cells, so if the largest all-empty block has k cells per side then
    s <= (k + 2) / G; one more cell is added for rounding at the border.
    """
    occ = np.zeros((G, G), dtype=bool)
    if len(points):
        idx = np.minimum((np.asarray(points, dtype=float) * G).astype(int), G - 1)
        idx = np.maximum(idx, 0)
        occ[idx[:, 0], idx[:, 1]] = True
    best = 0
    prev = np.zeros(G + 1, dtype=int)
    for i in range(G):
        row = np.zeros(G + 1, dtype=int)
        up = np.minimum(prev[1:], prev[:-1])
        for j in np.flatnonzero(~occ[i]):
            row[j + 1] = min(up[j], row[j]) + 1
        best = max(best, int(row.max()))
        prev = row
    return min(1.0, (best + 3) / G)


def product_structure_check(F, report=None, k=None):
    """Diagnostics for the shape of a Furstenberg sample when r = 2.

    ``locked`` (k = 2): the two boundary angles are tied by a conjugacy, here
    the identity, and the maximal |alpha1 - alpha2| is reported.  Otherwise
    an upper bound on the largest empty square in the (alpha1, alpha2) unit
    square is reported (lower means denser), see :func:`empty_square_bound`.
    """
    if len(F) == 0:
        raise EmptySample("Furstenberg sample is empty")
    if len(F.points[0][0]) != 2:
        raise ValueError("product structure diagnostics need r = 2")
    alphas = [(xi[0].alpha, xi[1].alpha) for xi, _ in F.points]
    distinct = sorted(set(alphas))
    gap = max(abs(a - b) for a, b in alphas)
    mode = "locked" if k == 2 else "product"
    if len(distinct) < 3:
        return ProductDiagnostic(mode, len(alphas), gap, None, True)
    box = empty_square_bound(distinct)
    return ProductDiagnostic(mode, len(alphas), gap, box, False)


# --- audits ------------------------------------------------------------------

def phi_conjugate_audit(E):
    """Violations of the type constraints on Galois-conjugate components.

    Conjugate components of one exact element share the trace's minimal
    polynomial, so: identity everywhere or nowhere; parabolic everywhere or
    nowhere; finite-order elliptic everywhere with one order or nowhere;
    otherwise each component is hyperbolic or elliptic of infinite order.
    """
    bad = []
    for rec in E:
        kinds = [c.kind for c in rec.tclass.per_component]
        kset = set(kinds)
        ok = True
        for special in (Kind.IDENTITY, Kind.PARABOLIC, Kind.ELLIPTIC_FINITE):
            if special in kset and kset != {special}:
                ok = False
        if Kind.ELLIPTIC_FINITE in kset:
            ok = ok and len({c.order for c in rec.tclass.per_component}) == 1
        if ok:
            continue
        bad.append((E.word_str(rec), str(rec.tclass)))
    return bad


def float_matrix_at(g, place):
    """Floating Mobius of an exact element, independent of the mpmath path.

    Entries come from integer Horner evaluation on dyadic root enclosures.
    """
    return g.at_place_float(place)


def exact_float_agreement(E):
    """Elements whose floating classification differs from the exact one."""
    bad = []
    r = E.config.r
    for rec in E:
        for j in range(1, r + 1):
            exact = rec.tclass.per_component[j - 1]
            try:
                fl = classify_float(float_matrix_at(rec.element, j))
            except Exception as exc:  # undecidable counts as a disagreement
                bad.append((E.word_str(rec), j, str(exact), type(exc).__name__))
                continue
            if fl.kind is not exact.kind or fl.order != exact.order:
                bad.append((E.word_str(rec), j, str(exact), str(fl)))
    return bad


def require_hyperbolic(cfg, max_length=6):
    """Shortest word giving a hyperbolic tuple; Unverifiable if none up to max_length."""
    E = enumerate_elements(cfg, max_length)
    for rec in E:
        if rec.tclass.kind is TupleKind.HYPERBOLIC:
            return E.word_str(rec)
    raise Unverifiable(f"no hyperbolic tuple among words of length <= {max_length}")
