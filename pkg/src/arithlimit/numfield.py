"""Exact arithmetic in totally real number fields.

A field K = Q[t]/(f) is given by a monic irreducible polynomial f whose roots
are all real.  Elements are stored in power-basis coordinates
``c_0 + c_1 t + ... + c_{n-1} t^{n-1}`` as an integer numerator vector over a
common positive denominator, so multiplication is integer convolution
followed by reduction modulo f.

The n real embeddings (places) are certified: each root of f is held as a
dyadic isolating interval that is refined by bisection on demand.  Place 1
is the identity embedding; by default it is the largest root of f and the
remaining places follow in increasing order.

Polynomials passed in or returned as coefficient sequences use descending
order, like ``numpy.poly1d``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
import re

import mpmath

from .errors import (DivisionByZero, NotIrreducible, NotTotallyReal,
                     UnsupportedDegree, ParseError)

MAX_DEGREE = 4
MP_DPS = 40

__all__ = [
    "Interval", "NumberField", "FieldElement", "SubfieldProfile",
    "make_field", "fe_arith", "embed", "element_degree", "minimal_polynomial",
    "subfield_dimension", "is_integral", "parse_polynomial",
]


@dataclass(frozen=True)
class Interval:
    """Closed interval with rational endpoints."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def __contains__(self, value):
        return self.lo <= value <= self.hi

    def contains_interval(self, other):
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other):
        return not (self.hi < other.lo or other.hi < self.lo)

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __mul__(self, other):
        other = _as_interval(other)
        p = (self.lo * other.lo, self.lo * other.hi,
             self.hi * other.lo, self.hi * other.hi)
        return Interval(min(p), max(p))

    __rmul__ = __mul__

    def __float__(self):
        return float(self.mid)


def _as_interval(v):
    if isinstance(v, Interval):
        return v
    v = Fraction(v)
    return Interval(v, v)


# --- polynomial helpers (ascending Fraction coefficient lists) ---------------

def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deriv(p):
    return _trim([k * p[k] for k in range(1, len(p))] or [Fraction(0)])


def _prem(a, b):
    """Remainder of a modulo b over Q."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and any(a):
        q = a[-1] / lead
        shift = len(a) - 1 - db
        for k in range(len(b)):
            a[shift + k] -= q * b[k]
        a.pop()
        if not a:
            a = [Fraction(0)]
    return _trim(a)


def _sturm(p):
    seq = [p, _deriv(p)]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        r = _prem(seq[-2], seq[-1])
        if len(r) == 1 and r[0] == 0:
            break
        seq.append([-c for c in r])
    return seq


def _variations(seq, x):
    signs = [v for v in (_peval(p, x) for p in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def parse_polynomial(text, var="x"):
    """Parse ``"x^3 - 3*x - 1"`` into descending Fraction coefficients."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    terms = {}
    pos = 0
    if s[0] not in "+-":
        s = "+" + s
    for m in re.finditer(r"([+-])([^+-]+)", s):
        if m.start() != pos:
            raise ParseError(f"cannot parse polynomial {text!r}", column=pos + 1)
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        mm = re.fullmatch(
            rf"(?:(\d+(?:/\d+)?)(?:\*)?)?({re.escape(var)}(?:\^(\d+))?)?", body)
        if not mm or (mm.group(1) is None and mm.group(2) is None):
            raise ParseError(f"bad polynomial term {body!r}", column=m.start() + 1)
        coef = Fraction(mm.group(1)) if mm.group(1) else Fraction(1)
        if mm.group(2):
            deg = int(mm.group(3)) if mm.group(3) else 1
        else:
            deg = 0
        terms[deg] = terms.get(deg, Fraction(0)) + sign * coef
    if pos != len(s):
        raise ParseError(f"cannot parse polynomial {text!r}", column=pos + 1)
    top = max(terms)
    return tuple(terms.get(d, Fraction(0)) for d in range(top, -1, -1))


def format_polynomial(coeffs, var="x"):
    """Inverse of :func:`parse_polynomial` (descending coefficients)."""
    deg = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        c = Fraction(c)
        d = deg - i
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{a}*{mono}"
        else:
            body = str(a)
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class NumberField:
    """Totally real number field of degree at most 4 with certified places."""

    def __init__(self, minpoly, phi1_root=None, check=True):
        if isinstance(minpoly, str):
            minpoly = parse_polynomial(minpoly)
        desc = [Fraction(c) for c in minpoly]
        while desc and desc[0] == 0:
            desc.pop(0)
        if len(desc) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if desc[0] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.minpoly = tuple(desc)
        self.degree = n = len(desc) - 1
        if n > MAX_DEGREE:
            raise UnsupportedDegree(f"degree {n} exceeds the supported cap {MAX_DEGREE}")
        self._asc = list(reversed(desc))
        if check and n > 1 and not _is_irreducible(self.minpoly):
            raise NotIrreducible(f"{format_polynomial(self.minpoly)} is reducible over Q")
        roots = self._isolate_roots()
        if len(roots) != n:
            raise NotTotallyReal(
                f"{format_polynomial(self.minpoly)} has {n - len(roots)} non-real roots")
        if phi1_root is None:
            phi1_root = n
        if not 1 <= phi1_root <= n:
            raise ValueError(f"phi1_root must lie in 1..{n}")
        self.phi1_root = phi1_root
        order = [phi1_root - 1] + [i for i in range(n) if i != phi1_root - 1]
        self._levels = [[roots[i]] for i in order]
        # t^k for k = n .. 2n-2 reduced mod f, as integer rows over one denominator
        rows = []
        cur = [Fraction(0)] * n
        cur_full = [Fraction(0)] * (n - 1) + [Fraction(1)]  # t^(n-1)
        for _ in range(n - 1):
            top = cur_full[-1]
            cur = [Fraction(0)] + cur_full[:-1]
            cur = [cur[j] - top * self._asc[j] for j in range(n)]
            rows.append(cur)
            cur_full = cur
        den = 1
        for row in rows:
            for v in row:
                den = den * v.denominator // gcd(den, v.denominator)
        self._red_den = den
        self._red_rows = [[int(v * den) for v in row] for row in rows]
        self._mp_cache = {}
        self.zero = FieldElement(self, (0,) * n)
        self.one = FieldElement(self, (1,) + (0,) * (n - 1))
        self.gen = self.element([0, 1]) if n > 1 else self.element([-self._asc[0]])

    # --- construction helpers -------------------------------------------

    def element(self, coords):
        """Element from ascending power-basis coordinates (may be short)."""
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            raise ValueError("too many coordinates")
        coords += [Fraction(0)] * (self.degree - len(coords))
        den = 1
        for c in coords:
            den = den * c.denominator // gcd(den, c.denominator)
        return FieldElement(self, tuple(int(c * den) for c in coords), den)

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            return self.element(value)
        return self.element([value])

    def __repr__(self):
        return f"NumberField({format_polynomial(self.minpoly)!r}, phi1_root={self.phi1_root})"

    def __getstate__(self):
        return {"minpoly": self.minpoly, "phi1_root": self.phi1_root}

    def __setstate__(self, state):
        self.__init__(state["minpoly"], state["phi1_root"], check=False)

    @property
    def places(self):
        """Pairwise disjoint root enclosures of width <= 2^-40, place 1 first."""
        return [self.root_enclosure(p, Fraction(1, 2 ** 40))
                for p in range(1, self.degree + 1)]

    # --- roots -----------------------------------------------------------

    def _isolate_roots(self):
        f = self._asc
        n = self.degree
        if n == 1:
            r = -f[0]
            return [(r, r)]
        bound = 1 + max(abs(c) for c in f[:-1])
        e = 1
        while 2 ** e < bound:
            e += 1
        seq = _sturm(f)
        found = []
        stack = [(Fraction(-(2 ** e)), Fraction(2 ** e))]
        while stack:
            lo, hi = stack.pop()
            cnt = _variations(seq, lo) - _variations(seq, hi)
            if cnt == 0:
                continue
            if cnt == 1 and _peval(f, lo) != 0 and _peval(f, hi) != 0:
                found.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            stack.append((lo, mid))
            stack.append((mid, hi))
        found.sort()
        return found

    def _enclosure(self, place, level):
        """Root enclosure of ``place`` after ``level`` bisections (cached)."""
        levels = self._levels[place - 1]
        f = self._asc
        while len(levels) <= level:
            lo, hi = levels[-1]
            if lo == hi:
                levels.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            fm = _peval(f, mid)
            if fm == 0:
                levels.append((mid, mid))
            elif (fm > 0) == (_peval(f, lo) > 0):
                levels.append((mid, hi))
            else:
                levels.append((lo, mid))
        return levels[level]

    def root_enclosure(self, place, width):
        """Interval of width <= ``width`` around the root behind ``place``."""
        width = Fraction(width)
        level = 0
        while True:
            lo, hi = self._enclosure(place, level)
            if hi - lo <= width:
                return Interval(lo, hi)
            level += 8

    def _dyadic(self, place, level):
        lo, hi = self._enclosure(place, level)
        s = max(lo.denominator, hi.denominator).bit_length() - 1
        scale = 1 << s
        return int(lo * scale), int(hi * scale), s

    def mp_root(self, place):
        """The root behind ``place`` as an mpf at the module working precision."""
        key = (place, MP_DPS)
        v = self._mp_cache.get(key)
        if v is None:
            bits = int(MP_DPS * 3.33) + 20
            level = 0
            while True:
                lo, hi = self._enclosure(place, level)
                if hi - lo < Fraction(1, 2 ** bits):
                    break
                level += 16
            with mpmath.workdps(MP_DPS + 10):
                m = (lo + hi) / 2
                v = mpmath.mpf(m.numerator) / m.denominator
            self._mp_cache[key] = v
        return v


def _is_irreducible(desc):
    import sympy
    x = sympy.Symbol("x")
    coeffs = [sympy.Rational(c.numerator, c.denominator) for c in desc]
    return sympy.Poly(coeffs, x, domain=sympy.QQ).is_irreducible


class FieldElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "nums", "den")

    def __init__(self, field, nums, den=1):
        g = gcd(*nums, den)
        if den < 0:
            g = -g
        if g != 1:
            nums = tuple(v // g for v in nums)
            den //= g
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nums", tuple(nums))
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.field, self.nums, self.den))

    @property
    def coords(self):
        return tuple(Fraction(v, self.den) for v in self.nums)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return FieldElement(
                self.field,
                (other.numerator,) + (0,) * (self.field.degree - 1),
                other.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return FieldElement(self.field,
                                tuple(a + b for a, b in zip(self.nums, o.nums)), self.den)
        return FieldElement(
            self.field,
            tuple(a * o.den + b * self.den for a, b in zip(self.nums, o.nums)),
            self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.nums), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.field
        n = K.degree
        a, b = self.nums, o.nums
        conv = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        D = K._red_den
        low = conv[:n] if D == 1 else [c * D for c in conv[:n]]
        for k in range(n, 2 * n - 1):
            ck = conv[k]
            if ck:
                row = K._red_rows[k - n]
                for j in range(n):
                    low[j] += ck * row[j]
        return FieldElement(K, tuple(low), self.den * o.den * D)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("division by zero in number field")
        K = self.field
        n = K.degree
        # columns: coordinates of self * t^j
        cols = []
        cur = self
        for j in range(n):
            cols.append(cur.coords)
            cur = cur * K.gen if n > 1 else cur
        mat = [[cols[j][i] for j in range(n)] + [Fraction(int(i == 0))] for i in range(n)]
        sol = _solve(mat, n)
        return K.element(sol)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = self.field.one
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return (other.field is self.field and self.nums == other.nums
                    and self.den == other.den)
        if isinstance(other, (int, Fraction)):
            o = self._coerce(other)
            return self.nums == o.nums and self.den == o.den
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.nums[0], self.den))
        return hash((self.nums, self.den))

    def is_zero(self):
        return not any(self.nums)

    def is_rational(self):
        return not any(self.nums[1:])

    def rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def __repr__(self):
        return f"FieldElement({format_element(self)})"

    def __str__(self):
        return format_element(self)

    # --- embeddings ------------------------------------------------------

    def _interval_at(self, place, level):
        A, B, s = self.field._dyadic(place, level)
        nums = self.nums
        n = len(nums)
        lo = hi = nums[-1]
        for k in range(n - 2, -1, -1):
            p = (lo * A, lo * B, hi * A, hi * B)
            c = nums[k] << (s * (n - 1 - k))
            lo = min(p) + c
            hi = max(p) + c
        scale = self.den << (s * (n - 1))
        return Fraction(lo, scale), Fraction(hi, scale)

    def approx(self, place=1):
        """Fast float of phi_place(self) from a dyadic root enclosure.

        Horner runs on exact integers and only the final quotient is
        rounded.  The enclosure is narrow enough (relative to the size of the
        coordinates) that cancellation between large terms stays harmless.
        """
        if self.is_rational():
            return self.nums[0] / self.den
        bits = max(abs(c).bit_length() for c in self.nums)
        level = 96 + 2 * bits
        level += -level % 32  # share cached enclosure levels
        A, _, s = self.field._dyadic(place, level)
        acc = 0
        for k, c in enumerate(reversed(self.nums)):
            acc = acc * A + (c << (s * k))
        n = len(self.nums)
        return acc / (self.den << (s * (n - 1)))

    def embed(self, place=1, width=Fraction(1, 10 ** 12)):
        """Certified interval of width <= ``width`` containing phi_place(self)."""
        _check_place(self.field, place)
        if self.is_rational():
            v = Fraction(self.nums[0], self.den)
            return Interval(v, v)
        width = Fraction(width)
        level = 16
        while True:
            lo, hi = self._interval_at(place, level)
            if hi - lo <= width:
                return Interval(lo, hi)
            level += 16

    def sign(self, place=1):
        """Exact sign of phi_place(self)."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.nums[0] > 0 else -1
        level = 48
        while True:
            lo, hi = self._interval_at(place, level)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            level *= 2

    def mp(self, place=1):
        """phi_place(self) as an mpf (module working precision)."""
        with mpmath.workdps(MP_DPS + 10):
            if self.is_rational():
                return mpmath.mpf(self.nums[0]) / self.den
            x = self.field.mp_root(place)
            acc = mpmath.mpf(0)
            for c in reversed(self.nums):
                acc = acc * x + c
            return acc / self.den

    def to_float(self, place=1):
        if self.is_rational():
            return float(Fraction(self.nums[0], self.den))
        return float(self.mp(place))


def _check_place(field, place):
    if not 1 <= place <= field.degree:
        raise ValueError(f"place must lie in 1..{field.degree}, got {place}")


def _solve(mat, n):
    """Gauss-Jordan on an augmented n x (n+1) Fraction matrix."""
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            raise DivisionByZero("singular system")
        mat[col], mat[piv] = mat[piv], mat[col]
        pv = mat[col][col]
        mat[col] = [v / pv for v in mat[col]]
        for r in range(n):
            if r != col and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
    return [mat[r][n] for r in range(n)]


def format_element(x, var="t"):
    """Render an element in the config expression grammar."""
    coeffs = list(reversed(x.coords))
    s = format_polynomial(coeffs, var)
    return s


# --- module-level operations -----------------------------------------------

def make_field(minpoly, phi1_root=None):
    """Build a :class:`NumberField`; see the class for argument conventions."""
    return NumberField(minpoly, phi1_root)


def fe_arith(op, x, y):
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def embed(x, place, width=Fraction(1, 10 ** 12)):
    return x.embed(place, width)


class _Echelon:
    """Incremental row-echelon basis over Q."""

    def __init__(self, n):
        self.n = n
        self.rows = {}  # pivot column -> normalized row

    def reduce(self, v):
        v = list(v)
        for col in range(self.n):
            if v[col] != 0 and col in self.rows:
                f = v[col]
                row = self.rows[col]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def add(self, v):
        v = self.reduce(v)
        piv = next((i for i, a in enumerate(v) if a != 0), None)
        if piv is None:
            return False
        pv = v[piv]
        v = [a / pv for a in v]
        for col, row in list(self.rows.items()):
            if row[piv] != 0:
                f = row[piv]
                self.rows[col] = [a - f * b for a, b in zip(row, v)]
        self.rows[piv] = v
        return True

    def __len__(self):
        return len(self.rows)


def minimal_polynomial(x):
    """Monic minimal polynomial of ``x`` over Q, descending coefficients."""
    n = x.field.degree
    powers = [x.field.one]
    # find the first power that is a Q-combination of the previous ones
    while True:
        p = powers[-1] * x
        k = len(powers)
        # solve sum_{i<k} c_i x^i = x^k in coordinates (n equations, k unknowns)
        cols = [pw.coords for pw in powers]
        target = p.coords
        sol = _least_solution(cols, target, n)
        if sol is not None:
            asc = [-c for c in sol] + [Fraction(1)]
            return tuple(reversed(asc))
        powers.append(p)
        if len(powers) > n:
            raise AssertionError("minimal polynomial degree exceeded field degree")


def _least_solution(cols, target, n):
    """Solve cols * c = target exactly if consistent, else None."""
    k = len(cols)
    mat = [[cols[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    row = 0
    pivots = []
    for col in range(k):
        piv = next((r for r in range(row, n) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        pv = mat[row][col]
        mat[row] = [v / pv for v in mat[row]]
        for r in range(n):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
    for r in range(row, n):
        if mat[r][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        sol[col] = mat[r][k]
    return sol


def element_degree(x):
    return len(minimal_polynomial(x)) - 1


def is_integral(x):
    """True iff ``x`` is an algebraic integer."""
    return all(c.denominator == 1 for c in minimal_polynomial(x))


def in_power_basis_order(x):
    """True iff all power-basis coordinates of ``x`` are integers."""
    return x.den == 1


@dataclass(frozen=True)
class SubfieldProfile:
    generators: tuple
    dimension: int


def subfield_basis(elements):
    """A Q-basis (as field elements) of the subfield generated by ``elements``.

    The span of 1 is closed under multiplication by each generator until it
    stops growing; the result is the smallest unital multiplicatively closed
    subspace, which for a finite-dimensional domain is the subfield itself.
    """
    elements = tuple(elements)
    if not elements:
        raise ValueError("need at least one element")
    K = elements[0].field
    gens = [s for s in dict.fromkeys(elements) if not s.is_rational()]
    basis = _Echelon(K.degree)
    basis.add(K.one.coords)
    found = [K.one]
    queue = [K.one]
    while queue and len(basis) < K.degree:
        v = queue.pop()
        for s in gens:
            w = v * s
            if basis.add(w.coords):
                found.append(w)
                queue.append(w)
    return found


def subfield_dimension(elements):
    """Q-dimension of the subfield generated by ``elements``."""
    elements = tuple(elements)
    return SubfieldProfile(elements, len(subfield_basis(elements)))
