from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from arithlimit.errors import DivisionByZero, NotIrreducible, NotTotallyReal
from arithlimit.numfield import (element_degree, embed, fe_arith, is_integral, make_field,
                                 minimal_polynomial, subfield_dimension)

Q2 = make_field("x^2 - 2")
CUBIC = make_field("x^3 - 3*x - 1")
QUARTIC = make_field("x^4 - 4*x^2 + 2")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elements(K):
    return st.lists(rationals, min_size=K.degree, max_size=K.degree).map(K.element)


def nonzero(K):
    return elements(K).filter(lambda x: not x.is_zero())


any_field = st.sampled_from([Q2, CUBIC, QUARTIC])


# --- make_field --------------------------------------------------------------

def test_sqrt2_field_places():
    assert Q2.degree == 2
    roots = sorted(float(p.mid) for p in Q2.places)
    assert roots == pytest.approx([-1.41421356, 1.41421356], abs=1e-8)
    # place 1 is the positive root by default
    assert float(Q2.places[0].mid) == pytest.approx(2 ** 0.5, abs=1e-8)


def test_complex_roots_rejected():
    with pytest.raises(NotTotallyReal):
        make_field("x^2 + 1")


def test_reducible_rejected():
    with pytest.raises(NotIrreducible):
        make_field("x^2 - 4")


def test_cubic_has_three_real_places():
    assert CUBIC.degree == 3
    mids = sorted(float(p.mid) for p in CUBIC.places)
    expect = sorted(float(r) for r in sympy.Poly(sympy.sympify("x**3 - 3*x - 1")).nroots())
    assert mids == pytest.approx(expect, abs=1e-6)


def test_phi1_override():
    K = make_field("x^2 - 2", phi1_root=1)
    assert K.gen.sign(1) < 0 and K.gen.sign(2) > 0


def test_place_enclosures_are_disjoint():
    for K in (Q2, CUBIC, QUARTIC):
        ps = K.places
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                assert not ps[i].overlaps(ps[j])


# --- arithmetic --------------------------------------------------------------

def test_spec_arithmetic():
    t = Q2.gen
    assert fe_arith("mul", t, t) == Q2(2)
    assert fe_arith("div", Q2(1), 1 + t) == t - 1
    assert (1 + t) * (t - 1) == Q2.one
    assert fe_arith("add", Q2(Fraction(1, 2)), Q2(Fraction(1, 3))) == Q2(Fraction(5, 6))


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        fe_arith("div", Q2.one, Q2.zero)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_field_axioms(data):
    K = data.draw(any_field)
    x, y, z = (data.draw(elements(K)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    if not y.is_zero():
        assert (x * y) / y == x


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_coordinates_are_reduced(data):
    K = data.draw(any_field)
    x = data.draw(elements(K))
    assert len(x.coords) == K.degree
    # reducing t^n by hand via sympy agrees
    t = sympy.Symbol("t")
    f = sympy.Poly(sum(sympy.Rational(c) * t ** (K.degree - i) for i, c in enumerate(K.minpoly)), t)
    px = sympy.Poly(sum(sympy.Rational(c) * t ** i for i, c in enumerate(x.coords)), t)
    sq = (px * px).rem(f)
    got = sympy.Poly(sum(sympy.Rational(c) * t ** i for i, c in enumerate((x * x).coords)), t)
    assert (sq - got).is_zero


# --- embeddings --------------------------------------------------------------

def test_embed_examples():
    t = Q2.gen
    a = embed(1 + t, 1)
    b = embed(1 + t, 2)
    assert float(a.mid) == pytest.approx(2.41421356, abs=1e-8)
    assert float(b.mid) == pytest.approx(-0.41421356, abs=1e-8)
    for p in (1, 2):
        iv = embed(Q2(5), p)
        assert iv.lo == iv.hi == 5


def test_embed_width_and_nesting():
    x = CUBIC.gen * 3 - Fraction(1, 7)
    wide = embed(x, 2, Fraction(1, 10 ** 6))
    narrow = embed(x, 2, Fraction(1, 10 ** 20))
    assert wide.width <= Fraction(1, 10 ** 6)
    assert narrow.width <= Fraction(1, 10 ** 20)
    assert wide.contains_interval(narrow)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_embed_respects_arithmetic(data):
    K = data.draw(any_field)
    x, y = data.draw(elements(K)), data.draw(elements(K))
    w = Fraction(1, 10 ** 15)
    for p in range(1, K.degree + 1):
        ex, ey = embed(x, p, w), embed(y, p, w)
        prods = [ex.lo * ey.lo, ex.lo * ey.hi, ex.hi * ey.lo, ex.hi * ey.hi]
        exy = embed(x * y, p, w)
        assert min(prods) <= exy.hi and exy.lo <= max(prods)
        esum = embed(x + y, p, w)
        assert ex.lo + ey.lo <= esum.hi and esum.lo <= ex.hi + ey.hi


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_conjugates_are_roots_of_minimal_polynomial(data):
    K = data.draw(any_field)
    x = data.draw(elements(K))
    d = element_degree(x)
    assert K.degree % d == 0
    # independent oracle: sympy minimal polynomial of the explicit algebraic number
    with mpmath.workdps(30):
        conj = sorted(x.mp(p) for p in range(1, K.degree + 1))
        mp_coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in minimal_polynomial(x)]
        roots = sorted(mpmath.polyroots(mp_coeffs, maxsteps=200, extraprec=200)) if d > 1 \
            else [-mp_coeffs[1]]
        roots = [mpmath.re(r) for r in roots]
        expect = sorted(r for r in roots for _ in range(K.degree // d))
        for a, b in zip(conj, expect):
            assert abs(a - b) < mpmath.mpf(10) ** -15 * (1 + abs(a))


def test_minimal_polynomial_matches_sympy():
    t = sympy.sqrt(2)
    x = Q2.element([Fraction(1, 3), 2])
    expect = sympy.Poly(sympy.minimal_polynomial(sympy.Rational(1, 3) + 2 * t, sympy.Symbol("x")))
    lc = expect.LC()
    assert [Fraction(str(c / lc)) for c in expect.all_coeffs()] == list(minimal_polynomial(x))


# --- degree, subfields, integrality ------------------------------------------

def test_element_degree_examples():
    t = Q2.gen
    assert element_degree(t) == 2
    assert element_degree(Q2(Fraction(3, 2))) == 1
    assert element_degree(t * t) == 1


def test_subfield_dimension_examples():
    t = Q2.gen
    assert subfield_dimension([2 + t]).dimension == 2
    assert subfield_dimension([Q2(3), Q2(Fraction(7, 2))]).dimension == 1
    assert subfield_dimension([t * t]).dimension == 1


def test_quartic_has_intermediate_subfield():
    t = QUARTIC.gen
    # t^2 = 2 +- sqrt 2 generates the quadratic subfield
    assert subfield_dimension([t * t]).dimension == 2
    assert subfield_dimension([t]).dimension == 4


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_subfield_dimension_monotone(data):
    K = data.draw(any_field)
    S = data.draw(st.lists(elements(K), min_size=1, max_size=3))
    extra = data.draw(elements(K))
    d = subfield_dimension(S).dimension
    assert K.degree % d == 0
    assert subfield_dimension(S + [extra]).dimension >= d
    assert subfield_dimension(S + [S[0] * S[-1]]).dimension == d


def test_is_integral_examples():
    t = Q2.gen
    assert is_integral(t)
    assert not is_integral(Q2(Fraction(1, 2)))
    assert not is_integral(t / 2)
    # (1 + sqrt 5) / 2 is integral but not in Z[t] for t = sqrt 5
    K5 = make_field("x^2 - 5")
    assert is_integral((1 + K5.gen) / 2)
