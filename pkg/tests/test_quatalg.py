from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arithlimit.config import load_config
from arithlimit.errors import RamifiedPlace
from arithlimit.numfield import make_field
from arithlimit.quatalg import (QuaternionAlgebra, matrix_embedding, order_membership,
                                quat_mul, ramified_at, reduced_norm)

from conftest import CONFIG_DIR

Q = make_field("x - 0")
Q2 = make_field("x^2 - 2")
t = Q2.gen

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)
field_el = st.tuples(rationals, rationals).map(Q2.element)

ALGEBRAS = [QuaternionAlgebra(Q2, 3, t), QuaternionAlgebra(Q2, -1, 2 + t),
            QuaternionAlgebra(Q2, 1, 1), QuaternionAlgebra(Q2, t, -1)]


def quats(A):
    return st.tuples(field_el, field_el, field_el, field_el).map(lambda c: A(*c))


def test_basis_products():
    A = QuaternionAlgebra(Q2, 3, t)
    i, j, ij = A.i, A.j, A.ij
    assert quat_mul(i, j) == ij
    assert quat_mul(j, i) == -ij
    assert quat_mul(i, i) == A(A.a)
    assert quat_mul(j, j) == A(A.b)
    assert quat_mul(ij, ij) == A(-A.a * A.b)


def test_reduced_norm_formulas():
    A = QuaternionAlgebra(Q2, 3, t)
    assert reduced_norm(A.i) == -A.a
    assert reduced_norm(A(1, 1)) == 1 - A.a


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_norm_is_multiplicative(data):
    A = data.draw(st.sampled_from(ALGEBRAS))
    p, q = data.draw(quats(A)), data.draw(quats(A))
    assert reduced_norm(quat_mul(p, q)) == reduced_norm(p) * reduced_norm(q)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_multiplication_is_associative(data):
    A = data.draw(st.sampled_from(ALGEBRAS))
    p, q, s = (data.draw(quats(A)) for _ in range(3))
    assert quat_mul(quat_mul(p, q), s) == quat_mul(p, quat_mul(q, s))


def test_ramification_examples():
    H = QuaternionAlgebra(Q, -1, -1)
    assert ramified_at(H, 1)
    M = QuaternionAlgebra(Q2, 1, 1)
    assert not ramified_at(M, 1) and not ramified_at(M, 2)
    B = QuaternionAlgebra(Q2, t, -1)
    assert ramified_at(B, 2) and not ramified_at(B, 1)
    assert B.unramified_places == [1]


def test_embedding_at_ramified_place_fails():
    B = QuaternionAlgebra(Q2, t, -1)
    with pytest.raises(RamifiedPlace):
        matrix_embedding(B(1, 1), 2)


def test_embedding_examples():
    A = QuaternionAlgebra(Q2, 3, t)
    for p in (1, 2):
        assert np.allclose(matrix_embedding(A(1), p), np.eye(2))
    al = 3 ** 0.5
    assert np.allclose(matrix_embedding(A.i, 1), np.diag([al, -al]))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_embedding_is_homomorphism(data):
    A = data.draw(st.sampled_from(ALGEBRAS))
    p, q = data.draw(quats(A)), data.draw(quats(A))
    for place in A.unramified_places:
        lhs = matrix_embedding(quat_mul(p, q), place)
        rhs = matrix_embedding(p, place) @ matrix_embedding(q, place)
        assert np.allclose(lhs, rhs, rtol=1e-9, atol=1e-9)
        det = np.linalg.det(matrix_embedding(p, place))
        assert det == pytest.approx(reduced_norm(p).to_float(place), rel=1e-9, abs=1e-9)


def test_split_algebra_spans_matrices():
    M = QuaternionAlgebra(Q2, 1, 1)
    mats = [matrix_embedding(q, 1).ravel() for q in (M(1), M.i, M.j, M.ij)]
    assert np.linalg.matrix_rank(np.array(mats)) == 4


def test_order_membership():
    A = QuaternionAlgebra(Q2, 3, t)
    assert order_membership(A(1))
    assert not order_membership(A(Fraction(1, 2)))


def test_shipped_quaternion_generators_are_units():
    cfg = load_config(CONFIG_DIR / "quaternion.cfg")
    for q in cfg.group.generators:
        assert order_membership(q)
        assert reduced_norm(q) == 1
