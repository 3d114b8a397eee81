from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from csalg.algebra import ContractViolation, is_central_simple, matrix_algebra
from csalg.exactfield import GF, QQ, Tower
from csalg.quaternion import (ConicPoint, NotFoundWithinBound, ProvablyNone, QuaternionParams,
                              RecognizedQuaternion, conic_point, make_quaternion, norm_form, on_conic,
                              quat_conj, quat_norm, recognize_quaternion, split_from_conic, standard_iso)

small = st.integers(-4, 4)
quat = st.tuples(small, small, small, small)


def test_multiplication_table():
    Q = make_quaternion(QQ, 2, 3)
    a, b, g = Q.alpha, Q.beta, Q.gamma
    assert a * a == Q.scalar(Fraction(2))
    assert b * b == Q.scalar(Fraction(3))
    assert g * g == Q.scalar(Fraction(-6))
    assert a * b == g and b * a == -g
    assert a * g == b.scale(Fraction(2)) and g * a == -b.scale(Fraction(2))
    assert b * g == -a.scale(Fraction(3)) and g * b == a.scale(Fraction(3))
    assert is_central_simple(Q)


def test_params_rejected():
    with pytest.raises(ValueError):
        QuaternionParams(QQ, 0, 1)
    with pytest.raises(ValueError):
        QuaternionParams(GF(2), 1, 1)


@given(quat, quat)
def test_norm_is_multiplicative(x, y):
    Q = make_quaternion(QQ, 2, -3)
    p, q = Q.elem(x), Q.elem(y)
    assert quat_norm(p * q) == quat_norm(p) * quat_norm(q)
    assert quat_conj(p * q) == quat_conj(q) * quat_conj(p)


@pytest.mark.parametrize("kind,u,v", [("scaling", 2, 3), ("swap", None, None), ("twist", None, None)])
def test_standard_isos(kind, u, v):
    phi = standard_iso(kind, QuaternionParams(QQ, -1, 3), u, v)
    assert phi.flags["multiplicative"] and phi.flags["bijective"]


def test_tensor_relation():
    rel = standard_iso("tensor_b", QuaternionParams(QQ, -1, -1), p2=QuaternionParams(QQ, -1, 2))
    assert rel.q1_params.a == -1 and rel.q1_params.b == -2
    assert rel.split_units.verify()
    assert rel.q1_iso.flags["multiplicative"]


def test_conic_point_examples():
    pt = conic_point(QuaternionParams(QQ, 2, -1))
    assert pt == ConicPoint(Fraction(1), Fraction(1), Fraction(1))
    pt = conic_point(QuaternionParams(GF(5), 2, 3))
    assert on_conic(QuaternionParams(GF(5), 2, 3), pt)
    assert isinstance(conic_point(QuaternionParams(QQ, -1, -1)), ProvablyNone)
    # 3 x^2 + 5 y^2 = z^2 has no rational point (mod 3/5 obstruction); the search is bounded
    assert conic_point(QuaternionParams(QQ, 3, 5), height_bound=15) == NotFoundWithinBound(15)


@given(st.integers(1, 30), st.integers(1, 30))
def test_conic_point_is_on_conic(a, b):
    p = QuaternionParams(QQ, a, b)
    pt = conic_point(p, height_bound=20)
    if isinstance(pt, ConicPoint):
        assert on_conic(p, pt)
        assert norm_form(p, (pt.z, pt.x, pt.y, 0)) == 0


@pytest.mark.parametrize("a,b", [(1, 1), (2, -1), (1, -7), (5, 4)])
def test_split_from_conic(a, b):
    p = QuaternionParams(QQ, a, b)
    pt = conic_point(p)
    D = split_from_conic(p, pt)
    assert D.q == 2 and D.verify()


def test_split_from_conic_rejects_bad_point():
    with pytest.raises(ContractViolation):
        split_from_conic(QuaternionParams(QQ, 2, 3), ConicPoint(1, 1, 1))


def test_recognize_matrix_algebra():
    rec = recognize_quaternion(matrix_algebra(QQ, 2))
    assert isinstance(rec, RecognizedQuaternion)
    assert rec.iso.flags["multiplicative"] and rec.iso.flags["bijective"]


def test_recognize_twisted_quaternion():
    from csalg.algebra import rebase
    Q = make_quaternion(QQ, -1, 3)
    B, _ = rebase(Q, [Q.one, Q.alpha + Q.beta, Q.beta, Q.gamma])
    rec = recognize_quaternion(B)
    assert isinstance(rec, RecognizedQuaternion)
    x, y = rec.basis[1], rec.basis[2]
    assert (x * y + y * x).is_zero()


def test_conic_over_tower():
    K = Tower(QQ, (1, 0, 1))   # Q(i): -1 is a square
    p = QuaternionParams(K, K.from_int(-1), K.from_int(-1))
    pt = conic_point(p, height_bound=3)
    assert isinstance(pt, (ConicPoint, NotFoundWithinBound))
