from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from csalg.algebra import ContractViolation, commutative_algebra_from_poly, matrix_algebra, matrix_to_elem
from csalg.exactfield import GF, QQ, Poly, Tower
from csalg.quaternion import make_quaternion
from csalg.splitting import (NotAPower, NotInvertible, degree, poly_root_power, reduced_char_poly,
                             reduced_inverse, reduced_norm, reduced_trace, splitting_algebra)

H = make_quaternion(QQ, -1, -1)
small = st.integers(-5, 5)


def test_degree():
    assert degree(H) == 2
    assert degree(matrix_algebra(QQ, 3)) == 3
    with pytest.raises(ContractViolation):
        degree(commutative_algebra_from_poly(Poly.from_ints(QQ, [-2, 0, 1])))


@given(st.lists(small, min_size=1, max_size=3), st.integers(2, 3))
def test_poly_root_power_recovers(coeffs, r):
    P = Poly(QQ, tuple(Fraction(c) for c in coeffs) + (Fraction(1),))
    assert poly_root_power(P ** r, r) == P


def test_poly_root_power_not_a_power():
    assert isinstance(poly_root_power(Poly.from_ints(QQ, [1, 0, 0, 0, 1]), 2), NotAPower)
    with pytest.raises(ValueError):
        poly_root_power(Poly.from_ints(GF(3), [1, 0, 0, 1]), 3)


@given(small, small, small, small)
def test_quaternion_reduced_char_poly(x, y, z, w):
    # for h(a,b): P = X^2 - 2x X + (x^2 - a y^2 - b z^2 + a b w^2)
    a, b = -1, -1
    q = H.elem(tuple(Fraction(v) for v in (x, y, z, w)))
    data = reduced_char_poly(q)
    nrd = x * x - a * y * y - b * z * z + a * b * w * w
    assert data.P == Poly.from_ints(QQ, [nrd, -2 * x, 1])
    assert data.trd == 2 * x and data.nrd == nrd


def test_reduced_char_poly_value_example():
    q = H.elem((1, 2, 3, 4))
    assert reduced_char_poly(q).P.to_str() == "X^2 - 2*X + 30"


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_matrix_reduced_char_poly_is_charpoly(m):
    A = matrix_algebra(QQ, 3)
    a = matrix_to_elem(A, 3, m)
    lam = sympy.Symbol("lam")
    ref = [Fraction(int(c)) for c in reversed(sympy.Matrix(m).charpoly(lam).all_coeffs())]
    assert list(reduced_char_poly(a).P.coeffs) == ref
    assert reduced_norm(a) == Fraction(int(sympy.Matrix(m).det()))
    assert reduced_trace(a) == sum(m[i][i] for i in range(3))


def test_reduced_inverse():
    x = H.elem((1, 1, 0, 0))
    assert reduced_inverse(x) == H.elem((Fraction(1, 2), Fraction(-1, 2), 0, 0))
    M2 = matrix_algebra(QQ, 2)
    assert isinstance(reduced_inverse(M2.basis(3)), NotInvertible)


def test_split_m2_over_base_field():
    cert = splitting_algebra(matrix_algebra(QQ, 2))
    assert cert.tower == QQ and cert.q == 2 and cert.verify()


def test_split_hamilton_adjoins_i():
    cert = splitting_algebra(H)
    assert cert.q == 2 and cert.verify()
    assert isinstance(cert.tower, Tower) and cert.tower.rel == (1, 0, 1)
    assert [e["event"] for e in cert.history] == ["adjoin"]


def test_split_with_tower_zero_divisor():
    # h(1,1) without probing adjoins a root of x^2 - 1: not a field
    cert = splitting_algebra(make_quaternion(QQ, 1, 1), probe=False)
    assert cert.q == 2 and cert.verify()


def test_split_m3_without_probing():
    cert = splitting_algebra(matrix_algebra(QQ, 3), probe=False)
    assert cert.q == 3 and cert.verify()
    assert any(e["event"] == "split" for e in cert.history)


def test_split_budget_exhausted():
    cert = splitting_algebra(H, max_steps=0)
    assert cert.status == "budget exhausted" and not cert.verify()


def test_certificate_json_keys():
    obj = splitting_algebra(H).to_json()
    assert set(obj) == {"tower", "history", "q", "status", "decomposition"}
