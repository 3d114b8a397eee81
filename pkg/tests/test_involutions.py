from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from csalg.algebra import (ContractViolation, LinMap, commutative_algebra_from_poly, identity_map,
                           matrix_algebra, matrix_to_elem, tensor_product)
from csalg.exactfield import QQ, Poly
from csalg.involutions import (ORTHOGONAL, SYMPLECTIC, Involution, classify_first_kind,
                               conjugated_transpose, pfaffian_char_poly, plus_minus_split,
                               quaternion_involution, symmetrize, transpose_conjugator,
                               transpose_involution, transpose_map)
from csalg.quaternion import make_quaternion
from csalg.splitting import reduced_char_poly
from csalg.wedderburn import elementary_decomposition


def _setup(n):
    A = matrix_algebra(QQ, n)
    return A, elementary_decomposition(A, n)


@pytest.mark.parametrize("n", [2, 3])
def test_transpose_is_orthogonal(n):
    A, D = _setup(n)
    J = transpose_involution(D)
    plus, minus = plus_minus_split(J)
    assert len(plus) == n * (n + 1) // 2
    assert len(minus) == n * (n - 1) // 2
    assert classify_first_kind(J) == ORTHOGONAL
    b, sign = transpose_conjugator(J, D)
    assert b == A.one.scale(b.coords[0]) and sign == 1


def test_transpose_map_on_matrices():
    A, D = _setup(3)
    t = transpose_map(D)
    m = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
    assert t(matrix_to_elem(A, 3, m)) == matrix_to_elem(A, 3, [list(r) for r in zip(*m)])


def test_standard_symplectic_on_m2():
    A, D = _setup(2)
    s = matrix_to_elem(A, 2, [[0, 1], [-1, 0]])
    J = conjugated_transpose(D, s)
    plus, minus = plus_minus_split(J)
    assert (len(plus), len(minus)) == (1, 3)
    assert classify_first_kind(J) == SYMPLECTIC
    b, sign = transpose_conjugator(J, D)
    assert sign == -1
    assert (b * s.scale(Fraction(-1))).scalar_part() is not None   # b in Q s


def test_diagonal_conjugator():
    A, D = _setup(2)
    d = matrix_to_elem(A, 2, [[1, 0], [0, 2]])
    J = conjugated_transpose(D, d)
    b, sign = transpose_conjugator(J, D)
    assert sign == 1
    assert b.scale(Fraction(1) / b.coords[0]) == d


def test_quaternion_conjugation():
    H = make_quaternion(QQ, -1, -1)
    J = quaternion_involution(H)
    plus, minus = plus_minus_split(J)
    assert (len(plus), len(minus)) == (1, 3)
    assert classify_first_kind(J) == SYMPLECTIC


def test_identity_on_commutative_field():
    K = commutative_algebra_from_poly(Poly.from_ints(QQ, [-2, 0, 1]))
    J = Involution(K, identity_map(K))
    plus, minus = plus_minus_split(J)
    assert len(plus) == K.dim and not minus


def test_rejects_non_involutions():
    A, D = _setup(2)
    # identity is not anti-multiplicative on M2
    with pytest.raises(ContractViolation):
        Involution(A, identity_map(A))
    # Int(c) o t with c neither symmetric nor antisymmetric squares to a nontrivial inner map
    c = matrix_to_elem(A, 2, [[1, 1], [0, 1]])
    with pytest.raises(ContractViolation):
        conjugated_transpose(D, c)


def test_rejects_second_kind():
    # conjugation of Q(sqrt 2) is an automorphism of a commutative algebra
    # (anti-multiplicative too) but it moves the center
    K = commutative_algebra_from_poly(Poly.from_ints(QQ, [-2, 0, 1]))
    m = LinMap(QQ, [[1, 0], [0, -1]], K, K)
    with pytest.raises(ContractViolation, match="second kind"):
        Involution(K, m)


def test_pfaffian_trivial_cases():
    H = make_quaternion(QQ, -1, -1)
    J = quaternion_involution(H)
    assert pfaffian_char_poly(J, H.one) == Poly.from_ints(QQ, [-1, 1])
    # conj (x) transpose on H (x) M2: symplectic tensor orthogonal is symplectic
    M2 = matrix_algebra(QQ, 2)
    A, emb_h, emb_m = tensor_product(H, M2)
    t = transpose_map(elementary_decomposition(M2, 2))
    imgs = [emb_h(J(h)) * emb_m(t(m)) for h in H.basis() for m in M2.basis()]
    JA = Involution(A, LinMap.from_images(A, A, imgs))
    assert classify_first_kind(JA) == SYMPLECTIC
    assert pfaffian_char_poly(JA, A.one) == Poly.from_ints(QQ, [-1, 1]) ** 2


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_pfaffian_squares_back(coords):
    A, D = _setup(2)
    s = matrix_to_elem(A, 2, [[0, 1], [-1, 0]])
    J = conjugated_transpose(D, s)
    a = symmetrize(J, A.elem(tuple(Fraction(c) for c in coords)))
    C = pfaffian_char_poly(J, a)
    assert C.degree == 1
    assert C * C == reduced_char_poly(a).P
    # Cpf(a) vanishes at a
    assert (a + A.scalar(C.coeff(0))).is_zero()


def test_involution_json_round_trip():
    A, D = _setup(2)
    J = transpose_involution(D)
    K = Involution.from_json(A, J.to_json())
    assert K.map == J.map
    assert J.to_json()["flags"]["first_kind"]
