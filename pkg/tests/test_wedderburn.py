import itertools

import pytest

from csalg.algebra import (ContractViolation, Defect, central_simple_check, commutative_algebra_from_poly,
                           direct_product, field_as_algebra, idempotent_from_element, inverse,
                           matrix_algebra, matrix_to_elem, random_invertible, tensor_product)
from csalg.exactfield import GF, QQ, Poly
from csalg.quaternion import make_quaternion
from csalg.wedderburn import (AlreadyInvertible, Corner, MatrixDecomposition, ProbeStrategy,
                              conjugate_decompositions, decomposition_to_iso, elementary_decomposition,
                              full_decompose, nontrivial_idempotent, peel_matrix_subalgebra,
                              probe_zero_divisor, rational_roots, refine_idempotents,
                              refine_to_matrix_decomposition, trivial_decomposition,
                              zero_divisor_from_defect)

M2 = matrix_algebra(QQ, 2)


def _is_nontrivial_idempotent(A, e):
    return e * e == e and not e.is_zero() and e != A.one


def test_nontrivial_idempotent_nilpotent_input():
    a = M2.basis(1)          # E12, nilpotent
    e = nontrivial_idempotent(M2, a)
    assert _is_nontrivial_idempotent(M2, e)


def test_nontrivial_idempotent_invertible_input():
    assert isinstance(nontrivial_idempotent(M2, M2.one), AlreadyInvertible)


def test_nontrivial_idempotent_rejects_zero():
    with pytest.raises(ContractViolation):
        nontrivial_idempotent(M2, M2.zero)


def test_nontrivial_idempotent_m3_rank_two_nilpotent():
    A = matrix_algebra(QQ, 3)
    a = matrix_to_elem(A, 3, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    e = nontrivial_idempotent(A, a)
    assert _is_nontrivial_idempotent(A, e)


def test_corner_of_matrix_unit():
    A = matrix_algebra(QQ, 3)
    D = elementary_decomposition(A, 3)
    c = Corner(A, D.units[0][0])
    assert c.dim == 1
    c2 = Corner(A, D.units[0][0] + D.units[1][1])
    assert c2.dim == 4


def test_refine_idempotents_builds_units():
    e = M2.basis(3)
    D = refine_idempotents(M2, [M2.one - e, e])
    assert D.q == 2 and D.verify()


def test_matrix_decomposition_json_round_trip():
    D = elementary_decomposition(M2, 2)
    E = MatrixDecomposition.from_json(M2, D.to_json())
    assert E.verify() and E.units == D.units


def test_verify_rejects_bad_units():
    D = elementary_decomposition(M2, 2)
    bad = MatrixDecomposition(M2, 2, [[D.units[0][0], D.units[0][1]], [D.units[0][1], D.units[1][1]]])
    assert not bad.verify()


@pytest.mark.parametrize("q", [2, 3])
def test_full_decompose_matrix_algebras(q):
    A = matrix_algebra(GF(5), q)
    res = full_decompose(A)
    assert res.q == q and res.corner.dim == 1 and res.status == "certified"
    assert res.iso.flags["multiplicative"] and res.iso.flags["bijective"]


def test_full_decompose_hamilton_is_division_relative_to_probes():
    res = full_decompose(make_quaternion(QQ, -1, -1))
    assert res.q == 1
    assert res.status == "division relative to probes"


def test_full_decompose_quaternion_over_f3_exhaustive():
    # every quaternion algebra over a finite field is split
    res = full_decompose(make_quaternion(GF(3), -1, -1))
    assert res.q == 2 and res.status == "certified"


def test_decomposition_to_iso_tensor_target():
    A, emb_m, _ = tensor_product(M2, make_quaternion(QQ, -1, -1))
    assert refine_to_matrix_decomposition(A).q == 1
    res = refine_to_matrix_decomposition(A, emb_m(M2.basis(1)))
    assert res.q == 2 and res.corner.dim == 4
    again = decomposition_to_iso(res.decomposition)
    assert again.iso.flags["bijective"]


def test_defect_gives_zero_divisors():
    QxQ = direct_product(field_as_algebra(QQ), field_as_algebra(QQ))
    d = central_simple_check(QxQ)
    assert isinstance(d, Defect)
    z = zero_divisor_from_defect(QxQ, d)
    assert not z.is_zero() and inverse(z) is None
    N = commutative_algebra_from_poly(Poly.from_ints(QQ, [0, 0, 1]))
    z = zero_divisor_from_defect(N, central_simple_check(N))
    assert not z.is_zero() and idempotent_from_element(z).classification == "Zero"


def test_probe_strategy_is_deterministic():
    A = matrix_algebra(QQ, 2)
    log1, log2 = [], []
    z1, _ = probe_zero_divisor(A, ProbeStrategy(seed=3), log1)
    z2, _ = probe_zero_divisor(A, ProbeStrategy(seed=3), log2)
    assert z1 == z2 and log1 == log2


def test_rational_roots():
    X = Poly.x(QQ)
    assert sorted(rational_roots((X - 2) * (2 * X + 1) * (X * X + 1))) == [-0.5, 2]


@pytest.mark.parametrize("field,q", [(QQ, 2), (GF(5), 3)])
def test_conjugate_decompositions(field, q, rng):
    A = matrix_algebra(field, q)
    E = elementary_decomposition(A, q)
    u = random_invertible(A, rng)
    ui = inverse(u)
    F = E.map(lambda x: u * x * ui)
    g = conjugate_decompositions(A, E, F)
    gi = inverse(g)
    for i, j in itertools.product(range(q), repeat=2):
        assert F.units[i][j] == g * E.units[i][j] * gi


def test_peel_matrix_subalgebra():
    H = make_quaternion(QQ, -1, -1)
    A, emb_m, _ = tensor_product(M2, H)
    D = elementary_decomposition(M2, 2).map(emb_m)
    res = peel_matrix_subalgebra(A, D)
    assert res.centralizer.dim == 4
    assert res.iso.flags["multiplicative"]


def test_trivial_decomposition():
    D = trivial_decomposition(M2)
    assert D.q == 1 and D.verify()
