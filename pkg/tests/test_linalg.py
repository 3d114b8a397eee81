from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from csalg import linalg
from csalg.exactfield import GF, QQ

small = st.integers(-4, 4)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def qmat(m):
    return [[Fraction(x) for x in r] for r in m]


@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
def test_rank_matches_sympy(m):
    assert linalg.rank(QQ, qmat(m), len(m[0])) == sympy.Matrix(m).rank()


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n)))
def test_det_and_charpoly_match_sympy(m):
    n = len(m)
    M = sympy.Matrix(m)
    assert linalg.det(QQ, qmat(m)) == Fraction(int(M.det()))
    lam = sympy.Symbol("lam")
    ref = [Fraction(int(c)) for c in reversed(M.charpoly(lam).all_coeffs())]
    assert linalg.charpoly(QQ, qmat(m)) == ref
    assert len(ref) == n + 1


@given(st.integers(1, 4).flatmap(lambda r: matrices(r, 5)))
def test_kernel_vectors_are_annihilated(m):
    M = qmat(m)
    ker = linalg.kernel(QQ, M, 5)
    assert len(ker) == 5 - linalg.rank(QQ, M, 5)
    for v in ker:
        assert all(x == 0 for x in linalg.mat_vec(QQ, M, v))


def test_modp_rank_and_solve():
    F = GF(5)
    m = [[1, 0, 3], [2, 4, 1], [3, 1, 1]]
    assert int(sympy.Matrix(m).det()) % 5 != 0
    assert linalg.rank(F, m, 3) == 3
    assert linalg.rank(F, [[1, 2, 3], [2, 4, 1], [3, 1, 4]], 3) == 1
    assert linalg.rank(F, [[1, 2, 3], [2, 4, 0], [0, 0, 1]], 3) == 2
    x = linalg.solve(F, m, [1, 0, 0], 3)
    assert linalg.mat_vec(F, m, x) == [1, 0, 0]


def test_solve_inconsistent_returns_none():
    m = qmat([[1, 1], [2, 2]])
    assert linalg.solve(QQ, m, [Fraction(1), Fraction(3)], 2) is None


def test_span_coordinates():
    basis = qmat([[1, 1, 0], [0, 1, 1]])
    sc = linalg.SpanCoordinates(QQ, basis)
    assert sc([Fraction(2), Fraction(5), Fraction(3)]) == [2, 3]
    assert not sc.contains([Fraction(1), Fraction(0), Fraction(0)])
    with pytest.raises(ValueError):
        sc([Fraction(1), Fraction(0), Fraction(0)])


def test_full_rank_certificate_on_identity():
    I = linalg.identity(QQ, 30)
    assert linalg.rank(QQ, I, 30) == 30


def test_independent_subset():
    vs = qmat([[1, 0], [2, 0], [0, 1]])
    assert linalg.independent_subset(QQ, vs) == [0, 2]
