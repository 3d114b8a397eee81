"""Involutions of the first kind.

An involution here is an F-linear map ``J`` with ``J(ab) = J(b) J(a)`` and
``J^2 = Id`` that fixes the center pointwise.  On a central simple algebra of
degree ``n`` the fixed space ``A+`` has dimension ``n(n+1)/2`` (orthogonal) or
``n(n-1)/2`` (symplectic).
"""

from __future__ import annotations

from . import linalg
from .algebra import (AlgElem, Algebra, ContractViolation, LinMap, center, identity_map, inverse,
                      left_mul_matrix, right_mul_matrix)
from .exactfield import Poly
from .splitting import NotAPower, degree, poly_root_power, reduced_char_poly
from .wedderburn import MatrixDecomposition

ORTHOGONAL = "Orthogonal"
SYMPLECTIC = "Symplectic"


class Involution:
    """A verified first-kind involution of ``algebra``.

    Construction checks every flag on the basis and raises
    :class:`ContractViolation` on the first failure.  Maps that move the
    center (second kind) are rejected.
    """

    def __init__(self, algebra: Algebra, map: LinMap, check: bool = True):
        if map.src is None:
            map.src = algebra
        if map.dst is None:
            map.dst = algebra
        self.algebra = algebra
        self.map = map
        self.flags = {"additive": True}
        if check:
            self._verify()

    def _verify(self):
        A, J = self.algebra, self.map
        if J.shape != (A.dim, A.dim):
            raise ContractViolation("involution must be a square map on the algebra")
        ok = J.check_anti_multiplicative()
        self.flags["anti_multiplicative"] = ok
        if not ok:
            raise ContractViolation("map is not anti-multiplicative")
        sq = J.compose(J)
        ok = sq == identity_map(A)
        self.flags["involutive"] = ok
        if not ok:
            raise ContractViolation("map does not square to the identity")
        ok = all(J(z) == z for z in center(A))
        self.flags["first_kind"] = ok
        if not ok:
            raise ContractViolation("map moves the center (second kind)")

    def __call__(self, a: AlgElem) -> AlgElem:
        return self.map(a)

    def to_json(self) -> dict:
        return {"matrix": self.map.to_json(), "flags": dict(self.flags)}

    @classmethod
    def from_json(cls, A: Algebra, obj) -> "Involution":
        rows = obj["matrix"] if isinstance(obj, dict) else obj
        m = [[A.field.parse(x) for x in row] for row in rows]
        return cls(A, LinMap(A.field, m, A, A))

    def __repr__(self):
        return f"Involution(dim={self.algebra.dim}, flags={self.flags})"


def _eigenspace(J: Involution, sign: int) -> list:
    A = J.algebra
    f = A.field
    s = f.one if sign > 0 else f.neg(f.one)
    rows = [[f.sub(x, s if i == j else f.zero) for j, x in enumerate(row)]
            for i, row in enumerate(J.map.matrix)]
    return [AlgElem(A, tuple(v)) for v in linalg.kernel(f, rows, A.dim)]


def plus_minus_split(J: Involution) -> tuple:
    """Bases of ``A+ = ker(J - 1)`` and ``A- = ker(J + 1)``."""
    A = J.algebra
    if A.field.characteristic == 2:
        raise ContractViolation("the +/- split needs characteristic != 2")
    plus, minus = _eigenspace(J, 1), _eigenspace(J, -1)
    if len(plus) + len(minus) != A.dim:
        raise ContractViolation("eigenspaces do not fill the algebra")
    for x in plus:
        if J(x) != x:
            raise ContractViolation("A+ basis vector is not fixed")
    for x in minus:
        if J(x) != -x:
            raise ContractViolation("A- basis vector is not negated")
    return plus, minus


def classify_first_kind(J: Involution) -> str:
    n = degree(J.algebra)
    plus, _ = plus_minus_split(J)
    d = len(plus)
    if d == n * (n + 1) // 2:
        return ORTHOGONAL
    if d == n * (n - 1) // 2:
        return SYMPLECTIC
    raise ContractViolation(f"dim A+ = {d} matches neither {n * (n + 1) // 2} nor {n * (n - 1) // 2}")


# --- transpose relative to matrix units -----------------------------------------


def transpose_map(D: MatrixDecomposition) -> LinMap:
    """``t(e_ij) = e_ji`` for a decomposition with 1-dimensional corner."""
    A = D.algebra
    q = D.q
    if q * q != A.dim:
        raise ContractViolation("transpose needs a full set of q^2 matrix units")
    f = A.field
    flat = [D.units[i][j] for i in range(q) for j in range(q)]
    coords = linalg.SpanCoordinates(f, [u.coords for u in flat])
    images = []
    for b in A.basis():
        c = coords(b.coords)
        img = A.zero
        for i in range(q):
            for j in range(q):
                x = c[i * q + j]
                if not f.is_zero(x):
                    img = img + D.units[j][i].scale(x)
        images.append(img)
    return LinMap.from_images(A, A, images)


def transpose_involution(D: MatrixDecomposition) -> Involution:
    return Involution(D.algebra, transpose_map(D))


def conjugated_transpose(D: MatrixDecomposition, s: AlgElem) -> Involution:
    """``Int(s) o t``; an involution when ``s`` is symmetric or antisymmetric."""
    A = D.algebra
    sinv = inverse(s)
    if sinv is None:
        raise ContractViolation("conjugating element is not invertible")
    t = transpose_map(D)
    return Involution(A, LinMap.from_images(A, A, [s * t(b) * sinv for b in A.basis()]))


def inner_twist(J: Involution | LinMap, u: AlgElem, check: bool = True):
    """``Int(u) o J``."""
    Jm = J.map if isinstance(J, Involution) else J
    A = u.algebra
    uinv = inverse(u)
    if uinv is None:
        raise ContractViolation("twisting element is not invertible")
    m = LinMap.from_images(A, A, [u * Jm(b) * uinv for b in A.basis()])
    return Involution(A, m, check) if check else m


def quaternion_involution(Q: Algebra) -> Involution:
    """Canonical conjugation ``alpha, beta, gamma -> -alpha, -beta, -gamma``."""
    from .quaternion import quat_conj
    return Involution(Q, LinMap.from_images(Q, Q, [quat_conj(b) for b in Q.basis()]))


def transpose_conjugator(J: Involution, D: MatrixDecomposition) -> tuple:
    """``(b, sign)`` with ``J = Int(b) o t`` and ``t(b) = sign * b``.

    ``b`` spans the solutions of ``J(a) b = b t(a)`` over all basis ``a``.
    """
    A = J.algebra
    f = A.field
    t = transpose_map(D)
    rows = []
    for k in range(A.dim):
        L = left_mul_matrix(J.map.image(k)).matrix
        R = right_mul_matrix(t.image(k)).matrix
        for rl, rr in zip(L, R):
            row = [f.sub(x, y) for x, y in zip(rl, rr)]
            if any(not f.is_zero(x) for x in row):
                rows.append(row)
    ker = linalg.kernel(f, rows, A.dim)
    if not ker:
        raise ContractViolation("no conjugator: J is not Int(b) o t for these matrix units")
    if len(ker) != 1:
        raise ContractViolation(f"conjugator space has dimension {len(ker)}, expected 1")
    b = AlgElem(A, tuple(ker[0]))
    binv = inverse(b)
    if binv is None:
        raise ContractViolation("conjugator is not invertible")
    for k in range(A.dim):
        if J.map.image(k) != b * t.image(k) * binv:
            raise ContractViolation("J != Int(b) o t on a basis element")
    tb = t(b)
    if tb == b:
        sign = 1
    elif tb == -b:
        sign = -1
    else:
        raise ContractViolation("conjugator is neither symmetric nor antisymmetric")
    expected = ORTHOGONAL if sign == 1 else SYMPLECTIC
    if classify_first_kind(J) != expected:
        raise ContractViolation("conjugator symmetry disagrees with the classification")
    return b, sign


def pfaffian_char_poly(J: Involution, a: AlgElem) -> Poly:
    """The monic ``Cpf`` with ``Cpf^2`` the reduced characteristic polynomial of ``a``."""
    if classify_first_kind(J) != SYMPLECTIC:
        raise ContractViolation("Pfaffian needs a symplectic involution")
    if J(a) != a:
        raise ContractViolation("element is not symmetric under J")
    P = reduced_char_poly(a).P
    C = poly_root_power(P, 2)
    if isinstance(C, NotAPower):
        raise ContractViolation("reduced characteristic polynomial is not a square")
    if C * C != P:
        raise ContractViolation("Cpf^2 != Cprd")
    return C


def is_symmetric(J: Involution, a: AlgElem) -> bool:
    return J(a) == a


def symmetrize(J: Involution, a: AlgElem) -> AlgElem:
    """``(a + J(a)) / 2``."""
    f = J.algebra.field
    return (a + J(a)).scale(f.inv(f.from_int(2)))
