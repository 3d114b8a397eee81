"""Splitting towers, degree, reduced characteristic polynomial, trace and norm.

:func:`splitting_algebra` adjoins roots of minimal polynomials until the corner
of the current matrix decomposition becomes 1-dimensional.  The tower built on
the way is not assumed to be a field: whenever an inversion fails the tower is
split along the exposed factor and the computation continues on the first
branch, with the event recorded in the history.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import linalg
from .algebra import (AlgElem, Algebra, ContractViolation, idempotent_from_element, left_mul_matrix,
                      minimal_polynomial, poly_eval, scalar_extension)
from .exactfield import (Field, Poly, ZeroDivisorFound, adjoin_root, field_to_json, split_tower)
from .wedderburn import (AlreadyInvertible, Corner, MatrixDecomposition, field_roots,
                         nontrivial_idempotent, refine_idempotents, trivial_decomposition)


def degree(A: Algebra) -> int:
    """The integer square root of ``dim A``."""
    r = math.isqrt(A.dim)
    if r * r != A.dim:
        raise ContractViolation(f"dimension {A.dim} is not a perfect square")
    return r


# --- r-th roots of polynomials ---------------------------------------------------


@dataclass
class NotAPower:
    poly: Poly
    r: int


def poly_root_power(Q: Poly, r: int):
    """The monic ``P`` with ``P^r == Q``, or :class:`NotAPower`.

    Coefficients are matched from the top: the coefficient of ``X^(rk-t)`` in
    ``P^r`` is ``r p_(k-t)`` plus terms in already known coefficients.
    """
    f = Q.field
    if r < 1:
        raise ValueError("r must be positive")
    if f.characteristic and r % f.characteristic == 0:
        raise ValueError(f"characteristic {f.characteristic} divides {r}")
    if not Q.is_monic() or Q.degree % r:
        return NotAPower(Q, r)
    k = Q.degree // r
    rinv = f.inv(f.from_int(r))
    coeffs = [f.zero] * k + [f.one]
    for t in range(1, k + 1):
        P = Poly(f, tuple(coeffs))
        known = (P ** r).coeff(r * k - t)
        coeffs[k - t] = f.mul(f.sub(Q.coeff(r * k - t), known), rinv)
    P = Poly(f, tuple(coeffs))
    if P ** r != Q:
        return NotAPower(Q, r)
    return P


# --- reduced characteristic polynomial ---------------------------------------------


@dataclass
class ReducedCharData:
    element: AlgElem
    P: Poly
    trd: object
    nrd: object


def char_poly(a: AlgElem) -> Poly:
    """Characteristic polynomial of left multiplication by ``a``."""
    A = a.algebra
    return Poly(A.field, tuple(linalg.charpoly(A.field, left_mul_matrix(a).matrix)))


def reduced_char_poly(a: AlgElem) -> ReducedCharData:
    """``P`` with ``P^deg(A)`` the characteristic polynomial of ``L_a``.

    With ``P = X^r - s_1 X^(r-1) + ... + (-1)^r s_r``, ``trd = s_1`` and ``nrd = s_r``.
    """
    A = a.algebra
    f = A.field
    r = degree(A)
    P = poly_root_power(char_poly(a), r)
    if isinstance(P, NotAPower):
        raise ContractViolation("characteristic polynomial is not an r-th power")
    if not poly_eval(P, a).is_zero():
        raise ContractViolation("reduced characteristic polynomial does not vanish at the element")
    trd = f.neg(P.coeff(r - 1))
    nrd = P.coeff(0) if r % 2 == 0 else f.neg(P.coeff(0))
    return ReducedCharData(a, P, trd, nrd)


def reduced_trace(a: AlgElem):
    return reduced_char_poly(a).trd


def reduced_norm(a: AlgElem):
    return reduced_char_poly(a).nrd


@dataclass
class NotInvertible:
    element: AlgElem
    nrd: object


def reduced_inverse(a: AlgElem):
    """``a^-1 = R(a) / Nrd(a)`` with ``(-1)^(r-1) P(T) = T R(T) - Nrd(a)``."""
    data = reduced_char_poly(a)
    A = a.algebra
    f = A.field
    if f.is_zero(data.nrd):
        return NotInvertible(a, data.nrd)
    r = degree(A)
    P = data.P if r % 2 == 1 else -data.P
    S = P + Poly(f, (data.nrd,))
    if not f.is_zero(S.coeff(0)):
        raise ContractViolation("inverse formula: constant term does not cancel")
    R = Poly(f, S.coeffs[1:])
    inv = poly_eval(R, a).scale(f.inv(data.nrd))
    if a * inv != A.one or inv * a != A.one:
        raise ContractViolation("reduced inverse failed verification")
    return inv


# --- splitting towers ----------------------------------------------------------------


@dataclass
class SplittingCertificate:
    """``A (x) K ~= M_q(K)`` witnessed by matrix units over the tower ``K``."""

    tower: Field
    history: list
    decomposition: MatrixDecomposition
    q: int
    algebra: Algebra                 # A extended to the tower
    status: str = "split"
    corner_dim: int = 1

    def verify(self) -> bool:
        return (self.status == "split" and self.decomposition.verify()
                and self.q * self.q * self.corner_dim == self.algebra.dim
                and self.q == self.decomposition.q)

    def to_json(self) -> dict:
        return {"tower": field_to_json(self.tower), "history": self.history, "q": self.q,
                "status": self.status, "decomposition": self.decomposition.to_json()}


def _map_elem(x: AlgElem, AK: Algebra, fn) -> AlgElem:
    return AlgElem(AK, tuple(fn(c) for c in x.coords))


def _probe_corner(B: Algebra) -> AlgElem | None:
    """Cheap search for a noninvertible element of a corner (no field extension)."""
    basis = B.basis()[1:]
    for b in basis:
        if idempotent_from_element(b).classification != "One":
            return b
    for b in basis:
        for r in field_roots(minimal_polynomial(b)):
            c = b - B.scalar(r)
            if not c.is_zero():
                return c
    return None


def splitting_algebra(A: Algebra, max_steps: int = 64, max_branches: int = 16,
                      probe: bool = True) -> SplittingCertificate:
    """A tower ``K`` over the base field and matrix units with ``A_K ~= M_q(K)``.

    Each step either finds a noninvertible element of the current corner
    directly, or adjoins a root ``y`` of the minimal polynomial of the first
    nonscalar corner basis element ``z`` and uses ``z - y``.  On a tower zero
    divisor the tower is split and the first branch is kept.  With
    ``probe=False`` the direct search is skipped and every step adjoins a root.
    """
    base = A.field
    K: Field = base
    AK = A
    D = trivial_decomposition(AK)
    pending: AlgElem | None = None
    history: list = []
    branches = 0
    for _ in range(max_steps):
        try:
            e11 = D.units[0][0]
            c = Corner(AK, e11)
            if pending is None:
                if c.dim == 1:
                    return SplittingCertificate(K, history, D, D.q, AK)
                z = _probe_corner(c.algebra) if probe else None
                if z is None:
                    zc = c.algebra.basis(1)
                    f = minimal_polynomial(zc).monic()
                    if f.degree < 2:
                        raise ContractViolation("corner is not central")
                    K2 = adjoin_root(K, f)
                    emb = (lambda x, K2=K2, K=K: K2.embed_from(K, x))
                    history.append({"event": "adjoin", "poly": f.to_str(), "degree": f.degree,
                                    "tower_degree": K2.total_degree})
                    AK2 = scalar_extension(A, K2)
                    D = D.map(lambda x, AK2=AK2, emb=emb: _map_elem(x, AK2, emb))
                    zlift = _map_elem(c.lift(zc), AK2, emb)
                    y = K2.gen
                    pending = zlift - D.units[0][0].scale(y)
                    K, AK = K2, AK2
                    continue
                pending = c.lift(z)
            zc = c.project(pending)
            e = nontrivial_idempotent(c.algebra, zc)
            pending = None
            if isinstance(e, AlreadyInvertible):
                continue
            e = c.lift(e)
            idems = [e, e11 - e] + [D.units[i][i] for i in range(1, D.q)]
            D = refine_idempotents(AK, idems)
        except ZeroDivisorFound as exc:
            branches += 1
            if branches > max_branches:
                break
            sp = split_tower(K, exc.witness)
            history.append({"event": "split", "level": exc.witness.field.name,
                            "factor": Poly(exc.witness.field.below, exc.witness.factor).to_str(),
                            "cofactor": Poly(exc.witness.field.below, sp.cofactor_poly).to_str(),
                            "kept": "first"})
            K = sp.first
            AK = scalar_extension(A, K)
            fn = sp.to_first
            D = D.map(lambda x, AK=AK, fn=fn: _map_elem(x, AK, fn))
            if pending is not None:
                pending = _map_elem(pending, AK, fn)
                if pending.is_zero():
                    pending = None
    c = Corner(AK, D.units[0][0])
    return SplittingCertificate(K, history, D, D.q, AK, status="budget exhausted", corner_dim=c.dim)
