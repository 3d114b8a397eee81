"""Quaternion algebras ``h(a, b)``: construction, norm, standard isomorphisms,
conic points, explicit splitting and recognition of 4-dimensional central algebras.

The basis is ``(1, alpha, beta, gamma)`` with ``alpha^2 = a``, ``beta^2 = b`` and
``gamma = alpha beta = -beta alpha``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import (AlgElem, Algebra, ContractViolation, LinMap, algebra_from_basis, centralizer,
                      minimal_polynomial, tensor_product)
from .exactfield import Field, PrimeField, Rationals, Tower, ZeroDivisorWitness
from .wedderburn import (AlreadyInvertible, MatrixDecomposition, PeelResult, nontrivial_idempotent,
                         peel_matrix_subalgebra, refine_idempotents)


def _require_odd_characteristic(field: Field) -> None:
    if field.characteristic == 2:
        raise ValueError("quaternion algebras need characteristic different from 2")


@dataclass(frozen=True)
class QuaternionParams:
    field: Field
    a: object
    b: object

    def __post_init__(self):
        _require_odd_characteristic(self.field)
        object.__setattr__(self, "a", self.field.convert(self.a))
        object.__setattr__(self, "b", self.field.convert(self.b))
        if self.field.is_zero(self.a) or self.field.is_zero(self.b):
            raise ValueError("quaternion parameters must be nonzero")

    def __str__(self):
        f = self.field
        return f"h({f.to_str(self.a)}, {f.to_str(self.b)})"


class QuaternionAlgebra(Algebra):
    """``h(a, b)`` on the basis ``1, alpha, beta, gamma``."""

    def __init__(self, params: QuaternionParams, check: bool = True):
        f, a, b = params.field, params.a, params.b
        one = f.one
        ab = f.mul(a, b)
        t = {  # (i, j) -> (l, coefficient)
            (1, 1): (0, a), (2, 2): (0, b), (3, 3): (0, f.neg(ab)),
            (1, 2): (3, one), (2, 1): (3, f.neg(one)),
            (1, 3): (2, a), (3, 1): (2, f.neg(a)),
            (2, 3): (1, f.neg(b)), (3, 2): (1, b),
        }
        prod = []
        for i in range(4):
            row = []
            for j in range(4):
                if i == 0:
                    row.append(((j, one),))
                elif j == 0:
                    row.append(((i, one),))
                else:
                    row.append((t[(i, j)],))
            prod.append(row)
        super().__init__(f, prod, ["1", "alpha", "beta", "gamma"], check)
        self.params = params

    @property
    def alpha(self) -> AlgElem:
        return self.basis(1)

    @property
    def beta(self) -> AlgElem:
        return self.basis(2)

    @property
    def gamma(self) -> AlgElem:
        return self.basis(3)


def make_quaternion(p_or_field, a=None, b=None, check: bool = True) -> QuaternionAlgebra:
    """``make_quaternion(params)`` or ``make_quaternion(field, a, b)``."""
    if isinstance(p_or_field, QuaternionParams):
        params = p_or_field
    else:
        params = QuaternionParams(p_or_field, a, b)
    return QuaternionAlgebra(params, check)


def quat_conj(q: AlgElem) -> AlgElem:
    f = q.algebra.field
    x, y, z, w = q.coords
    return AlgElem(q.algebra, (x, f.neg(y), f.neg(z), f.neg(w)))


def norm_form(params: QuaternionParams, coords) -> object:
    """``x^2 - a y^2 - b z^2 + a b w^2``."""
    f, a, b = params.field, params.a, params.b
    x, y, z, w = coords
    sq = lambda t: f.mul(t, t)  # noqa: E731
    val = f.sub(sq(x), f.mul(a, sq(y)))
    val = f.sub(val, f.mul(b, sq(z)))
    return f.add(val, f.mul(f.mul(a, b), sq(w)))


def quat_norm(q: AlgElem):
    """``q * conj(q)`` read off the unit coordinate, cross-checked with the norm form."""
    A = q.algebra
    if not isinstance(A, QuaternionAlgebra):
        raise TypeError("quat_norm needs an element of a quaternion algebra")
    p = q * quat_conj(q)
    n = p.scalar_part()
    if n is None or n != norm_form(A.params, q.coords):
        raise ContractViolation("q * conj(q) is not the norm form value")
    return n


# --- standard isomorphisms -----------------------------------------------------


def _iso_from_generators(src: QuaternionAlgebra, dst: Algebra, ia: AlgElem, ib: AlgElem) -> LinMap:
    phi = LinMap.from_images(src, dst, [dst.one, ia, ib, ia * ib])
    if not phi.check_multiplicative() or not phi.check_bijective():
        raise ContractViolation("generator images do not define an isomorphism")
    return phi


@dataclass
class TensorRelation:
    """``h(a,b) (x) h(a',b')`` split as ``Q1 (x) M_2`` inside the 16-dimensional tensor."""

    tensor: Algebra
    split_units: MatrixDecomposition
    peel: PeelResult
    q1_params: QuaternionParams
    q1_iso: LinMap            # h(q1_params) -> the peeled centralizer
    split_params: QuaternionParams


def standard_iso(kind: str, p: QuaternionParams, u=None, v=None, p2: QuaternionParams | None = None):
    """Verified isomorphisms between quaternion algebras.

    ``kind`` is one of ``"scaling"`` (``h(a,b) -> h(u^2 a, v^2 b)``), ``"swap"``
    (``h(a,b) -> h(b,a)``), ``"twist"`` (``h(a,b) -> h(a,-ab)``), or
    ``"tensor_a"`` / ``"tensor_b"`` for the tensor relations
    ``h(a,b) (x) h(a',b) ~ h(aa',b) (x) M_2`` and
    ``h(a,b) (x) h(a,b') ~ h(a,bb') (x) M_2`` (``p2`` gives the second factor).
    """
    f = p.field
    A = make_quaternion(p)
    if kind == "scaling":
        u = f.convert(1 if u is None else u)
        v = f.convert(1 if v is None else v)
        B = make_quaternion(f, f.mul(f.mul(u, u), p.a), f.mul(f.mul(v, v), p.b))
        return _iso_from_generators(A, B, B.alpha.scale(f.inv(u)), B.beta.scale(f.inv(v)))
    if kind == "swap":
        B = make_quaternion(f, p.b, p.a)
        return _iso_from_generators(A, B, B.beta, B.alpha)
    if kind == "twist":
        B = make_quaternion(f, p.a, f.neg(f.mul(p.a, p.b)))
        return _iso_from_generators(A, B, B.alpha, B.gamma.scale(f.inv(p.a)))
    if kind in ("tensor_a", "tensor_b"):
        if p2 is None:
            raise ValueError("tensor relations need the second quaternion")
        return _tensor_relation(kind, p, p2)
    raise ValueError(f"unknown isomorphism kind {kind!r}")


def _tensor_relation(kind: str, p: QuaternionParams, p2: QuaternionParams) -> TensorRelation:
    f = p.field
    A, A2 = make_quaternion(p), make_quaternion(p2)
    T, ea, eb = tensor_product(A, A2)
    al, be = ea(A.alpha), ea(A.beta)
    al2, be2 = eb(A2.alpha), eb(A2.beta)
    if kind == "tensor_a":
        if p.b != p2.b:
            raise ValueError("tensor_a needs equal second parameters")
        x1, y1 = al * al2, be
        sx, sy = al2, be * be2
        q1 = QuaternionParams(f, f.mul(p.a, p2.a), p.b)
        sp = QuaternionParams(f, p2.a, f.mul(p.b, p.b))
        point = (f.zero, f.one, p.b)
    else:
        if p.a != p2.a:
            raise ValueError("tensor_b needs equal first parameters")
        x1, y1 = al, be * be2
        sx, sy = be2, al * al2
        q1 = QuaternionParams(f, p.a, f.mul(p.b, p2.b))
        sp = QuaternionParams(f, p2.b, f.mul(p.a, p.a))
        point = (f.zero, f.one, p.a)
    # the split factor as an abstract quaternion algebra, mapped into T
    S = make_quaternion(sp)
    s_map = _iso_from_generators_into(S, T, sx, sy)
    D = split_from_conic(sp, ConicPoint(*point), S)
    units = D.map(s_map)
    if not units.verify():
        raise ContractViolation("transported matrix units fail verification")
    peel = peel_matrix_subalgebra(T, units)
    C = peel.centralizer
    cinc = linalg.SpanCoordinates(f, [peel.inclusion.image(k).coords for k in range(C.dim)])
    to_c = lambda x: AlgElem(C, tuple(cinc(x.coords)))  # noqa: E731
    Q = make_quaternion(q1)
    q1_iso = _iso_from_generators(Q, C, to_c(x1), to_c(y1))
    return TensorRelation(T, units, peel, q1, q1_iso, sp)


def _iso_from_generators_into(src: QuaternionAlgebra, dst: Algebra, ia: AlgElem, ib: AlgElem) -> LinMap:
    """Injective algebra map determined by the images of ``alpha`` and ``beta``."""
    phi = LinMap.from_images(src, dst, [dst.one, ia, ib, ia * ib])
    if not phi.check_multiplicative():
        raise ContractViolation("generator images do not satisfy the quaternion relations")
    if linalg.rank(dst.field, [phi.image(k).coords for k in range(4)], dst.dim) != 4:
        raise ContractViolation("generator images are linearly dependent")
    return phi


# --- conics ----------------------------------------------------------------------


@dataclass(frozen=True)
class ConicPoint:
    x: object
    y: object
    z: object

    def as_tuple(self):
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class NotFoundWithinBound:
    bound: int


@dataclass(frozen=True)
class ProvablyNone:
    reason: str


def on_conic(p: QuaternionParams, pt: ConicPoint) -> bool:
    """``a x^2 + b y^2 - z^2 == 0`` with ``(x, y, z) != 0``."""
    f = p.field
    x, y, z = (f.convert(t) for t in pt.as_tuple())
    if all(f.is_zero(t) for t in (x, y, z)):
        return False
    val = f.add(f.mul(p.a, f.mul(x, x)), f.mul(p.b, f.mul(y, y)))
    return f.is_zero(f.sub(val, f.mul(z, z)))


def _primitive_triple(x: Fraction, y: Fraction, z: Fraction) -> ConicPoint:
    den = 1
    for t in (x, y, z):
        den = den * t.denominator // math.gcd(den, t.denominator)
    ints = [int(t * den) for t in (x, y, z)]
    g = math.gcd(*ints)
    return ConicPoint(*(Fraction(t // g) for t in ints))


def conic_point(p: QuaternionParams, height_bound: int = 100):
    """A point on ``a x^2 + b y^2 = z^2``.

    Over F_p the search is exhaustive.  Over Q, pairs ``0 <= x, y <= H`` are
    tried by increasing ``max(x, y)`` and ``z`` is an exact square root; the
    result is a primitive integer triple.  ``ProvablyNone`` is returned over Q
    only when ``a < 0`` and ``b < 0``.
    """
    f = p.field
    if isinstance(f, PrimeField):
        for x in range(f.p):
            for y in range(f.p):
                if x == 0 and y == 0:
                    continue
                v = f.add(f.mul(p.a, x * x % f.p), f.mul(p.b, y * y % f.p))
                z = f.sqrt(v)
                if z is not None:
                    return ConicPoint(x, y, z)
        return ProvablyNone("exhaustive search over the prime field")
    if isinstance(f, Rationals):
        if p.a < 0 and p.b < 0:
            return ProvablyNone("a < 0 and b < 0: the form a x^2 + b y^2 - z^2 is negative definite")
        for h in range(1, height_bound + 1):
            pairs = [(x, h) for x in range(h + 1)] + [(h, y) for y in range(h)]
            pairs.sort()
            for x, y in pairs:
                z = f.sqrt(p.a * x * x + p.b * y * y)
                if z is not None:
                    return _primitive_triple(Fraction(x), Fraction(y), z)
        return NotFoundWithinBound(height_bound)
    if isinstance(f, Tower):
        for h in range(1, height_bound + 1):
            for x, y in [(x, h) for x in range(h + 1)] + [(h, y) for y in range(h)]:
                v = f.add(f.mul(p.a, f.from_int(x * x)), f.mul(p.b, f.from_int(y * y)))
                z = f.sqrt(v)
                if z is not None:
                    return ConicPoint(f.from_int(x), f.from_int(y), z)
        return NotFoundWithinBound(height_bound)
    raise TypeError(f"unsupported field {f!r}")


def split_from_conic(p: QuaternionParams, pt: ConicPoint, A: QuaternionAlgebra | None = None) -> MatrixDecomposition:
    """A ``q = 2`` decomposition of ``h(a, b)`` from a point on its conic.

    ``z + x alpha + y beta`` has norm ``z^2 - a x^2 - b y^2 = 0``, so it is a zero
    divisor from which matrix units are built.
    """
    if not on_conic(p, pt):
        raise ContractViolation("point is not on the conic")
    f = p.field
    A = A or make_quaternion(p)
    x, y, z = (f.convert(t) for t in pt.as_tuple())
    zd = A.elem((z, x, y, f.zero))
    e = nontrivial_idempotent(A, zd)
    if isinstance(e, AlreadyInvertible):
        raise ContractViolation("norm-zero quaternion is invertible")
    D = refine_idempotents(A, [e, A.one - e])
    if D.q != 2:
        raise ContractViolation("expected a 2x2 decomposition")
    return D


# --- recognition --------------------------------------------------------------


@dataclass
class RecognizedQuaternion:
    params: QuaternionParams
    iso: LinMap          # make_quaternion(params) -> A
    basis: list          # 1, x, y, xy in A


def recognize_quaternion(A: Algebra):
    """Present a central 4-dimensional algebra as ``h(a, b)``.

    Candidates ``z`` are the basis elements and then their pairwise sums.
    Completing the square in the minimal polynomial of ``z`` gives ``x`` with
    ``x^2 = a``; ``y`` is taken in the ``-1`` eigenspace of ``v -> x^-1 v x``
    with ``y^2 = b != 0``.  When every candidate gives a nilpotent ``x`` (or no
    usable ``y``), a :class:`ZeroDivisorWitness` is returned instead.
    """
    if A.dim != 4:
        raise ContractViolation("recognition needs a 4-dimensional algebra")
    f = A.field
    _require_odd_characteristic(f)
    if len(centralizer(A, A.basis()[1:])) != 1:
        raise ContractViolation("algebra is not central")
    basis = A.basis()[1:]
    cands = list(basis) + [x + y for x, y in itertools.combinations(basis, 2)]
    witness = None
    two_inv = f.inv(f.from_int(2))
    for z in cands:
        g = minimal_polynomial(z)
        if g.degree == 1:
            continue
        if g.degree != 2:
            raise ContractViolation("element of degree > 2 in a central 4-dimensional algebra")
        c1, c0 = g.coeff(1), g.coeff(0)
        x = z + A.scalar(f.mul(c1, two_inv))
        a = f.sub(f.mul(f.mul(c1, c1), f.mul(two_inv, two_inv)), c0)
        if f.is_zero(a):
            witness = witness or ZeroDivisorWitness(x, cofactor=x, context="nilpotent completed square")
            continue
        # -1 eigenspace: v x + x v = 0
        rows = []
        for row_l, row_r in zip(_lmat(x), _rmat(x)):
            rows.append([f.add(s, t) for s, t in zip(row_l, row_r)])
        ker = [AlgElem(A, tuple(v)) for v in linalg.kernel(f, rows, 4)]
        ys = list(ker) + [u + v for u, v in itertools.combinations(ker, 2)]
        for y in ys:
            y2 = y * y
            b = y2.scalar_part()
            if b is None:
                continue
            if f.is_zero(b):
                if not y.is_zero():
                    witness = witness or ZeroDivisorWitness(y, cofactor=y, context="nilpotent eigenvector")
                continue
            params = QuaternionParams(f, a, b)
            Q = make_quaternion(params, check=False)
            try:
                iso = _iso_from_generators(Q, A, x, y)
            except ContractViolation:
                continue
            return RecognizedQuaternion(params, iso, [A.one, x, y, x * y])
    if witness is None:
        raise ContractViolation("no quaternion presentation found")
    return witness


def _lmat(x: AlgElem):
    A = x.algebra
    return linalg.transpose([A.vmul(x.coords, A._unit_vec(j)) for j in range(A.dim)])


def _rmat(x: AlgElem):
    A = x.algebra
    return linalg.transpose([A.vmul(A._unit_vec(j), x.coords) for j in range(A.dim)])


def quaternion_subalgebra(T: Algebra, x: AlgElem, y: AlgElem) -> tuple:
    """The subalgebra with basis ``1, x, y, xy`` (``x, y`` anticommuting, squares scalar)."""
    basis = [T.one, x, y, x * y]
    return algebra_from_basis(T, basis, ["1", "x", "y", "xy"])
