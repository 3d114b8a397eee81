"""Finite-dimensional unital associative algebras given by structure constants.

An :class:`Algebra` over a field ``F`` has basis ``e_0, ..., e_{m-1}`` with
``e_0`` the unit.  Products are stored sparsely: ``prod[i][j]`` is a tuple of
``(l, c)`` pairs with ``e_i e_j = sum c e_l``.  Elements are coordinate tuples
of raw field values wrapped in :class:`AlgElem`.

Everything that needs a linear system goes through :mod:`csalg.linalg`; over
a tower field an inversion failure propagates as
:class:`~csalg.exactfield.ZeroDivisorFound`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .exactfield import Field, Poly, Tower, _reduce_monic, field_from_json, field_to_json


class ContractViolation(Exception):
    """An input did not satisfy the documented precondition."""


class AlgebraMismatchError(ValueError):
    pass


class Algebra:
    """Structure-constant algebra with unit ``e_0``."""

    def __init__(self, field: Field, prod, labels: Sequence[str] | None = None, check: bool = True):
        self.field = field
        self.dim = len(prod)
        self.prod = tuple(tuple(tuple((l, c) for l, c in cell if not field.is_zero(c)) for cell in row)
                          for row in prod)
        if labels is None:
            labels = ["1"] + [f"e{i + 1}" for i in range(1, self.dim)]
        self.labels = list(labels)
        if len(self.labels) != self.dim:
            raise ValueError("one label per basis element is required")
        if check:
            self.verify()

    # --- construction --------------------------------------------------------

    @classmethod
    def from_dense(cls, field: Field, c, labels=None, check: bool = True) -> "Algebra":
        """Build from ``c[l][i][j]``, the coefficient of ``e_l`` in ``e_i e_j``."""
        m = len(c)
        prod = [[[(l, field.convert(c[l][i][j])) for l in range(m)] for j in range(m)] for i in range(m)]
        return cls(field, prod, labels, check)

    def dense_table(self) -> list:
        m, zero = self.dim, self.field.zero
        c = [[[zero] * m for _ in range(m)] for _ in range(m)]
        for i in range(m):
            for j in range(m):
                for l, v in self.prod[i][j]:
                    c[l][i][j] = v
        return c

    def verify(self) -> None:
        """Check the unit axioms and associativity on all basis triples."""
        m, one = self.dim, self.field.one
        for i in range(m):
            if self.prod[0][i] != ((i, one),) or self.prod[i][0] != ((i, one),):
                raise ContractViolation(f"e_0 is not a two-sided unit (fails at index {i})")
        for i in range(1, m):
            for j in range(1, m):
                ij = self._basis_prod(i, j)
                for k in range(1, m):
                    left = self.vmul(ij, self._unit_vec(k))
                    right = self.vmul(self._unit_vec(i), self._basis_prod(j, k))
                    if left != right:
                        raise ContractViolation(f"associativity fails on basis triple {(i, j, k)}")

    # --- raw coordinate arithmetic ------------------------------------------

    def _unit_vec(self, i: int) -> tuple:
        z = self.field.zero
        v = [z] * self.dim
        v[i] = self.field.one
        return tuple(v)

    def _basis_prod(self, i: int, j: int) -> tuple:
        v = [self.field.zero] * self.dim
        for l, c in self.prod[i][j]:
            v[l] = c
        return tuple(v)

    def vmul(self, u: Sequence, v: Sequence) -> tuple:
        f = self.field
        zero, add, mul = f.zero, f.add, f.mul
        out = [zero] * self.dim
        nzv = [(j, y) for j, y in enumerate(v) if y != zero]
        for i, x in enumerate(u):
            if x == zero:
                continue
            row = self.prod[i]
            for j, y in nzv:
                xy = mul(x, y)
                for l, c in row[j]:
                    out[l] = add(out[l], mul(xy, c))
        return tuple(out)

    def vadd(self, u, v) -> tuple:
        add = self.field.add
        return tuple(add(x, y) for x, y in zip(u, v))

    def vsub(self, u, v) -> tuple:
        sub = self.field.sub
        return tuple(sub(x, y) for x, y in zip(u, v))

    def vscale(self, c, u) -> tuple:
        mul = self.field.mul
        return tuple(mul(c, x) for x in u)

    # --- elements -------------------------------------------------------------

    def elem(self, coords: Sequence) -> "AlgElem":
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return AlgElem(self, tuple(self.field.convert(c) for c in coords))

    def basis(self, i: int | None = None):
        if i is None:
            return [AlgElem(self, self._unit_vec(k)) for k in range(self.dim)]
        return AlgElem(self, self._unit_vec(i))

    @property
    def one(self) -> "AlgElem":
        return AlgElem(self, self._unit_vec(0))

    @property
    def zero(self) -> "AlgElem":
        return AlgElem(self, (self.field.zero,) * self.dim)

    def scalar(self, c) -> "AlgElem":
        return AlgElem(self, self.vscale(self.field.convert(c), self._unit_vec(0)))

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Algebra) and self.field == other.field
                and self.dim == other.dim and self.prod == other.prod)

    def __hash__(self):
        return hash((self.field, self.dim))

    def __repr__(self):
        return f"Algebra(dim={self.dim}, field={self.field!r})"

    # --- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        fmt = self.field.format
        c = self.dense_table()
        return {"field": field_to_json(self.field), "dim": self.dim, "labels": list(self.labels),
                "table": [[[fmt(x) for x in row] for row in layer] for layer in c]}

    @classmethod
    def from_json(cls, obj: dict, check: bool = True) -> "Algebra":
        fld = field_from_json(obj["field"])
        table = obj["table"]
        m = int(obj.get("dim", len(table)))
        if len(table) != m:
            raise ValueError(f"table has {len(table)} layers but dim is {m}")
        c = [[[fld.parse(x) for x in row] for row in layer] for layer in table]
        return cls.from_dense(fld, c, obj.get("labels"), check)

    def elem_to_json(self, a: "AlgElem") -> list:
        return [self.field.format(x) for x in a.coords]

    def elem_from_json(self, obj) -> "AlgElem":
        return AlgElem(self, tuple(self.field.parse(x) for x in obj))


class AlgElem:
    """An element of an :class:`Algebra`, stored by its coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords: tuple):
        self.algebra = algebra
        self.coords = coords

    def _check(self, other: "AlgElem") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatchError("elements of different algebras")

    def _lift(self, other):
        if isinstance(other, AlgElem):
            self._check(other)
            return other.coords
        return self.algebra.scalar(other).coords

    def __add__(self, other):
        return AlgElem(self.algebra, self.algebra.vadd(self.coords, self._lift(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return AlgElem(self.algebra, self.algebra.vsub(self.coords, self._lift(other)))

    def __rsub__(self, other):
        return AlgElem(self.algebra, self.algebra.vsub(self._lift(other), self.coords))

    def __neg__(self):
        f = self.algebra.field
        return AlgElem(self.algebra, tuple(f.neg(x) for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            self._check(other)
            return AlgElem(self.algebra, self.algebra.vmul(self.coords, other.coords))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = self.algebra.one
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "AlgElem":
        alg = self.algebra
        return AlgElem(alg, alg.vscale(alg.field.convert(c), self.coords))

    def is_zero(self) -> bool:
        f = self.algebra.field
        return all(f.is_zero(x) for x in self.coords)

    def scalar_part(self):
        """The raw scalar ``c`` when this element equals ``c*1``, else ``None``."""
        f = self.algebra.field
        if all(f.is_zero(x) for x in self.coords[1:]):
            return self.coords[0]
        return None

    def __eq__(self, other):
        if isinstance(other, AlgElem):
            return (other.algebra is self.algebra or other.algebra == self.algebra) and self.coords == other.coords
        try:
            return self.coords == self.algebra.scalar(other).coords
        except (TypeError, ValueError):
            return False

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        alg = self.algebra
        f = alg.field
        terms = []
        for x, lab in zip(self.coords, alg.labels):
            if f.is_zero(x):
                continue
            xs = f.to_str(x)
            if lab == "1":
                terms.append(xs)
            elif x == f.one:
                terms.append(lab)
            elif xs == "-1":
                terms.append("-" + lab)
            else:
                terms.append(f"({xs})*{lab}" if " " in xs else f"{xs}*{lab}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def elem_mul(a: AlgElem, b: AlgElem) -> AlgElem:
    return a * b


def as_elem(A: Algebra, x) -> AlgElem:
    return x if isinstance(x, AlgElem) else A.elem(x)


# --- linear maps ---------------------------------------------------------------


class LinMap:
    """An F-linear map given by a matrix on the chosen bases.

    ``matrix`` has one row per target coordinate; column ``j`` is the image of
    the ``j``-th source basis vector.  ``flags`` records properties that have
    been checked (``unital``, ``multiplicative``, ``bijective``,
    ``anti_multiplicative``).
    """

    def __init__(self, field: Field, matrix, src: Algebra | None = None, dst: Algebra | None = None):
        self.field = field
        self.matrix = [list(r) for r in matrix]
        self.src = src
        self.dst = dst
        self.flags: dict = {}

    @classmethod
    def from_images(cls, src: Algebra, dst: Algebra, images: Sequence[AlgElem]) -> "LinMap":
        cols = [img.coords for img in images]
        return cls(src.field, linalg.transpose(cols) if cols else [], src, dst)

    @property
    def shape(self):
        return (len(self.matrix), len(self.matrix[0]) if self.matrix else 0)

    def apply_vec(self, v: Sequence) -> tuple:
        return tuple(linalg.mat_vec(self.field, self.matrix, v))

    def __call__(self, a):
        if isinstance(a, AlgElem):
            if self.src is not None and a.algebra is not self.src and a.algebra != self.src:
                raise AlgebraMismatchError("element is not in the source algebra")
            return AlgElem(self.dst, self.apply_vec(a.coords))
        return self.apply_vec(a)

    def image(self, j: int) -> AlgElem:
        return AlgElem(self.dst, tuple(row[j] for row in self.matrix))

    def compose(self, other: "LinMap") -> "LinMap":
        """``self o other``."""
        return LinMap(self.field, linalg.mat_mul(self.field, self.matrix, other.matrix), other.src, self.dst)

    def check_unital(self) -> bool:
        ok = self(self.src.one) == self.dst.one
        self.flags["unital"] = ok
        return ok

    def check_multiplicative(self) -> bool:
        """``phi(e_i e_j) == phi(e_i) phi(e_j)`` for all basis pairs, and ``phi(1) == 1``."""
        A = self.src
        imgs = [self.image(j) for j in range(A.dim)]
        ok = self.check_unital()
        for i in range(A.dim):
            if not ok:
                break
            for j in range(A.dim):
                if self(AlgElem(A, A._basis_prod(i, j))) != imgs[i] * imgs[j]:
                    ok = False
                    break
        self.flags["multiplicative"] = ok
        return ok

    def check_anti_multiplicative(self) -> bool:
        """``phi(e_i e_j) == phi(e_j) phi(e_i)`` for all basis pairs."""
        A = self.src
        imgs = [self.image(j) for j in range(A.dim)]
        ok = self(A.one) == self.dst.one
        for i in range(A.dim):
            if not ok:
                break
            for j in range(A.dim):
                if self(AlgElem(A, A._basis_prod(i, j))) != imgs[j] * imgs[i]:
                    ok = False
                    break
        self.flags["anti_multiplicative"] = ok
        return ok

    def check_bijective(self) -> bool:
        r, c = self.shape
        ok = r == c and linalg.rank(self.field, self.matrix, c) == c
        self.flags["bijective"] = ok
        return ok

    def inverse(self) -> "LinMap":
        n = self.shape[1]
        cols = []
        for j in range(n):
            e = [self.field.zero] * n
            e[j] = self.field.one
            x = linalg.solve(self.field, self.matrix, e, n)
            if x is None:
                raise ContractViolation("map is not invertible")
            cols.append(x)
        return LinMap(self.field, linalg.transpose(cols), self.dst, self.src)

    def __eq__(self, other):
        return isinstance(other, LinMap) and self.matrix == other.matrix

    def to_json(self) -> list:
        return [[self.field.format(x) for x in row] for row in self.matrix]

    def __repr__(self):
        return f"LinMap({self.shape[0]}x{self.shape[1]}, flags={self.flags})"


def identity_map(A: Algebra) -> LinMap:
    return LinMap(A.field, linalg.identity(A.field, A.dim), A, A)


def left_mul_matrix(a: AlgElem) -> LinMap:
    A = a.algebra
    cols = [A.vmul(a.coords, A._unit_vec(j)) for j in range(A.dim)]
    return LinMap(A.field, linalg.transpose(cols), A, A)


def right_mul_matrix(b: AlgElem) -> LinMap:
    A = b.algebra
    cols = [A.vmul(A._unit_vec(j), b.coords) for j in range(A.dim)]
    return LinMap(A.field, linalg.transpose(cols), A, A)


# --- minimal polynomial and idempotents -----------------------------------


def poly_eval(p: Poly, a: AlgElem) -> AlgElem:
    """``p(a)`` by Horner's rule."""
    A = a.algebra
    acc = A.zero
    for c in reversed(p.coeffs):
        acc = acc * a + A.scalar(c)
    return acc


def minimal_polynomial(a: AlgElem) -> Poly:
    """Monic minimal polynomial of ``a`` over the field of its algebra.

    Over a tower the elimination may raise
    :class:`~csalg.exactfield.ZeroDivisorFound`.
    """
    A = a.algebra
    f = A.field
    powers = [A.one.coords]
    while True:
        nxt = A.vmul(powers[-1], a.coords)
        coords = linalg.SpanCoordinates(f, powers)
        try:
            x = coords(nxt)
        except ValueError:
            powers.append(nxt)
            continue
        return Poly(f, tuple(f.neg(c) for c in x) + (f.one,))


@dataclass
class IdempotentData:
    e: AlgElem
    n: int
    classification: str   # "One", "Zero" or "Nontrivial"
    minpoly: Poly


def idempotent_from_element(a: AlgElem) -> IdempotentData:
    """Idempotent ``e`` in ``F[a]`` with ``e a^n = a^n``.

    Writing the minimal polynomial as ``X^n h(X)`` with ``h(0) = u != 0`` and
    ``h = u (1 - X f(X))``, the idempotent is ``e = (a f(a))^n``.  ``e == 1``
    exactly when ``a`` is invertible and ``e == 0`` exactly when ``a`` is
    nilpotent.
    """
    A = a.algebra
    fld = A.field
    g = minimal_polynomial(a)
    n = 0
    while fld.is_zero(g.coeff(n)):
        n += 1
    h = Poly(fld, g.coeffs[n:])
    u = h.coeff(0)
    # f = (1 - h/u) / X
    hu = h.scale(fld.inv(u))
    one_minus = Poly(fld, (fld.one,)) - hu
    f = Poly(fld, one_minus.coeffs[1:])
    e = (a * poly_eval(f, a)) ** n
    if e == A.one:
        cls = "One"
    elif e.is_zero():
        cls = "Zero"
    else:
        cls = "Nontrivial"
    return IdempotentData(e, n, cls, g)


def inverse(a: AlgElem) -> AlgElem | None:
    """Two-sided inverse of ``a`` or ``None`` when ``a`` is not invertible."""
    A = a.algebra
    x = linalg.solve(A.field, left_mul_matrix(a).matrix, A.one.coords, A.dim)
    if x is None:
        return None
    b = AlgElem(A, tuple(x))
    if b * a != A.one:
        return None
    return b


def is_invertible(a: AlgElem) -> bool:
    return idempotent_from_element(a).classification == "One"


# --- centers, centralizers -----------------------------------------------------


def _commutator_rows(A: Algebra, s: AlgElem) -> list:
    L = left_mul_matrix(s).matrix
    R = right_mul_matrix(s).matrix
    sub = A.field.sub
    return [[sub(x, y) for x, y in zip(rl, rr)] for rl, rr in zip(L, R)]


def centralizer(A: Algebra, S: Sequence[AlgElem]) -> list:
    """Basis of ``{x : x s = s x for all s in S}``."""
    rows = []
    for s in S:
        rows.extend(_commutator_rows(A, s))
    rows = [r for r in rows if any(not A.field.is_zero(x) for x in r)]
    return [AlgElem(A, tuple(v)) for v in linalg.kernel(A.field, rows, A.dim)]


def center(A: Algebra) -> list:
    """Basis of the center."""
    return centralizer(A, A.basis()[1:])


def is_central(A: Algebra) -> bool:
    return len(center(A)) == 1


def span_equal(field: Field, U: Sequence[AlgElem], V: Sequence[AlgElem]) -> bool:
    """Whether two families span the same subspace."""
    u = [x.coords for x in U]
    v = [x.coords for x in V]
    ru = linalg.rank(field, u) if u else 0
    rv = linalg.rank(field, v) if v else 0
    ruv = linalg.rank(field, u + v) if u or v else 0
    return ru == rv == ruv


# --- constructions ------------------------------------------------------------


def _join_label(a: str, b: str) -> str:
    if a == "1":
        return b
    if b == "1":
        return a
    return f"{a}*{b}"


def tensor_product(A: Algebra, B: Algebra, check: bool = True):
    """``A (x) B`` on the product basis ``e_i (x) f_k`` (index ``i*dim(B) + k``).

    Returns the algebra together with the embeddings ``a -> a(x)1`` and ``b -> 1(x)b``.
    """
    if A.field != B.field:
        raise AlgebraMismatchError("tensor factors over different fields")
    f = A.field
    m, n = A.dim, B.dim
    prod = []
    for i in range(m):
        for k in range(n):
            row = []
            for j in range(m):
                for l in range(n):
                    cell = []
                    for p, c in A.prod[i][j]:
                        for q, d in B.prod[k][l]:
                            cell.append((p * n + q, f.mul(c, d)))
                    row.append(tuple(cell))
            prod.append(row)
    labels = [_join_label(a, b) for a in A.labels for b in B.labels]
    C = Algebra(f, prod, labels, check)
    emb_a = LinMap.from_images(A, C, [C.basis(i * n) for i in range(m)])
    emb_b = LinMap.from_images(B, C, [C.basis(k) for k in range(n)])
    emb_a.flags["multiplicative"] = emb_b.flags["multiplicative"] = True
    return C, emb_a, emb_b


def opposite(A: Algebra) -> Algebra:
    m = A.dim
    prod = [[A.prod[j][i] for j in range(m)] for i in range(m)]
    return Algebra(A.field, prod, A.labels, check=False)


def algebra_from_basis(A: Algebra, basis: Sequence[AlgElem], labels=None, check: bool = True):
    """The subalgebra spanned by ``basis`` (whose first entry is its unit).

    Returns ``(B, inclusion)``; raises :class:`ContractViolation` when the span is
    not closed under multiplication or the first vector is not its unit.
    """
    f = A.field
    coords = linalg.SpanCoordinates(f, [b.coords for b in basis])
    k = len(basis)
    prod = []
    for i in range(k):
        row = []
        for j in range(k):
            try:
                x = coords(A.vmul(basis[i].coords, basis[j].coords))
            except ValueError:
                raise ContractViolation("span is not closed under multiplication") from None
            row.append(tuple((l, c) for l, c in enumerate(x)))
        prod.append(row)
    B = Algebra(f, prod, labels, check)
    inc = LinMap.from_images(B, A, list(basis))
    inc.flags["multiplicative"] = True
    return B, inc


def rebase(A: Algebra, basis: Sequence[AlgElem], labels=None) -> tuple:
    """Present ``A`` on another basis (first vector must be the unit).

    Returns ``(B, phi)`` where ``phi: B -> A`` sends the new basis to ``basis``.
    """
    if len(basis) != A.dim:
        raise ValueError("a basis must have dim(A) vectors")
    if basis[0] != A.one:
        raise ContractViolation("the first basis vector must be the unit")
    return algebra_from_basis(A, basis, labels)


def matrix_basis(field: Field, q: int) -> tuple:
    """The basis ``I, E_ij ((i,j) != (1,1))`` of ``M_q(field)`` as matrices, with labels."""
    mats, labels = [linalg.identity(field, q)], ["1"]
    for i in range(q):
        for j in range(q):
            if (i, j) == (0, 0):
                continue
            m = [[field.zero] * q for _ in range(q)]
            m[i][j] = field.one
            mats.append(m)
            labels.append(f"E{i + 1}{j + 1}")
    return mats, labels


def algebra_from_matrices(field: Field, mats: Sequence, labels=None, check: bool = True) -> Algebra:
    """Structure constants of the span of ``mats`` (first must be the identity)."""
    flat = [[x for row in m for x in row] for m in mats]
    coords = linalg.SpanCoordinates(field, flat)
    k = len(mats)
    prod = []
    for i in range(k):
        row = []
        for j in range(k):
            p = linalg.mat_mul(field, mats[i], mats[j])
            try:
                x = coords([v for r in p for v in r])
            except ValueError:
                raise ContractViolation("matrices do not span a subalgebra") from None
            row.append(tuple(enumerate(x)))
        prod.append(row)
    return Algebra(field, prod, labels, check)


def matrix_algebra(field: Field, q: int, check: bool = True) -> Algebra:
    """``M_q(field)`` on the basis ``I, E_ij`` (``(i,j) != (1,1)``)."""
    mats, labels = matrix_basis(field, q)
    return algebra_from_matrices(field, mats, labels, check)


def matrix_unit(A: Algebra, q: int, i: int, j: int) -> AlgElem:
    """``E_ij`` (0-based) in an algebra built by :func:`matrix_algebra`."""
    if (i, j) != (0, 0):
        return A.basis(1 + i * q + j - 1)
    out = A.one
    for k in range(1, q):
        out = out - matrix_unit(A, q, k, k)
    return out


def matrix_to_elem(A: Algebra, q: int, m) -> AlgElem:
    """The element of :func:`matrix_algebra` ``A`` with matrix ``m``."""
    out = A.zero
    f = A.field
    for i in range(q):
        for j in range(q):
            c = f.convert(m[i][j])
            if not f.is_zero(c):
                out = out + matrix_unit(A, q, i, j).scale(c)
    return out


def elem_to_matrix(a: AlgElem, q: int) -> list:
    """Matrix of an element of :func:`matrix_algebra`."""
    f = a.algebra.field
    c = a.coords
    m = [[f.zero] * q for _ in range(q)]
    for i in range(q):
        m[i][i] = c[0]
    for idx in range(1, len(c)):
        pos = idx  # position among E_ij with (i,j) != (0,0)
        i, j = divmod(pos, q)
        m[i][j] = f.add(m[i][j], c[idx])
    return m


def field_as_algebra(K: Field) -> Algebra:
    """A tower ``K`` viewed as a commutative algebra over its base field.

    The basis is the monomial basis of the tower (coordinate order of
    :meth:`Tower.coordinates`).
    """
    F = K.base
    d = K.total_degree
    if d == 1:
        return Algebra(F, [[((0, F.one),)]], ["1"], check=False)
    mons = [K.from_coordinates([F.one if t == s else F.zero for t in range(d)]) for s in range(d)]
    prod = [[tuple(enumerate(K.coordinates(K.mul(mons[s], mons[t])))) for t in range(d)] for s in range(d)]
    labels = ["1"] + [f"m{s}" for s in range(1, d)]
    return Algebra(F, prod, labels)


def scalar_extension(A: Algebra, K: Field) -> Algebra:
    """``A`` with its structure constants embedded into a tower ``K`` over ``A.field``."""
    if K == A.field:
        return A
    if not isinstance(K, Tower):
        raise AlgebraMismatchError("can only extend scalars to a tower over the algebra's field")
    emb = (lambda c: K.embed_from(A.field, c))
    prod = [[tuple((l, emb(c)) for l, c in cell) for cell in row] for row in A.prod]
    return Algebra(K, prod, A.labels, check=False)


def extend_elem(a: AlgElem, AK: Algebra) -> AlgElem:
    K = AK.field
    return AlgElem(AK, tuple(K.embed_from(a.algebra.field, c) for c in a.coords))


def restrict_scalars(A: Algebra) -> tuple:
    """View an algebra over a tower ``K`` as an algebra over the base field.

    The new basis is ``m_t e_i`` (index ``i*[K:F] + t``) with ``m_t`` the
    monomial basis of ``K``.  Returns ``(B, to_B)`` where ``to_B`` maps
    coordinate tuples over ``K`` to coordinate tuples over ``F``.
    """
    K = A.field
    F = K.base
    d = K.total_degree
    m = A.dim
    mons = [K.from_coordinates([F.one if t == s else F.zero for t in range(d)]) for s in range(d)]

    def to_B(coords):
        out = []
        for c in coords:
            out.extend(K.coordinates(c))
        return tuple(out)

    prod = []
    for i in range(m):
        for s in range(d):
            row = []
            for j in range(m):
                for t in range(d):
                    st = K.mul(mons[s], mons[t])
                    cell = []
                    for l, c in A.prod[i][j]:
                        for u, x in enumerate(K.coordinates(K.mul(st, c))):
                            if not F.is_zero(x):
                                cell.append((l * d + u, x))
                    # merge duplicates
                    acc: dict = {}
                    for l, x in cell:
                        acc[l] = F.add(acc.get(l, F.zero), x)
                    row.append(tuple(sorted(acc.items())))
            prod.append(row)
    labels = []
    for lab in A.labels:
        for s in range(d):
            labels.append(lab if s == 0 else (f"m{s}" if lab == "1" else f"m{s}*{lab}"))
    return Algebra(F, prod, labels, check=False), to_B


# --- the canonical map A (x) A^op -> End(A) -----------------------------------


@dataclass
class SandwichMap:
    """Matrix of ``x (x) y -> (z -> x z y)``; column ``i*m + j`` is ``L_{e_i} R_{e_j}``."""

    algebra: Algebra
    matrix: list
    rank: int

    @property
    def is_isomorphism(self) -> bool:
        return self.rank == self.algebra.dim ** 2


def _sandwich_columns(A: Algebra) -> list:
    m = A.dim
    zero = A.field.zero
    # left[i][k] = e_i e_k
    left = [[A._basis_prod(i, k) for k in range(m)] for i in range(m)]
    cols = []
    for i in range(m):
        for j in range(m):
            col = [zero] * (m * m)
            ej = A._unit_vec(j)
            for k in range(m):
                v = A.vmul(left[i][k], ej)
                for l, x in enumerate(v):
                    if x != zero:
                        col[l * m + k] = x
            cols.append(col)
    return cols


def canonical_sandwich_map(A: Algebra) -> SandwichMap:
    """The map ``A (x) A^op -> End_F(A)`` with its exact rank.

    Row ``l*m + k`` holds the ``e_l`` coordinate of the image of ``e_k``.
    """
    cols = _sandwich_columns(A)
    n = A.dim ** 2
    # rank of the transpose equals rank; rows of the transpose are the columns
    r = linalg.rank(A.field, cols, n)
    return SandwichMap(A, linalg.transpose(cols), r)


@dataclass
class CentralSimple:
    rank: int
    dim: int


@dataclass
class Defect:
    """A kernel vector ``u`` of the sandwich map, i.e. ``sum_j L_{a_j} R_{e_j} = 0``."""

    rank: int
    dim: int
    u: list
    coefficients: list   # a_j = sum_i u_{ij} e_i


def central_simple_check(A: Algebra):
    """``CentralSimple`` when the sandwich map is bijective, else a ``Defect``."""
    cols = _sandwich_columns(A)
    m = A.dim
    n = m * m
    r = linalg.rank(A.field, cols, n)
    if r == n:
        return CentralSimple(r, m)
    # kernel of the matrix whose columns are ``cols``
    ker = linalg.kernel(A.field, linalg.transpose(cols), n)
    u = ker[0]
    coeffs = []
    for j in range(m):
        coeffs.append(AlgElem(A, tuple(u[i * m + j] for i in range(m))))
    return Defect(r, m, u, coeffs)


def is_central_simple(A: Algebra) -> bool:
    return isinstance(central_simple_check(A), CentralSimple)


@dataclass
class NoSolution:
    reason: str = ""


def simplicity_witness(A: Algebra, a: AlgElem):
    """Pairs ``(x_j, y_j)`` with ``sum x_j a y_j == 1``, or :class:`NoSolution`.

    ``NoSolution`` means ``a`` lies in a proper two-sided ideal.
    """
    if a.is_zero():
        raise ContractViolation("simplicity witness needs a nonzero element")
    m = A.dim
    f = A.field
    cols = []
    for i in range(m):
        ea = A.vmul(A._unit_vec(i), a.coords)
        for j in range(m):
            cols.append(A.vmul(ea, A._unit_vec(j)))
    rows = linalg.transpose(cols)
    u = linalg.solve(f, rows, A.one.coords, m * m)
    if u is None:
        return NoSolution("a generates a proper two-sided ideal")
    pairs = []
    for j in range(m):
        x = AlgElem(A, tuple(u[i * m + j] for i in range(m)))
        if not x.is_zero():
            pairs.append((x, A.basis(j)))
    total = A.zero
    for x, y in pairs:
        total = total + x * a * y
    if total != A.one:
        raise ContractViolation("simplicity witness failed re-verification")
    return pairs


def skolem_noether_space(A: Algebra, sigma: LinMap) -> list:
    """Basis of ``{w : sigma(e_i) w = w e_i for all i}``."""
    rows = []
    sub = A.field.sub
    for i in range(A.dim):
        L = left_mul_matrix(sigma.image(i)).matrix
        R = right_mul_matrix(A.basis(i)).matrix
        for rl, rr in zip(L, R):
            row = [sub(x, y) for x, y in zip(rl, rr)]
            if any(not A.field.is_zero(x) for x in row):
                rows.append(row)
    return [AlgElem(A, tuple(v)) for v in linalg.kernel(A.field, rows, A.dim)]


def skolem_noether(A: Algebra, sigma: LinMap) -> AlgElem:
    """Invertible ``w`` with ``sigma(a) = w a w^-1`` for an automorphism ``sigma``.

    The automorphism is verified first; the solution space must be a line.
    """
    if sigma.src is None:
        sigma.src = A
    if sigma.dst is None:
        sigma.dst = A
    if not sigma.flags.get("multiplicative") and not sigma.check_multiplicative():
        raise ContractViolation("map is not multiplicative and unital")
    if not sigma.flags.get("bijective") and not sigma.check_bijective():
        raise ContractViolation("map is not bijective")
    space = skolem_noether_space(A, sigma)
    if len(space) != 1:
        raise ContractViolation(f"solution space has dimension {len(space)}, expected 1")
    w = space[0]
    winv = inverse(w)
    if winv is None:
        raise ContractViolation("solution is not invertible")
    for i in range(A.dim):
        if sigma.image(i) != w * A.basis(i) * winv:
            raise ContractViolation("conjugation check failed")
    return w


def inner_automorphism(u: AlgElem) -> LinMap:
    """``Int(u): x -> u x u^-1``."""
    A = u.algebra
    uinv = inverse(u)
    if uinv is None:
        raise ContractViolation("element is not invertible")
    return LinMap.from_images(A, A, [u * b * uinv for b in A.basis()])


def direct_product(A: Algebra, B: Algebra) -> Algebra:
    """``A x B`` on the basis ``(1,1), (e_i,0) for i>0, (0,1), (0,f_k) for k>0``."""
    f = A.field
    m, n = A.dim, B.dim
    size = m + n
    basis_pairs = [(A.one.coords, B.one.coords)]
    basis_pairs += [(A._unit_vec(i), B.zero.coords) for i in range(1, m)]
    basis_pairs += [(A.zero.coords, B.one.coords)]
    basis_pairs += [(A.zero.coords, B._unit_vec(k)) for k in range(1, n)]
    flat = [list(a) + list(b) for a, b in basis_pairs]
    coords = linalg.SpanCoordinates(f, flat)
    prod = []
    for i in range(size):
        row = []
        for j in range(size):
            a = A.vmul(basis_pairs[i][0], basis_pairs[j][0])
            b = B.vmul(basis_pairs[i][1], basis_pairs[j][1])
            row.append(tuple(enumerate(coords(list(a) + list(b)))))
        prod.append(row)
    labels = ["1"] + [f"({lab},0)" for lab in A.labels[1:]] + ["(0,1)"] + [f"(0,{lab})" for lab in B.labels[1:]]
    return Algebra(f, prod, labels)


def random_elem(A: Algebra, rng, bound: int = 3) -> AlgElem:
    return AlgElem(A, tuple(A.field.random(rng, bound) for _ in range(A.dim)))


def random_invertible(A: Algebra, rng, bound: int = 3, tries: int = 100) -> AlgElem:
    for _ in range(tries):
        a = random_elem(A, rng, bound)
        if not a.is_zero() and inverse(a) is not None:
            return a
    raise RuntimeError("no invertible element found")


def commutative_algebra_from_poly(f: Poly) -> Algebra:
    """``F[x]/(f)`` on the monomial basis ``1, x, ..., x^{d-1}``."""
    fld = f.field
    d = f.degree
    if d < 1 or not f.is_monic():
        raise ValueError("need a monic polynomial of degree >= 1")
    rel = list(f.coeffs)
    prod = []
    for i in range(d):
        row = []
        for j in range(d):
            mono = [fld.zero] * (i + j) + [fld.one]
            r = _reduce_monic(fld, mono, rel)
            row.append(tuple(enumerate(r)))
        prod.append(row)
    labels = ["1"] + (["x"] if d > 1 else []) + [f"x^{k}" for k in range(2, d)]
    return Algebra(fld, prod, labels)


def isqrt_exact(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None
