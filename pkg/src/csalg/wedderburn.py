"""Constructive Wedderburn decompositions.

Starting from a nonzero noninvertible element, idempotents are produced and
refined until they form a family of matrix units ``e_ij`` (a *matrix
decomposition*), which certifies ``A ~= M_q(e_11 A e_11)``.  Finding the first
noninvertible element is the job of :class:`ProbeStrategy`.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import (AlgElem, Algebra, ContractViolation, LinMap, NoSolution, algebra_from_basis,
                      centralizer, idempotent_from_element, inverse, matrix_algebra, matrix_unit,
                      minimal_polynomial, right_mul_matrix, simplicity_witness, tensor_product)
from .exactfield import Poly, PrimeField, Rationals


@dataclass
class AlreadyInvertible:
    element: AlgElem


# --- corners -------------------------------------------------------------------


class Corner:
    """The algebra ``e A e`` (unit ``e``) with maps to and from ``A``.

    The basis is ``e`` followed by the greedy independent subset of the
    projections ``e e_k e`` of the ambient basis, lowest index first.
    """

    def __init__(self, A: Algebra, e: AlgElem):
        self.ambient = A
        self.e = e
        cands = [e.coords] + [(e * b * e).coords for b in A.basis()]
        idx = linalg.independent_subset(A.field, cands)
        if not idx or idx[0] != 0:
            raise ContractViolation("corner idempotent is zero")
        basis = [AlgElem(A, cands[i]) for i in idx]
        labels = ["1"] + [f"c{k}" for k in range(1, len(basis))]
        self.algebra, self.inclusion = algebra_from_basis(A, basis, labels, check=False)
        self._coords = linalg.SpanCoordinates(A.field, [b.coords for b in basis])

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def lift(self, b: AlgElem) -> AlgElem:
        return self.inclusion(b)

    def project(self, x: AlgElem) -> AlgElem:
        """Corner coordinates of an element lying in ``e A e``."""
        return AlgElem(self.algebra, tuple(self._coords(x.coords)))


# --- idempotents from noninvertible elements -----------------------------------


def _left_ideal_dim(a: AlgElem) -> int:
    A = a.algebra
    return linalg.rank(A.field, right_mul_matrix(a).matrix, A.dim)


def nontrivial_idempotent(A: Algebra, a: AlgElem):
    """A nonzero idempotent ``e != 1`` in the left ideal ``A a``.

    Returns :class:`AlreadyInvertible` when ``A a = A``.  ``A`` must be simple:
    a failing simplicity witness raises :class:`ContractViolation`.
    """
    if a.is_zero():
        raise ContractViolation("need a nonzero element")
    first = True
    cap = max(4, A.dim ** 2)
    for _ in range(cap):
        data = idempotent_from_element(a)
        if data.classification == "One":
            if first:
                return AlreadyInvertible(a)
            raise ContractViolation("descent produced an invertible element")
        first = False
        if data.classification == "Nontrivial":
            return data.e
        # nilpotent: pass to a nonzero element with square zero
        a = a ** (data.n - 1)
        pairs = simplicity_witness(A, a)
        if isinstance(pairs, NoSolution):
            raise ContractViolation("algebra is not simple: " + pairs.reason)
        b = a1 = None
        for (_, z), (y, _) in itertools.product(pairs, pairs):
            v = z * y
            a1 = a * v * a
            if not a1.is_zero():
                b = v
                break
        if b is None:
            raise ContractViolation("no element b with a b a != 0")
        if _left_ideal_dim(a1) < _left_ideal_dim(a):
            a = a1
            continue
        xs = linalg.solve(A.field, right_mul_matrix(a1).matrix, a.coords, A.dim)
        if xs is None:
            raise ContractViolation("left ideals A a1 and A a differ")
        x = AlgElem(A, tuple(xs))
        e = b * x * a
        y = e * e - e
        if y.is_zero():
            return e
        a = y
    raise ContractViolation(f"idempotent descent exceeded {cap} steps")


def zero_divisor_from_defect(A: Algebra, defect) -> AlgElem:
    """A nonzero noninvertible element from a relation ``sum L_{a_j} R_{e_j} = 0``.

    ``defect`` is a :class:`~csalg.algebra.Defect` or the list of the ``a_j``.
    The support of the relation shrinks at every step.
    """
    coeffs = list(getattr(defect, "coefficients", defect))
    basis = A.basis()
    while True:
        support = [j for j, c in enumerate(coeffs) if not c.is_zero()]
        if not support:
            raise ContractViolation("defect relation is trivial")
        for j in support:
            if idempotent_from_element(coeffs[j]).classification != "One":
                return coeffs[j]
        j0 = support[0]
        inv = inverse(coeffs[j0])
        coeffs = [inv * c for c in coeffs]
        found = None
        for j1 in support[1:]:
            for y in basis:
                if coeffs[j1] * y != y * coeffs[j1]:
                    found = y
                    break
            if found is not None:
                break
        if found is None:
            raise ContractViolation("all defect coefficients are central")
        coeffs = [c * found - found * c for c in coeffs]


# --- matrix decompositions -----------------------------------------------------


@dataclass
class MatrixDecomposition:
    """Matrix units ``units[i][j]`` (0-based) in ``algebra``."""

    algebra: Algebra
    q: int
    units: list

    def verify(self) -> bool:
        """The three matrix-unit axioms and nonvanishing, checked exhaustively."""
        A, q, e = self.algebra, self.q, self.units
        total = A.zero
        for i in range(q):
            total = total + e[i][i]
            for j in range(q):
                if e[i][j].is_zero():
                    return False
                for k in range(q):
                    for l in range(q):
                        p = e[i][j] * e[k][l]
                        if j == k:
                            if p != e[i][l]:
                                return False
                        elif not p.is_zero():
                            return False
        return total == A.one

    def unit(self, i: int, j: int) -> AlgElem:
        return self.units[i][j]

    def idempotents(self) -> list:
        return [self.units[i][i] for i in range(self.q)]

    def to_json(self) -> dict:
        A = self.algebra
        return {"q": self.q, "units": [[A.elem_to_json(x) for x in row] for row in self.units]}

    @classmethod
    def from_json(cls, A: Algebra, obj: dict) -> "MatrixDecomposition":
        q = int(obj["q"])
        units = [[A.elem_from_json(x) for x in row] for row in obj["units"]]
        return cls(A, q, units)

    def map(self, fn) -> "MatrixDecomposition":
        """Apply an algebra map (or coordinate map) entrywise."""
        units = [[fn(x) for x in row] for row in self.units]
        return MatrixDecomposition(units[0][0].algebra, self.q, units)


def trivial_decomposition(A: Algebra) -> MatrixDecomposition:
    return MatrixDecomposition(A, 1, [[A.one]])


def elementary_decomposition(A: Algebra, q: int) -> MatrixDecomposition:
    """The matrix units of :func:`~csalg.algebra.matrix_algebra`."""
    return MatrixDecomposition(A, q, [[matrix_unit(A, q, i, j) for j in range(q)] for i in range(q)])


def _block_spanning(A: Algebra, ei: AlgElem, ej: AlgElem) -> list:
    vecs = [(ei * b * ej) for b in A.basis()]
    idx = linalg.independent_subset(A.field, [v.coords for v in vecs])
    return [vecs[k] for k in idx]


@dataclass
class _Split:
    """Internal signal: idempotent ``index`` splits into ``first + rest``."""

    index: int
    first: AlgElem


def _try_units(A: Algebra, idems: list):
    q = len(idems)
    e1 = idems[0]
    if q == 1:
        return MatrixDecomposition(A, 1, [[e1]])
    c1 = Corner(A, e1)
    e_i1 = [e1] + [None] * (q - 1)
    e_1i = [e1] + [None] * (q - 1)
    for i in range(1, q):
        ei = idems[i]
        found = None
        for x in _block_spanning(A, ei, e1):
            for y in _block_spanning(A, e1, ei):
                ai = y * x
                if not ai.is_zero():
                    found = (x, y, ai)
                    break
            if found:
                break
        if found is None:
            raise ContractViolation("e_1 A e_i A e_1 vanishes; algebra is not simple")
        x, y, ai = found
        ac = c1.project(ai)
        data = idempotent_from_element(ac)
        if data.classification == "Nontrivial":
            return _Split(0, c1.lift(data.e))
        if data.classification == "Zero":
            e = nontrivial_idempotent(c1.algebra, ac)
            return _Split(0, c1.lift(e))
        b = inverse(ac)
        e_1i[i] = c1.lift(b) * y
        e_i1[i] = x
    for i in range(1, q):
        eii = e_i1[i] * e_1i[i]
        if eii != idems[i]:
            return _Split(i, eii)
    units = [[None] * q for _ in range(q)]
    for i in range(q):
        for j in range(q):
            units[i][j] = e_i1[i] * e_1i[j] if (i or j) else e1
    return MatrixDecomposition(A, q, units)


def refine_idempotents(A: Algebra, idems: Sequence[AlgElem]) -> MatrixDecomposition:
    """Refine a complete family of orthogonal idempotents into matrix units."""
    idems = list(idems)
    for _ in range(A.dim + 1):
        res = _try_units(A, idems)
        if isinstance(res, MatrixDecomposition):
            if not res.verify():
                raise ContractViolation("constructed matrix units fail verification")
            return res
        old = idems[res.index]
        idems[res.index:res.index + 1] = [res.first, old - res.first]
    raise ContractViolation("refinement did not terminate")


def refine_to_matrix_decomposition(A: Algebra, z: AlgElem | None = None):
    """Matrix decomposition with ``q > 1`` from a nonzero noninvertible ``z``.

    Without ``z`` (or with an invertible one) the trivial ``q = 1``
    decomposition is returned.  Tower witnesses propagate.
    """
    if z is None:
        return decomposition_to_iso(trivial_decomposition(A))
    e = nontrivial_idempotent(A, z)
    if isinstance(e, AlreadyInvertible):
        return decomposition_to_iso(trivial_decomposition(A))
    D = refine_idempotents(A, [e, A.one - e])
    return decomposition_to_iso(D)


# --- decomposition to isomorphism ----------------------------------------------


@dataclass
class DecompositionResult:
    decomposition: MatrixDecomposition
    corner: Algebra
    iso: LinMap
    target: Algebra
    probes: list = dc_field(default_factory=list)
    status: str = "certified"

    @property
    def q(self) -> int:
        return self.decomposition.q

    def to_json(self) -> dict:
        return {"decomposition": self.decomposition.to_json(), "corner": self.corner.to_json(),
                "status": self.status,
                "probes": [{"element": p[0], "classification": p[1]} for p in self.probes]}


def decomposition_to_iso(D: MatrixDecomposition, verify: bool = True) -> DecompositionResult:
    """``phi: A -> M_q(e_11 A e_11)``, ``phi(a) = sum E_ij (x) e_1i a e_j1``.

    The target is ``matrix_algebra(q) (x) corner`` on the product basis.
    """
    A, q, e = D.algebra, D.q, D.units
    c = Corner(A, e[0][0])
    B = c.algebra
    if q == 1:
        T = B
        images = [c.project(b) for b in A.basis()]
    else:
        Mq = matrix_algebra(A.field, q, check=False)
        T, emb_m, emb_b = tensor_product(Mq, B, check=False)
        Eij = [[emb_m(matrix_unit(Mq, q, i, j)) for j in range(q)] for i in range(q)]
        images = []
        for b in A.basis():
            img = T.zero
            for i in range(q):
                for j in range(q):
                    aij = c.project(e[0][i] * b * e[j][0])
                    if not aij.is_zero():
                        img = img + Eij[i][j] * emb_b(aij)
            images.append(img)
    phi = LinMap.from_images(A, T, images)
    if verify:
        if not phi.check_bijective():
            raise ContractViolation("decomposition map is not bijective")
        if not phi.check_multiplicative():
            raise ContractViolation("decomposition map is not multiplicative")
    return DecompositionResult(D, B, phi, T)


# --- probing for zero divisors ---------------------------------------------------


def _divisors(n: int, limit: int = 10 ** 6) -> list | None:
    n = abs(n)
    if n == 0:
        return None
    if n > limit:
        return None
    out = []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.extend({d, n // d})
    return sorted(out)


def rational_roots(p: Poly) -> list:
    """Rational roots of a polynomial over Q (empty when the search is too large)."""
    coeffs = list(p.coeffs)
    if not coeffs:
        return []
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots = []
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    ints = ints[k:]
    if len(ints) == 1:
        return roots
    nums, dens = _divisors(ints[0]), _divisors(ints[-1])
    if nums is None or dens is None:
        return roots
    seen = set()
    for a in nums:
        for b in dens:
            for s in (1, -1):
                r = Fraction(s * a, b)
                if r in seen:
                    continue
                seen.add(r)
                if p(r) == 0:
                    roots.append(r)
    return roots


def field_roots(p: Poly, bound: int = 10 ** 4) -> list:
    """Roots of ``p`` found in its base field (rational root test, or all of F_p)."""
    f = p.field
    if isinstance(f, Rationals):
        return rational_roots(p)
    if isinstance(f, PrimeField) and f.p <= bound:
        return [x for x in f.elements() if f.is_zero(p(x))]
    return []


@dataclass
class ProbeStrategy:
    """How to hunt for a nonzero noninvertible element.

    In order: the defect route (when ``defect`` is given), basis elements and
    then their pairwise sums and differences, roots of minimal polynomials in
    the base field, exhaustive enumeration over small finite fields, and
    finally ``budget`` seeded random elements.
    """

    seed: int = 0
    budget: int = 20
    pairs: bool = True
    roots: bool = True
    exhaustive_bound: int = 5000
    defect: object = None

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def _classify(a: AlgElem, log: list) -> str:
    cls = idempotent_from_element(a).classification
    log.append((a.algebra.elem_to_json(a), cls))
    return cls


def probe_zero_divisor(B: Algebra, strategy: ProbeStrategy, log: list):
    """A nonzero noninvertible element of ``B`` or ``None``.

    The second return value is ``True`` when the search was exhaustive.
    """
    if B.dim == 1:
        return None, True
    f = B.field
    basis = B.basis()[1:]
    for b in basis:
        if _classify(b, log) != "One":
            return b, False
    if strategy.pairs:
        for x, y in itertools.combinations(basis, 2):
            for c in (x + y, x - y):
                if not c.is_zero() and _classify(c, log) != "One":
                    return c, False
    if strategy.roots:
        for b in basis:
            for r in field_roots(minimal_polynomial(b)):
                c = b - B.scalar(r)
                if not c.is_zero():
                    log.append((B.elem_to_json(c), "root"))
                    return c, False
    if isinstance(f, PrimeField) and f.p ** B.dim <= strategy.exhaustive_bound:
        for coords in itertools.product(range(f.p), repeat=B.dim):
            c = AlgElem(B, tuple(coords))
            if c.is_zero():
                continue
            if idempotent_from_element(c).classification != "One":
                log.append((B.elem_to_json(c), "exhaustive"))
                return c, False
        log.append(([], "exhaustive search: none"))
        return None, True
    rng = strategy.rng()
    for _ in range(strategy.budget):
        c = AlgElem(B, tuple(f.random(rng, 3) for _ in range(B.dim)))
        if not c.is_zero() and _classify(c, log) != "One":
            return c, False
    return None, False


def full_decompose(A: Algebra, strategy: ProbeStrategy | None = None) -> DecompositionResult:
    """Decompose ``A ~= M_q(B)`` until probing finds no zero divisor in ``B``.

    The status is ``"certified"`` when the corner is 1-dimensional or was
    searched exhaustively, otherwise ``"division relative to probes"``.
    """
    strategy = strategy or ProbeStrategy()
    log: list = []
    idems = [A.one]
    if strategy.defect is not None:
        z = zero_divisor_from_defect(A, strategy.defect)
        log.append((A.elem_to_json(z), "defect"))
        e = nontrivial_idempotent(A, z)
        if not isinstance(e, AlreadyInvertible):
            idems = [e, A.one - e]
    for _ in range(A.dim + 1):
        D = refine_idempotents(A, idems)
        c = Corner(A, D.units[0][0])
        z, exhaustive = probe_zero_divisor(c.algebra, strategy, log)
        if z is None:
            res = decomposition_to_iso(D)
            res.probes = log
            res.status = "certified" if (exhaustive or c.dim == 1) else "division relative to probes"
            return res
        e = nontrivial_idempotent(c.algebra, z)
        if isinstance(e, AlreadyInvertible):
            raise ContractViolation("probe returned an invertible element")
        e = c.lift(e)
        idems = [e, D.units[0][0] - e] + [D.units[i][i] for i in range(1, D.q)]
    raise ContractViolation("decomposition did not terminate")


# --- conjugating two decompositions -------------------------------------------


@dataclass
class RefinementNeeded:
    which: str           # "E" or "F"
    element: AlgElem


def conjugate_decompositions(C: Algebra, E: MatrixDecomposition, F: MatrixDecomposition):
    """Invertible ``g`` with ``f_ij = g e_ij g^-1`` for decompositions of equal size.

    Returns :class:`RefinementNeeded` when a corner element that has to be
    invertible is not, or when ``b a`` is an idempotent other than ``f_1``.
    """
    if E.q != F.q:
        raise ContractViolation("decompositions must have the same size")
    q = E.q
    e, f = E.units, F.units
    e1, f1 = e[0][0], f[0][0]
    d = p = r = None
    for i in range(q):
        for j in range(q):
            x = e[0][i] * f1 * e[j][0]
            if not x.is_zero():
                d, p, r = x, i, j
                break
        if d is not None:
            break
    if d is None:
        raise ContractViolation("f_1 projects to zero")
    corner = Corner(C, e1)
    dc = corner.project(d)
    if idempotent_from_element(dc).classification != "One":
        return RefinementNeeded("E", d)
    dinv = corner.lift(inverse(dc))
    a = dinv * e[0][p] * f1
    b = f1 * e[r][0]
    if a * b != e1:
        raise ContractViolation("a b != e_1")
    ba = b * a
    if ba != f1:
        return RefinementNeeded("F", ba)
    h = C.zero
    g = C.zero
    for i in range(q):
        h = h + e[i][0] * a * f[0][i]
        g = g + f[i][0] * b * e[0][i]
    if g * h != C.one or h * g != C.one:
        raise ContractViolation("g h != 1")
    for i in range(q):
        for j in range(q):
            if g * e[i][j] * h != f[i][j]:
                raise ContractViolation("conjugation identity fails")
    return g


# --- peeling a matrix subalgebra ---------------------------------------------


@dataclass
class PeelResult:
    centralizer: Algebra
    inclusion: LinMap        # centralizer -> A
    iso: LinMap              # A -> M_q(F) (x) C
    target: Algebra


def peel_matrix_subalgebra(A: Algebra, D: MatrixDecomposition) -> PeelResult:
    """``A ~= M_q(C)`` with ``C`` the centralizer of the matrix units ``D``.

    The entries are ``a_ij = sum_k e_ki a e_jk``.
    """
    q, e = D.q, D.units
    total = A.zero
    for i in range(q):
        total = total + e[i][i]
    if total != A.one:
        raise ContractViolation("matrix units do not sum to the unit of A")
    if not D.verify():
        raise ContractViolation("matrix units fail verification")
    cbasis = centralizer(A, [x for row in e for x in row])
    if q * q * len(cbasis) != A.dim:
        raise ContractViolation(f"dimension mismatch: {q}^2 * {len(cbasis)} != {A.dim}")
    vecs = [A.one.coords] + [c.coords for c in cbasis]
    idx = linalg.independent_subset(A.field, vecs)
    basis = [AlgElem(A, vecs[k]) for k in idx]
    labels = ["1"] + [f"z{k}" for k in range(1, len(basis))]
    C, inc = algebra_from_basis(A, basis, labels, check=False)
    coords = linalg.SpanCoordinates(A.field, [b.coords for b in basis])
    # surjectivity of B (x) C -> A
    prods = [(x * c).coords for row in e for x in row for c in basis]
    if linalg.rank(A.field, prods, A.dim) != A.dim:
        raise ContractViolation("matrix units and centralizer do not generate A")
    Mq = matrix_algebra(A.field, q, check=False)
    T, emb_m, emb_c = tensor_product(Mq, C, check=False)
    Eij = [[emb_m(matrix_unit(Mq, q, i, j)) for j in range(q)] for i in range(q)]
    images = []
    for a in A.basis():
        img = T.zero
        for i in range(q):
            for j in range(q):
                aij = A.zero
                for k in range(q):
                    aij = aij + e[k][i] * a * e[j][k]
                if not aij.is_zero():
                    img = img + Eij[i][j] * emb_c(AlgElem(C, tuple(coords(aij.coords))))
        images.append(img)
    phi = LinMap.from_images(A, T, images)
    if not phi.check_bijective() or not phi.check_multiplicative():
        raise ContractViolation("peeling map is not an isomorphism")
    return PeelResult(C, inc, phi, T)


def matrix_units_in_tensor(emb: LinMap, D: MatrixDecomposition) -> MatrixDecomposition:
    """Image of matrix units under an algebra embedding."""
    return D.map(emb)
