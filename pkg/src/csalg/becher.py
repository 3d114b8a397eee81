"""Corestriction of a quaternion algebra from a quadratic extension, the
quaternion pair inside it, the symplectic-or-split procedure and the multiset
order used to measure progress of splitting sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .algebra import (AlgElem, Algebra, CentralSimple, ContractViolation, LinMap, algebra_from_basis,
                      central_simple_check, centralizer, idempotent_from_element,
                      inverse, restrict_scalars, skolem_noether, tensor_product)
from .exactfield import Field, Tower, ZeroDivisorWitness
from .involutions import SYMPLECTIC, Involution, classify_first_kind, inner_twist, plus_minus_split
from .quaternion import (QuaternionParams, RecognizedQuaternion, make_quaternion, recognize_quaternion,
                         _iso_from_generators_into)
from .splitting import degree


# --- the quadratic extension -----------------------------------------------------


@dataclass
class QuadExtData:
    """``K = F[delta]/(delta^2 - g)`` with ``g`` a nonsquare of ``F``."""

    F: Field
    g: object
    K: Tower = dc_field(init=False)

    def __post_init__(self):
        self.g = self.F.convert(self.g)
        if self.F.characteristic == 2:
            raise ContractViolation("characteristic 2 is excluded")
        if self.F.is_zero(self.g) or self.F.sqrt(self.g) is not None:
            raise ContractViolation(f"g = {self.F.to_str(self.g)} is a square in the base field")
        self.K = Tower(self.F, (self.F.neg(self.g), self.F.zero, self.F.one), name="d")

    @property
    def delta(self):
        return self.K.gen

    def lift(self, x, y):
        """``x + y delta``."""
        K = self.K
        return K.add(K.embed_from(self.F, self.F.convert(x)), K.mul(K.embed_from(self.F, self.F.convert(y)), K.gen))

    def conj(self, z):
        """``x + y delta -> x - y delta``."""
        x, y = z
        return (x, self.F.neg(y))


# --- corestriction -----------------------------------------------------------------


@dataclass
class CorestrictionResult:
    qe: QuadExtData
    abcd: tuple
    A: Algebra                # h_K(a + b delta, c + d delta)
    Abar: Algebra             # h_K(a - b delta, c - d delta)
    B: Algebra                # A (x)_K Abar, over K
    BF: Algebra               # B over F (dimension 32)
    to_BF: object             # coordinates over K -> coordinates over F
    swap: LinMap              # I_B on BF
    T: Algebra
    inclusion: LinMap         # T -> BF
    x: AlgElem | None = None
    y: AlgElem | None = None
    Q1: QuaternionParams | None = None
    Q2: QuaternionParams | None = None

    def to_json(self) -> dict:
        f = self.qe.F
        out = {"g": f.format(self.qe.g), "abcd": [f.format(v) for v in self.abcd], "dim_T": self.T.dim,
               "T": self.T.to_json()}
        if self.x is not None:
            out["x"] = self.T.elem_to_json(self.x)
            out["y"] = self.T.elem_to_json(self.y)
        if self.Q1 is not None:
            out["Q1"] = [f.format(self.Q1.a), f.format(self.Q1.b)]
        if self.Q2 is not None:
            out["Q2"] = [f.format(self.Q2.a), f.format(self.Q2.b)]
        return out


def _swap_matrix(F: Field, n: int = 4) -> list:
    """``I_B`` on the F-basis ``delta^s (e_i (x) f_k)`` (index ``(i*n + k)*2 + s``)."""
    size = 2 * n * n
    m = [[F.zero] * size for _ in range(size)]
    for i in range(n):
        for k in range(n):
            for s in range(2):
                src = (i * n + k) * 2 + s
                dst = (k * n + i) * 2 + s
                m[dst][src] = F.one if s == 0 else F.neg(F.one)
    return m


def corestriction(qe: QuadExtData, a, b, c, d) -> CorestrictionResult:
    """The fixed algebra ``T`` of ``I_B`` on ``B = A (x)_K Abar``.

    ``A = h_K(a + b delta, c + d delta)``.  ``I_B`` sends ``e (x) f`` to
    ``G^-1(f) (x) G(e)`` where ``G`` is the bar map on the basis
    ``1, u, v, uv``.
    """
    F = qe.F
    a, b, c, d = (F.convert(v) for v in (a, b, c, d))
    if F.is_zero(a) and F.is_zero(b):
        raise ContractViolation("(a, b) = (0, 0)")
    if F.is_zero(c) and F.is_zero(d):
        raise ContractViolation("(c, d) = (0, 0)")
    g = qe.g
    if F.mul(a, a) == F.mul(F.mul(b, b), g) or F.mul(c, c) == F.mul(F.mul(d, d), g):
        raise ContractViolation("nondegeneracy a^2 != b^2 g, c^2 != d^2 g violated")
    K = qe.K
    A = make_quaternion(QuaternionParams(K, qe.lift(a, b), qe.lift(c, d)))
    Abar = make_quaternion(QuaternionParams(K, qe.lift(a, F.neg(b)), qe.lift(c, F.neg(d))))
    A.labels = ["1", "u", "v", "uv"]
    Abar.labels = ["1", "ub", "vb", "ubvb"]
    B, _, _ = tensor_product(A, Abar, check=False)
    BF, to_BF = restrict_scalars(B)
    swap = LinMap(F, _swap_matrix(F), BF, BF)
    if not swap.check_multiplicative():
        raise ContractViolation("I_B is not a ring automorphism")
    if swap.compose(swap).matrix != linalg.identity(F, BF.dim):
        raise ContractViolation("I_B does not have order 2")

    # explicit invariant basis, then checked against the kernel of I_B - Id
    n = 4
    basis = []
    for i in range(n):
        basis.append(BF.basis((i * n + i) * 2))
    for i in range(n):
        for k in range(i + 1, n):
            basis.append(BF.basis((i * n + k) * 2) + BF.basis((k * n + i) * 2))
    for i in range(n):
        for k in range(i + 1, n):
            basis.append(BF.basis((i * n + k) * 2 + 1) - BF.basis((k * n + i) * 2 + 1))
    rows = [[F.sub(x, F.one if r == s else F.zero) for s, x in enumerate(row)] for r, row in enumerate(swap.matrix)]
    fixed = linalg.kernel(F, rows, BF.dim)
    if len(fixed) != 16 or linalg.rank(F, [v.coords for v in basis] + [tuple(v) for v in fixed], BF.dim) != 16:
        raise ContractViolation("fixed space of I_B is not the expected 16-dimensional space")
    labels = ["1"] + [BF.labels[(i * n + i) * 2] for i in range(1, n)]
    labels += [f"s{i}{k}" for i in range(n) for k in range(i + 1, n)]
    labels += [f"a{i}{k}" for i in range(n) for k in range(i + 1, n)]
    T, inc = algebra_from_basis(BF, basis, labels)

    # B = T + delta T, and delta swaps the eigenspaces
    dl = BF.basis(1)
    dT = [dl * t for t in basis]
    if linalg.rank(F, [v.coords for v in basis + dT], BF.dim) != BF.dim:
        raise ContractViolation("B != T + delta T")
    for v in dT:
        if swap(v) != -v:
            raise ContractViolation("delta T is not in the -1 eigenspace")
    if not isinstance(central_simple_check(T), CentralSimple):
        raise ContractViolation("T is not central simple")
    return CorestrictionResult(qe, (a, b, c, d), A, Abar, B, BF, to_BF, swap, T, inc)


def _to_T(cr: CorestrictionResult, z: AlgElem) -> AlgElem:
    """Element of ``B`` (over K) as an element of ``T``."""
    v = cr.to_BF(z.coords)
    sc = linalg.SpanCoordinates(cr.qe.F, [cr.inclusion.image(k).coords for k in range(cr.T.dim)])
    try:
        return AlgElem(cr.T, tuple(sc(v)))
    except ValueError:
        raise ContractViolation("element of B is not fixed by I_B") from None


class DegeneratePair(ContractViolation):
    """``x`` or ``y`` is zero or scalar for the given parameters."""

    def __init__(self, name: str, value: AlgElem):
        super().__init__(f"{name} is degenerate: {value!r}")
        self.name = name
        self.value = value


def pair_elements(cr: CorestrictionResult) -> tuple:
    """``x = v vbar`` and ``y = (u + ubar)(cb - ad + d u ubar + b v vbar)`` in ``T``."""
    qe = cr.qe
    F, K = qe.F, qe.K
    a, b, c, d = cr.abcd
    B = cr.B
    n = 4

    def e(i, k):
        return B.basis(i * n + k)

    u, ub, v, vb = e(1, 0), e(0, 1), e(2, 0), e(0, 2)
    one = B.one
    emb = (lambda t: K.embed_from(F, t))
    x = v * vb
    inner = one.scale(emb(F.sub(F.mul(c, b), F.mul(a, d)))) + (u * ub).scale(emb(d)) + (v * vb).scale(emb(b))
    y = (u + ub) * inner
    return _to_T(cr, x), _to_T(cr, y)


@dataclass
class QuaternionPair:
    Q1: QuaternionParams
    Q2: QuaternionParams | ZeroDivisorWitness
    q1_basis: list
    q2_basis: list
    iso: LinMap              # Q1 (x) Q2 -> T
    q2_recognized: RecognizedQuaternion | None = None


def quaternion_pair(cr: CorestrictionResult):
    """``T = Q1 (x) Q2`` with ``Q1 = F[x, y]`` and ``Q2`` its centralizer.

    ``x^2 = c^2 - d^2 g`` and ``y^2 = -4 g b^2 d (cb - ad)``; when the latter
    vanishes ``y`` is a nonzero nilpotent and is returned as a
    :class:`ZeroDivisorWitness`.
    """
    T = cr.T
    F = T.field
    x, y = pair_elements(cr)
    for name, z in (("x", x), ("y", y)):
        if z.is_zero() or z.scalar_part() is not None:
            raise DegeneratePair(name, z)
    x2, y2 = (x * x).scalar_part(), (y * y).scalar_part()
    if x2 is None or y2 is None:
        raise ContractViolation("x^2 or y^2 is not scalar")
    if not (x * y + y * x).is_zero():
        raise ContractViolation("x and y do not anticommute")
    if F.is_zero(x2):
        raise ContractViolation("x^2 = 0 contradicts c^2 != d^2 g")
    cr.x, cr.y = x, y
    if F.is_zero(y2):
        # y is a nonzero nilpotent: T is not a division algebra
        return ZeroDivisorWitness(y, cofactor=y, context="y^2 = 0")
    p1 = QuaternionParams(F, x2, y2)
    Q1 = make_quaternion(p1)
    phi1 = _iso_from_generators_into(Q1, T, x, y)
    q1_basis = [phi1.image(k) for k in range(4)]

    cz = [T.elem(v.coords) for v in centralizer(T, [x, y])]
    if len(cz) != 4:
        raise ContractViolation(f"centralizer of Q1 has dimension {len(cz)}")
    # put the unit first
    picks = [T.one]
    for z in cz:
        if linalg.rank(F, [p.coords for p in picks + [z]], T.dim) == len(picks) + 1:
            picks.append(z)
    Q2alg, inc2 = algebra_from_basis(T, picks)
    rec = recognize_quaternion(Q2alg)
    if isinstance(rec, RecognizedQuaternion):
        p2 = rec.params
        q2_basis = [inc2(rec.iso.image(k)) for k in range(4)]
    else:
        p2 = rec
        q2_basis = list(picks)

    # tensor criterion: the products span T and 4 * 4 = 16
    prods = [s * t for s in q1_basis for t in q2_basis]
    if linalg.rank(F, [p.coords for p in prods], T.dim) != T.dim or len(q1_basis) * len(q2_basis) != T.dim:
        raise ContractViolation("Q1 Q2 does not span T")
    Q1a, _ = algebra_from_basis(T, q1_basis, check=False)
    Q2a, _ = algebra_from_basis(T, q2_basis, check=False)
    C, _, _ = tensor_product(Q1a, Q2a, check=False)
    iso = LinMap.from_images(C, T, prods)
    if not iso.check_multiplicative() or not iso.check_bijective():
        raise ContractViolation("Q1 (x) Q2 -> T is not an isomorphism")
    cr.Q1 = p1
    if isinstance(p2, QuaternionParams):
        cr.Q2 = p2
    return QuaternionPair(p1, p2, q1_basis, q2_basis, iso, rec if isinstance(rec, RecognizedQuaternion) else None)


# --- symplectic or split ---------------------------------------------------------------


@dataclass
class SymplecticInvolution:
    involution: Involution
    steps: list


@dataclass
class ZeroDivisor:
    element: AlgElem
    stage: str
    classification: str
    steps: list


@dataclass
class ObstructionNonSquare:
    t: object
    proved: bool        # False when the square test is only a probe (towers)
    steps: list


def _zero_divisor(z: AlgElem, stage: str, steps: list) -> ZeroDivisor:
    cls = idempotent_from_element(z).classification
    if z.is_zero() or cls == "One":
        raise ContractViolation("reported zero divisor failed verification")
    steps.append({"step": stage, "result": "zero divisor"})
    return ZeroDivisor(z, stage, cls, steps)


def symplectic_or_split(A: Algebra, J: LinMap, root_sign: int = 1):
    """A symplectic involution of ``A`` or a noninvertible element.

    ``J`` is an anti-automorphism.  ``J^2 = Int(alpha^-1)``; after rescaling
    ``alpha J(alpha) = 1`` the map ``Int(1 + alpha) o J`` is an involution, and
    an orthogonal one is turned symplectic by ``Int(y)`` with ``J'(y) = -y``.
    ``root_sign`` selects the square root of ``alpha J(alpha)``.
    """
    if J.src is None:
        J.src = A
    if J.dst is None:
        J.dst = A
    if not J.check_anti_multiplicative() or not J.check_bijective():
        raise ContractViolation("J is not an anti-automorphism")
    n = degree(A)
    if n < 2:
        raise ContractViolation("degree 1: nothing to do")
    F = A.field
    steps: list = []
    sigma = J.compose(J)
    sigma.src = sigma.dst = A
    w = skolem_noether(A, sigma)
    alpha = inverse(w)
    t = (alpha * J(alpha)).scalar_part()
    if t is None:
        raise ContractViolation("alpha J(alpha) is not central")
    steps.append({"step": "alpha", "t": F.format(t)})
    s = F.sqrt(t)
    if s is None:
        exact = not isinstance(F, Tower)
        steps.append({"step": "sqrt", "result": "nonsquare" if exact else "not found"})
        return ObstructionNonSquare(t, exact, steps)
    if root_sign < 0:
        s = F.neg(s)
    alpha = alpha.scale(F.inv(s))
    if alpha.scalar_part() is not None:
        Jp = Involution(A, J)
        steps.append({"step": "alpha", "result": "scalar"})
    else:
        beta = A.one + alpha
        if inverse(beta) is None:
            return _zero_divisor(beta, "beta", steps)
        Jp = inner_twist(J, beta)
        steps.append({"step": "beta", "result": "involution"})
    kind = classify_first_kind(Jp)
    steps.append({"step": "classify", "result": kind})
    if kind == SYMPLECTIC:
        return SymplecticInvolution(Jp, steps)
    _, minus = plus_minus_split(Jp)
    if not minus:
        raise ContractViolation("A- is zero")
    cands = list(minus) + [u + v for i, u in enumerate(minus) for v in minus[i + 1:]]
    for y in cands:
        if inverse(y) is not None:
            I = inner_twist(Jp, y)
            if classify_first_kind(I) != SYMPLECTIC:
                raise ContractViolation("Int(y) o J' is not symplectic")
            steps.append({"step": "y", "result": "symplectic"})
            return SymplecticInvolution(I, steps)
    return _zero_divisor(minus[0], "y", steps)


# --- multiset order ---------------------------------------------------------------------


def splitting_sequence_less(s, t) -> bool:
    """``s < t`` for the multiset order: compare sorted-descending lexicographically."""
    a = sorted(s, reverse=True)
    b = sorted(t, reverse=True)
    for x, y in zip(a, b):
        if x != y:
            return x < y
    return len(a) < len(b)


def parse_sequence(text: str) -> list:
    vals = [int(x) for x in text.replace(" ", "").split(",") if x]
    if any(v < 1 for v in vals):
        raise ValueError("sequence entries must be positive")
    return vals


def replace_step(seq, index: int, parts) -> list:
    """Replace ``seq[index]`` by smaller entries; the result is smaller in the order."""
    if any(p >= seq[index] for p in parts):
        raise ValueError("replacement entries must be smaller")
    return list(seq[:index]) + list(parts) + list(seq[index + 1:])


# --- a chained run over a finite field ----------------------------------------------


def tensor_conjugation(T: Algebra, qp: QuaternionPair) -> LinMap:
    """``conj (x) conj`` on ``T = Q1 (x) Q2`` in the basis ``q1_i q2_k``."""
    if not isinstance(qp.Q2, QuaternionParams):
        raise ContractViolation("second factor was not recognized as a quaternion algebra")
    F = T.field
    imgs = []
    for i, s in enumerate(qp.q1_basis):
        for k, t in enumerate(qp.q2_basis):
            z = s * t
            imgs.append(z if (i == 0) == (k == 0) else -z)
    C = qp.iso.src
    conj_c = LinMap.from_images(C, T, imgs)
    back = qp.iso.inverse()
    return LinMap(F, linalg.mat_mul(F, conj_c.matrix, back.matrix), T, T)


def finite_field_chain(p: int, g: int, abcd=(1, 1, 2, 1)) -> dict:
    """Corestriction, quaternion pair, conic points of both factors and the
    symplectic-or-split step on ``T`` over ``F_p``, where every quaternion
    algebra is split.  The splitting sequence goes ``[4] -> [2, 2] -> []``.
    """
    from .exactfield import GF
    from .quaternion import ConicPoint, conic_point

    F = GF(p)
    cr = corestriction(QuadExtData(F, g), *abcd)
    qp = quaternion_pair(cr)
    report = {"p": p, "g": g, "abcd": list(abcd), "dim_T": cr.T.dim}
    if isinstance(qp, ZeroDivisorWitness):
        report["pair"] = "zero divisor"
        return report
    report["Q1"] = str(qp.Q1)
    report["Q2"] = str(qp.Q2)
    pts = []
    for params in (qp.Q1, qp.Q2):
        if isinstance(params, QuaternionParams):
            pt = conic_point(params)
            pts.append(list(pt.as_tuple()) if isinstance(pt, ConicPoint) else None)
    report["conic_points"] = pts
    out = symplectic_or_split(cr.T, tensor_conjugation(cr.T, qp))
    report["symplectic_or_split"] = type(out).__name__
    seq = [[4], [2, 2], []]
    report["sequence"] = seq
    report["decreasing"] = all(splitting_sequence_less(seq[i + 1], seq[i]) for i in range(len(seq) - 1))
    return report
