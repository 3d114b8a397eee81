"""Exact scalar fields: the rationals, prime fields and triangular tower quotients.

Elements are plain hashable Python values ("raw" values) interpreted by a field
object: :class:`fractions.Fraction` for the rationals, ``int`` residues for prime
fields and nested tuples of coefficients for towers.  Every value is kept in a
canonical form, so equality of raw values is equality of field elements.

A tower ``K[x]/(P)`` is not assumed to be a field.  Inverting a nonzero element
that shares a factor with ``P`` raises :class:`ZeroDivisorFound`; the attached
:class:`ZeroDivisorWitness` carries the factor needed to split the tower into two
smaller quotients (see :func:`split_tower`).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence


class FieldMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class ZeroDivisorWitness:
    """A nonzero, noninvertible element found during a computation.

    For a field-level witness ``field`` is the tower level where inversion
    failed, ``factor`` the monic proper factor of that level's relation which
    divides the lifted element, and ``cofactor`` the relation divided by
    ``factor`` (so that ``element * cofactor == 0``).  For algebra-level
    witnesses ``element`` is an algebra element and the other slots are optional.
    """

    element: Any
    cofactor: Any = None
    field: Any = None
    factor: tuple | None = None
    context: str = ""


class ZeroDivisorFound(ArithmeticError):
    """Raised when an exact computation stumbles on a zero divisor."""

    def __init__(self, witness: ZeroDivisorWitness):
        super().__init__(f"zero divisor found ({witness.context or 'tower'})")
        self.witness = witness


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of the scalar domains."""

    zero: Any
    one: Any

    # subclasses provide add/sub/neg/mul/inv/from_int/format/parse

    def is_zero(self, a) -> bool:
        return a == self.zero

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def elem(self, value) -> "FieldElem":
        return FieldElem(self, self.convert(value))

    def convert(self, value):
        """Coerce ints, Fractions and strings into a raw element of this field."""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} is not {self}")
            return value.value
        if isinstance(value, (int, Fraction)):
            return self.from_fraction(Fraction(value))
        return value

    @property
    def depth(self) -> int:
        return 0

    @property
    def total_degree(self) -> int:
        return 1

    @property
    def base(self) -> "Field":
        return self

    @property
    def relations(self) -> tuple:
        return ()

    def is_exact_field(self) -> bool:
        """True when every nonzero element is known to be invertible."""
        return True


@dataclass(frozen=True)
class Rationals(Field):
    """The field Q, with raw elements :class:`~fractions.Fraction`."""

    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def from_int(self, n: int):
        return Fraction(n)

    def from_fraction(self, q: Fraction):
        return Fraction(q)

    def format(self, a) -> str:
        return str(a)

    def parse(self, obj) -> Fraction:
        if isinstance(obj, (int, Fraction)):
            return Fraction(obj)
        return Fraction(str(obj).strip())

    def to_str(self, a) -> str:
        return str(a)

    def random(self, rng: random.Random, bound: int = 3):
        return Fraction(rng.randint(-bound, bound))

    def sqrt(self, a):
        """Exact square root of ``a`` or ``None`` when ``a`` is not a square."""
        if a < 0:
            return None
        n, d = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
        if n is None or d is None:
            return None
        return Fraction(n, d)

    def __repr__(self):
        return "QQ"


@dataclass(frozen=True)
class PrimeField(Field):
    """The field F_p with raw elements the residues 0..p-1."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def characteristic(self):
        return self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def from_fraction(self, q: Fraction):
        return (q.numerator * pow(q.denominator, -1, self.p)) % self.p

    def format(self, a) -> str:
        return str(a)

    def parse(self, obj) -> int:
        if isinstance(obj, int):
            return obj % self.p
        return self.from_fraction(Fraction(str(obj).strip()))

    def to_str(self, a) -> str:
        return str(a)

    def random(self, rng: random.Random, bound: int = 0):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def sqrt(self, a):
        if a == 0:
            return 0
        if self.p == 2:
            return a
        if pow(a, (self.p - 1) // 2, self.p) != 1:
            return None
        for r in range(1, self.p):
            if r * r % self.p == a:
                return min(r, self.p - r)
        return None  # pragma: no cover

    def __repr__(self):
        return f"GF({self.p})"


# --- dense polynomial helpers on raw coefficient lists (low degree first) ----


def _trim(field: Field, f: list) -> list:
    while f and field.is_zero(f[-1]):
        f.pop()
    return f


def _padd(field, f, g):
    n = max(len(f), len(g))
    out = [field.add(f[i] if i < len(f) else field.zero, g[i] if i < len(g) else field.zero)
           for i in range(n)]
    return _trim(field, out)


def _psub(field, f, g):
    n = max(len(f), len(g))
    out = [field.sub(f[i] if i < len(f) else field.zero, g[i] if i < len(g) else field.zero)
           for i in range(n)]
    return _trim(field, out)


def _pscale(field, f, c):
    return _trim(field, [field.mul(c, x) for x in f])


def _pmul(field, f, g):
    if not f or not g:
        return []
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if field.is_zero(x):
            continue
        for j, y in enumerate(g):
            if not field.is_zero(y):
                out[i + j] = field.add(out[i + j], field.mul(x, y))
    return _trim(field, out)


def _pdivmod(field, f, g):
    """Quotient and remainder of ``f`` by ``g``; inverts the leading coefficient of ``g``."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    lc_inv = field.inv(g[-1])
    if len(r) <= dg:
        return [], r
    q = [field.zero] * (len(r) - dg)
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if field.is_zero(c):
            continue
        c = field.mul(c, lc_inv)
        q[k - dg] = c
        for j in range(dg + 1):
            r[k - dg + j] = field.sub(r[k - dg + j], field.mul(c, g[j]))
    return _trim(field, q), _trim(field, r[:dg])


def _reduce_monic(field, f, g):
    """Remainder of ``f`` modulo a monic ``g``; no inversion needed."""
    r = list(f)
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if field.is_zero(c):
            continue
        for j in range(dg):
            r[k - dg + j] = field.sub(r[k - dg + j], field.mul(c, g[j]))
        r[k] = field.zero
    return _trim(field, r[:dg])


def _pmonic(field, f):
    inv = field.inv(f[-1])
    return [field.mul(inv, c) for c in f]


def _pegcd(field, f, g):
    """Monic gcd ``d`` of ``f`` and ``g`` together with ``s`` such that ``s*f = d (mod g)``."""
    r0, r1 = list(g), list(f)
    t0, t1 = [], [field.one]
    while r1:
        q, r = _pdivmod(field, r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, _psub(field, t0, _pmul(field, q, t1))
    if not r0:
        return [], []
    inv = field.inv(r0[-1])
    return [field.mul(inv, c) for c in r0], _pscale(field, t0, inv)




@dataclass(frozen=True, eq=False, repr=False)
class Tower(Field):
    """The quotient ``below[X]/(rel)`` for a monic relation ``rel``.

    Raw elements are tuples of ``deg(rel)`` coefficients in ``below``, lowest
    degree first.  ``rel`` is a tuple of raw ``below`` coefficients.
    """

    below: Field
    rel: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        rel = tuple(self.below.convert(c) for c in self.rel)
        if len(rel) < 2:
            raise ValueError("tower relation must have degree >= 1")
        if rel[-1] != self.below.one:
            raise ValueError("tower relation must be monic")
        object.__setattr__(self, "rel", rel)
        if not self.name:
            object.__setattr__(self, "name", f"x{self.depth}")

    def __eq__(self, other):
        return isinstance(other, Tower) and self.below == other.below and self.rel == other.rel

    def __hash__(self):
        return hash((self.below, self.rel))

    @property
    def deg(self) -> int:
        return len(self.rel) - 1

    @property
    def zero(self):
        return (self.below.zero,) * self.deg

    @property
    def one(self):
        return (self.below.one,) + (self.below.zero,) * (self.deg - 1)

    @property
    def characteristic(self):
        return self.below.characteristic

    @property
    def depth(self) -> int:
        return self.below.depth + 1

    @property
    def total_degree(self) -> int:
        return self.deg * self.below.total_degree

    @property
    def base(self) -> Field:
        return self.below.base

    @property
    def relations(self) -> tuple:
        return self.below.relations + (Poly(self.below, self.rel),)

    def levels(self) -> list:
        """Tower levels from the top down, excluding the base field."""
        out, f = [], self
        while isinstance(f, Tower):
            out.append(f)
            f = f.below
        return out

    def is_exact_field(self) -> bool:
        return False

    def _pad(self, coeffs):
        coeffs = list(coeffs)
        return tuple(coeffs + [self.below.zero] * (self.deg - len(coeffs)))

    def add(self, a, b):
        s = self.below
        return tuple(s.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        s = self.below
        return tuple(s.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        s = self.below
        return tuple(s.neg(x) for x in a)

    def mul(self, a, b):
        s = self.below
        prod = _pmul(s, _trim(s, list(a)), _trim(s, list(b)))
        return self._pad(_reduce_monic(s, prod, self.rel))

    def inv(self, a):
        s = self.below
        f = _trim(s, list(a))
        if not f:
            raise ZeroDivisionError("inverse of 0")
        d, t = _pegcd(s, f, list(self.rel))
        if len(d) == 1:
            return self._pad(_reduce_monic(s, t, self.rel))
        cofactor, rem = _pdivmod(s, list(self.rel), d)
        assert not rem
        raise ZeroDivisorFound(ZeroDivisorWitness(
            element=a, cofactor=self._pad(cofactor), field=self,
            factor=tuple(d), context=f"tower level {self.name}"))

    def from_int(self, n: int):
        return self.embed(self.below.from_int(n))

    def from_fraction(self, q: Fraction):
        return self.embed(self.below.from_fraction(q))

    def embed(self, c):
        """Image of a raw element of ``below``."""
        return (c,) + (self.below.zero,) * (self.deg - 1)

    def embed_from(self, other: Field, a):
        """Image of a raw element of a lower level ``other`` of this tower."""
        if other == self:
            return a
        return self.embed(self.below.embed_from(other, a) if isinstance(self.below, Tower) else a)

    @property
    def gen(self):
        """The adjoined root as a raw element."""
        if self.deg == 1:
            return (self.below.neg(self.rel[0]),)
        return self._pad([self.below.zero, self.below.one])

    def format(self, a):
        return [self.below.format(c) for c in a]

    def parse(self, obj):
        if isinstance(obj, (int, Fraction)):
            return self.from_fraction(Fraction(obj))
        if isinstance(obj, str):
            text = obj.strip()
            if not text.startswith("["):
                return self.from_fraction(Fraction(text))
            import json
            obj = json.loads(text)
        coeffs = [self.below.parse(c) for c in obj]
        if len(coeffs) > self.deg:
            coeffs = _reduce_monic(self.below, _trim(self.below, coeffs), self.rel)
        return self._pad(coeffs)

    def to_str(self, a) -> str:
        terms = []
        for k, c in enumerate(a):
            if self.below.is_zero(c):
                continue
            cs = self.below.to_str(c)
            if k == 0:
                terms.append(cs)
                continue
            mono = self.name if k == 1 else f"{self.name}^{k}"
            if c == self.below.one:
                terms.append(mono)
            elif c == self.below.neg(self.below.one):
                terms.append("-" + mono)
            else:
                terms.append(f"({cs})*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def random(self, rng: random.Random, bound: int = 3):
        return tuple(self.below.random(rng, bound) for _ in range(self.deg))

    def coordinates(self, a) -> list:
        """Coordinates of ``a`` over the base field in the monomial basis."""
        if isinstance(self.below, Tower):
            return [x for c in a for x in self.below.coordinates(c)]
        return list(a)

    def from_coordinates(self, coords: Sequence):
        k = self.below.total_degree
        parts = [coords[i * k:(i + 1) * k] for i in range(self.deg)]
        if isinstance(self.below, Tower):
            return tuple(self.below.from_coordinates(p) for p in parts)
        return tuple(p[0] for p in parts)

    def in_base(self, a):
        """The base-field value of ``a`` when ``a`` lies in the base field, else ``None``."""
        if any(not self.below.is_zero(c) for c in a[1:]):
            return None
        return self.below.in_base(a[0]) if isinstance(self.below, Tower) else a[0]

    def sqrt(self, a):
        """Square root found in the base field only; ``None`` means "not found"."""
        b = self.in_base(a)
        if b is None:
            return None
        r = self.base.sqrt(b)
        return None if r is None else self.embed_from(self.base, r)

    def __repr__(self):
        return f"{self.below!r}[{self.name}]/({Poly(self.below, self.rel).to_str(self.name.upper())})"


class FieldElem:
    """A raw value bundled with its field; supports the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatchError(f"{other.field!r} is not {self.field!r}")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.value, self._coerce(other)))

    def __pow__(self, n: int):
        if n < 0:
            return FieldElem(self.field, self.field.pow(self.field.inv(self.value), -n))
        return FieldElem(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        try:
            return self.value == self._coerce(other)
        except (FieldMismatchError, ValueError, TypeError):
            return False

    def __hash__(self):
        return hash((self.field, self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __repr__(self):
        return self.field.to_str(self.value)


def field_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def field_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def field_neg(a: FieldElem) -> FieldElem:
    return -a


@dataclass(frozen=True)
class Inverse:
    value: Any


ZERO = "zero"


def invert_or_witness(field: Field, a):
    """Three-way inversion: ``Inverse(b)`` with ``a*b == 1``, ``ZERO``, or a witness."""
    if isinstance(a, FieldElem):
        field, a = a.field, a.value
    if field.is_zero(a):
        return ZERO
    try:
        return Inverse(field.inv(a))
    except ZeroDivisorFound as exc:
        return exc.witness


@dataclass(frozen=True, eq=False)
class Poly:
    """Dense univariate polynomial over ``field``, coefficients lowest degree first."""

    field: Field
    coeffs: tuple

    def __post_init__(self):
        c = [self.field.convert(x) for x in self.coeffs]
        object.__setattr__(self, "coeffs", tuple(_trim(self.field, c)))

    @classmethod
    def from_ints(cls, field: Field, coeffs) -> "Poly":
        return cls(field, tuple(field.convert(c) for c in coeffs))

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (field.zero, field.one))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def lc(self):
        return self.coeffs[-1]

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def _other(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatchError("polynomials over different fields")
            return other
        return Poly(self.field, (self.field.convert(other),))

    def __add__(self, other):
        return Poly(self.field, tuple(_padd(self.field, list(self.coeffs), list(self._other(other).coeffs))))

    __radd__ = __add__

    def __sub__(self, other):
        return Poly(self.field, tuple(_psub(self.field, list(self.coeffs), list(self._other(other).coeffs))))

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return Poly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __mul__(self, other):
        return Poly(self.field, tuple(_pmul(self.field, list(self.coeffs), list(self._other(other).coeffs))))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly(self.field, (self.field.one,))
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        q, r = _pdivmod(self.field, list(self.coeffs), list(self._other(other).coeffs))
        return Poly(self.field, tuple(q)), Poly(self.field, tuple(r))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        return Poly(self.field, tuple(_pmonic(self.field, list(self.coeffs))))

    def scale(self, c) -> "Poly":
        return Poly(self.field, tuple(self.field.mul(c, x) for x in self.coeffs))

    def __call__(self, x):
        """Horner evaluation at a raw field value."""
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, x), c)
        return acc

    def map_coeffs(self, fn: Callable, field: Field) -> "Poly":
        return Poly(field, tuple(fn(c) for c in self.coeffs))

    def to_str(self, var: str = "X") -> str:
        if not self.coeffs:
            return "0"
        f = self.field
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if f.is_zero(c):
                continue
            cs = f.to_str(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                terms.append(cs)
            elif c == f.one:
                terms.append(mono)
            elif c == f.neg(f.one):
                terms.append("-" + mono)
            else:
                if " " in cs:
                    cs = f"({cs})"
                terms.append(f"{cs}*{mono}")
        out = " + ".join(terms)
        return out.replace("+ -", "- ")

    def format(self) -> list:
        return [self.field.format(c) for c in self.coeffs]

    def __repr__(self):
        return f"Poly({self.to_str()})"


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd of ``f`` and ``g``.

    Over a tower the Euclidean algorithm may need to invert a leading
    coefficient that is a zero divisor; :class:`ZeroDivisorFound` is raised then.
    """
    if f.field != g.field:
        raise FieldMismatchError("polynomials over different fields")
    field = f.field
    a, b = list(f.coeffs), list(g.coeffs)
    while b:
        _, r = _pdivmod(field, a, b)
        a, b = b, r
    if not a:
        return Poly(field, ())
    return Poly(field, tuple(_pmonic(field, a)))


def adjoin_root(desc: Field, f: Poly, name: str = "") -> Tower:
    """The tower ``desc[x]/(f)`` in which the new generator is a root of ``f``."""
    if f.field != desc:
        raise FieldMismatchError("relation must have coefficients in the field being extended")
    if f.degree < 1 or not f.is_monic():
        raise ValueError("adjoin_root needs a monic polynomial of degree >= 1")
    return Tower(desc, f.coeffs, name=name)


def _reducer(old: Field, new: Field, level: Tower) -> Callable:
    """Map raw elements of ``old`` into ``new``, where ``new`` differs from ``old``
    by replacing the relation at ``level`` with one of its factors."""
    if old == level:
        below, rel, deg = new.below, new.rel, new.deg

        def reduce_split(a):
            r = _reduce_monic(below, _trim(below, list(a)), rel)
            return tuple(r + [below.zero] * (deg - len(r)))
        return reduce_split
    if not isinstance(old, Tower):
        return lambda a: a
    inner = _reducer(old.below, new.below, level)
    return lambda a: tuple(inner(c) for c in a)


def _rebuild(old: Field, level: Tower, replacement: Tower) -> Field:
    if old == level:
        return replacement
    if not isinstance(old, Tower):
        raise ValueError("witness level is not part of this tower")
    new_below = _rebuild(old.below, level, replacement)
    mapper = _reducer(old.below, new_below, level)
    return Tower(new_below, tuple(mapper(c) for c in old.rel), name=old.name)


@dataclass(frozen=True)
class TowerSplit:
    """The two branches produced by :func:`split_tower` and their reduction maps."""

    first: Field
    second: Field
    to_first: Callable
    to_second: Callable
    level: Tower
    factor: tuple
    cofactor_poly: tuple


def split_tower(desc: Field, w: ZeroDivisorWitness) -> TowerSplit:
    """Split ``desc`` along the factorisation exposed by a tower witness.

    The relation ``P`` at the witness level is replaced by the gcd ``d`` in the
    first branch and by ``P/d`` in the second; higher relations are reduced
    into each branch.
    """
    level = w.field
    if not isinstance(level, Tower) or w.factor is None:
        raise ValueError("witness does not come from a tower relation")
    if not isinstance(desc, Tower) or level not in desc.levels():
        raise ValueError("witness level is not part of this tower")
    below = level.below
    d = list(w.factor)
    e, rem = _pdivmod(below, list(level.rel), d)
    if rem:
        raise ValueError("witness factor does not divide the relation")
    if len(d) < 2 or len(e) < 2:
        raise ValueError("witness factor is not a proper factor")
    e = _pmonic(below, e)
    b1 = Tower(below, tuple(d), name=level.name)
    b2 = Tower(below, tuple(e), name=level.name)
    new1 = _rebuild(desc, level, b1)
    new2 = _rebuild(desc, level, b2)
    return TowerSplit(new1, new2, _reducer(desc, new1, level), _reducer(desc, new2, level),
                      level, tuple(d), tuple(e))


def collapse_linear(desc: Field):
    """Drop degree-one relations; returns the smaller tower and the element map."""
    if not isinstance(desc, Tower):
        return desc, (lambda a: a)
    new_below, below_map = collapse_linear(desc.below)
    if desc.deg == 1:
        return new_below, (lambda a: below_map(a[0]))
    new = Tower(new_below, tuple(below_map(c) for c in desc.rel), name=desc.name)
    return new, (lambda a: tuple(below_map(c) for c in a))


# --- serialization ------------------------------------------------------------


def field_to_json(desc: Field) -> dict:
    if isinstance(desc, Rationals):
        return {"kind": "rationals"}
    if isinstance(desc, PrimeField):
        return {"kind": "prime", "p": desc.p}
    rels = []
    for level in reversed(desc.levels()):
        rels.append([level.below.format(c) for c in level.rel])
    return {"kind": "tower", "base": field_to_json(desc.base), "relations": rels}


def field_from_json(obj: dict) -> Field:
    kind = obj.get("kind")
    if kind == "rationals":
        return Rationals()
    if kind == "prime":
        return PrimeField(int(obj["p"]))
    if kind == "tower":
        f = field_from_json(obj["base"])
        for rel in obj["relations"]:
            f = Tower(f, tuple(f.parse(c) for c in rel))
        return f
    raise ValueError(f"unknown field kind {kind!r}")


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
