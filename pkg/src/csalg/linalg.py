"""Exact linear algebra over the scalar fields of :mod:`csalg.exactfield`.

Matrices are lists of rows of raw field values.  Over the rationals the
elimination is fraction free: rows are scaled to primitive integer vectors and
combined with integer multipliers, so no denominators appear until the final
normalisation.  Other fields use ordinary Gauss-Jordan elimination; over a
tower a pivot that turns out to be a zero divisor raises
:class:`~csalg.exactfield.ZeroDivisorFound` and the caller decides how to split.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactfield import Field, Rationals

# Large prime used for the modular full-rank certificate.
_CERT_PRIME = 2_147_483_629


def _int_row(row: Sequence) -> dict:
    """Sparse primitive integer row proportional to ``row`` (a sequence of Fractions)."""
    den = 1
    for v in row:
        if v:
            den = den * v.denominator // math.gcd(den, v.denominator)
    out = {}
    for j, v in enumerate(row):
        if v:
            out[j] = v.numerator * (den // v.denominator)
    return _primitive(out)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {j: v // g for j, v in row.items()}
    if row and row[min(row)] < 0:
        row = {j: -v for j, v in row.items()}
    return row


def _combine(r: dict, p: dict, c: int) -> dict:
    """Eliminate column ``c`` of ``r`` using row ``p``: ``p[c]*r - r[c]*p``."""
    a, b = p[c], r[c]
    g = math.gcd(a, b)
    a, b = a // g, b // g
    out = {j: a * v for j, v in r.items()}
    for j, v in p.items():
        w = out.get(j, 0) - b * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return _primitive(out)


def _rref_rational(rows: Sequence[Sequence], ncols: int):
    work = [_int_row(r) for r in rows]
    work = [r for r in work if r]
    work.sort(key=len)
    pivots: dict = {}
    for r in work:
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                break
            r = _combine(r, p, c)
        if r:
            pivots[min(r)] = r
    cols = sorted(pivots)
    # back substitution, highest pivot first
    for idx in range(len(cols) - 1, -1, -1):
        c = cols[idx]
        p = pivots[c]
        for c2 in cols[:idx]:
            r = pivots[c2]
            if c in r:
                pivots[c2] = _combine(r, p, c)
    out = []
    for c in cols:
        r = pivots[c]
        lead = r[c]
        dense = [Fraction(0)] * ncols
        for j, v in r.items():
            dense[j] = Fraction(v, lead)
        out.append(dense)
    return out, cols


def _rref_generic(field: Field, rows: Sequence[Sequence], ncols: int):
    zero = field.zero
    work = []
    for r in rows:
        d = {j: v for j, v in enumerate(r) if not field.is_zero(v)}
        if d:
            work.append(d)
    work.sort(key=len)
    pivots: dict = {}
    for r in work:
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                break
            f = r[c]
            for j, v in p.items():
                w = field.sub(r.get(j, zero), field.mul(f, v))
                if field.is_zero(w):
                    r.pop(j, None)
                else:
                    r[j] = w
        if r:
            c = min(r)
            inv = field.inv(r[c])
            pivots[c] = {j: field.mul(inv, v) for j, v in r.items()}
    cols = sorted(pivots)
    for idx in range(len(cols) - 1, -1, -1):
        c = cols[idx]
        p = pivots[c]
        for c2 in cols[:idx]:
            r = pivots[c2]
            f = r.get(c)
            if f is None:
                continue
            for j, v in p.items():
                w = field.sub(r.get(j, zero), field.mul(f, v))
                if field.is_zero(w):
                    r.pop(j, None)
                else:
                    r[j] = w
    out = []
    for c in cols:
        dense = [zero] * ncols
        for j, v in pivots[c].items():
            dense[j] = v
        out.append(dense)
    return out, cols


def rref(field: Field, rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` lists the nonzero rows (each with a 1 in
    its pivot column and zeros in the other pivot columns) and ``pivots`` the
    pivot column indices in increasing order.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if isinstance(field, Rationals):
        return _rref_rational(rows, ncols)
    return _rref_generic(field, rows, ncols)


def _modp_full_rank(rows: Sequence[Sequence], ncols: int) -> bool:
    """True when the rational matrix has rank ``min(#rows, ncols)`` modulo a large prime.

    The rank modulo p never exceeds the rank over Q, so ``True`` certifies full
    rank over Q.  ``False`` is inconclusive.
    """
    p = _CERT_PRIME
    m = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                if v.denominator % p == 0:
                    return False
                m[i, j] = v.numerator % p * pow(v.denominator, -1, p) % p
    target = min(m.shape)
    r = 0
    for c in range(ncols):
        if r == m.shape[0]:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = m[r] * inv % p
        below = m[r + 1:, c].copy()
        nzb = np.nonzero(below)[0]
        if nzb.size:
            idx = r + 1 + nzb
            # split the product to stay inside int64
            lo = m[r] & 0xFFFF
            hi = m[r] >> 16
            f = below[nzb][:, None]
            upd = ((f * hi % p) * 65536 + f * lo) % p
            m[idx] = (m[idx] - upd) % p
        r += 1
    return r == target


def rank(field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> int:
    """Exact rank of a matrix."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows or not ncols:
        return 0
    if isinstance(field, Rationals) and _modp_full_rank(rows, ncols):
        return min(len(rows), ncols)
    return len(rref(field, rows, ncols)[1])


def kernel(field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> list:
    """Basis of the right null space ``{v : M v = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(field, rows, ncols)
    pset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for row, c in zip(R, piv):
            if not field.is_zero(row[f]):
                v[c] = field.neg(row[f])
        basis.append(v)
    return basis


def solve(field: Field, rows: Sequence[Sequence], rhs: Sequence, ncols: int | None = None):
    """One solution ``x`` of ``M x = rhs`` (free variables set to 0), or ``None``."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, piv = rref(field, aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for row, c in zip(R, piv):
        x[c] = row[ncols]
    return x


def transpose(rows: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*rows)]


def mat_mul(field: Field, a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = transpose(b)
    out = []
    for row in a:
        nz = [(k, v) for k, v in enumerate(row) if not field.is_zero(v)]
        out.append([field.sum(field.mul(v, col[k]) for k, v in nz) for col in bt])
    return out


def mat_vec(field: Field, a: Sequence[Sequence], v: Sequence) -> list:
    nz = [(k, x) for k, x in enumerate(v) if not field.is_zero(x)]
    return [field.sum(field.mul(row[k], x) for k, x in nz) for row in a]


def identity(field: Field, n: int) -> list:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def det(field: Field, rows: Sequence[Sequence]):
    """Determinant by elimination (divides, so a tower may raise a witness)."""
    n = len(rows)
    m = [list(r) for r in rows]
    d = field.one
    for c in range(n):
        k = next((i for i in range(c, n) if not field.is_zero(m[i][c])), None)
        if k is None:
            return field.zero
        if k != c:
            m[c], m[k] = m[k], m[c]
            d = field.neg(d)
        piv = m[c][c]
        d = field.mul(d, piv)
        inv = field.inv(piv)
        for i in range(c + 1, n):
            f = field.mul(m[i][c], inv)
            if field.is_zero(f):
                continue
            m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[c])]
    return d


def charpoly(field: Field, rows: Sequence[Sequence]) -> list:
    """Characteristic polynomial ``det(X I - M)`` by Berkowitz's division-free algorithm.

    Coefficients are returned lowest degree first (monic of degree ``n``).
    """
    n = len(rows)
    if n == 0:
        return [field.one]
    # column-vector recursion on leading principal submatrices
    vect = [field.one, field.neg(rows[0][0])]
    for r in range(1, n):
        # R = row r, columns < r ; C = column r, rows < r ; A = leading r x r block
        R = rows[r][:r]
        C = [rows[i][r] for i in range(r)]
        A = [row[:r] for row in rows[:r]]
        a = rows[r][r]
        # Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
        col = [field.one, field.neg(a)]
        w = C
        for _ in range(r):
            col.append(field.neg(field.sum(field.mul(x, y) for x, y in zip(R, w))))
            w = mat_vec(field, A, w)
        new = []
        for i in range(r + 2):
            acc = field.zero
            for j in range(min(i, r) + 1):
                acc = field.add(acc, field.mul(col[i - j], vect[j]))
            new.append(acc)
        vect = new
    # vect holds coefficients highest degree first
    return list(reversed(vect))


class SpanCoordinates:
    """Coordinates with respect to a fixed list of linearly independent vectors.

    ``coords(v)`` returns the coefficients ``x`` with ``v = sum x_i basis[i]``
    and raises :class:`ValueError` when ``v`` is not in the span.
    """

    def __init__(self, field: Field, basis: Sequence[Sequence]):
        self.field = field
        self.basis = [list(b) for b in basis]
        k = len(self.basis)
        n = len(self.basis[0]) if k else 0
        self.n = n
        aug = [b + [field.one if i == j else field.zero for j in range(k)]
               for i, b in enumerate(self.basis)]
        R, piv = rref(field, aug, n + k)
        if len(piv) != k or (piv and piv[-1] >= n):
            raise ValueError("vectors are linearly dependent")
        self._piv = piv
        self._rows = [r[:n] for r in R]
        self._trans = [r[n:] for r in R]

    def __call__(self, v: Sequence) -> list:
        f = self.field
        y = [v[c] for c in self._piv]
        # membership: v must equal sum y_j R_j
        nzy = [(j, yj) for j, yj in enumerate(y) if not f.is_zero(yj)]
        for col in range(self.n):
            acc = f.sum(f.mul(yj, self._rows[j][col]) for j, yj in nzy)
            if acc != v[col]:
                raise ValueError("vector is not in the span")
        k = len(self.basis)
        return [f.sum(f.mul(yj, self._trans[j][i]) for j, yj in nzy) for i in range(k)]

    def contains(self, v: Sequence) -> bool:
        try:
            self(v)
        except ValueError:
            return False
        return True


def independent_subset(field: Field, vectors: Sequence[Sequence]) -> list:
    """Indices of the greedy maximal independent subset (lowest indices win)."""
    if not vectors:
        return []
    return rref(field, transpose(vectors), len(vectors))[1]
