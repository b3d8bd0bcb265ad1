"""Exact linear algebra over Q and prime fields.

Matrices are immutable tuples of rows.  Entries are :class:`fractions.Fraction`
over Q and :class:`Mod` over F_p; every routine below only uses ``+ - * /``
and comparison with zero, so the same elimination code serves both fields.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd


class Mod:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.p = p
        self.v = int(v) % p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError("mixing residues of different primes")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Mod(other, self.p) / self

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pow__(self, k):
        return Mod(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "Mod(%d, %d)" % (self.v, self.p)


def scalar(x, field=None):
    """Coerce ``x`` (int, Fraction, ``"p/q"`` string, Mod) into ``field``.

    ``field`` is ``None`` for Q or a prime ``p`` for F_p.
    """
    if isinstance(x, Mod):
        if field is None or field != x.p:
            raise ValueError("residue mod %d used over a different field" % x.p)
        return x
    if isinstance(x, float):
        raise TypeError("floating point entries are not allowed; use 'p/q' strings")
    q = Fraction(x)
    if field is None:
        return q
    return Mod(0, field) + q


def zero(field=None):
    return Fraction(0) if field is None else Mod(0, field)


def one(field=None):
    return Fraction(1) if field is None else Mod(1, field)


class Matrix:
    """Immutable exact matrix over Q (``field=None``) or F_p (``field=p``)."""

    __slots__ = ("rows", "field", "_hash")

    def __init__(self, rows, field=None):
        rows = tuple(tuple(scalar(x, field) for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = rows
        self.field = field
        self._hash = None

    @classmethod
    def identity(cls, n, field=None):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def zeros(cls, nrows, ncols=None, field=None):
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)], field)

    @classmethod
    def from_columns(cls, cols, nrows, field=None):
        if not cols:
            return cls([[] for _ in range(nrows)], field)
        return cls([[c[i] for c in cols] for i in range(nrows)], field)

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @property
    def n(self):
        nrows, ncols = self.shape
        if nrows != ncols:
            raise ValueError("matrix is not square")
        return nrows

    def is_square(self):
        nrows, ncols = self.shape
        return nrows == ncols

    def columns(self):
        nrows, ncols = self.shape
        return [tuple(self.rows[i][j] for i in range(nrows)) for j in range(ncols)]

    def transpose(self):
        return Matrix(self.columns(), self.field)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.shape[1] != other.shape[0]:
                raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
            cols = other.columns()
            return Matrix([[_dot(r, c, self.field) for c in cols] for r in self.rows], self.field)
        return tuple(_dot(r, other, self.field) for r in self.rows)

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field)

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.field)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows], self.field)

    def scale(self, c):
        c = scalar(c, self.field)
        return Matrix([[c * a for a in r] for r in self.rows], self.field)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.n, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, tuple(tuple(_key(x) for x in r) for r in self.rows)))
        return self._hash

    def __repr__(self):
        return "Matrix(%s%s)" % (self.tolist(), "" if self.field is None else ", field=%d" % self.field)

    def tolist(self):
        """Entries as JSON-friendly values: ints where integral, else ``"p/q"``."""
        return [[to_json_scalar(x) for x in r] for r in self.rows]

    def rank(self):
        return len(rref(self.rows, self.field)[1])

    def nullspace(self):
        return nullspace(self.rows, self.shape[1], self.field)

    def column_basis(self):
        """Pivot columns of the matrix: a basis of its column span."""
        _, pivots = rref(self.rows, self.field)
        cols = self.columns()
        return [cols[j] for j in pivots]

    def inverse(self):
        n = self.n
        aug = [list(r) + [one(self.field) if i == j else zero(self.field) for j in range(n)]
               for i, r in enumerate(self.rows)]
        red, pivots = rref(aug, self.field)
        if pivots != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix([r[n:] for r in red[:n]], self.field)

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)


def _key(x):
    return x.v if isinstance(x, Mod) else x


def _dot(u, v, field=None):
    s = zero(field)
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def to_json_scalar(x):
    if isinstance(x, Mod):
        return x.v
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return "%d/%d" % (x.numerator, x.denominator)


def rref(rows, field=None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = one(field) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(vectors, field=None):
    vectors = list(vectors)
    if not vectors:
        return 0
    return len(rref(vectors, field)[1])


def nullspace(rows, ncols, field=None):
    """Basis of ``{x : rows @ x = 0}`` as a list of tuples of length ``ncols``."""
    rows = [r for r in rows]
    if not rows:
        return [tuple(one(field) if i == j else zero(field) for i in range(ncols)) for j in range(ncols)]
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero(field)] * ncols
        v[fc] = one(field)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(tuple(v))
    return basis


def row_basis(vectors, field=None):
    """Nonzero rows of the RREF: a canonical basis of the span of ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    red, pivots = rref(vectors, field)
    return [tuple(r) for r in red[:len(pivots)]]


def in_span(v, basis, field=None):
    if not basis:
        return all(x == 0 for x in v)
    return rank(list(basis) + [tuple(v)], field) == rank(basis, field)


def solve(A, b, field=None):
    """One solution ``x`` of ``A x = b`` (``A`` given as rows), or ``None``."""
    ncols = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    red, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [zero(field)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][ncols]
    return tuple(x)


def coordinates(v, basis, field=None):
    """Coordinates of ``v`` in the (independent) ``basis``; ``None`` if outside."""
    if not basis:
        return () if all(x == 0 for x in v) else None
    d = len(v)
    A = [[basis[j][i] for j in range(len(basis))] for i in range(d)]
    return solve(A, list(v), field)


def primitive(v):
    """Scale a rational vector to the primitive integer vector with the same direction."""
    v = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, (abs(i) for i in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)
