"""Finitely generated rational cones.

A :class:`Cone` is stored by generators.  The facet description is computed on
demand: the facets of ``C`` are the extreme rays of the dual cone, and the
extreme rays of a cone cut out by linear inequalities are found by enumerating
the rank-deficient subsystems of active constraints.  Everything is exact;
inputs are desk-sized (``d <= 8``) so the combinatorial enumeration is cheap.

The cone of curves contracted by an iterate ``f^n`` is modelled as
``C & ker(M^n)`` for a rational matrix ``M``.  That is a model with rational
vectors in place of curve classes, not the real cone itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Matrix, nullspace, primitive, rank, row_basis, solve


class NotASubcone(ValueError):
    pass


class NotIncreasing(ValueError):
    def __init__(self, index):
        super().__init__("chain[%d] is not contained in chain[%d]" % (index, index + 1))
        self.index = index


class NotExtremal(ValueError):
    def __init__(self, index):
        super().__init__("chain[%d] is not an extremal subcone" % index)
        self.index = index


class DimensionMismatch(ValueError):
    pass


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _vec(v):
    return tuple(Fraction(x) for x in v)


def _det(rows):
    """Integer determinant by Bareiss fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _cross(rows, n):
    """Vector orthogonal to ``n - 1`` integer rows in Z^n (signed maximal minors)."""
    return [(-1) ** i * _det([r[:i] + r[i + 1:] for r in rows]) for i in range(n)]


def extreme_rays(ineqs, eqs, d):
    """Generators of ``{y in Q^d : a.y >= 0 for a in ineqs, b.y = 0 for b in eqs}``.

    Returns ``(lineality, rays)``: a basis of the lineality space and the
    extreme rays of the pointed part orthogonal to it, as primitive integer
    vectors.
    """
    ineqs = [primitive(a) for a in ineqs]
    eqs = [primitive(b) for b in eqs]
    lineality = [primitive(v) for v in nullspace([_vec(a) for a in ineqs + eqs], d)]
    fixed = [_vec(v) for v in eqs + lineality]
    # work in integer coordinates on W = {y : fixed . y = 0}
    w = [primitive(v) for v in nullspace(fixed, d)]
    k = len(w)
    if k == 0:
        return lineality, []
    a_w = [[_dot(a, wj) for wj in w] for a in ineqs]
    rays = set()
    for subset in itertools.combinations(range(len(ineqs)), k - 1):
        c = _cross([a_w[i] for i in subset], k)
        if not any(c):
            continue
        y = [sum(ci * wj[t] for ci, wj in zip(c, w)) for t in range(d)]
        for s in (1, -1):
            cand = [s * x for x in y]
            if all(_dot(a, cand) >= 0 for a in ineqs):
                rays.add(primitive(cand))
    return lineality, sorted(rays)


@dataclass(frozen=True)
class Subspace:
    d: int
    basis: tuple

    @classmethod
    def spanned_by(cls, vectors, d):
        return cls(d, tuple(primitive(v) for v in row_basis([_vec(v) for v in vectors])))

    @property
    def dim(self):
        return len(self.basis)

    def normals(self):
        """Basis of the orthogonal complement: ``W = {x : n.x = 0}``."""
        if not self.basis:
            return [tuple(int(i == j) for i in range(self.d)) for j in range(self.d)]
        return [primitive(v) for v in nullspace([_vec(v) for v in self.basis], self.d)]

    def __contains__(self, v):
        return all(_dot(nrm, v) == 0 for nrm in self.normals())

    def as_dict(self):
        return {"d": self.d, "basis": [list(v) for v in self.basis]}


@dataclass(frozen=True, init=False)
class Cone:
    d: int
    generators: tuple
    _facets: list = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __init__(self, d, generators=()):
        gens = []
        for g in generators:
            g = _vec(g)
            if len(g) != d:
                raise DimensionMismatch("generator %r does not live in Q^%d" % (g, d))
            if all(x == 0 for x in g):
                raise ValueError("cone generators must be nonzero")
            gens.append(primitive(g))
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "generators", tuple(sorted(set(gens))))
        object.__setattr__(self, "_facets", None)

    @classmethod
    def zero(cls, d):
        return cls(d, ())

    @classmethod
    def orthant(cls, d):
        return cls(d, [[int(i == j) for i in range(d)] for j in range(d)])

    @classmethod
    def from_constraints(cls, ineqs, eqs, d):
        lineality, rays = extreme_rays(ineqs, eqs, d)
        return cls(d, list(rays) + list(lineality) + [tuple(-x for x in v) for v in lineality])

    def facets(self):
        """``(ineqs, eqs)`` with ``C = {x : a.x >= 0, b.x = 0}``; ineqs are the facets."""
        if self._facets is None:
            lin, rays = extreme_rays(self.generators, [], self.d)
            object.__setattr__(self, "_facets", (rays, lin))
        return self._facets

    def __contains__(self, v):
        ineqs, eqs = self.facets()
        return all(_dot(b, v) == 0 for b in eqs) and all(_dot(a, v) >= 0 for a in ineqs)

    def contains_cone(self, other):
        return all(g in self for g in other.generators)

    def same_as(self, other):
        """Equality as sets (mutual containment of generators)."""
        return self.d == other.d and self.contains_cone(other) and other.contains_cone(self)

    def is_zero(self):
        return not self.generators

    def span(self):
        return span(self)

    def as_dict(self):
        return {"d": self.d, "generators": [list(g) for g in self.generators]}


def span(c: Cone) -> Subspace:
    """Linear span of the cone; every vector in it is a difference of cone elements."""
    return Subspace.spanned_by(c.generators, c.d)


def as_difference(c: Cone, v):
    """Write ``v`` in the span of ``c`` as ``x - y`` with ``x, y`` in ``c``.

    Returns ``None`` when ``v`` is outside the span.
    """
    v = _vec(v)
    if not c.generators:
        return ((Fraction(0),) * c.d,) * 2 if all(x == 0 for x in v) else None
    cols = [[_vec(g)[i] for g in c.generators] for i in range(c.d)]
    coef = solve(cols, list(v))
    if coef is None:
        return None
    x = [Fraction(0)] * c.d
    y = [Fraction(0)] * c.d
    for lam, g in zip(coef, c.generators):
        target = x if lam > 0 else y
        for i in range(c.d):
            target[i] += abs(lam) * g[i]
    return tuple(x), tuple(y)


def intersect_subspace(c: Cone, w: Subspace) -> Cone:
    """``C & W`` via the facet description of ``C`` plus the equations of ``W``."""
    if w.d != c.d:
        raise DimensionMismatch("subspace of Q^%d against cone in Q^%d" % (w.d, c.d))
    ineqs, eqs = c.facets()
    return Cone.from_constraints(ineqs, list(eqs) + list(w.normals()), c.d)


def minimal_face(c: Cone, t: Cone) -> Cone:
    """The smallest face of ``c`` containing the subcone ``t``."""
    ineqs, eqs = c.facets()
    tight = [a for a in ineqs if all(_dot(a, g) == 0 for g in t.generators)]
    return Cone.from_constraints(ineqs, list(eqs) + tight, c.d)


@dataclass
class Extremality:
    extremal: bool
    witness: tuple = None
    lemma_identity: bool = None

    def __bool__(self):
        return self.extremal

    def as_dict(self):
        out = {"extremal": self.extremal}
        if self.witness is not None:
            a, b = self.witness
            out["witness"] = {"a": [str(x) for x in a], "b": [str(x) for x in b]}
        if self.lemma_identity is not None:
            out["T_equals_C_cap_span_T"] = self.lemma_identity
        return out


def is_extremal(t: Cone, c: Cone) -> Extremality:
    """Decide whether ``t`` is an extremal subcone (a face) of ``c``.

    A subcone is extremal exactly when it equals the smallest face of ``c``
    containing it.  ``T = C & span(T)`` is necessary but not sufficient (a ray
    through the interior of a quadrant satisfies it), so it is only reported
    as ``lemma_identity``.  When ``t`` is not a face the result carries
    ``a, b`` in ``c`` with ``a + b`` in ``t`` and ``a`` outside ``t``.
    """
    if t.d != c.d:
        raise DimensionMismatch("cones live in different dimensions")
    for g in t.generators:
        if g not in c:
            raise NotASubcone("generator %r is not in the ambient cone" % (g,))
    face = minimal_face(c, t)
    if t.contains_cone(face):
        identity = intersect_subspace(c, span(t)).same_as(t)
        return Extremality(True, None, identity)

    outside = next(_vec(g) for g in reversed(face.generators) if g not in t)
    inner = tuple(sum((_vec(g)[i] for g in t.generators), Fraction(0)) for i in range(c.d))
    # largest step keeping inner - eps * outside inside c; inner is relatively
    # interior to the face, so eps > 0
    ineqs, _ = c.facets()
    ratios = [_dot(a, inner) / _dot(a, outside) for a in ineqs if _dot(a, outside) > 0]
    eps = min(ratios) if ratios else Fraction(1)
    a = tuple(eps * x for x in outside)
    b = tuple(x - y for x, y in zip(inner, a))
    return Extremality(False, (a, b), None)


def faces(c: Cone):
    """All faces of ``c``, from the generator/facet incidences."""
    ineqs, _ = c.facets()
    gens = c.generators
    full = frozenset(range(len(gens)))
    incid = [frozenset(i for i, g in enumerate(gens) if _dot(a, g) == 0) for a in ineqs]
    found = {full}
    frontier = [full]
    while frontier:
        new = []
        for s in frontier:
            for f in incid:
                x = s & f
                if x not in found:
                    found.add(x)
                    new.append(x)
        frontier = new
    return [Cone(c.d, [gens[i] for i in sorted(s)]) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]


def chain_stabilization(chain, c: Cone) -> int:
    """First position after which an increasing chain of faces of ``c`` is constant.

    Verifies that each member is extremal in ``c`` and contained in the next;
    span dimensions then increase strictly at every change, so there are at
    most ``d`` changes.
    """
    if not chain:
        raise ValueError("empty chain")
    for i, t in enumerate(chain):
        try:
            ok = is_extremal(t, c).extremal
        except NotASubcone:
            ok = False
        if not ok:
            raise NotExtremal(i)
    for i in range(len(chain) - 1):
        if not chain[i + 1].contains_cone(chain[i]):
            raise NotIncreasing(i)
    dims = [span(t).dim for t in chain]
    n = len(chain) - 1
    while n > 0 and chain[n - 1].same_as(chain[n]):
        n -= 1
    changes = sum(1 for i in range(len(chain) - 1) if not chain[i].same_as(chain[i + 1]))
    strict = all(dims[i] < dims[i + 1] for i in range(len(chain) - 1)
                 if not chain[i].same_as(chain[i + 1]))
    if not strict or changes > c.d:
        raise AssertionError("span dimensions of a face chain must rise at each change")
    return n


@dataclass
class RelativeChain:
    cones: list
    kernels: list
    cone_stable_at: int
    kernel_stable_at: int
    increasing: bool

    def as_dict(self):
        return {
            "chain": [c.as_dict() for c in self.cones],
            "kernel_dims": [k.dim for k in self.kernels],
            "cone_stable_at": self.cone_stable_at,
            "kernel_stable_at": self.kernel_stable_at,
            "increasing": self.increasing,
        }


def relative_cone_chain(c: Cone, m, nmax: int) -> RelativeChain:
    """``[C & ker(M), C & ker(M^2), ..., C & ker(M^nmax)]``.

    Stabilization indices are exponents ``n`` (1-based).  The kernel flag
    stabilizes by ``n = d``; the cone chain stabilizes no later.
    """
    m = m if isinstance(m, Matrix) else Matrix(m)
    if m.shape != (c.d, c.d):
        raise DimensionMismatch("matrix of shape %s against cone in Q^%d" % (m.shape, c.d))
    if nmax < 1:
        raise ValueError("nmax must be positive")
    horizon = max(nmax, c.d + 1)
    kernels, cones = [], []
    power = m
    for _ in range(horizon):
        kernels.append(Subspace.spanned_by(power.nullspace(), c.d))
        power = power @ m
    cones = [intersect_subspace(c, k) for k in kernels]
    increasing = all(cones[i + 1].contains_cone(cones[i]) for i in range(horizon - 1))

    def stable_at(seq, same):
        n = len(seq) - 1
        while n > 0 and same(seq[n - 1], seq[n]):
            n -= 1
        return n + 1

    kernel_stable = stable_at(kernels, lambda a, b: a.dim == b.dim)
    cone_stable = stable_at(cones, Cone.same_as)
    return RelativeChain(cones[:nmax], kernels[:nmax], cone_stable, kernel_stable, increasing)
