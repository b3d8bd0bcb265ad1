"""Dynamical systems on finite sets.

A :class:`FiniteMap` is a self-map of ``{0, ..., N-1}`` stored as a table.
Iterates are table compositions, so the cyclic subsemigroup generated by a map
lives in the full transformation monoid and is analysed with
:mod:`algdyn.semigroup`.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .semigroup import Element, OrbitProfile, analyze


class NotSurjective(ValueError):
    def __init__(self, name, missing):
        super().__init__("%s is not surjective: %r is not in its image" % (name, missing))
        self.witness = missing


class NotInjective(ValueError):
    def __init__(self, name, i, j):
        super().__init__("%s is not injective: %d and %d have the same image" % (name, i, j))
        self.witness = (i, j)


class NonPrimeField(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


class IllDefinedAtPoint(ValueError):
    def __init__(self, point):
        super().__init__("all coordinate polynomials vanish at %r" % (point,))
        self.witness = point


@dataclass(frozen=True, init=False)
class FiniteMap:
    table: tuple

    def __init__(self, table):
        table = tuple(int(t) for t in table)
        n = len(table)
        if n == 0:
            raise ValueError("a finite map needs at least one point")
        for i, t in enumerate(table):
            if not 0 <= t < n:
                raise ValueError("table[%d] = %d is out of range for size %d" % (i, t, n))
        object.__setattr__(self, "table", table)

    @property
    def size(self):
        return len(self.table)

    def __call__(self, i):
        return self.table[i]

    def __matmul__(self, other):
        """Composition ``self o other``."""
        t = self.table
        return FiniteMap(t[j] for j in other.table)

    def __pow__(self, k):
        if k == 0:
            return FiniteMap(range(self.size))
        return self.element().power(k)

    def image(self, subset=None):
        pts = range(self.size) if subset is None else subset
        return sorted({self.table[i] for i in pts})

    def restrict(self, subset):
        """Restriction to an invariant subset, as a dict point -> image."""
        return {i: self.table[i] for i in subset}

    def is_bijective(self):
        return len(set(self.table)) == self.size

    def element(self):
        return Element(self, compose, operator_eq)


def compose(f, g):
    return f @ g


def operator_eq(f, g):
    return f.table == g.table


@dataclass
class IterationReport:
    image_chain: list
    n_image: int
    eventual_image: list
    restriction_bijective: bool
    orbit: OrbitProfile

    def as_dict(self):
        return {
            "image_chain": self.image_chain,
            "N_image": self.n_image,
            "eventual_image": self.eventual_image,
            "restriction_bijective": self.restriction_bijective,
            "orbit": self.orbit.as_dict(),
        }


def image_chain(f: FiniteMap):
    """``[X, f(X), f^2(X), ...]`` up to and including the first repeated set."""
    chain = [list(range(f.size))]
    while True:
        nxt = f.image(chain[-1])
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def iterated_image(f: FiniteMap, budget=10**6) -> IterationReport:
    chain = image_chain(f)
    y = chain[-1]
    return IterationReport(
        image_chain=chain,
        n_image=len(chain) - 1,
        eventual_image=y,
        restriction_bijective=sorted(f.image(y)) == y,
        orbit=analyze(f.element(), budget),
    )


def verify_fny(f: FiniteMap, budget=10**6):
    """Check the eventual-image lemma on ``f``; returns ``(report, checks)``.

    For ``m = 1 .. order`` of ``f``: ``f^m(Y) = Y``, ``f|Y`` is a bijection and
    ``(f|Y)^m`` agrees with ``f^m`` on ``Y``.  The checks are theorems, so a
    failure here is a bug.
    """
    report = iterated_image(f, budget)
    y = report.eventual_image
    ys = set(y)
    f_y = f.restrict(y)
    checks = {"image_invariant": True, "restriction_bijective": report.restriction_bijective,
              "restriction_compatible": True}

    fm = f.table
    fy_m = dict(f_y)
    for m in range(1, report.orbit.order + 1):
        if m > 1:
            fm = tuple(f.table[j] for j in fm)
            fy_m = {i: f_y[v] for i, v in fy_m.items()}
        if sorted({fm[i] for i in y}) != y:
            checks["image_invariant"] = False
        if any(fm[i] != fy_m[i] or fy_m[i] not in ys for i in y):
            checks["restriction_compatible"] = False
    checks["chain_bound"] = report.n_image <= f.size - len(y)
    return report, checks


def product_construction(nu, h, j, base_size):
    """The map ``f(ytilde, z) = psi(nu(ytilde))`` with ``psi(y) = (h(y), j(y))``.

    ``nu`` maps ``Ytilde -> Y`` onto, ``h`` maps ``Y -> Ytilde`` with ``nu o h``
    onto ``Y``, and ``j`` embeds ``Y`` into the base set ``{0, .., base_size-1}``.  The state
    ``(ytilde, z)`` has index ``ytilde * base_size + z``.

    Returns ``(f, psi_image, checks)`` where ``psi_image`` is the sorted list of
    indices of ``psi(Y)``.
    """
    nu, h, j = list(nu), list(h), list(j)
    n_tilde, n_y = len(nu), len(h)
    if len(j) != n_y:
        raise ValueError("j must be defined on Y (length %d)" % n_y)
    if any(not 0 <= v < n_y for v in nu) or any(not 0 <= v < n_tilde for v in h):
        raise ValueError("nu or h has values out of range")
    if any(not 0 <= v < base_size for v in j):
        raise ValueError("j has values outside the base set")
    # onto-ness of nu o h is what the chain f(X) <= psi(Y) <= f(psi(Y)) needs;
    # asking h itself to be onto would force |Y| = |Ytilde| on finite sets
    for name, m in (("nu", nu), ("nu o h", [nu[v] for v in h])):
        missing = sorted(set(range(n_y)) - set(m))
        if missing:
            raise NotSurjective(name, missing[0])
    seen = {}
    for y, z in enumerate(j):
        if z in seen:
            raise NotInjective("j", seen[z], y)
        seen[z] = y

    def index(yt, z):
        return yt * base_size + z

    psi = [index(h[y], j[y]) for y in range(n_y)]
    f = FiniteMap(psi[nu[yt]] for yt in range(n_tilde) for _ in range(base_size))
    psi_y = sorted(set(psi))
    f_x = f.image()
    f_psi = f.image(psi_y)
    checks = {
        "image_in_psi": set(f_x) <= set(psi_y),
        "psi_in_image_of_psi": set(psi_y) <= set(f_psi),
    }
    chain = image_chain(f)
    checks["iterated_image_is_psi"] = chain[-1] == psi_y
    checks["n_image_at_most_1"] = len(chain) - 1 <= 1
    return f, psi_y, checks


# -- polynomial maps over prime fields -------------------------------------

_POLY_CHARS = re.compile(r"^[0-9x+\-*^()\s]*$")


def is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def parse_polys(polys, nvars):
    """Parse polynomial strings in ``x0 .. x{nvars-1}`` into term lists.

    Each result is a list of ``(exponents, coefficient)`` with integer
    coefficients.
    """
    import sympy
    from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

    xs = sympy.symbols("x0:%d" % nvars)
    names = {str(s): s for s in xs}
    out = []
    for text in polys:
        if not _POLY_CHARS.match(text):
            raise ValueError("bad characters in polynomial %r" % text)
        for var in re.findall(r"x\d+", text):
            if var not in names:
                raise ValueError("unknown variable %s in %r (have x0..x%d)" % (var, text, nvars - 1))
        expr = parse_expr(text, local_dict=names, global_dict={"Integer": sympy.Integer},
                          transformations=standard_transformations + (convert_xor,))
        poly = sympy.Poly(expr, *xs)
        if poly.domain != sympy.ZZ and not all(c.is_integer for c in poly.coeffs()):
            raise ValueError("non-integer coefficients in %r" % text)
        out.append([(tuple(e), int(c)) for e, c in poly.terms()])
    return out


def _eval(terms, point, p):
    s = 0
    for exps, c in terms:
        t = c
        for x, e in zip(point, exps):
            if e:
                t = t * pow(x, e, p)
        s += t
    return s % p


def affine_points(p, n):
    return list(itertools.product(range(p), repeat=n))


def projective_points(p, n):
    """Points of P^n(F_p) with first nonzero coordinate equal to 1, sorted."""
    pts = []
    for lead in range(n + 1):
        for tail in itertools.product(range(p), repeat=n - lead):
            pts.append((0,) * lead + (1,) + tail)
    return sorted(pts)


def normalize_projective(v, p):
    for x in v:
        if x % p:
            inv = pow(x, -1, p)
            return tuple(c * inv % p for c in v)
    return None


@dataclass
class PolynomialMap:
    fmap: FiniteMap
    points: list
    index: dict = field(repr=False)


def from_polynomial_map(p, n, polys, space="affine", max_points=10**6):
    """Tabulate a polynomial self-map of ``A^n(F_p)`` or ``P^n(F_p)``."""
    if not is_prime(p):
        raise NonPrimeField("%d is not prime" % p)
    if p > 10**4:
        raise ValueError("p must be at most 10^4")
    if space not in ("affine", "projective"):
        raise ValueError("space must be 'affine' or 'projective'")
    nvars = n if space == "affine" else n + 1
    if len(polys) != nvars:
        raise ValueError("expected %d polynomials, got %d" % (nvars, len(polys)))
    count = p**n if space == "affine" else (p**(n + 1) - 1) // (p - 1)
    if count > max_points:
        raise ValueError("%d points exceed the enumeration limit %d" % (count, max_points))
    terms = parse_polys(polys, nvars)

    if space == "affine":
        pts = affine_points(p, n)
        index = {pt: i for i, pt in enumerate(pts)}
        table = [index[tuple(_eval(t, pt, p) for t in terms)] for pt in pts]
    else:
        degs = set()
        for t in terms:
            d = {sum(e) for e, c in t if c % p}
            if len(d) > 1:
                raise NotHomogeneous("polynomial with monomials of degrees %s" % sorted(d))
            degs |= d
        if len(degs) > 1:
            raise NotHomogeneous("coordinate polynomials have different degrees %s" % sorted(degs))
        pts = projective_points(p, n)
        index = {pt: i for i, pt in enumerate(pts)}
        table = []
        for pt in pts:
            img = normalize_projective([_eval(t, pt, p) for t in terms], p)
            if img is None:
                raise IllDefinedAtPoint(pt)
            table.append(index[img])
    return PolynomialMap(FiniteMap(table), pts, index)


def to_dot(f: FiniteMap, labels=None, name="f"):
    """Functional graph of ``f`` in Graphviz DOT syntax."""
    lines = ["digraph %s {" % name]
    for i in range(f.size):
        label = str(i) if labels is None else "%d: %s" % (i, labels[i])
        lines.append('  %d [label="%s"];' % (i, label))
    for i, t in enumerate(f.table):
        lines.append("  %d -> %d;" % (i, t))
    lines.append("}")
    return "\n".join(lines) + "\n"
