"""Linear model of a dynamical system: an exact square matrix ``f``.

The eventual image of ``f`` (the stable column span of its powers) and the
eventual kernel split the space.  The projection ``e`` onto the eventual image
along the eventual kernel is the idempotent of the closed semigroup generated
by ``f``, ``g = e f`` generates its group part, and ``m`` is the first positive
power whose image is stable.

This verifies the monoid combinatorics of the tail/group decomposition on
matrices.  It does not compute Zariski closures of matrix semigroups.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .linalg import Matrix, coordinates, in_span, rank, solve, to_json_scalar
from .semigroup import Element, OrbitProfile, analyze, kernel_group


class MalformedMatrix(ValueError):
    pass


class NotInvertibleOnImage(ValueError):
    pass


@dataclass(frozen=True)
class FittingData:
    m: int
    image_basis: list
    kernel_basis: list
    e: Matrix
    g: Matrix

    def as_dict(self):
        vec = lambda v: [to_json_scalar(x) for x in v]
        return {
            "m": self.m,
            "image_basis": [vec(v) for v in self.image_basis],
            "kernel_basis": [vec(v) for v in self.kernel_basis],
            "e": self.e.tolist(),
            "g": self.g.tolist(),
        }


def as_matrix(f, field=None) -> Matrix:
    if isinstance(f, Matrix):
        m = f
    else:
        m = Matrix(f, field)
    if not m.rows or not m.is_square():
        raise MalformedMatrix("expected a non-empty square matrix, got shape %s" % (m.shape,))
    return m


def fitting(f) -> FittingData:
    """Eventual-image decomposition of ``f``."""
    f = as_matrix(f)
    n, field = f.n, f.field
    power = f
    r = power.rank()
    m = 1
    while True:
        nxt = power @ f
        r_next = nxt.rank()
        if r_next == r:
            break
        power, r, m = nxt, r_next, m + 1
    image = power.column_basis()
    kernel = power.nullspace()
    basis = Matrix.from_columns(image + kernel, n, field)
    keep = Matrix([[1 if i == j and i < len(image) else 0 for j in range(n)] for i in range(n)], field)
    e = basis @ keep @ basis.inverse()
    return FittingData(m=m, image_basis=image, kernel_basis=kernel, e=e, g=e @ f)


def restriction(g: Matrix, basis) -> Matrix:
    """Matrix of ``g`` on the invariant subspace spanned by ``basis``."""
    cols = []
    for v in basis:
        c = coordinates(g @ v, basis, g.field)
        if c is None:
            raise ValueError("subspace is not invariant under the matrix")
        cols.append(c)
    return Matrix.from_columns(cols, len(basis), g.field)


def check_fitting(f, data: FittingData):
    """All the exact identities a :class:`FittingData` must satisfy."""
    f = as_matrix(f)
    n, field = f.n, f.field
    e, g, m = data.e, data.g, data.m
    fm = f ** m
    checks = {
        "m_bounds": 1 <= m <= n,
        "image_stable": fm.rank() == (fm @ f).rank(),
        "m_minimal": all((f ** k).rank() != (f ** (k + 1)).rank() for k in range(1, m)),
        "direct_sum": rank(data.image_basis + data.kernel_basis, field) == n
        and len(data.image_basis) + len(data.kernel_basis) == n,
        "rank_nullity": fm.rank() + len(fm.nullspace()) == n,
        "idempotent": e @ e == e,
        "commutes": e @ f == f @ e,
        "absorbs_powers": all(e @ (f ** k) == f ** k for k in range(m, m + n + 1)),
        "g_is_ef": g == e @ f,
        "image_matches": all(in_span(v, fm.columns(), field) for v in data.image_basis),
        "g_invertible_on_image": restriction(g, data.image_basis).rank() == len(data.image_basis)
        if data.image_basis else True,
    }
    return checks


def nilpotency_index_on_kernel(f, data: FittingData):
    """Smallest ``k >= 1`` with ``f^k`` vanishing on the eventual kernel."""
    f = as_matrix(f)
    if not data.kernel_basis:
        return 1
    k, power = 1, f
    while not all(all(x == 0 for x in power @ v) for v in data.kernel_basis):
        k += 1
        power = power @ f
    return k


# -- torsion -----------------------------------------------------------------

def minimal_polynomial(a: Matrix):
    """Monic minimal polynomial, coefficients from the constant term upward."""
    n, field = a.n, a.field
    flat = lambda mat: [x for r in mat.rows for x in r]
    powers = [flat(Matrix.identity(n, field))]
    cur = Matrix.identity(n, field)
    while True:
        cur = cur @ a
        target = flat(cur)
        cols = [[p[i] for p in powers] for i in range(n * n)]
        sol = solve(cols, target, field)
        if sol is not None:
            return [-c for c in sol] + [1]
        powers.append(target)


def _cyclotomic_orders(n):
    """All ``d`` with Euler phi(d) <= n."""
    from sympy import totient

    # phi(d) >= sqrt(d / 2), so d <= 2 n^2 covers every candidate
    return [d for d in range(1, 2 * n * n + 3) if totient(d) <= n]


def is_torsion(g, basis=None):
    """Order of ``g`` on an invariant subspace, or ``None`` if infinite.

    ``basis`` defaults to the eventual image of ``g``, where ``g`` is always
    invertible; a given basis must span a ``g``-invariant subspace on which
    ``g`` is invertible.  Over Q the answer comes from the minimal polynomial:
    ``g`` has finite order exactly when it is squarefree and a product of
    cyclotomic polynomials, and the order is the lcm of their indices.  Over
    F_p the restriction is invertible of finite order, found by powering.
    """
    g = as_matrix(g)
    if basis is None:
        basis = fitting(g).image_basis
    if not basis:
        return 1
    a = restriction(g, basis)
    if a.rank() != a.n:
        raise NotInvertibleOnImage("matrix is singular on the given subspace")
    if a.field is not None:
        return analyze(Element(a, _mul), budget=a.field ** (a.n * a.n)).period

    import sympy

    x = sympy.Symbol("x")
    mp = sympy.Poly(list(reversed(minimal_polynomial(a))), x, domain=sympy.QQ)
    order = 1
    for d in _cyclotomic_orders(a.n):
        phi = sympy.Poly(sympy.cyclotomic_poly(d, x), x, domain=sympy.QQ)
        q, r = mp.div(phi)
        if r.is_zero:
            mp = q
            order = lcm(order, d)
            if mp.div(phi)[1].is_zero:
                return None
    if mp.degree() != 0:
        return None
    return order


def _mul(a, b):
    return a @ b


def _eq(a, b):
    return a == b


def matrix_element(f: Matrix) -> Element:
    return Element(f, _mul, _eq)


@dataclass
class DecompositionReport:
    m: int
    profile: OrbitProfile
    tail: list
    group: list
    checks: dict

    def as_dict(self):
        return {
            "m": self.m,
            "orbit": self.profile.as_dict(),
            "tail": [t.tolist() for t in self.tail],
            "kernel_group": [k.tolist() for k in self.group],
            "checks": self.checks,
        }


def decomposition_report(f, budget=10**6) -> DecompositionReport:
    """Split ``<f>`` into the tail ``f, .., f^(m-1)`` and its cyclic group part.

    Needs a finite cyclic semigroup: always the case over F_p, over Q only for
    matrices of finite order on their eventual image.
    """
    f = as_matrix(f)
    data = fitting(f)
    a = matrix_element(f)
    profile = analyze(a, budget)
    group = kernel_group(a, profile)
    tail = [f ** k for k in range(1, profile.index)]
    t = profile.idempotent_exponent
    neutral = group[(t - profile.index) % profile.period]
    checks = {
        "index_equals_m": profile.index == data.m,
        "tail_distinct": len(set(tail)) == len(tail),
        "tail_disjoint_from_group": not set(tail) & set(group),
        "neutral_is_fitting_idempotent": neutral == data.e,
        "group_size_is_period": len(group) == profile.period,
    }
    return DecompositionReport(m=data.m, profile=profile, tail=tail, group=group, checks=checks)


def unbounded_product_witness(nmax=100):
    """Two involutions of the plane whose product has infinite order.

    Returns ``(f, g, fg, powers, checks)`` where ``powers[n] = (fg)^n`` and
    ``checks`` covers ``f^2 = g^2 = 1`` and
    ``(fg)^n = [[1, n], [0, 1]]`` for ``n = 0 .. nmax`` (pairwise distinct).
    """
    f = Matrix([[-1, 1], [0, 1]])
    g = Matrix([[-1, 0], [0, 1]])
    ident = Matrix.identity(2)
    fg = f @ g
    powers = [ident]
    for _ in range(nmax):
        powers.append(powers[-1] @ fg)
    checks = {
        "f_squared_identity": f @ f == ident,
        "g_squared_identity": g @ g == ident,
        "powers_unipotent": all(p == Matrix([[1, n], [0, 1]]) for n, p in enumerate(powers)),
        "powers_distinct": len(set(powers[1:])) == nmax,
    }
    return f, g, fg, powers, checks
