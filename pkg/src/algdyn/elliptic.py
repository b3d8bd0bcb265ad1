"""Short Weierstrass curves ``y^2 = x^3 + a x + b`` over Q and F_p (p > 3).

Affine points are ``(x, y)`` tuples; the point at infinity is ``None``.
Coordinates are :class:`fractions.Fraction` over Q and ints in ``[0, p)``
over F_p.

Torsion over Q is decided by computing ``kP`` for ``k <= 12``.  This relies on
Mazur's theorem (rational torsion points have order at most 12), a classical
fact used here as given.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm

from .finite import is_prime

INFINITY = None
MAZUR_BOUND = 12


class PointNotOnCurve(ValueError):
    pass


class SingularCurve(ValueError):
    pass


class EmptyFiber(ValueError):
    pass


class FibersNotDisjoint(ValueError):
    def __init__(self, i, j, point):
        super().__init__("fibers %d and %d share the point %r" % (i, j, point))
        self.witness = (i, j, point)


class _Curve:
    def _check(self):
        if self.discriminant() == 0:
            raise SingularCurve("4a^3 + 27b^2 vanishes")

    def discriminant(self):
        return self._f(-16 * (4 * self.a ** 3 + 27 * self.b ** 2))

    def contains(self, pt):
        if pt is INFINITY:
            return True
        x, y = pt
        return self._f(y * y - (x ** 3 + self.a * x + self.b)) == 0

    def check(self, pt):
        pt = self.point(pt)
        if not self.contains(pt):
            raise PointNotOnCurve("%r is not on %r" % (pt, self))
        return pt

    def neg(self, pt):
        if pt is INFINITY:
            return INFINITY
        x, y = pt
        return (x, self._f(-y))

    def add(self, P, Q):
        P, Q = self.check(P), self.check(Q)
        return self._add(P, Q)

    def _add(self, P, Q):
        if P is INFINITY:
            return Q
        if Q is INFINITY:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if self._f(y1 + y2) == 0:
                return INFINITY
            lam = self._div(3 * x1 * x1 + self.a, 2 * y1)
        else:
            lam = self._div(y2 - y1, x2 - x1)
        x3 = self._f(lam * lam - x1 - x2)
        y3 = self._f(lam * (x1 - x3) - y1)
        return (x3, y3)

    def sub(self, P, Q):
        return self._add(self.check(P), self.neg(self.check(Q)))

    def mul(self, k, P):
        P = self.check(P)
        if k < 0:
            k, P = -k, self.neg(P)
        result = INFINITY
        while k:
            if k & 1:
                result = self._add(result, P)
            P = self._add(P, P)
            k >>= 1
        return result

    def order(self, P):
        raise NotImplementedError


@dataclass(frozen=True)
class CurveQ(_Curve):
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        self._check()

    @property
    def p(self):
        return None

    @staticmethod
    def _f(x):
        return Fraction(x)

    @staticmethod
    def _div(x, y):
        return Fraction(x) / Fraction(y)

    def point(self, pt):
        if pt is INFINITY:
            return INFINITY
        x, y = pt
        return (Fraction(x), Fraction(y))

    def order(self, P):
        return order_of_q(self, P)

    def as_dict(self):
        return {"field": "Q", "a": str(self.a), "b": str(self.b)}


@dataclass(frozen=True)
class CurveFp(_Curve):
    p: int
    a: int
    b: int
    _points: list = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not is_prime(self.p) or self.p <= 3:
            raise ValueError("p must be a prime > 3, got %d" % self.p)
        object.__setattr__(self, "a", _to_fp(self.a, self.p))
        object.__setattr__(self, "b", _to_fp(self.b, self.p))
        self._check()

    def _f(self, x):
        return int(x) % self.p

    def _div(self, x, y):
        return x * pow(y % self.p, -1, self.p) % self.p

    def point(self, pt):
        if pt is INFINITY:
            return INFINITY
        x, y = pt
        return (self._f(_to_fp(x, self.p)), self._f(_to_fp(y, self.p)))

    def points(self):
        """All of ``E(F_p)``: infinity first, then affine points sorted."""
        if self._points is None:
            p = self.p
            roots = {}
            for y in range(p):
                roots.setdefault(y * y % p, []).append(y)
            pts = [INFINITY]
            for x in range(p):
                rhs = (x ** 3 + self.a * x + self.b) % p
                for y in roots.get(rhs, []):
                    pts.append((x, y))
            object.__setattr__(self, "_points", pts)
        return list(self._points)

    def hasse_bound(self):
        return self.p + 1 + 2 * (isqrt(self.p - 1) + 1)

    def order(self, P):
        return order_of_fp(self, P)

    def as_dict(self):
        return {"field": {"Fp": self.p}, "a": self.a, "b": self.b}


def _to_fp(x, p):
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, p) % p


def order_of_q(E: CurveQ, P):
    """Order of ``P`` in ``E(Q)``, or ``None`` when it is infinite."""
    P = E.check(P)
    Q = P
    for k in range(1, MAZUR_BOUND + 1):
        if Q is INFINITY:
            return k
        Q = E._add(Q, P)
    return None


def order_of_fp(E: CurveFp, P):
    """Exact order of ``P`` in ``E(F_p)``."""
    P = E.check(P)
    Q = P
    for k in range(1, E.hasse_bound() + 1):
        if Q is INFINITY:
            return k
        Q = E._add(Q, P)
    raise AssertionError("no multiple of %r vanished within the Hasse bound" % (P,))


def generated_subgroup(E, generators):
    """Subgroup generated by torsion points, by saturation under addition."""
    gens = [g for g in generators if g is not INFINITY]
    group = {INFINITY}
    frontier = [INFINITY]
    while frontier:
        new = []
        for s in frontier:
            for g in gens:
                t = E._add(s, g)
                if t not in group:
                    group.add(t)
                    new.append(t)
        frontier = new
    return group


@dataclass
class TranslateDecision:
    found: bool
    n: int = None
    generators: list = None
    subgroup: list = None
    representatives: list = None
    fiber_index: int = None
    witness_difference: tuple = None

    def __bool__(self):
        return self.found


def _validate_fibers(E, fibers):
    fibers = [[E.check(P) for P in fiber] for fiber in fibers]
    owner = {}
    for i, fiber in enumerate(fibers):
        if not fiber:
            raise EmptyFiber("fiber %d is empty" % i)
        for P in fiber:
            if P in owner and owner[P] != i:
                raise FibersNotDisjoint(owner[P], i, P)
            owner[P] = i
    return [list(dict.fromkeys(f)) for f in fibers]


def decide_translate_subgroup(E, fibers, representatives=None):
    """Is there a finite subgroup ``F`` with every fiber inside a translate of ``F``?

    Any such ``F`` contains every difference of two points of one fiber, so
    the answer is yes exactly when all those differences are torsion, and then
    the subgroup they generate is the smallest admissible ``F``.  Over F_p
    every point is torsion and the answer is always yes.

    ``representatives`` optionally picks the base point of each fiber (an
    index into it); the decision does not depend on it.
    """
    fibers = _validate_fibers(E, fibers)
    if representatives is None:
        representatives = [0] * len(fibers)
    reps = [fiber[k] for fiber, k in zip(fibers, representatives)]
    diffs = []
    n = 1
    for i, (fiber, x) in enumerate(zip(fibers, reps)):
        for P in fiber:
            if P == x:
                continue
            d = E._add(P, E.neg(x))
            k = E.order(d)
            if k is None:
                return TranslateDecision(False, fiber_index=i, witness_difference=d)
            n = lcm(n, k)
            if d not in diffs:
                diffs.append(d)
    group = generated_subgroup(E, diffs)
    for fiber, x in zip(fibers, reps):
        if any(E._add(P, E.neg(x)) not in group for P in fiber):
            raise AssertionError("fiber escapes the translate of the generated subgroup")
    return TranslateDecision(True, n=n, generators=diffs, subgroup=sorted(group, key=_point_key),
                             representatives=reps)


def _point_key(P):
    return (0,) if P is INFINITY else (1, P[0], P[1])


def fixed_point_of_translated_isogeny(E: CurveFp, k, z0):
    """A fixed point of ``z -> k z + z0`` on ``E(F_p)``, or ``None``.

    Fixed points solve ``(k - 1) y = -z0``; all of ``E(F_p)`` is searched.
    """
    z0 = E.check(z0)
    target = E.neg(z0)
    for y in E.points():
        if E.mul(k - 1, y) == target:
            return y
    return None


def multiplication_degree_check(E: CurveFp, n):
    """Rational-point shadow of ``[n]`` being an isogeny of degree ``n^2``."""
    pts = E.points()
    kernel = [P for P in pts if E.mul(n, P) is INFINITY]
    image = {E.mul(n, P) for P in pts}
    return {
        "group_order": len(pts),
        "kernel_size": len(kernel),
        "image_size": len(image),
        "kernel_divides_n_squared": (n * n) % len(kernel) == 0,
        "index_equals_kernel": len(pts) == len(image) * len(kernel),
    }


def point_to_json(P):
    if P is INFINITY:
        return "O"
    return [str(P[0]), str(P[1])]


def point_from_json(obj):
    if obj == "O" or obj is None:
        return INFINITY
    x, y = obj
    return (Fraction(str(x)), Fraction(str(y)))
