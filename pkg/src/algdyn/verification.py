"""Seeded theorem-verification sweeps behind ``algdyn verify-all``.

Each sweep checks one family of statements exhaustively or on seeded random
inputs against a brute-force oracle, and returns a :class:`SweepResult`.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from math import lcm

from . import cones, elliptic, finite, matrix, semigroup, shift
from .linalg import Matrix


@dataclass
class SweepResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    limit: float = None

    @property
    def passed(self):
        return not self.failures and (self.limit is None or self.seconds < self.limit)

    def fail(self, case, reason):
        if len(self.failures) < 20:
            self.failures.append({"case": case, "reason": reason})
        else:
            self.failures.append(None)

    def as_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "failures": len(self.failures),
            "first_failures": [f for f in self.failures if f is not None][:5],
            "seconds": round(self.seconds, 3),
            "limit_seconds": self.limit,
        }


def _timed(name, limit):
    def deco(fn):
        def run(seed=0):
            res = SweepResult(name, limit=limit)
            start = time.perf_counter()
            fn(res, random.Random(seed))
            res.seconds = time.perf_counter() - start
            return res
        run.__name__ = fn.__name__
        run.sweep_name = name
        return run
    return deco


def power_table_profile(table):
    """Index and period by listing powers until one repeats."""
    table = tuple(table)
    powers = [table]
    while True:
        nxt = tuple(powers[-1][j] for j in table)
        if nxt in powers:
            i = powers.index(nxt)
            return i + 1, len(powers) - i
        powers.append(nxt)


def random_map(rng, max_size):
    n = rng.randint(1, max_size)
    return [rng.randrange(n) for _ in range(n)]


@_timed("cyclic semigroup index/period vs power tables", 10.0)
def sweep_semigroup(res, rng):
    for table in itertools.product(range(5), repeat=5):
        res.cases += 1
        prof = semigroup.analyze(finite.FiniteMap(table).element())
        if (prof.index, prof.period) != power_table_profile(table):
            res.fail(list(table), "profile mismatch")
    for _ in range(1000):
        table = random_map(rng, 12)
        res.cases += 1
        prof = semigroup.analyze(finite.FiniteMap(table).element())
        if (prof.index, prof.period) != power_table_profile(table):
            res.fail(table, "profile mismatch")


def random_rational_matrix(rng, max_n=6, height=3):
    n = rng.randint(1, max_n)
    # zero out some entries so singular and nilpotent parts are common
    density = rng.choice([0.3, 0.6, 1.0])
    return Matrix([[rng.randint(-height, height) if rng.random() < density else 0
                    for _ in range(n)] for _ in range(n)])


@_timed("Fitting decomposition invariants", 30.0)
def sweep_fitting(res, rng):
    for _ in range(500):
        f = random_rational_matrix(rng)
        res.cases += 1
        data = matrix.fitting(f)
        bad = [k for k, v in matrix.check_fitting(f, data).items() if not v]
        if bad:
            res.fail(f.tolist(), "failed: %s" % ", ".join(bad))
        elif data.m != max(1, matrix.nilpotency_index_on_kernel(f, data)):
            res.fail(f.tolist(), "m differs from the nilpotency index on the eventual kernel")


@_timed("shift construction (tail p, group <h>)", 10.0)
def sweep_shift(res, rng):
    for p in range(1, 5):
        for q in range(1, 7):
            for b in (2, 3):
                res.cases += 1
                report = shift.verify_theorem(shift.MonotheticModel.cyclic(p, q, b))
                bad = [k for k, v in report["checks"].items() if not v]
                if bad:
                    res.fail({"p": p, "h_order": q, "base_size": b}, "failed: %s" % ", ".join(bad))


def random_cone(rng, max_d=5):
    d = rng.randint(1, max_d)
    gens = []
    for _ in range(rng.randint(1, d + 2)):
        v = [0] * d
        while not any(v):
            v = [rng.randint(-3, 3) for _ in range(d)]
        gens.append(v)
    return cones.Cone(d, gens)


def valid_witness(t, c, witness):
    a, b = witness
    s = tuple(x + y for x, y in zip(a, b))
    return a in c and b in c and s in t and a not in t


def random_face_chain(rng, face_list):
    chain = [rng.choice(face_list)]
    while True:
        ups = [g for g in face_list if g.contains_cone(chain[-1]) and not chain[-1].contains_cone(g)]
        if not ups:
            break
        chain.append(rng.choice(ups))
    return chain + [chain[-1]] * rng.randint(0, 2)


@_timed("cone faces, extremality and face chains", 60.0)
def sweep_cones(res, rng):
    for k in range(100):
        c = random_cone(rng)
        res.cases += 1
        face_list = cones.faces(c)
        for face in face_list:
            ext = cones.is_extremal(face, c)
            if not ext.extremal:
                res.fail(c.as_dict(), "face %s rejected" % (face.generators,))
            if not cones.intersect_subspace(c, cones.span(face)).same_as(face):
                res.fail(c.as_dict(), "face %s differs from C & span(F)" % (face.generators,))
        for _ in range(5):
            picks = rng.sample(c.generators, rng.randint(1, len(c.generators)))
            coef = [rng.randint(0, 2) for _ in picks]
            vec = [sum(k * g[i] for k, g in zip(coef, picks)) for i in range(c.d)]
            if not any(vec):
                continue
            extra = [vec] + ([rng.choice(c.generators)] if rng.random() < 0.5 else [])
            t = cones.Cone(c.d, extra)
            is_face = any(t.same_as(f) for f in face_list)
            ext = cones.is_extremal(t, c)
            if ext.extremal != is_face:
                res.fail(c.as_dict(), "probe %s misclassified" % (t.generators,))
            elif not is_face and not valid_witness(t, c, ext.witness):
                res.fail(c.as_dict(), "invalid witness for %s" % (t.generators,))
        chain = random_face_chain(rng, face_list)
        n = cones.chain_stabilization(chain, c)
        if n > c.d:
            res.fail(c.as_dict(), "face chain stabilized at %d > d" % n)


@_timed("relative cone chains C & ker(M^n)", 30.0)
def sweep_relative_chains(res, rng):
    for _ in range(100):
        d = rng.randint(1, 5)
        m = Matrix([[rng.randint(-2, 2) if rng.random() < 0.5 else 0 for _ in range(d)]
                    for _ in range(d)])
        c = cones.Cone.orthant(d) if rng.random() < 0.5 else _random_cone_in(rng, d)
        res.cases += 1
        chain = cones.relative_cone_chain(c, m, d + 2)
        if not chain.increasing:
            res.fail({"M": m.tolist(), "C": c.as_dict()}, "chain not increasing")
        if chain.cone_stable_at > d or chain.kernel_stable_at > d:
            res.fail({"M": m.tolist(), "C": c.as_dict()}, "no stabilization by n = d")
        if chain.cone_stable_at > chain.kernel_stable_at:
            res.fail({"M": m.tolist(), "C": c.as_dict()}, "cone chain outlasts kernel chain")


def _random_cone_in(rng, d):
    c = random_cone(rng, d)
    while c.d != d:
        c = random_cone(rng, d)
    return c


FIXED_CURVES = {
    5: [(1, 1), (2, 1)],
    7: [(1, 1), (3, 2)],
    11: [(1, 1), (3, 5)],
    13: [(1, 1)],
    17: [(1, 1)],
    19: [(1, 1)],
    23: [(1, 1)],
    29: [(1, 1)],
    31: [(1, 3)],
}


def all_subgroups(E):
    """Every subgroup of ``E(F_p)``; each is generated by at most two points."""
    pts = E.points()
    found = set()
    for P, Q in itertools.combinations_with_replacement(pts, 2):
        found.add(frozenset(elliptic.generated_subgroup(E, [P, Q])))
    return sorted(found, key=len)


def translate_oracle(E, fibers, subgroups):
    """Smallest subgroup with every fiber inside one of its translates, by search."""
    pts = E.points()
    for s in subgroups:
        if all(any(all(E._add(P, E.neg(x)) in s for P in fib) for x in pts) for fib in fibers):
            return s
    return None


def fiber_configurations(points, total, rng=None, samples=None):
    """Disjoint fiber lists of total size ``<= total`` (all, or a seeded sample)."""
    if samples is None:
        for k in range(1, total + 1):
            for subset in itertools.combinations(points, k):
                yield from _set_partitions(list(subset))
        return
    for _ in range(samples):
        k = rng.randint(1, min(total, len(points)))
        subset = rng.sample(points, k)
        blocks = []
        for P in subset:
            j = rng.randint(0, len(blocks))
            if j == len(blocks):
                blocks.append([P])
            else:
                blocks[j].append(P)
        yield blocks


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


@_timed("elliptic group law and translate decision", 120.0)
def sweep_elliptic(res, rng, exhaustive_below=9, samples=2000):
    for p in (5, 7, 11):
        for a, b in FIXED_CURVES[p]:
            E = elliptic.CurveFp(p, a, b)
            pts = E.points()
            res.cases += 1
            table = {(P, Q): E.add(P, Q) for P in pts for Q in pts}
            if any(not E.contains(v) for v in table.values()):
                res.fail((p, a, b), "sum off the curve")
            if any(table[P, Q] != table[Q, P] for P in pts for Q in pts):
                res.fail((p, a, b), "not commutative")
            if any(table[P, None] != P or table[P, E.neg(P)] is not None for P in pts):
                res.fail((p, a, b), "identity or inverse fails")
            if any(table[table[P, Q], R] != table[P, table[Q, R]] for P in pts for Q in pts for R in pts):
                res.fail((p, a, b), "not associative")
    for p, curves in FIXED_CURVES.items():
        for a, b in curves:
            E = elliptic.CurveFp(p, a, b)
            pts = E.points()
            subgroups = all_subgroups(E)
            exhaustive = len(pts) <= exhaustive_below
            configs = fiber_configurations(pts, 6, rng, None if exhaustive else samples)
            for fibers in configs:
                res.cases += 1
                dec = elliptic.decide_translate_subgroup(E, fibers)
                expect = translate_oracle(E, fibers, subgroups)
                if not dec.found:
                    res.fail((p, a, b, fibers), "answered no over a finite field")
                elif expect is None or set(dec.subgroup) != set(expect):
                    res.fail((p, a, b, fibers), "subgroup differs from exhaustive search")
                elif dec.n != _exponent(E, expect):
                    res.fail((p, a, b, fibers), "n is not the exponent of F")


def _exponent(E, group):
    n = 1
    for P in group:
        n = lcm(n, elliptic.order_of_fp(E, P))
    return n


@_timed("product construction iterated image", 5.0)
def sweep_product(res, rng):
    for _ in range(200):
        res.cases += 1
        nu, h, j, base = random_product_data(rng)
        f, psi_y, checks = finite.product_construction(nu, h, j, base)
        bad = [k for k, v in checks.items() if not v]
        if bad:
            res.fail({"nu": nu, "h": h, "j": j, "base": base}, "failed: %s" % ", ".join(bad))


def random_product_data(rng, max_tilde=20):
    n_tilde = rng.randint(1, max_tilde)
    n_y = rng.randint(1, n_tilde)
    nu = list(range(n_y)) + [rng.randrange(n_y) for _ in range(n_tilde - n_y)]
    rng.shuffle(nu)
    fibres = {}
    for yt, y in enumerate(nu):
        fibres.setdefault(y, []).append(yt)
    # h picks a point of a random fiber so nu o h is a permutation of Y
    perm = list(range(n_y))
    rng.shuffle(perm)
    h = [rng.choice(fibres[perm[y]]) for y in range(n_y)]
    base = rng.randint(n_y, n_y + 3)
    j = rng.sample(range(base), n_y)
    return nu, h, j, base


@_timed("GL2 involutions with infinite-order product", 1.0)
def sweep_gl2(res, rng):
    res.cases += 1
    _, _, _, powers, checks = matrix.unbounded_product_witness(100)
    bad = [k for k, v in checks.items() if not v]
    if bad:
        res.fail("nmax=100", "failed: %s" % ", ".join(bad))
    try:
        semigroup.analyze(matrix.matrix_element(powers[1]), budget=100)
        res.fail("nmax=100", "cyclic semigroup of fg reported finite")
    except semigroup.OrderExceedsBudget:
        pass


@_timed("eventual image lemma on random maps", 10.0)
def sweep_fny(res, rng):
    for _ in range(1000):
        table = random_map(rng, 50)
        res.cases += 1
        _, checks = finite.verify_fny(finite.FiniteMap(table))
        bad = [k for k, v in checks.items() if not v]
        if bad:
            res.fail(table, "failed: %s" % ", ".join(bad))


SWEEPS = [
    sweep_semigroup,
    sweep_fitting,
    sweep_shift,
    sweep_cones,
    sweep_relative_chains,
    sweep_elliptic,
    sweep_product,
    sweep_gl2,
    sweep_fny,
]


def run_all(seed=0):
    return [sweep(seed) for sweep in SWEEPS]
