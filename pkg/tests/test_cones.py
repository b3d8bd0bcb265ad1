import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from algdyn.cones import (Cone, NotASubcone, NotExtremal, NotIncreasing, Subspace, as_difference,
                          chain_stabilization, extreme_rays, faces, intersect_subspace, is_extremal,
                          relative_cone_chain, span)
from algdyn.linalg import Matrix


def quadrant():
    return Cone(2, [[1, 0], [0, 1]])


def in_cone_brute(v, gens, bound=6):
    """v as a nonnegative combination with coefficients k/2, k <= bound (small cases only)."""
    for coef in product(range(bound + 1), repeat=len(gens)):
        if all(sum(Fraction(c, 2) * g[i] for c, g in zip(coef, gens)) == v[i] for i in range(len(v))):
            return True
    return False


def test_span_of_quadrant_and_ray():
    assert span(quadrant()).dim == 2
    assert span(Cone(3, [[1, 1, 0]])).dim == 1
    assert span(Cone.zero(3)).dim == 0


def test_difference_decomposition():
    c = Cone(2, [[1, 0], [1, 1]])
    x, y = as_difference(c, (0, 1))
    assert x in c and y in c
    assert tuple(a - b for a, b in zip(x, y)) == (0, 1)
    assert as_difference(Cone(2, [[1, 0]]), (0, 1)) is None


def test_membership_matches_brute_force():
    gens = [[1, 0, 0], [1, 1, 0], [0, 1, 1]]
    c = Cone(3, gens)
    for v in product(range(-1, 3), repeat=3):
        assert (v in c) == in_cone_brute(v, gens, bound=8), v


def test_intersection_with_subspace():
    c = Cone(2, [[1, 0], [0, 1]])
    diag = intersect_subspace(c, Subspace.spanned_by([[1, 1]], 2))
    assert diag.same_as(Cone(2, [[1, 1]]))
    anti = intersect_subspace(c, Subspace.spanned_by([[1, -1]], 2))
    assert anti.is_zero()


def test_extreme_rays_of_orthant():
    lin, rays = extreme_rays([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [], 3)
    assert lin == [] and rays == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_halfplane_has_lineality():
    c = Cone(2, [[1, 0], [0, 1], [0, -1]])
    assert (5, -7) in c and (-1, 0) not in c
    ineqs, eqs = c.facets()
    assert ineqs == [(1, 0)] and eqs == []


def test_facet_is_extremal():
    r = is_extremal(Cone(2, [[1, 0]]), quadrant())
    assert r.extremal and r.lemma_identity


def test_interior_ray_is_not_extremal():
    t = Cone(2, [[1, 1]])
    r = is_extremal(t, quadrant())
    assert not r.extremal
    a, b = r.witness
    assert a == (1, 0) and b == (0, 1)
    # the naive identity holds here, which is why it cannot decide extremality
    assert intersect_subspace(quadrant(), span(t)).same_as(t)


def test_subcone_outside_is_rejected():
    with pytest.raises(NotASubcone):
        is_extremal(Cone(2, [[-1, 0]]), quadrant())


def test_faces_of_cube_cone():
    c = Cone.orthant(3)
    fs = faces(c)
    assert len(fs) == 8
    for f in fs:
        assert is_extremal(f, c).extremal
        assert intersect_subspace(c, span(f)).same_as(f)


def test_faces_of_square_pyramid():
    c = Cone(3, [[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]])
    fs = faces(c)
    # apex, 4 rays, 4 two-dimensional faces, the whole cone
    assert sorted(span(f).dim for f in fs) == [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]


def witness_ok(t, c, w):
    a, b = w
    return a in c and b in c and tuple(x + y for x, y in zip(a, b)) in t and a not in t


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_probes(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 3)
    gens = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(rng.randint(1, 4))]
    gens = [g for g in gens if any(g)] or [[1] + [0] * (d - 1)]
    c = Cone(d, gens)
    fs = faces(c)
    for f in fs:
        assert intersect_subspace(c, span(f)).same_as(f)
    probe = Cone(d, [[sum(g[i] for g in gens) for i in range(d)]]) if any(
        sum(g[i] for g in gens) for i in range(d)) else Cone.zero(d)
    r = is_extremal(probe, c)
    if r.extremal:
        assert any(f.same_as(probe) for f in fs)
    else:
        assert not any(f.same_as(probe) for f in fs)
        assert witness_ok(probe, c, r.witness)


def test_chain_stabilization():
    c = Cone.orthant(3)
    e1 = Cone(3, [[1, 0, 0]])
    e12 = Cone(3, [[1, 0, 0], [0, 1, 0]])
    assert chain_stabilization([Cone.zero(3), e1, e12, e12, e12], c) == 2
    assert chain_stabilization([c, c], c) == 0


def test_chain_errors():
    c = Cone.orthant(2)
    with pytest.raises(NotExtremal):
        chain_stabilization([Cone(2, [[1, 1]])], c)
    with pytest.raises(NotIncreasing):
        chain_stabilization([Cone(2, [[1, 0]]), Cone(2, [[0, 1]])], c)


def test_relative_chain_jordan_block():
    c = Cone.orthant(2)
    m = Matrix([[0, 1], [0, 0]])
    r = relative_cone_chain(c, m, 2)
    assert r.increasing
    assert r.kernel_stable_at == 2
    assert r.cone_stable_at == 2
    assert r.cones[0].same_as(Cone(2, [[1, 0]]))
    assert r.cones[1].same_as(c)


def test_relative_chain_cone_can_settle_before_kernel():
    r = relative_cone_chain(Cone(2, [[1, 0]]), Matrix([[0, 1], [0, 0]]), 2)
    assert r.cone_stable_at == 1 and r.kernel_stable_at == 2


def test_relative_chain_invertible():
    r = relative_cone_chain(Cone.orthant(3), Matrix.identity(3), 3)
    assert all(x.is_zero() for x in r.cones)
    assert r.cone_stable_at == 1
