import itertools
from fractions import Fraction

import pytest

from algdyn.elliptic import (INFINITY, CurveFp, CurveQ, EmptyFiber, FibersNotDisjoint,
                             PointNotOnCurve, SingularCurve, decide_translate_subgroup,
                             fixed_point_of_translated_isogeny, generated_subgroup,
                             multiplication_degree_check)
from oracles import chord_tangent, curve_points

CURVES = [(5, 1, 1), (7, 3, 2), (11, 1, 1)]


@pytest.mark.parametrize("p,a,b", CURVES)
def test_points_match_brute_force(p, a, b):
    E = CurveFp(p, a, b)
    assert set(E.points()) == set(curve_points(p, a, b))
    assert E.points()[0] is INFINITY


@pytest.mark.parametrize("p,a,b", CURVES)
def test_group_axioms(p, a, b):
    E = CurveFp(p, a, b)
    pts = E.points()
    for P, Q in itertools.product(pts, repeat=2):
        s = E.add(P, Q)
        assert s == chord_tangent(p, a, P, Q)
        assert s == E.add(Q, P)
    for P in pts:
        assert E.add(P, E.neg(P)) is INFINITY
    for P, Q, R in itertools.product(pts[:8], repeat=3):
        assert E.add(E.add(P, Q), R) == E.add(P, E.add(Q, R))


def test_singular_and_off_curve():
    with pytest.raises(SingularCurve):
        CurveQ(0, 0)
    with pytest.raises(SingularCurve):
        CurveFp(5, 0, 0)
    with pytest.raises(ValueError):
        CurveFp(3, 1, 1)
    E = CurveQ(0, 17)
    with pytest.raises(PointNotOnCurve):
        E.add((0, 0), (0, 0))


def test_two_torsion_over_q():
    E = CurveQ(-1, 0)
    for x in (-1, 0, 1):
        assert E.order((x, 0)) == 2
        assert E.mul(2, (x, 0)) is INFINITY


def test_orders_over_q():
    E = CurveQ(0, 17)
    assert E.order((-2, 3)) is None
    # y^2 = x^3 + 1 has a point of order 6 at (2, 3)
    F = CurveQ(0, 1)
    assert F.order((2, 3)) == 6
    assert F.order((0, 1)) == 3
    assert F.order(INFINITY) == 1


def test_rational_arithmetic_is_exact():
    E = CurveQ(0, 17)
    P = E.add((-2, 3), (-1, 4))
    assert all(isinstance(c, Fraction) for c in P)
    assert E.contains(P)


def test_decide_yes_over_q():
    E = CurveQ(-1, 0)
    dec = decide_translate_subgroup(E, [[INFINITY, (0, 0), (1, 0), (-1, 0)]])
    assert dec.found and dec.n == 2
    assert len(dec.subgroup) == 4


def test_decide_no_over_q():
    E = CurveQ(0, 17)
    dec = decide_translate_subgroup(E, [[(-2, 3), (-1, 4)]])
    assert not dec.found
    assert dec.witness_difference == (52, -375)


def test_decide_representative_invariance():
    E = CurveQ(0, 1)
    fibers = [[(2, 3), (0, 1), (-1, 0)], [(2, -3)]]
    answers = {decide_translate_subgroup(E, fibers, [k, 0]).found for k in range(3)}
    assert answers == {True}


def test_decide_fiber_errors():
    E = CurveQ(-1, 0)
    with pytest.raises(EmptyFiber):
        decide_translate_subgroup(E, [[]])
    with pytest.raises(FibersNotDisjoint):
        decide_translate_subgroup(E, [[(0, 0)], [(0, 0), (1, 0)]])


def test_decide_over_fp_always_yes():
    E = CurveFp(7, 3, 2)
    pts = E.points()
    for fiber in itertools.combinations(pts, 3):
        assert decide_translate_subgroup(E, [list(fiber)]).found


def test_subgroup_generation():
    E = CurveFp(11, 1, 1)
    pts = E.points()
    assert generated_subgroup(E, []) == {INFINITY}
    g = max(pts[1:], key=E.order)
    assert len(generated_subgroup(E, [g])) == E.order(g)


def test_fixed_point_of_translated_doubling():
    E = CurveFp(11, 1, 1)
    z0 = E.points()[1]
    y = fixed_point_of_translated_isogeny(E, 2, z0)
    # k = 2 gives y = -z0
    assert y == E.neg(z0)
    assert E.add(E.mul(2, y), z0) == y


def test_fixed_point_k_zero_is_z0():
    E = CurveFp(7, 3, 2)
    z0 = E.points()[2]
    assert fixed_point_of_translated_isogeny(E, 0, z0) == z0


def test_fixed_point_translation_without_fixed_point():
    E = CurveFp(7, 3, 2)
    assert fixed_point_of_translated_isogeny(E, 1, E.points()[1]) is None
    assert fixed_point_of_translated_isogeny(E, 1, INFINITY) is INFINITY


@pytest.mark.parametrize("n", [1, 2, 3])
def test_multiplication_degree(n):
    E = CurveFp(7, 3, 2)
    rep = multiplication_degree_check(E, n)
    assert rep["kernel_divides_n_squared"] and rep["index_equals_kernel"]


def test_full_two_torsion_kernel():
    # x^3 - x splits over F_5, so E[2] has 4 rational points
    E = CurveFp(5, -1, 0)
    rep = multiplication_degree_check(E, 2)
    assert rep["kernel_size"] == 4
    assert rep["kernel_divides_n_squared"]
