from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algdyn.linalg import Matrix
from algdyn.matrix import (MalformedMatrix, check_fitting, decomposition_report, fitting,
                           is_torsion, minimal_polynomial, unbounded_product_witness)
from algdyn.semigroup import analyze
from algdyn.matrix import matrix_element
from oracles import matmul, matpow, rank


def brute_m(a):
    """Least k >= 1 with rank(a^k) == rank(a^(k+1))."""
    k = 1
    while rank(matpow(a, k)) != rank(matpow(a, k + 1)):
        k += 1
    return k


def test_identity():
    d = fitting([[1, 0], [0, 1]])
    assert d.m == 1
    assert d.e == Matrix.identity(2)


def test_nilpotent_jordan_block():
    f = [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    d = fitting(f)
    assert d.m == 3
    assert d.e.is_zero() and d.g.is_zero()
    assert d.image_basis == []


def test_projection_like():
    f = Matrix([[0, 0], [1, 1]])
    d = fitting(f)
    assert d.m == 1
    assert d.e == f


def test_mixed_blocks():
    # invertible 2x2 block plus a nilpotent block of size 2
    f = Matrix([[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    d = fitting(f)
    assert d.m == 2
    assert d.e.tolist() == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    assert all(check_fitting(f, d).values())


def test_rejects_non_square():
    with pytest.raises(MalformedMatrix):
        fitting([[1, 2, 3], [4, 5, 6]])


def test_rejects_floats():
    with pytest.raises(TypeError):
        Matrix([[0.5]])


small = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(small)
def test_fitting_against_rank_oracle(rows):
    d = fitting(rows)
    assert d.m == brute_m(rows)
    e = d.e.tolist()
    e = [[Fraction(x) for x in r] for r in e]
    assert matmul(e, e) == e
    assert matmul(e, rows) == matmul(rows, e)
    fm = matpow(rows, d.m)
    assert matmul(e, fm) == fm
    assert rank(e) == rank(fm)
    assert all(check_fitting(rows, d).values())


@settings(max_examples=30, deadline=None)
@given(small, st.sampled_from([2, 3, 5, 7]))
def test_fitting_over_fp(rows, p):
    f = Matrix(rows, p)
    d = fitting(f)
    assert all(check_fitting(f, d).values())
    # the idempotent in <f> is the Fitting projection
    rep = decomposition_report(f)
    assert all(rep.checks.values())


def test_torsion_orders():
    assert is_torsion([[0, -1], [1, 0]]) == 4
    assert is_torsion([[1, 1], [0, 1]]) is None
    assert is_torsion([[1, 0], [0, 1]]) == 1
    assert is_torsion([[2]]) is None
    assert is_torsion([[-1, 0], [0, 0]]) == 2


def test_torsion_order_six_block():
    # companion of x^2 - x + 1 (order 6) plus -1 (order 2)
    g = [[0, -1, 0], [1, 1, 0], [0, 0, -1]]
    assert is_torsion(g) == 6
    # squarefree failure: unipotent with the same eigenvalue is not torsion
    assert is_torsion([[-1, 1], [0, -1]]) is None


@pytest.mark.parametrize("g", [[[0, -1], [1, 0]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[-1, 0], [0, 1]],
                               [[0, -1, 0], [1, 1, 0], [0, 0, 1]]])
def test_torsion_matches_semigroup_period(g):
    k = is_torsion(g)
    p = analyze(matrix_element(Matrix(g)))
    assert (p.index, p.period) == (1, k)
    assert Matrix(g) ** k == Matrix.identity(len(g))


def test_torsion_over_fp():
    assert is_torsion(Matrix([[1, 1], [0, 1]], 5)) == 5
    assert is_torsion(Matrix([[2]], 7)) == 3


def test_minimal_polynomial():
    assert minimal_polynomial(Matrix([[0, -1], [1, 0]])) == [1, 0, 1]
    assert minimal_polynomial(Matrix.identity(3)) == [-1, 1]


def test_decomposition_nilpotent_mod_5():
    f = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]], 5)
    rep = decomposition_report(f)
    assert (rep.profile.index, rep.profile.period) == (3, 1)
    assert len(rep.tail) == 2
    assert len(rep.group) == 1 and rep.group[0].is_zero()
    assert all(rep.checks.values())


def test_decomposition_mod_7_block():
    # 2 has order 3 mod 7, plus a nilpotent 2x2 block
    f = Matrix([[2, 0, 0], [0, 0, 1], [0, 0, 0]], 7)
    rep = decomposition_report(f)
    assert (rep.m, rep.profile.index, rep.profile.period) == (2, 2, 3)
    assert all(rep.checks.values())


def test_gl2_witness():
    f, g, fg, powers, checks = unbounded_product_witness(100)
    assert all(checks.values())
    assert f @ f == Matrix.identity(2) == g @ g
    for n in range(1, 101):
        assert powers[n] == Matrix([[1, n], [0, 1]])
    assert len(set(powers[1:])) == 100
