from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatrinf.fixtures import CYCLE3
from flatrinf.linalg import (Matrix, det, has_eigenvalue_one, intertwiner_basis, nullspace,
                             primitive_integer_scale, rank, rref, smith_normal_form)


def leibniz_det(rows):
    """Permutation-sum determinant, independent of elimination."""
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        total += (-1) ** inv * prod(rows[i][p[i]] for i in range(n))
    return total


def square(n, lo=-2, hi=2):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix)


small_square = st.integers(1, 4).flatmap(square)


# determinant

def test_det_examples():
    assert det(Matrix.identity(3)) == 1
    assert det(Matrix.diag(2, 3, 5)) == 30
    assert det(CYCLE3) == 1 == leibniz_det(CYCLE3.tolist())


def test_det_rational_entries():
    m = Matrix([[Fraction(1, 2), 1], [Fraction(1, 3), Fraction(2, 3)]])
    assert det(m) == Fraction(1, 3) - Fraction(1, 3)
    assert det(Matrix([[Fraction(1, 2), 0], [0, Fraction(4, 3)]])) == Fraction(2, 3)


def test_det_non_square():
    with pytest.raises(ValueError):
        det(Matrix([[1, 2, 3], [4, 5, 6]]))


@given(small_square)
def test_det_matches_leibniz(m):
    assert det(m) == leibniz_det(m.tolist())


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), square(n))))
def test_det_multiplicative(pair):
    a, b = pair
    assert det(a @ b) == det(a) * det(b)


# eigenvalue one

def test_has_eigenvalue_one_examples():
    assert has_eigenvalue_one(Matrix.identity(4))
    assert not has_eigenvalue_one(Matrix([[-1]]))
    assert has_eigenvalue_one(CYCLE3)
    assert det(CYCLE3 - Matrix.identity(3)) == 0


def test_has_eigenvalue_one_non_square():
    with pytest.raises(ValueError):
        has_eigenvalue_one(Matrix([[1, 0]]))


@given(square(4))
@settings(max_examples=150)
def test_eigenvalue_one_agrees_with_kernel(m):
    ident = Matrix.identity(4)
    by_det = leibniz_det((m - ident).tolist()) == 0
    assert has_eigenvalue_one(m) == by_det == bool(nullspace(m - ident))


# nullspace and rank

def test_nullspace_examples():
    assert len(nullspace(Matrix.zeros(2, 2))) == 2
    assert nullspace(Matrix.identity(2)) == []
    (v,) = nullspace(CYCLE3 - Matrix.identity(3))
    assert v[0, 0] != 0
    assert v.column(0) == (v[0, 0],) * 3


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_rank_nullity(rows):
    m = Matrix(rows)
    basis = nullspace(m)
    assert rank(m) + len(basis) == m.cols
    for v in basis:
        assert (m @ v).is_zero()
    if basis:
        assert rank(Matrix.hstack(basis)) == len(basis)


def test_rref_pivots():
    r, pivots = rref(Matrix([[2, 4, 1], [1, 2, 0]]))
    assert pivots == [0, 2]
    assert r.tolist() == [[1, 2, 0], [0, 0, 1]]


def test_inverse_exact():
    m = Matrix([[2, 1], [7, 4]])
    assert m.inverse() @ m == Matrix.identity(2)
    h = Matrix([[Fraction(1, i + j + 1) for j in range(3)] for i in range(3)])
    assert h @ h.inverse() == Matrix.identity(3)
    with pytest.raises(ZeroDivisionError):
        Matrix([[1, 2], [2, 4]]).inverse()


# Smith normal form

def test_snf_examples():
    assert smith_normal_form(Matrix.identity(2))[0] == [1, 1]
    assert smith_normal_form(Matrix.diag(2, 3))[0] == [1, 6]
    assert smith_normal_form(Matrix([[1, 1], [1, 0]]))[0] == [1, 1]


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_snf_reconstruction_and_divisibility(rows):
    m = Matrix(rows)
    factors, u, v = smith_normal_form(m)
    assert det(u) in (1, -1) and det(v) in (1, -1)
    assert len(factors) == min(m.rows, m.cols)
    s = Matrix([[factors[i] if i == j else 0 for j in range(m.cols)] for i in range(m.rows)])
    assert u @ s @ v == m
    assert all(d >= 0 for d in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]) if a)
    assert all(b == 0 for a, b in zip(factors, factors[1:]) if a == 0)
    assert sum(1 for d in factors if d) == rank(m)
    if m.rows == m.cols and det(m) != 0:
        assert prod(factors) == abs(det(m))


# primitive scale

def test_primitive_integer_scale_examples():
    half = Fraction(1, 2)
    assert primitive_integer_scale(Matrix.diag(half, half)) == Matrix.identity(2)
    assert primitive_integer_scale(Matrix.diag(2, 2)) == Matrix.identity(2)
    assert primitive_integer_scale(Matrix.diag(Fraction(2, 3), Fraction(4, 3))) == Matrix.diag(1, 2)
    with pytest.raises(ValueError):
        primitive_integer_scale(Matrix.zeros(2, 2))


@given(square(3, -5, 5), st.integers(1, 7), st.integers(1, 7))
def test_primitive_integer_scale_properties(m, p, q):
    if m.is_zero():
        return
    scaled = primitive_integer_scale(m.scale(Fraction(p, q)))
    assert scaled.is_integral()
    content = 0
    for x in scaled.flat():
        content = gcd(content, x)
    assert content == 1
    assert rank(Matrix([list(m.flat()), list(scaled.flat())])) == 1


# intertwiners

def test_intertwiner_commutant_of_cycle():
    basis = intertwiner_basis([(CYCLE3, CYCLE3)], 3)
    assert len(basis) == 3  # circulant matrices
    for x in basis:
        assert x @ CYCLE3 == CYCLE3 @ x
