from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fansig import linalg

ints = st.integers(-5, 5)


def square(n_max=4):
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n)
    )


def rect():
    return st.tuples(st.integers(1, 4), st.integers(1, 5)).flatmap(
        lambda s: st.lists(st.lists(ints, min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0])
    )


def leibniz(m):
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        t = (-1) ** inv
        for i in range(n):
            t *= m[i][p[i]]
        total += t
    return total


@given(square())
def test_det_matches_leibniz(m):
    assert linalg.det(m) == leibniz(m)
    assert linalg.det([[Fraction(x, 2) for x in r] for r in m]) == Fraction(leibniz(m), 2 ** len(m))


@given(square())
def test_inverse(m):
    if linalg.det(m) == 0:
        return
    inv = linalg.inverse(m)
    n = len(m)
    for i in range(n):
        for j in range(n):
            assert sum(m[i][k] * inv[k][j] for k in range(n)) == (i == j)


@given(rect())
def test_rank_nullity(m):
    n = len(m[0])
    ns = linalg.nullspace(m, n)
    assert linalg.rank(m) + len(ns) == n
    assert linalg.rank(m) == np.linalg.matrix_rank(np.array(m, dtype=float))
    for v in ns:
        assert all(linalg.dot(r, v) == 0 for r in m)


@given(rect(), st.lists(ints, min_size=5, max_size=5))
def test_solve(m, x0):
    x0 = x0[: len(m[0])]
    b = [linalg.dot(r, x0) for r in m]
    x = linalg.solve(m, b)
    assert x is not None
    assert [linalg.dot(r, x) for r in m] == b


def test_solve_inconsistent():
    assert linalg.solve([[1, 1], [2, 2]], [1, 3]) is None


@given(st.lists(st.lists(ints, min_size=4, max_size=4), min_size=1, max_size=3))
def test_column_completion(rows):
    m = linalg.column_completion(rows)
    assert abs(linalg.det(m)) == 1
    d = len(rows)
    prod = [linalg.vec_mat(r, m) for r in rows]
    for i, r in enumerate(prod):
        assert all(x == 0 for x in r[max(i + 1, d):])
        assert all(x == 0 for x in r[i + 1:])


def test_normal_vector_and_minors():
    rows = [[1, 0, 2], [0, 1, 3]]
    v = linalg.normal_vector(rows)
    assert all(linalg.dot(r, v) == 0 for r in rows)
    assert linalg.maximal_minors_gcd([[2, 0], [0, 2]]) == 4
    assert linalg.maximal_minors_gcd(rows) == 1


def test_lp_feasible():
    assert linalg.lp_feasible([[1, 1]], [1])
    assert not linalg.lp_feasible([[1, 1]], [-1])
    assert not linalg.lp_feasible([[1, -1], [1, 1]], [3, 1])
    assert linalg.lp_feasible([[1, -1], [1, 1]], [1, 3])


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_signature_against_eigenvalues(a):
    n = len(a)
    g = [[a[i][j] + a[j][i] for j in range(n)] for i in range(n)]
    pos, neg, zero = linalg.symmetric_signature(g)
    ev = np.linalg.eigvalsh(np.array(g, dtype=float))
    assert pos == int((ev > 1e-9).sum())
    assert neg == int((ev < -1e-9).sum())
    assert pos + neg + zero == n


def test_signature_hyperbolic_block():
    assert linalg.symmetric_signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert linalg.symmetric_signature([[0, 0], [0, 0]]) == (0, 0, 2)


def test_integer_row_and_content():
    assert linalg.integer_row([Fraction(1, 2), Fraction(1, 3)]) == [3, 2]
    assert linalg.content([4, -6, 10]) == 2


def test_rref_pivots_one():
    red, piv = linalg.rref([[2, 4], [1, 3]])
    assert piv == [0, 1]
    assert red == [[1, 0], [0, 1]]


@pytest.mark.parametrize("m", [[[0]], [[1, 2], [2, 4]]])
def test_singular_inverse(m):
    with pytest.raises(ZeroDivisionError):
        linalg.inverse(m)
