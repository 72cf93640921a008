from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fansig.errors import OddIndex
from fansig.series import (
    TruncatedSeries,
    bernoulli,
    bernoulli_abs,
    l_factor_closed_form,
    series,
)

F = Fraction


def test_bernoulli_values():
    assert [bernoulli_abs(k) for k in (2, 4, 6, 8)] == [F(1, 6), F(1, 30), F(1, 42), F(1, 30)]
    assert bernoulli(1) == F(-1, 2)
    assert bernoulli(12) == F(-691, 2730)
    assert all(bernoulli(k) == 0 for k in (3, 5, 7, 9))


@pytest.mark.parametrize("k", [0, 1, 3, 7])
def test_bernoulli_abs_rejects(k):
    with pytest.raises(OddIndex):
        bernoulli_abs(k)


def test_series_values():
    assert series("todd", 4).coeffs == (1, F(1, 2), F(1, 12), 0, F(-1, 720))
    assert series("l_factor", 4).coeffs == (1, 0, F(1, 12), 0, F(-1, 720))
    assert series("exp_neg", 2).coeffs == (1, -1, F(1, 2))
    with pytest.raises(ValueError):
        series("sine", 3)


@pytest.mark.parametrize("n", [1, 2, 5, 10, 16])
def test_l_factor_closed_form(n):
    assert series("l_factor", n) == l_factor_closed_form(n)


@pytest.mark.parametrize("n", [1, 3, 8, 12])
def test_todd_times_denominator(n):
    # todd(x) * (1 - e^-x)/x = 1
    den = TruncatedSeries(F((-1) ** k, factorial(k + 1)) for k in range(n + 1))
    assert (series("todd", n) * den).coeffs == (1,) + (0,) * n


@pytest.mark.parametrize("n", [2, 6, 10])
def test_todd_and_l_relation(n):
    # (x/2) coth(x/2) = x / (1 - e^-x) - x/2
    half_x = TruncatedSeries([0, F(-1, 2)] + [0] * (n - 1))
    assert series("todd", n) + half_x == series("l_factor", n)


coeffs = st.lists(st.integers(-5, 5), min_size=1, max_size=7)


@given(coeffs, coeffs, coeffs)
def test_series_ring(a, b, c):
    n = min(len(a), len(b), len(c))
    a, b, c = (TruncatedSeries(x[:n]) for x in (a, b, c))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(coeffs, coeffs.filter(lambda x: x[0] != 0))
def test_series_division(a, b):
    n = min(len(a), len(b))
    a, b = TruncatedSeries(a[:n]), TruncatedSeries(b[:n])
    assert (a / b) * b == a


def test_division_by_non_unit():
    with pytest.raises(ZeroDivisionError):
        TruncatedSeries([1, 1]) / TruncatedSeries([0, 1])
