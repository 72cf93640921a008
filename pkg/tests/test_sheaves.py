from fractions import Fraction

import pytest

from fansig import errors
from fansig.catalog import catalog
from fansig.sheaves import (
    Constant,
    Forms,
    IndicatorStar,
    LinearSheaf,
    LineO,
    Skyscraper,
    _matmul,
    cellular_cohomology,
    check_diamonds,
    differential,
    euler_char,
    sheaf_euler_char,
    stalk_model,
    tensor,
)

from conftest import RANK_LE_3

P1 = catalog("P1")
P2 = catalog("P2")


def specs_for(fan):
    out = [Constant(1), Constant(2)]
    out += [Forms(q) for q in range(fan.rank + 1)]
    for c in fan.cones[:: max(1, len(fan.cones) // 5)]:
        out += [IndicatorStar(c), Skyscraper(c), LineO(c)]
    return out


def test_stalk_examples():
    sh = stalk_model(P2, Forms(1))
    assert sh.dims[()] == 2 and sh.dims[(0,)] == 1 and sh.dims[(0, 1)] == 0
    sh = stalk_model(P1, LineO((0,)))
    assert sh.dims == {(): 1, (0,): 0, (1,): 1}
    sh = stalk_model(P2, Constant(1))
    assert set(sh.dims.values()) == {1}
    assert all(m == [[1]] for m in sh.restrictions.values())


def test_euler_examples():
    assert euler_char(P1, Constant(1)) == 1
    assert euler_char(P1, LineO((0,))) == 0
    assert euler_char(P2, Skyscraper((0, 1))) == 1


def test_cohomology_examples():
    assert cellular_cohomology(stalk_model(P2, Forms(1))) == [0, 1, 0]
    assert cellular_cohomology(stalk_model(P2, Forms(0))) == [1, 0, 0]
    assert cellular_cohomology(stalk_model(catalog("P1xP1"), Forms(1))) == [0, 2, 0]


@pytest.mark.parametrize("name", RANK_LE_3)
def test_d_squared_zero(name):
    fan = catalog(name)
    for spec in specs_for(fan):
        sh = stalk_model(fan, spec)
        for i in range(fan.rank - 1):
            prod = _matmul(differential(sh, i + 1), differential(sh, i))
            assert not any(x for row in prod for x in row), spec


@pytest.mark.parametrize("name", RANK_LE_3)
def test_euler_is_alternating_cohomology(name):
    fan = catalog(name)
    for spec in specs_for(fan):
        sh = stalk_model(fan, spec)
        h = cellular_cohomology(sh)
        assert sum((-1) ** i * x for i, x in enumerate(h)) == sheaf_euler_char(sh) == euler_char(fan, spec)


@pytest.mark.parametrize("name", RANK_LE_3)
def test_constant_sheaf_cohomology(name):
    # a complete fan is a cone over a sphere: only H^0 survives
    fan = catalog(name)
    assert cellular_cohomology(stalk_model(fan, Constant(1))) == [1] + [0] * fan.rank


@pytest.mark.parametrize("name", ["P2", "P1xP1", "blowup_p1xp1", "P3"])
def test_skyscraper_cohomology(name):
    fan = catalog(name)
    for c in fan.cones:
        h = cellular_cohomology(stalk_model(fan, Skyscraper(c)))
        want = [0] * (fan.rank + 1)
        want[fan.rank - len(c)] = 1
        assert h == want


def test_tampered_sheaf_rejected():
    sh = stalk_model(P2, Constant(1))
    res = dict(sh.restrictions)
    res[((0, 1), (0,))] = [[Fraction(2)]]
    bad = LinearSheaf(P2, sh.dims, res)
    with pytest.raises(errors.IncompatibleRestrictions):
        check_diamonds(bad)
    with pytest.raises(errors.IncompatibleRestrictions):
        cellular_cohomology(bad)


@pytest.mark.parametrize("name", ["P2", "P3", "P2xP2"])
def test_forms_diamonds_commute(name):
    fan = catalog(name)
    for q in range(fan.rank + 1):
        check_diamonds(stalk_model(fan, Forms(q)))


@pytest.mark.parametrize("name", ["P2", "P1xP2", "blowup_p1xp1"])
def test_tensor(name):
    fan = catalog(name)
    for r in range(len(fan.rays)):
        a = stalk_model(fan, LineO((r,)))
        assert tensor(a, a) == a
    one = stalk_model(fan, Constant(1))
    f1 = stalk_model(fan, Forms(1))
    assert tensor(one, f1).dims == f1.dims
    assert cellular_cohomology(tensor(f1, one)) == cellular_cohomology(f1)


def test_forms_outside_range():
    sh = stalk_model(P2, Forms(3))
    assert set(sh.dims.values()) == {0}
    assert cellular_cohomology(sh) == [0, 0, 0]
