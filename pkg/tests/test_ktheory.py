import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fansig import errors
from fansig.catalog import catalog, projective
from fansig.cohomology import epsilon
from fansig.fan import build_fan
from fansig.ktheory import (
    KClass,
    basis_product,
    chi_k,
    forms_sum_from_stalks,
    forms_sum_kclass,
    indicator_star_class,
    k_product,
    kclass_from_spec_stalks,
    kclass_from_stalks,
    kclass_of,
    o_from_indicator_stars,
    ray_product,
)
from fansig.sheaves import (
    Constant,
    Forms,
    IndicatorStar,
    LineO,
    Skyscraper,
    sheaf_euler_char,
    stalk_model,
    tensor,
)

from conftest import RANK_LE_3

P1 = catalog("P1")
P2 = catalog("P2")


def O(fan, c=()):
    return KClass.basis(fan, c)


def test_kclass_examples():
    assert kclass_of(P2, IndicatorStar((0,))) == O(P2) - O(P2, (0,))
    assert kclass_of(P2, Constant(1)) == O(P2)
    assert kclass_of(P2, IndicatorStar((0, 1))) == O(P2) - O(P2, (0,)) - O(P2, (1,)) + O(P2, (0, 1))
    with pytest.raises(errors.UnsupportedSpec):
        kclass_of(P2, Forms(1))


def test_product_examples():
    assert k_product(O(P2, (0,)), O(P2, (1,))) == O(P2, (0, 1))
    p = k_product(O(P1, (0,)), O(P1, (1,)))
    assert p == O(P1, (0,)) + O(P1, (1,)) - O(P1)
    assert chi_k(p) == -1
    for r in range(3):
        assert k_product(O(P2, (r,)), O(P2, (r,))) == O(P2, (r,))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_projective_product_of_all_rays(n):
    fan = projective(n)
    got = ray_product(fan, frozenset(range(n + 1)))
    assert got == KClass(fan, {t: (-1) ** (n - len(t)) for t in fan.cones})


@pytest.mark.parametrize("name", RANK_LE_3 + ["P2xP2"])
def test_product_of_all_rays_quotient_stars(name):
    # coefficient of tau is the reduced count of the complete quotient star
    fan = catalog(name)
    got = ray_product(fan, frozenset(range(len(fan.rays))))
    assert all(got.coeffs[t] == (-1) ** (fan.rank - len(t)) for t in fan.cones)


@pytest.mark.parametrize("name", RANK_LE_3)
def test_chi(name):
    fan = catalog(name)
    assert chi_k(O(fan)) == 1
    assert all(chi_k(O(fan, c)) == 0 for c in fan.cones if c)


@pytest.mark.parametrize("name", RANK_LE_3)
def test_basis_round_trips(name):
    fan = catalog(name)
    for c in fan.cones:
        assert o_from_indicator_stars(fan, c) == O(fan, c)
        back = KClass(fan)
        for t, v in indicator_star_class(fan, c).coeffs.items():
            back = back + o_from_indicator_stars(fan, t).scale(v)
        assert back == indicator_star_class(fan, c)


@pytest.mark.parametrize("name", RANK_LE_3)
def test_classes_match_stalk_oracle(name):
    fan = catalog(name)
    for c in fan.cones:
        for spec in (IndicatorStar(c), Skyscraper(c), LineO(c)):
            assert kclass_of(fan, spec) == kclass_from_spec_stalks(fan, spec), spec
    assert kclass_of(fan, Constant(3)) == kclass_from_spec_stalks(fan, Constant(3))


@pytest.mark.parametrize("name", ["P2", "P1xP1", "blowup_p1xp1", "F2", "P1xP2", "P3"])
def test_basis_product_against_tensor(name):
    fan = catalog(name)
    models = {c: stalk_model(fan, LineO(c)) for c in fan.cones}
    for a in fan.cones:
        for b in fan.cones:
            sh = tensor(models[a], models[b])
            assert basis_product(fan, a, b) == kclass_from_stalks(fan, sh.dims)


@pytest.mark.parametrize("name", ["P2", "P1xP1", "blowup_p1xp1", "P1xP1xP1"])
def test_ray_subsets_chi_against_tensor(name):
    fan = catalog(name)
    rng = random.Random(0)
    nr = len(fan.rays)
    for _ in range(25):
        S = rng.sample(range(nr), rng.randint(1, min(4, nr)))
        sh = stalk_model(fan, LineO((S[0],)))
        for r in S[1:]:
            sh = tensor(sh, stalk_model(fan, LineO((r,))))
        assert chi_k(ray_product(fan, frozenset(S))) == sheaf_euler_char(sh)


def _classes(fan):
    coeff = st.integers(-3, 3)
    return st.lists(st.tuples(st.sampled_from(fan.cones), coeff), max_size=4).map(
        lambda items: KClass(fan, {c: Fraction(v) for c, v in items})
    )


BL = catalog("blowup_p1xp1")


@settings(max_examples=40, deadline=None)
@given(_classes(BL), _classes(BL), _classes(BL))
def test_ring_axioms(a, b, c):
    assert k_product(a, b) == k_product(b, a)
    assert k_product(k_product(a, b), c) == k_product(a, k_product(b, c))
    assert k_product(a, b + c) == k_product(a, b) + k_product(a, c)
    assert k_product(a, KClass.one(BL)) == a


@pytest.mark.parametrize("name", RANK_LE_3 + ["P2xP2"])
def test_forms_sum(name):
    fan = catalog(name)
    fs = forms_sum_kclass(fan)
    assert fs == forms_sum_from_stalks(fan)
    assert fs.is_integral()
    assert chi_k(fs) == epsilon(fan)


def test_forms_sum_values():
    assert chi_k(forms_sum_kclass(P1)) == 0
    assert chi_k(forms_sum_kclass(P2)) == 1
    assert chi_k(forms_sum_kclass(catalog("P1xP1"))) == 0


def test_incomplete_rejected():
    half = build_fan(2, [(1, 0), (0, 1)], [(0, 1)])
    with pytest.raises(errors.NotComplete):
        chi_k(KClass.one(half))
    with pytest.raises(errors.NotComplete):
        forms_sum_kclass(half)


def test_mixed_fans_rejected():
    with pytest.raises(ValueError):
        O(P1) + O(P2)
