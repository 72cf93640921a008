import json
import random
from fractions import Fraction
from itertools import product as iproduct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fansig import errors
from fansig.catalog import catalog, projective
from fansig.cohomology import h_vector, signature_report
from fansig.fan import (
    PLFunction,
    build_fan,
    dumps,
    incidence_sign,
    is_locally_convex,
    is_star_support_convex,
    loads,
    pl_evaluate,
    quotient_star,
    quotient_star_fan,
    star_sets,
)

from conftest import RANK_LE_3

P2 = catalog("P2")
P1xP1 = catalog("P1xP1")


def test_p2_build():
    f = build_fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (2, 0)])
    assert f.f_vector() == (1, 3, 3)
    assert f.is_complete and f.is_unimodular
    assert f == P2


@pytest.mark.parametrize(
    "rank, rays, cones, exc",
    [
        (2, [(2, 0), (0, 1)], [(0, 1)], errors.NonPrimitiveRay),
        (2, [(1, 0), (0, 1), (1, 1)], [(0, 1), (0, 2)], errors.OverlappingCones),
        (2, [(1, 0), (1, 0)], [(0,), (1,)], errors.DuplicateRay),
        (2, [(1, 0), (0, 1), (-1, 0)], [(0, 1)], errors.DanglingRay),
        (2, [(1, 0), (-1, 0)], [(0, 1)], errors.NotSimplicial),
        (3, [(1, 0, 0), (0, 1, 0), (1, 1, 0)], [(0, 1, 2)], errors.NotSimplicial),
    ],
)
def test_build_errors(rank, rays, cones, exc):
    with pytest.raises(exc):
        build_fan(rank, rays, cones)


def test_classify():
    assert P2.classify() == {"complete": True, "simplicial": True, "unimodular": True}
    assert not build_fan(2, [(1, 0), (0, 1)], [(0, 1)]).is_complete
    assert projective(0).is_complete
    assert not build_fan(2, [(1, 0), (1, 2)], [(0, 1)]).is_unimodular


def test_star_sets():
    star, closed, boundary = star_sets(P2, (0,))
    assert star == [(0,), (0, 1), (0, 2)]
    star, closed, boundary = star_sets(P2, ())
    assert len(star) == len(P2.cones) and boundary == []
    star, closed, boundary = star_sets(P2, (0, 1))
    assert star == [(0, 1)] and boundary == [(), (0,), (1,)]
    with pytest.raises(errors.ConeNotInFan):
        star_sets(P2, (5,))


def test_quotient_star():
    q, m = quotient_star(P2, (0,))
    assert q.rank == 1 and sorted(q.rays) == [(-1,), (1,)] and q.is_complete
    assert set(m) == {1, 2}
    assert quotient_star_fan(P2, (0, 1)).rank == 0
    assert quotient_star_fan(P1xP1, (0,)) == catalog("P1")


@pytest.mark.parametrize("name", RANK_LE_3 + ["P4", "P2xP2"])
def test_quotient_stars_complete_unimodular(name):
    fan = catalog(name)
    for c in fan.cones:
        q, m = quotient_star(fan, c)
        assert q.is_complete and q.is_unimodular
        assert q.rank == fan.rank - len(c)
        assert len(q.max_cones) == sum(1 for s in fan.max_cones if set(c) <= set(s))


def test_incidence_sign():
    assert incidence_sign(None, (0, 1), (1,)) == 1
    assert incidence_sign(None, (0, 1), (0,)) == -1
    with pytest.raises(errors.NotAFacet):
        incidence_sign(None, (0, 1), (2,))


@pytest.mark.parametrize("name", RANK_LE_3 + ["P4"])
def test_incidence_squares_to_zero(name):
    fan = catalog(name)
    for s in fan.cones:
        for mu in fan.cones:
            if len(mu) + 2 != len(s) or not set(mu) <= set(s):
                continue
            mids = [t for t in fan.cones if len(t) == len(mu) + 1 and set(mu) <= set(t) <= set(s)]
            assert sum(incidence_sign(fan, s, t) * incidence_sign(fan, t, mu) for t in mids) == 0


def _star_convex_by_sampling(fan, sigma, rng, trials=400):
    """False if two sampled points of the star support have a midpoint outside it."""
    ss = set(sigma)
    tops = [m for m in fan.max_cones if ss <= set(m)]

    def inside(p):
        c = fan.smallest_cone(p)
        return any(set(c) <= set(m) for m in tops)

    def sample():
        m = rng.choice(tops)
        w = [rng.randint(0, 3) for _ in m]
        return [sum(c * fan.rays[r][j] for c, r in zip(w, m)) for j in range(fan.rank)]

    for _ in range(trials):
        p, q = sample(), sample()
        if not inside([Fraction(a + b, 2) for a, b in zip(p, q)]):
            return False
    return True


@pytest.mark.parametrize("name", RANK_LE_3)
def test_star_convexity_against_sampling(name):
    fan = catalog(name)
    rng = random.Random(7)
    for c in fan.cones:
        assert is_star_support_convex(fan, c) == _star_convex_by_sampling(fan, c, rng), c


def test_convexity_examples():
    assert not is_star_support_convex(P2, (0,))
    assert is_star_support_convex(P1xP1, (0,))
    assert is_star_support_convex(P2, (0, 1))
    assert not is_locally_convex(P2)
    assert is_locally_convex(catalog("blowup_p1xp1"))


def test_pl_examples():
    assert pl_evaluate(P2, PLFunction.courant(P2, 0), (1, 1)) == 1
    assert pl_evaluate(P2, PLFunction.courant(P2, 2), (1, 1)) == 0
    for r, v in enumerate(P2.rays):
        assert pl_evaluate(P2, PLFunction.courant(P2, r), v) == 1


@pytest.mark.parametrize("name", ["P2", "P1xP2", "F2", "blowup_p1xp1"])
@settings(max_examples=30, deadline=None)
@given(p=st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_courant_partition(name, p):
    # sum_rho phi_rho(p) v_rho = p and a linear function is recovered exactly
    fan = catalog(name)
    p = p[: fan.rank]
    vals = [pl_evaluate(fan, PLFunction.courant(fan, r), p) for r in range(len(fan.rays))]
    assert all(v >= 0 for v in vals)
    assert [sum(v * fan.rays[r][j] for r, v in enumerate(vals)) for j in range(fan.rank)] == p
    u = list(range(1, fan.rank + 1))
    assert pl_evaluate(fan, PLFunction.from_linear(fan, u), p) == sum(a * b for a, b in zip(u, p))


@pytest.mark.parametrize("name", RANK_LE_3 + ["P2xP2"])
def test_json_round_trip(name):
    fan = catalog(name)
    text = dumps(fan)
    assert loads(text) == fan
    assert json.loads(text)["rank"] == fan.rank


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("{not json", "line 1"),
        ("[]", "top level"),
        ('{"rank": 1, "rays": [[1]]}', "max_cones"),
        ('{"rank": -1, "rays": [], "max_cones": []}', "rank"),
        ('{"rank": 1, "rays": [[1, 2]], "max_cones": [[0]]}', "rays[0]"),
        ('{"rank": 1, "rays": [[1]], "max_cones": [[3]]}', "unknown ray"),
        ('{"rank": 1, "rays": [[1]], "max_cones": [[0, 0]]}', "repeats"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(errors.ParseError) as e:
        loads(text, "f.json")
    assert fragment in str(e.value) and str(e.value).startswith("f.json")


@pytest.mark.parametrize("name", ["P2", "blowup_p1xp1", "F1", "P1xP2"])
def test_ray_permutation_invariance(name):
    fan = catalog(name)
    rng = random.Random(3)
    for _ in range(3):
        perm = list(range(len(fan.rays)))
        rng.shuffle(perm)
        inv = {old: new for new, old in enumerate(perm)}
        g = build_fan(fan.rank, [fan.rays[o] for o in perm], [[inv[r] for r in c] for c in fan.max_cones])
        assert h_vector(g) == h_vector(fan)
        assert signature_report(g).signature == signature_report(fan).signature
        assert g.f_vector() == fan.f_vector()


def test_require_and_link():
    with pytest.raises(errors.ConeNotInFan):
        P2.require((0, 1, 2))
    assert P2.link((0,)) == (1, 2)
    assert P2.link(()) == (0, 1, 2)


def test_locate_outside_support():
    f = build_fan(2, [(1, 0), (0, 1)], [(0, 1)])
    with pytest.raises(errors.PointOutsideSupport):
        f.locate((-1, 0))


def test_rank_zero():
    f = projective(0)
    assert f.cones == ((),) and f.is_complete
    assert quotient_star_fan(f, ()) == f


def test_product_max_cone_counts():
    for a, b in iproduct(["P1", "P2"], repeat=2):
        f = catalog(f"{a}x{b}")
        assert f.f_vector()[-1] == len(catalog(a).max_cones) * len(catalog(b).max_cones)
