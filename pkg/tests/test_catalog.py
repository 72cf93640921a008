import pytest

from fansig.catalog import catalog, hirzebruch, product, projective, standard_suite
from fansig.cohomology import h_vector
from fansig.errors import UnknownName
from fansig.fan import build_fan
from fansig.rng import LCG


def test_projective():
    assert projective(1).rays == ((1,), (-1,))
    assert projective(0).cones == ((),)
    assert projective(3).f_vector() == (1, 4, 6, 4)


def test_product():
    f = product(projective(1), projective(1))
    assert sorted(f.rays) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert len(f.max_cones) == 4


@pytest.mark.parametrize("a", [-2, 0, 1, 3])
def test_hirzebruch(a):
    f = hirzebruch(a)
    assert f.is_complete and f.is_unimodular and h_vector(f) == (1, 2, 1)


@pytest.mark.parametrize("name, rank, nrays", [
    ("P4", 4, 5), ("P1xP1xP1", 3, 6), ("blowup_p1xp1xP1", 3, 7),
    ("F3xP1", 3, 6), ("blowup_p2xblowup_p2", 4, 8),
])
def test_names(name, rank, nrays):
    f = catalog(name)
    assert (f.rank, len(f.rays)) == (rank, nrays)
    assert f.is_complete and f.is_unimodular


@pytest.mark.parametrize("name", ["", "Q2", "P", "P2x", "xP2", "P2yP1", "blowup_p3"])
def test_unknown_names(name):
    with pytest.raises(UnknownName):
        catalog(name)


def test_catalog_fans_pass_overlap_check():
    for name, f in standard_suite().items():
        assert build_fan(f.rank, f.rays, f.max_cones) == f, name
    assert max(f.rank for f in standard_suite(3).values()) == 3


def test_lcg_stream():
    a, b = LCG(42), LCG(42)
    xs = [a.next_u32() for _ in range(5)]
    assert xs == [b.next_u32() for _ in range(5)]
    state = 42
    for x in xs:
        state = (6364136223846793005 * state + 1442695040888963407) % 2**64
        assert x == state >> 32
    r = LCG(1)
    assert all(-3 <= r.integer(-3, 3) <= 3 for _ in range(100))
    with pytest.raises(ValueError):
        r.below(0)
