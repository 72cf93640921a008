"""Named fans used as test instances and chain seeds."""

from __future__ import annotations

import re
from itertools import combinations

from .errors import UnknownName
from .fan import Fan, build_fan
from .subdivision import regular_star_subdivide


def projective(n: int) -> Fan:
    """Fan of projective n-space: rays e_1..e_n and -(e_1+...+e_n)."""
    if n < 0:
        raise UnknownName("projective space needs n >= 0")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if n:
        rays.append(tuple([-1] * n))
        cones = list(combinations(range(n + 1), n))
    else:
        cones = [()]
    return build_fan(n, rays, cones, check_overlaps=False)


def product(f: Fan, g: Fan) -> Fan:
    """Product fan; rays of ``f`` come first, each padded with zeros."""
    n = f.rank + g.rank
    rays = [tuple(v) + (0,) * g.rank for v in f.rays]
    rays += [(0,) * f.rank + tuple(w) for w in g.rays]
    k = len(f.rays)
    cones = [a + tuple(k + j for j in b) for a in f.max_cones for b in g.max_cones]
    return build_fan(n, rays, cones, check_overlaps=False)


def hirzebruch(a: int) -> Fan:
    return build_fan(2, [(1, 0), (0, 1), (-1, a), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)],
                     check_overlaps=False)


def blowup_p2() -> Fan:
    """P^2 subdivided at the cone spanned by e_1 and e_2 (new ray (1, 1))."""
    return regular_star_subdivide(projective(2), (0, 1))[0]


def blowup_p1xp1() -> Fan:
    """P^1 x P^1 subdivided at the cone spanned by e_1 and e_2.

    Rays are (1,0), (-1,0), (0,1), (0,-1) and the new ray (1,1) at index 4.
    """
    p1 = projective(1)
    return regular_star_subdivide(product(p1, p1), (0, 2))[0]


NAMES = ("P<n>", "P<a>xP<b>...", "blowup_p2", "blowup_p1xp1", "F<a> (Hirzebruch)")

_PROJ = re.compile(r"^P(\d+)$")
_HIRZ = re.compile(r"^F(-?\d+)$")


def catalog(name: str) -> Fan:
    """Look up a fan by name.

    Accepted names: ``P<n>``, ``blowup_p2``, ``blowup_p1xp1``, ``F<a>`` and
    products of these joined by ``x`` (for example ``P1xP2`` or
    ``blowup_p1xp1xblowup_p1xp1``).
    """
    parts = _split(name)
    fans = [_atom(p) for p in parts]
    out = fans[0]
    for f in fans[1:]:
        out = product(out, f)
    return out


def _split(name: str) -> list[str]:
    # split on "x" separators but keep the names containing "x" intact
    tokens = []
    rest = name.strip()
    atoms = ("blowup_p1xp1", "blowup_p2")
    while rest:
        for a in atoms:
            if rest.startswith(a):
                tokens.append(a)
                rest = rest[len(a):]
                break
        else:
            m = re.match(r"^(P\d+|F-?\d+)", rest)
            if not m:
                raise UnknownName(f"unknown fan name {name!r}")
            tokens.append(m.group(1))
            rest = rest[m.end():]
        if rest:
            if not rest.startswith("x"):
                raise UnknownName(f"unknown fan name {name!r}")
            rest = rest[1:]
            if not rest:
                raise UnknownName(f"unknown fan name {name!r}")
    if not tokens:
        raise UnknownName("empty fan name")
    return tokens


def _atom(token: str) -> Fan:
    if token == "blowup_p2":
        return blowup_p2()
    if token == "blowup_p1xp1":
        return blowup_p1xp1()
    m = _PROJ.match(token)
    if m:
        return projective(int(m.group(1)))
    m = _HIRZ.match(token)
    if m:
        return hirzebruch(int(m.group(1)))
    raise UnknownName(f"unknown fan name {token!r}")


def standard_suite(max_rank: int = 4) -> dict[str, Fan]:
    """The catalog instances used by the verification suites."""
    names = ["P1", "P2", "P3", "P4", "P1xP1", "P1xP2", "blowup_p2", "blowup_p1xp1",
             "F1", "F2", "P1xP1xP1", "P2xP2", "blowup_p1xp1xblowup_p1xp1"]
    out = {}
    for n in names:
        f = catalog(n)
        if f.rank <= max_rank:
            out[n] = f
    return out
