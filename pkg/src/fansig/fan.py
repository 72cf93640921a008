"""Simplicial rational fans: construction, validation, stars and quotients.

A fan lives in Z^n. Rays are primitive integer vectors, cones are sorted
tuples of ray indices, and the empty tuple is the origin cone. Only
simplicial fans are representable: a cone is determined by its rays and
every subset of a cone's rays is again a cone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    ConeNotInFan,
    DanglingRay,
    DuplicateRay,
    ImagePrimitivityViolation,
    NonPrimitiveRay,
    NonUnimodular,
    NotAFacet,
    NotComplete,
    NotSimplicial,
    OverlappingCones,
    ParseError,
    PointOutsideSupport,
)

Cone = tuple[int, ...]
Vector = tuple[int, ...]

ORIGIN: Cone = ()


def as_cone(c: Iterable[int]) -> Cone:
    return tuple(sorted(set(int(i) for i in c)))


@dataclass(frozen=True, eq=False)
class Fan:
    """Immutable simplicial fan. Build instances with :func:`build_fan`."""

    rank: int
    rays: tuple[Vector, ...]
    max_cones: tuple[Cone, ...]

    def _key(self):
        return (self.rank, self.rays, self.max_cones)

    def __eq__(self, other):
        if not isinstance(other, Fan):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash(self._key())

    def __repr__(self):
        return f"Fan(rank={self.rank}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"

    # -- face poset ------------------------------------------------------

    @cached_property
    def cones(self) -> tuple[Cone, ...]:
        """All cones, sorted by dimension and then lexicographically."""
        seen: set[Cone] = set()
        for m in self.max_cones:
            for k in range(len(m) + 1):
                seen.update(combinations(m, k))
        return tuple(sorted(seen, key=lambda c: (len(c), c)))

    @cached_property
    def cone_set(self) -> frozenset[Cone]:
        return frozenset(self.cones)

    @cached_property
    def cone_index(self) -> dict[Cone, int]:
        return {c: i for i, c in enumerate(self.cones)}

    @cached_property
    def cones_by_dim(self) -> tuple[tuple[Cone, ...], ...]:
        out: list[list[Cone]] = [[] for _ in range(self.rank + 1)]
        for c in self.cones:
            out[len(c)].append(c)
        return tuple(tuple(x) for x in out)

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.cones_by_dim)

    @cached_property
    def cofacets(self) -> dict[Cone, tuple[Cone, ...]]:
        """Map each cone to the cones having it as a facet."""
        out: dict[Cone, list[Cone]] = {c: [] for c in self.cones}
        for c in self.cones:
            for i in range(len(c)):
                out[c[:i] + c[i + 1:]].append(c)
        return {k: tuple(v) for k, v in out.items()}

    def link(self, cone: Cone) -> tuple[int, ...]:
        """Rays nu outside ``cone`` such that ``cone + nu`` is a cone."""
        self.require(cone)
        return tuple(sorted(set(c for f in self.cofacets[cone] for c in f) - set(cone)))

    def contains(self, cone: Iterable[int]) -> bool:
        return as_cone(cone) in self.cone_set

    def require(self, cone: Iterable[int]) -> Cone:
        c = as_cone(cone)
        if c not in self.cone_set:
            raise ConeNotInFan(f"{list(c)} is not a cone of the fan")
        return c

    def is_maximal(self, cone: Cone) -> bool:
        return not self.cofacets[cone]

    # -- flags -----------------------------------------------------------

    @cached_property
    def is_complete(self) -> bool:
        n = self.rank
        if any(len(m) != n for m in self.max_cones):
            return False
        if n == 0:
            return True
        return all(len(self.cofacets[r]) == 2 for r in self.cones_by_dim[n - 1])

    @cached_property
    def is_unimodular(self) -> bool:
        for m in self.max_cones:
            rows = [self.rays[i] for i in m]
            if rows and linalg.maximal_minors_gcd(rows) != 1:
                return False
        return True

    @property
    def is_simplicial(self) -> bool:
        return True

    def classify(self) -> dict[str, bool]:
        return {
            "complete": self.is_complete,
            "simplicial": True,
            "unimodular": self.is_unimodular,
        }

    # -- coordinates -----------------------------------------------------

    @cached_property
    def _dual(self) -> dict[Cone, list[list[Fraction]]]:
        # inverse ray matrix of each full-dimensional maximal cone;
        # row p of (point . inv) gives the coefficients along the rays
        out = {}
        for m in self.max_cones:
            if len(m) == self.rank and m:
                out[m] = linalg.inverse([self.rays[i] for i in m])
        return out

    def dual_matrix(self, cone: Cone) -> list[list[Fraction]]:
        return self._dual[cone]

    def coordinates(self, cone: Cone, p: Sequence) -> list[Fraction] | None:
        """Coefficients of ``p`` along the rays of ``cone``, or None if not in its span."""
        if not cone:
            return [] if not any(p) else None
        if cone in self._dual:
            return linalg.vec_mat([Fraction(x) for x in p], self._dual[cone])
        cols = [[self.rays[i][j] for i in cone] for j in range(self.rank)]
        return linalg.solve(cols, list(p))

    def locate(self, p: Sequence) -> tuple[Cone, list[Fraction]]:
        """A maximal cone containing ``p`` and the coordinates there."""
        for m in self.max_cones:
            c = self.coordinates(m, p)
            if c is not None and all(x >= 0 for x in c):
                return m, c
        raise PointOutsideSupport(f"{list(p)} is not in the support of the fan")

    def smallest_cone(self, p: Sequence) -> Cone:
        m, c = self.locate(p)
        return tuple(r for r, x in zip(m, c) if x != 0)

    def ray_id(self, v: Sequence[int]) -> int | None:
        return self._ray_lookup.get(tuple(v))

    @cached_property
    def _ray_lookup(self) -> dict[Vector, int]:
        return {v: i for i, v in enumerate(self.rays)}


def _canonical_max(cones: Iterable[Iterable[int]]) -> tuple[Cone, ...]:
    cs = sorted({as_cone(c) for c in cones}, key=lambda c: (-len(c), c))
    kept: list[Cone] = []
    for c in cs:
        sc = set(c)
        if not any(sc <= set(k) for k in kept):
            kept.append(c)
    if not kept:
        kept = [ORIGIN]
    return tuple(sorted(kept))


def build_fan(
    rank: int,
    rays: Sequence[Sequence[int]],
    max_cones: Iterable[Iterable[int]],
    check_overlaps: bool = True,
) -> Fan:
    """Validate input and build a :class:`Fan`.

    Cones that are faces of other listed cones are dropped. With
    ``check_overlaps`` every pair of maximal cones is tested by exact linear
    programming to meet exactly along the cone on their shared rays; trusted
    constructions (subdivisions, products, quotients) skip this.
    """
    if rank < 0:
        raise ValueError("rank must be nonnegative")
    rv: list[Vector] = []
    for i, r in enumerate(rays):
        if len(r) != rank:
            raise ValueError(f"ray {i} has length {len(r)}, expected {rank}")
        if any(isinstance(x, float) or int(x) != x for x in r):
            raise ValueError(f"ray {i} is not integral")
        v = tuple(int(x) for x in r)
        if linalg.content(v) != 1:
            raise NonPrimitiveRay(f"ray {i} = {list(v)} is not primitive")
        rv.append(v)
    if len(set(rv)) != len(rv):
        seen: dict[Vector, int] = {}
        for i, v in enumerate(rv):
            if v in seen:
                raise DuplicateRay(f"rays {seen[v]} and {i} are both {list(v)}")
            seen[v] = i
    cones = _canonical_max(max_cones)
    for c in cones:
        for i in c:
            if not 0 <= i < len(rv):
                raise ValueError(f"cone {list(c)} refers to unknown ray {i}")
        if len(c) > rank or (c and linalg.rank([rv[i] for i in c]) != len(c)):
            raise NotSimplicial(f"rays of cone {list(c)} are linearly dependent")
    used = set(i for c in cones for i in c)
    for i in range(len(rv)):
        if i not in used:
            raise DanglingRay(f"ray {i} lies in no cone")
    fan = Fan(rank, tuple(rv), cones)
    if check_overlaps:
        check_intersections(fan)
    return fan


def cones_overlap(fan: Fan, a: Cone, b: Cone) -> bool:
    """True if cones a and b meet outside the cone on their shared rays."""
    shared = set(a) & set(b)
    only_a = [i for i in a if i not in shared]
    only_b = [i for i in b if i not in shared]
    if not only_a or not only_b:
        # one is a face of the other, or they differ only on one side;
        # simplicial independence then forces a clean intersection
        return False
    # variables: lambda over a, mu over b; sum lambda v - sum mu w = 0,
    # sum of lambda over rays of a not in b equals 1
    cols_a = [fan.rays[i] for i in a]
    cols_b = [fan.rays[i] for i in b]
    rows = []
    for j in range(fan.rank):
        rows.append([v[j] for v in cols_a] + [-w[j] for w in cols_b])
    rows.append([0 if i in shared else 1 for i in a] + [0] * len(b))
    rhs = [0] * fan.rank + [1]
    return linalg.lp_feasible(rows, rhs)


def check_intersections(fan: Fan) -> None:
    for a, b in combinations(fan.max_cones, 2):
        if cones_overlap(fan, a, b):
            raise OverlappingCones(
                f"cones {list(a)} and {list(b)} do not meet along a common face"
            )


def classify(fan: Fan) -> dict[str, bool]:
    return fan.classify()


# -- stars and quotients ---------------------------------------------------


def star_sets(fan: Fan, tau: Iterable[int]) -> tuple[list[Cone], list[Cone], list[Cone]]:
    """(Star, closed star, boundary of the star) of a cone."""
    t = fan.require(tau)
    st = set(t)
    star = [c for c in fan.cones if st <= set(c)]
    closure: set[Cone] = set()
    for c in star:
        for k in range(len(c) + 1):
            closure.update(combinations(c, k))
    key = lambda c: (len(c), c)  # noqa: E731
    closed = sorted(closure, key=key)
    boundary = [c for c in closed if not st <= set(c)]
    return star, closed, boundary


def quotient_star(fan: Fan, tau: Iterable[int]) -> tuple[Fan, dict[int, int]]:
    """Project the star of ``tau`` to Z^n / span(tau).

    Returns the quotient fan and the map from link rays of ``tau`` to the
    ray indices of the quotient.
    """
    t = fan.require(tau)
    if not fan.is_unimodular:
        raise NonUnimodular("quotient fans need a unimodular fan")
    d = len(t)
    if d == 0:
        return fan, {i: i for i in range(len(fan.rays))}
    m = linalg.column_completion([fan.rays[i] for i in t])

    def project(v):
        return tuple(int(x) for x in linalg.vec_mat(v, m)[d:])

    link = fan.link(t)
    ray_map = {r: k for k, r in enumerate(link)}
    images = []
    for r in link:
        w = project(fan.rays[r])
        if linalg.content(w) != 1:
            raise ImagePrimitivityViolation(f"image of ray {r} is not primitive")
        images.append(w)
    st = set(t)
    cones = [
        tuple(ray_map[i] for i in c if i not in st)
        for c in fan.max_cones
        if st <= set(c)
    ]
    q = build_fan(fan.rank - d, images, cones, check_overlaps=False)
    return q, ray_map


def quotient_star_fan(fan: Fan, tau: Iterable[int]) -> Fan:
    return quotient_star(fan, tau)[0]


def incidence_sign(fan: Fan | None, sigma: Iterable[int], tau: Iterable[int]) -> int:
    """Orientation sign of the facet ``tau`` in ``sigma``.

    Cones are oriented by their sorted ray lists, so the sign is the parity
    of the position of the deleted ray.
    """
    s, t = as_cone(sigma), as_cone(tau)
    if len(t) + 1 != len(s) or not set(t) <= set(s):
        raise NotAFacet(f"{list(t)} is not a facet of {list(s)}")
    if fan is not None:
        fan.require(s)
    missing = next(i for i, r in enumerate(s) if r not in t)
    return -1 if missing % 2 else 1


# -- convexity of stars ---------------------------------------------------


def is_star_support_convex(fan: Fan, sigma: Iterable[int]) -> bool:
    """Is the support of Star(sigma) convex?

    Every boundary facet of the maximal cones around ``sigma`` must span a
    supporting hyperplane of the closed star.
    """
    if not fan.is_complete:
        raise NotComplete("convexity of stars is defined on complete fans")
    s = fan.require(sigma)
    n = fan.rank
    if n == 0:
        return True
    ss = set(s)
    tops = [m for m in fan.max_cones if ss <= set(m)]
    top_set = set(tops)
    closed_rays = sorted(set(i for m in tops for i in m))
    for m in tops:
        for k in range(n):
            facet = m[:k] + m[k + 1:]
            inside = [c for c in fan.cofacets[facet] if c in top_set]
            if len(inside) != 1:
                continue
            if n == 1:
                normal = [1]
            else:
                normal = linalg.normal_vector([fan.rays[i] for i in facet])
            if linalg.dot(normal, fan.rays[m[k]]) < 0:
                normal = [-x for x in normal]
            for r in closed_rays:
                if linalg.dot(normal, fan.rays[r]) < 0:
                    return False
    return True


def is_locally_convex(fan: Fan) -> bool:
    if not fan.is_complete:
        raise NotComplete("local convexity is defined on complete fans")
    return all(is_star_support_convex(fan, c) for c in fan.cones)


# -- conewise linear functions --------------------------------------------


@dataclass(frozen=True)
class PLFunction:
    """Conewise-linear function, stored by its values on the primitive rays."""

    values: tuple[Fraction, ...]

    def __init__(self, values: Iterable):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in values))

    @classmethod
    def courant(cls, fan: Fan, ray: int) -> "PLFunction":
        return cls(1 if i == ray else 0 for i in range(len(fan.rays)))

    @classmethod
    def from_linear(cls, fan: Fan, u: Sequence) -> "PLFunction":
        return cls(linalg.dot(u, v) for v in fan.rays)

    def __add__(self, other: "PLFunction") -> "PLFunction":
        return PLFunction(a + b for a, b in zip(self.values, other.values))

    def __neg__(self) -> "PLFunction":
        return PLFunction(-a for a in self.values)

    def scale(self, c) -> "PLFunction":
        return PLFunction(c * a for a in self.values)


def pl_evaluate(fan: Fan, f: PLFunction, p: Sequence) -> Fraction:
    cone, coords = fan.locate(p)
    return sum((c * f.values[r] for r, c in zip(cone, coords)), Fraction(0))


# -- file format ----------------------------------------------------------


def fan_to_dict(fan: Fan) -> dict:
    return {
        "rank": fan.rank,
        "rays": [list(v) for v in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }


def dumps(fan: Fan) -> str:
    """Canonical JSON text: one ray and one cone per line."""
    def block(items):
        if not items:
            return "[]"
        body = ",\n    ".join(json.dumps(list(x)) for x in items)
        return f"[\n    {body}\n  ]"

    return (
        f'{{\n  "rank": {fan.rank},\n'
        f'  "rays": {block(fan.rays)},\n'
        f'  "max_cones": {block(fan.max_cones)}\n}}\n'
    )


def fan_from_dict(doc, where: str = "<input>", check_overlaps: bool = True) -> Fan:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", where)
    for key in ("rank", "rays", "max_cones"):
        if key not in doc:
            raise ParseError(f'missing field "{key}"', where)
    rank = doc["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise ParseError('"rank" must be a nonnegative integer', where)
    rays = doc["rays"]
    if not isinstance(rays, list):
        raise ParseError('"rays" must be a list', where)
    for i, r in enumerate(rays):
        if not isinstance(r, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in r
        ):
            raise ParseError(f"rays[{i}] must be a list of integers", where)
        if len(r) != rank:
            raise ParseError(f"rays[{i}] has length {len(r)}, expected {rank}", where)
    cones = doc["max_cones"]
    if not isinstance(cones, list):
        raise ParseError('"max_cones" must be a list', where)
    for i, c in enumerate(cones):
        if not isinstance(c, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in c
        ):
            raise ParseError(f"max_cones[{i}] must be a list of integers", where)
        if len(set(c)) != len(c):
            raise ParseError(f"max_cones[{i}] repeats a ray", where)
        for x in c:
            if not 0 <= x < len(rays):
                raise ParseError(f"max_cones[{i}] refers to unknown ray {x}", where)
    return build_fan(rank, rays, cones, check_overlaps=check_overlaps)


def loads(text: str, where: str = "<input>") -> Fan:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}", where) from None
    return fan_from_dict(doc, where)


def load(path: str) -> Fan:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(str(e.strerror or e), path) from None
    return loads(text, path)


def dump(fan: Fan, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(fan))
