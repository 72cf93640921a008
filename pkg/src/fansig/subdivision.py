"""Star subdivisions, subdivision maps and convexity of conewise-linear functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import NonPrimitive, NonUnimodular, NotComplete, NotInteriorPoint
from .fan import Cone, Fan, PLFunction, as_cone, build_fan, pl_evaluate
from .rng import LCG


@dataclass(frozen=True)
class SubdivisionMap:
    """A subdivision ``source -> target``.

    ``ray_image[i]`` is the smallest cone of the target containing ray ``i``
    of the source. Star subdivisions keep the old ray indices, so old rays
    map to themselves and only appended rays map to larger cones.
    """

    source: Fan
    target: Fan
    ray_image: tuple[Cone, ...]

    def cone_image(self, cone: Iterable[int]) -> Cone:
        """Smallest cone of the target containing the given source cone."""
        out: set[int] = set()
        for r in as_cone(cone):
            out.update(self.ray_image[r])
        c = tuple(sorted(out))
        return self.target.require(c)

    @property
    def new_rays(self) -> list[int]:
        return [i for i, img in enumerate(self.ray_image) if img != (i,)]

    def is_identity(self) -> bool:
        return self.source == self.target and not self.new_rays


def identity_map(fan: Fan) -> SubdivisionMap:
    return SubdivisionMap(fan, fan, tuple((i,) for i in range(len(fan.rays))))


def star_subdivide(fan: Fan, sigma: Iterable[int], v: Sequence[int]) -> tuple[Fan, SubdivisionMap]:
    """Star subdivision of ``fan`` at ``sigma`` along the ray through ``v``.

    Every maximal cone ``m`` containing ``sigma`` is replaced by the cones
    ``(m - {r}) + {v}`` for ``r`` in ``sigma``; all other cones are kept.
    """
    s = fan.require(sigma)
    v = tuple(int(x) for x in v)
    if len(v) != fan.rank:
        raise ValueError("vector has the wrong length")
    if linalg.content(v) != 1:
        raise NonPrimitive(f"{list(v)} is not primitive")
    coords = fan.coordinates(s, v) if s else None
    if coords is None or any(c <= 0 for c in coords):
        raise NotInteriorPoint(f"{list(v)} is not in the relative interior of {list(s)}")
    if len(s) == 1:
        # v is a positive multiple of a primitive ray, hence equal to it
        return fan, identity_map(fan)
    new = len(fan.rays)
    ss = set(s)
    cones: list[Cone] = []
    for m in fan.max_cones:
        if ss <= set(m):
            for r in s:
                cones.append(tuple(i for i in m if i != r) + (new,))
        else:
            cones.append(m)
    out = build_fan(fan.rank, list(fan.rays) + [v], cones, check_overlaps=False)
    image = tuple((i,) for i in range(new)) + (s,)
    return out, SubdivisionMap(out, fan, image)


def regular_star_subdivide(fan: Fan, sigma: Iterable[int]) -> tuple[Fan, SubdivisionMap]:
    """Star subdivision along the sum of the primitive rays of ``sigma``."""
    if not fan.is_unimodular:
        raise NonUnimodular("regular star subdivision needs a unimodular fan")
    s = fan.require(sigma)
    if len(s) == 0:
        raise NotInteriorPoint("the origin cone cannot be subdivided")
    if len(s) == 1:
        return fan, identity_map(fan)
    v = [sum(fan.rays[i][j] for i in s) for j in range(fan.rank)]
    out, pi = star_subdivide(fan, s, v)
    if not out.is_unimodular:
        raise AssertionError("regular star subdivision lost unimodularity")
    return out, pi


def pullback_pl(pi: SubdivisionMap, f: PLFunction) -> PLFunction:
    return PLFunction(pl_evaluate(pi.target, f, v) for v in pi.source.rays)


def linear_extension(fan: Fan, cone: Cone, f: PLFunction, p: Sequence) -> Fraction:
    """Value at ``p`` of the linear function agreeing with ``f`` on ``cone``."""
    c = fan.coordinates(cone, p)
    return sum((x * f.values[r] for r, x in zip(cone, c)), Fraction(0))


def is_convex_pl(fan: Fan, f: PLFunction) -> str:
    """Classify ``f`` as "not_convex", "convex" or "strictly_convex".

    Convex here means the wall condition: across every wall, the linear
    extension from one side never exceeds ``f`` on the other side.
    """
    if not fan.is_complete:
        raise NotComplete("convexity is tested on complete fans")
    n = fan.rank
    if n == 0:
        return "convex"
    strict = True
    for ridge in fan.cones_by_dim[n - 1]:
        a, b = fan.cofacets[ridge]
        for here, there in ((a, b), (b, a)):
            u = next(r for r in there if r not in ridge)
            ext = linear_extension(fan, here, f, fan.rays[u])
            val = f.values[u]
            if ext > val:
                return "not_convex"
            if ext == val:
                strict = False
    return "strictly_convex" if strict else "convex"


def random_chain(seed: int, start: Fan, steps: int) -> list[tuple[Fan, SubdivisionMap]]:
    """Deterministic chain of regular star subdivisions.

    At each step a cone of dimension at least 2 is drawn from the current
    fan's cones (in their sorted order) with :class:`~fansig.rng.LCG`.
    """
    rng = LCG(seed)
    out = []
    fan = start
    for _ in range(steps):
        choices = [c for c in fan.cones if len(c) >= 2]
        if not choices:
            break
        fan, pi = regular_star_subdivide(fan, rng.choice(choices))
        out.append((fan, pi))
    return out


def volume_defects(pi: SubdivisionMap) -> list[tuple[Cone, Fraction]]:
    """Maximal cones of the target not exactly tiled by their preimages.

    For a full-dimensional maximal cone ``m`` of the target, let ``w`` be
    the linear form equal to 1 on each ray of ``m``. The slices ``w = 1`` of
    the source cones inside ``m`` must have volumes summing to that of the
    slice of ``m``. Returns ``(cone, ratio)`` for every mismatch.
    """
    tgt, src = pi.target, pi.source
    bad = []
    for m in tgt.max_cones:
        if len(m) != tgt.rank or not m:
            continue
        inv = tgt.dual_matrix(m)
        w = [sum(row, Fraction(0)) for row in inv]
        total = Fraction(0)
        ms = set(m)
        for c in src.max_cones:
            if not set(pi.cone_image(c)) <= ms:
                continue
            rows = [src.rays[i] for i in c]
            vol = Fraction(abs(linalg.det(rows)))
            for r in rows:
                vol /= linalg.dot(w, r)
            total += vol
        ratio = total / abs(linalg.det([tgt.rays[i] for i in m]))
        if ratio != 1:
            bad.append((m, ratio))
    return bad
