"""Sheaves on the face poset of a fan and their cellular cohomology.

Open sets of the poset are closed under taking faces, so a sheaf has one
stalk per cone and a restriction map ``F_sigma -> F_tau`` for every facet
``tau`` of ``sigma``. Stalks are given by their dimension and restriction
maps by rational matrices of shape ``dim F_tau x dim F_sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Union

from . import linalg
from .errors import IncompatibleRestrictions
from .fan import Cone, Fan, as_cone, incidence_sign


@dataclass(frozen=True)
class Constant:
    dim: int = 1


@dataclass(frozen=True)
class IndicatorStar:
    """Rank-one constant sheaf on the cones containing ``cone``, zero elsewhere."""

    cone: Cone

    def __post_init__(self):
        object.__setattr__(self, "cone", as_cone(self.cone))


@dataclass(frozen=True)
class Skyscraper:
    cone: Cone

    def __post_init__(self):
        object.__setattr__(self, "cone", as_cone(self.cone))


@dataclass(frozen=True)
class LineO:
    """Rank one on the cones sharing no ray with ``cone``, zero elsewhere."""

    cone: Cone

    def __post_init__(self):
        object.__setattr__(self, "cone", as_cone(self.cone))


@dataclass(frozen=True)
class Forms:
    """Degree-q forms: the stalk at a cone is the q-th exterior power of its annihilator."""

    q: int


SheafSpec = Union[Constant, IndicatorStar, Skyscraper, LineO, Forms]


@dataclass(frozen=True)
class LinearSheaf:
    fan: Fan
    dims: dict[Cone, int]
    restrictions: dict[tuple[Cone, Cone], list[list[Fraction]]] = field(repr=False)

    def restriction(self, sigma: Cone, tau: Cone) -> list[list[Fraction]]:
        return self.restrictions[(sigma, tau)]


def _facets(c: Cone):
    for i in range(len(c)):
        yield c[:i] + c[i + 1:]


def stalk_dim(fan: Fan, spec: SheafSpec, cone: Cone) -> int:
    n = fan.rank
    if isinstance(spec, Constant):
        return spec.dim
    if isinstance(spec, IndicatorStar):
        return int(set(spec.cone) <= set(cone))
    if isinstance(spec, Skyscraper):
        return int(spec.cone == cone)
    if isinstance(spec, LineO):
        return int(not set(spec.cone) & set(cone))
    if isinstance(spec, Forms):
        return comb(n - len(cone), spec.q) if 0 <= spec.q else 0
    raise TypeError(f"unknown sheaf spec {spec!r}")


@lru_cache(maxsize=4096)
def _annihilator(fan: Fan, cone: Cone):
    """Basis of the annihilator of ``cone`` and the free columns indexing it."""
    n = fan.rank
    rows = [fan.rays[i] for i in cone]
    basis = linalg.nullspace(rows, n) if rows else [
        [Fraction(int(i == j)) for j in range(n)] for i in range(n)
    ]
    if rows:
        _, piv = linalg.rref(rows, n)
        free = [j for j in range(n) if j not in set(piv)]
    else:
        free = list(range(n))
    return basis, free


def _wedge_matrix(a: list[list[Fraction]], q: int, nrows: int, ncols: int):
    """Matrix of the q-th exterior power of ``a`` (q x q minors)."""
    rsets = list(combinations(range(nrows), q))
    csets = list(combinations(range(ncols), q))
    return [
        [Fraction(linalg.det([[a[i][j] for j in js] for i in is_])) if q else Fraction(1)
         for js in csets]
        for is_ in rsets
    ]


def _forms_restriction(fan: Fan, sigma: Cone, tau: Cone, q: int):
    bs, _ = _annihilator(fan, sigma)
    bt, free_t = _annihilator(fan, tau)
    # coordinates of sigma's basis vectors in tau's basis = entries at tau's free columns
    inc = [[b[j] for b in bs] for j in free_t]
    return _wedge_matrix(inc, q, len(bt), len(bs))


def stalk_model(fan: Fan, spec: SheafSpec) -> LinearSheaf:
    dims = {c: stalk_dim(fan, spec, c) for c in fan.cones}
    res: dict[tuple[Cone, Cone], list[list[Fraction]]] = {}
    for s in fan.cones:
        for t in _facets(s):
            ds, dt = dims[s], dims[t]
            if isinstance(spec, Forms):
                m = _forms_restriction(fan, s, t, spec.q) if ds and dt else \
                    [[Fraction(0)] * ds for _ in range(dt)]
            else:
                one = Fraction(1 if (ds and dt and not isinstance(spec, Skyscraper)) else 0)
                m = [[one if i == j else Fraction(0) for j in range(ds)] for i in range(dt)]
            res[(s, t)] = m
    return LinearSheaf(fan, dims, res)


def tensor(a: LinearSheaf, b: LinearSheaf) -> LinearSheaf:
    """Stalkwise tensor product (Kronecker products of restriction maps)."""
    dims = {c: a.dims[c] * b.dims[c] for c in a.fan.cones}
    res = {}
    for key, ma in a.restrictions.items():
        mb = b.restrictions[key]
        res[key] = [[x * y for x in ra for y in rb] for ra in ma for rb in mb]
    return LinearSheaf(a.fan, dims, res)


def _matmul(a, b):
    if not a:
        return []
    k = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((r[i] * b[i][j] for i in range(k)), Fraction(0)) for j in range(cols)] for r in a]


def check_diamonds(sheaf: LinearSheaf) -> None:
    """Raise unless restriction maps commute around every codimension-2 diamond."""
    for s in sheaf.fan.cones:
        if len(s) < 2:
            continue
        for i, j in combinations(range(len(s)), 2):
            mu = tuple(r for k, r in enumerate(s) if k not in (i, j))
            t1 = s[:i] + s[i + 1:]
            t2 = s[:j] + s[j + 1:]
            p1 = _matmul(sheaf.restriction(t1, mu), sheaf.restriction(s, t1))
            p2 = _matmul(sheaf.restriction(t2, mu), sheaf.restriction(s, t2))
            if sheaf.dims[mu] and sheaf.dims[s] and p1 != p2:
                raise IncompatibleRestrictions(
                    f"restrictions from {list(s)} to {list(mu)} do not commute"
                )


def cochain_dims(sheaf: LinearSheaf) -> list[int]:
    n = sheaf.fan.rank
    return [sum(sheaf.dims[c] for c in sheaf.fan.cones_by_dim[n - i]) for i in range(n + 1)]


def differential(sheaf: LinearSheaf, i: int) -> list[list[Fraction]]:
    """Matrix of d: C^i -> C^{i+1} with C^i the sum of stalks over cones of dim n - i."""
    fan = sheaf.fan
    n = fan.rank
    src = fan.cones_by_dim[n - i]
    dst = fan.cones_by_dim[n - i - 1] if n - i - 1 >= 0 else ()
    col0, c = {}, 0
    for s in src:
        col0[s] = c
        c += sheaf.dims[s]
    ncols = c
    out = []
    for t in dst:
        rows = [[Fraction(0)] * ncols for _ in range(sheaf.dims[t])]
        for s in fan.cofacets[t]:
            m = sheaf.restriction(s, t)
            e = incidence_sign(None, s, t)
            for a in range(sheaf.dims[t]):
                for b in range(sheaf.dims[s]):
                    if m[a][b]:
                        rows[a][col0[s] + b] += e * m[a][b]
        out.extend(rows)
    return out


def cellular_cohomology(sheaf: LinearSheaf) -> list[int]:
    """Dimensions of H^0..H^n of the cellular complex."""
    check_diamonds(sheaf)
    n = sheaf.fan.rank
    dims = cochain_dims(sheaf)
    ranks = []
    for i in range(n + 1):
        d = differential(sheaf, i) if i < n else []
        ranks.append(linalg.rank(d, dims[i]) if d and dims[i] else 0)
    return [dims[i] - ranks[i] - (ranks[i - 1] if i else 0) for i in range(n + 1)]


def euler_char(fan: Fan, spec: SheafSpec, rank: int | None = None) -> int:
    """Alternating sum of stalk dimensions, graded by ``rank - dim``."""
    n = fan.rank if rank is None else rank
    return sum((-1) ** (n - len(c)) * stalk_dim(fan, spec, c) for c in fan.cones)


def sheaf_euler_char(sheaf: LinearSheaf) -> int:
    n = sheaf.fan.rank
    return sum((-1) ** (n - len(c)) * d for c, d in sheaf.dims.items())
