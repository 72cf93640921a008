"""Cohomology ring of a complete unimodular fan.

The ring is Q[x_rho] modulo the monomials of non-faces and the linear forms
``sum_rho u(v_rho) x_rho`` for u in the dual lattice. ``x_rho`` stands for
the Courant function of the ray rho.

Normal forms are computed in two stages. A monomial with a repeated
variable ``x_rho^2 * m'`` is rewritten with the linear relation that is 1 on
``rho`` and vanishes on the other rays of a maximal cone containing the
support; every new term has a strictly larger support, so the rewriting
ends at squarefree face monomials. Those are reduced with an exact row
reduction of the relations ``sum_nu u(v_nu) x_{pi + nu}`` (pi a cone, u in
its annihilator) in each degree; the non-pivot cones form the basis.

Integration uses the functional that sums ``f_sigma / F_sigma`` over the
maximal cones, evaluated exactly at generic integer points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb, lcm
from typing import Iterable, Mapping, Sequence

from . import _kernels, linalg
from .errors import (
    DegeneratePoint,
    DegreeMismatch,
    NotCompleteSimplicialUnimodular,
    PreconditionViolated,
)
from .fan import Cone, Fan, PLFunction, as_cone, pl_evaluate, quotient_star
from .rng import LCG

Monomial = tuple[int, ...]

POINT_SEED = 0x5EED


class SRElement:
    """Polynomial in the ray variables with rational coefficients.

    Monomials are sorted tuples of ray indices with repetition, so
    ``(0, 0, 2)`` is ``x_0^2 x_2``. Instances are immutable by convention.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Iterable[int], object] | None = None):
        out: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                m = tuple(sorted(m))
                out[m] = out.get(m, Fraction(0)) + c
        self.terms = {m: c for m, c in out.items() if c}

    @classmethod
    def const(cls, c=1) -> "SRElement":
        return cls({(): c})

    @classmethod
    def var(cls, i: int) -> "SRElement":
        return cls({(i,): 1})

    @classmethod
    def monomial(cls, m: Iterable[int], c=1) -> "SRElement":
        return cls({tuple(m): c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "SRElement":
        return cls({(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def from_pl(cls, f: PLFunction) -> "SRElement":
        return cls.linear(f.values)

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return SRElement(out)

    __radd__ = __add__

    def __neg__(self):
        return SRElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return SRElement(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SRElement.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SRElement.const(other)
        return isinstance(other, SRElement) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            mono = "*".join(f"x{i}" for i in m) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def component(self, k: int) -> "SRElement":
        return SRElement({m: c for m, c in self.terms.items() if len(m) == k})

    def truncate(self, k: int) -> "SRElement":
        return SRElement({m: c for m, c in self.terms.items() if len(m) <= k})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def substitute(self, images: Sequence["SRElement"], max_degree: int | None = None) -> "SRElement":
        """Replace each x_i by ``images[i]`` (a ring map)."""
        out = SRElement()
        for m, c in self.terms.items():
            t = SRElement.const(c)
            for i in m:
                t = t * images[i]
                if max_degree is not None:
                    t = t.truncate(max_degree)
            out = out + t
        return out


def _coerce(x) -> SRElement:
    if isinstance(x, SRElement):
        return x
    return SRElement.const(x)


# -- the ring -------------------------------------------------------------


def _require(fan: Fan) -> None:
    if not (fan.is_complete and fan.is_unimodular):
        raise NotCompleteSimplicialUnimodular(
            "cohomology ring needs a complete simplicial unimodular fan"
        )


@dataclass(frozen=True)
class Presentation:
    nonfaces: list[Cone]
    linear: list[SRElement]


def minimal_nonfaces(fan: Fan) -> list[Cone]:
    out = []
    nrays = len(fan.rays)
    for k in range(1, fan.rank + 2):
        base = fan.cones_by_dim[k - 1] if k - 1 <= fan.rank else ()
        for c in base:
            for r in range(c[-1] + 1 if c else 0, nrays):
                s = c + (r,)
                if s in fan.cone_set:
                    continue
                if all(s[:i] + s[i + 1:] in fan.cone_set for i in range(len(s))):
                    out.append(s)
    return out


def sr_presentation(fan: Fan) -> Presentation:
    _require(fan)
    lin = [
        SRElement.linear([v[j] for v in fan.rays]) for j in range(fan.rank)
    ]
    return Presentation(minimal_nonfaces(fan), lin)


class CohomologyRing:
    """Graded basis, normal forms and integration for one fan."""

    def __init__(self, fan: Fan):
        _require(fan)
        self.fan = fan
        self.n = fan.rank
        self._nf: dict[Monomial, dict[Monomial, Fraction]] = {}
        self._build_squarefree()

    # squarefree relations, one degree at a time
    def _build_squarefree(self):
        fan = self.fan
        self.basis: list[list[Monomial]] = []
        for k in range(self.n + 1):
            cols = list(fan.cones_by_dim[k])
            col_of = {c: i for i, c in enumerate(cols)}
            rows = []
            if k >= 1:
                for pi in fan.cones_by_dim[k - 1]:
                    link = fan.link(pi)
                    ann = _annihilator(fan, pi)
                    for u in ann:
                        row = [0] * len(cols)
                        for nu in link:
                            val = linalg.dot(u, fan.rays[nu])
                            if val:
                                row[col_of[as_cone(pi + (nu,))]] += val
                        if any(row):
                            rows.append(row)
            red, piv = linalg.rref(rows, len(cols)) if rows else ([], [])
            pivset = set(piv)
            free = [c for i, c in enumerate(cols) if i not in pivset]
            self.basis.append(free)
            for c in free:
                self._nf[c] = {c: Fraction(1)}
            for r, p in zip(red, piv):
                nf = {}
                for j, x in enumerate(r):
                    if x and j != p:
                        nf[cols[j]] = -x
                self._nf[cols[p]] = nf

    @cached_property
    def h(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.basis)

    @cached_property
    def _max_of_support(self) -> dict[Cone, Cone]:
        out = {}
        for m in self.fan.max_cones:
            for k in range(len(m) + 1):
                for c in combinations(m, k):
                    out.setdefault(c, m)
        return out

    def normal_form(self, mono: Iterable[int]) -> dict[Monomial, Fraction]:
        """Coordinates of a monomial in the graded basis (basis monomial -> coefficient)."""
        m = tuple(sorted(mono))
        hit = self._nf.get(m)
        if hit is not None:
            return hit
        supp = tuple(sorted(set(m)))
        if len(m) > self.n or supp not in self.fan.cone_set:
            self._nf[m] = {}
            return self._nf[m]
        # a repeated variable exists (squarefree faces are all tabulated)
        rho = next(m[i] for i in range(len(m) - 1) if m[i] == m[i + 1])
        sigma = self._max_of_support[supp]
        dual = self.fan.dual_matrix(sigma)
        u = [row[sigma.index(rho)] for row in dual]
        rest = list(m)
        rest.remove(rho)
        out: dict[Monomial, Fraction] = {}
        sset = set(sigma)
        for nu, v in enumerate(self.fan.rays):
            if nu in sset:
                continue
            a = linalg.dot(u, v)
            if not a:
                continue
            if tuple(sorted(set(supp) | {nu})) not in self.fan.cone_set:
                continue
            for b, c in self.normal_form(rest + [nu]).items():
                out[b] = out.get(b, Fraction(0)) - a * c
        out = {b: c for b, c in out.items() if c}
        self._nf[m] = out
        return out

    def reduce(self, f: SRElement) -> SRElement:
        out: dict[Monomial, Fraction] = {}
        for m, c in f.terms.items():
            for b, x in self.normal_form(m).items():
                out[b] = out.get(b, Fraction(0)) + c * x
        return SRElement(out)

    def mul(self, a: SRElement, b: SRElement) -> SRElement:
        """Product in H, reduced and truncated above the top degree."""
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                if len(m1) + len(m2) > self.n:
                    continue
                for bm, x in self.normal_form(m1 + m2).items():
                    out[bm] = out.get(bm, Fraction(0)) + c1 * c2 * x
        return SRElement(out)

    def series_product(self, acc: SRElement, ray: int, coeffs: Sequence[Fraction]) -> SRElement:
        """``acc * sum_j coeffs[j] x_ray^j``, reduced and truncated."""
        out: dict[Monomial, Fraction] = {}
        for m, c in acc.terms.items():
            for j, a in enumerate(coeffs):
                if not a or len(m) + j > self.n:
                    continue
                for bm, x in self.normal_form(m + (ray,) * j).items():
                    out[bm] = out.get(bm, Fraction(0)) + c * a * x
        return SRElement(out)

    def coordinates(self, f: SRElement, k: int) -> list[Fraction]:
        """Coordinate vector of the degree-k part of ``f`` in the basis."""
        red = self.reduce(f.component(k))
        return [red.terms.get(b, Fraction(0)) for b in self.basis[k]]

    # -- integration -----------------------------------------------------

    @cached_property
    def points(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(generic_points(self.fan, 2, POINT_SEED))

    @cached_property
    def _cones_with(self) -> dict[Cone, list[Cone]]:
        out: dict[Cone, list[Cone]] = {}
        for m in self.fan.max_cones:
            for k in range(len(m) + 1):
                for c in combinations(m, k):
                    out.setdefault(c, []).append(m)
        return out

    def _coords_at(self, p: Sequence[int]) -> dict[Cone, list[int]]:
        return _point_coordinates(self.fan, tuple(p))

    def zeta(self, f: SRElement, p: Sequence[int]) -> Fraction:
        coords = self._coords_at(p)
        total = Fraction(0)
        for m, c in f.terms.items():
            supp = tuple(sorted(set(m)))
            cones = self._cones_with.get(supp)
            if not cones:
                continue
            cs, es = [], []
            for s in cones:
                cs.append(coords[s])
                es.append([m.count(r) for r in s])
            num, den = _kernels.zeta_sum(cs, es)
            total += c * Fraction(num, den)
        return total

    def integrate(self, f: SRElement) -> Fraction:
        if any(d != self.n for d in f.degrees()):
            raise DegreeMismatch(f"integrand must be homogeneous of degree {self.n}")
        p, q = self.points
        a = self.zeta(f, p)
        b = self.zeta(f, q)
        if a != b:
            raise AssertionError(f"integral depends on the evaluation point: {a} != {b}")
        return a

    @cached_property
    def top_integral(self) -> Fraction:
        (top,) = self.basis[self.n]
        return self.integrate(SRElement.monomial(top))

    def integrate_nf(self, f: SRElement) -> Fraction:
        """Integral of the top-degree part through the normal form."""
        (top,) = self.basis[self.n]
        red = self.reduce(f.component(self.n))
        return red.terms.get(top, Fraction(0)) * self.top_integral

    def gram(self, k: int) -> list[list[Fraction]]:
        b1, b2 = self.basis[k], self.basis[self.n - k]
        return [[self.integrate(SRElement.monomial(x + y)) for y in b2] for x in b1]


@lru_cache(maxsize=256)
def ring(fan: Fan) -> CohomologyRing:
    return CohomologyRing(fan)


def _annihilator(fan: Fan, cone: Cone) -> list[list[int]]:
    n = fan.rank
    if not cone:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return [linalg.integer_row(v) for v in linalg.nullspace([fan.rays[i] for i in cone], n)]


@lru_cache(maxsize=1024)
def _point_coordinates(fan: Fan, p: tuple[int, ...]) -> dict[Cone, list[int]]:
    out = {}
    for m in fan.max_cones:
        c = linalg.vec_mat(p, fan.dual_matrix(m)) if m else []
        if any(x == 0 for x in c):
            raise DegeneratePoint(f"{list(p)} lies on a wall of cone {list(m)}")
        out[m] = [int(x) for x in c]
    return out


def generic_points(fan: Fan, count: int, seed: int) -> list[tuple[int, ...]]:
    """Integer points off every coordinate hyperplane of every maximal cone.

    Coordinates are drawn from [-R, R] with the package LCG; R grows after
    repeated misses.
    """
    rng = LCG(seed)
    out: list[tuple[int, ...]] = []
    radius = 7
    misses = 0
    while len(out) < count:
        p = tuple(rng.integer(-radius, radius) for _ in range(fan.rank))
        try:
            _point_coordinates(fan, p)
        except DegeneratePoint:
            misses += 1
            if misses % 16 == 0:
                radius *= 2
            continue
        if p not in out:
            out.append(p)
        if fan.rank == 0:
            out = [p] * count
    return out


# -- module-level operations ----------------------------------------------


def h_vector(fan: Fan) -> tuple[int, ...]:
    return ring(fan).h


def h_vector_from_faces(fan: Fan) -> tuple[int, ...]:
    """h-vector from the f-vector: sum h_k t^(n-k) = sum f_i (t-1)^(n-i)."""
    n = fan.rank
    f = fan.f_vector()
    h = []
    for k in range(n + 1):
        h.append(sum((-1) ** (k - i) * comb(n - i, k - i) * f[i] for i in range(k + 1)))
    return tuple(h)


def full_span_relations(fan: Fan, k: int) -> tuple[list[Monomial], list[list[Fraction]]]:
    """All degree-k monomials and a spanning set of the ideal in degree k."""
    nr = len(fan.rays)
    monos = list(combinations_with_replacement(range(nr), k))
    col = {m: i for i, m in enumerate(monos)}
    rows = []
    for m in monos:
        if tuple(sorted(set(m))) not in fan.cone_set:
            r = [Fraction(0)] * len(monos)
            r[col[m]] = Fraction(1)
            rows.append(r)
    if k >= 1:
        for m in combinations_with_replacement(range(nr), k - 1):
            for j in range(fan.rank):
                r = [Fraction(0)] * len(monos)
                for rho, v in enumerate(fan.rays):
                    if v[j]:
                        r[col[tuple(sorted(m + (rho,)))]] += v[j]
                if any(r):
                    rows.append(r)
    return monos, rows


def full_span_h_vector(fan: Fan) -> tuple[int, ...]:
    """Dimensions by brute-force row reduction over all monomials (small fans)."""
    _require(fan)
    out = []
    for k in range(fan.rank + 1):
        monos, rows = full_span_relations(fan, k)
        out.append(len(monos) - (linalg.rank(rows, len(monos)) if rows else 0))
    return tuple(out)


def zeta_evaluate(fan: Fan, f: SRElement, p: Sequence) -> Fraction:
    """Sum over maximal cones of f_sigma(p) / F_sigma(p), exactly."""
    _require(fan)
    p = tuple(p)
    if all(Fraction(x).denominator == 1 for x in p):
        return ring(fan).zeta(f, tuple(int(x) for x in p))
    # rational point: scale to integers; a degree-d monomial over the
    # n-fold product scales by s^(d - n)
    den = lcm(*(Fraction(x).denominator for x in p))
    q = tuple(int(Fraction(x) * den) for x in p)
    total = Fraction(0)
    for d in f.degrees():
        total += ring(fan).zeta(f.component(d), q) * Fraction(den) ** (fan.rank - d)
    return total


def integrate(fan: Fan, f: SRElement) -> Fraction:
    return ring(fan).integrate(f)


def h_equal(fan: Fan, a: SRElement, b: SRElement) -> bool:
    """Equality in H, tested by pairing the difference with a basis of the complementary degree."""
    da, db = a.degrees(), b.degrees()
    if len(da) > 1 or len(db) > 1 or (da and db and da != db):
        raise DegreeMismatch("h_equal compares homogeneous elements of one degree")
    degs = da or db or {0}
    (k,) = degs
    r = ring(fan)
    if k > r.n:
        return True
    diff = a - b
    for m in r.basis[r.n - k]:
        if r.integrate(diff * SRElement.monomial(m)):
            return False
    return True


@dataclass(frozen=True)
class SignatureReport:
    h: tuple[int, ...]
    gram: list[list[Fraction]] = field(repr=False)
    signature: int
    epsilon: int

    def as_dict(self) -> dict:
        return {"h": list(self.h), "signature": self.signature, "epsilon": self.epsilon}


def epsilon(fan: Fan) -> int:
    return sum((-1) ** i * x for i, x in enumerate(h_vector(fan)))


def signature_report(fan: Fan) -> SignatureReport:
    r = ring(fan)
    eps = sum((-1) ** i * x for i, x in enumerate(r.h))
    if r.n % 2:
        return SignatureReport(r.h, [], 0, eps)
    g = r.gram(r.n // 2)
    pos, neg, zero = linalg.symmetric_signature(g)
    if zero:
        raise AssertionError("Poincare pairing is degenerate on the middle degree")
    return SignatureReport(r.h, g, pos - neg, eps)


def signature(fan: Fan) -> int:
    return signature_report(fan).signature


@lru_cache(maxsize=256)
def pullback_images(pi) -> tuple[SRElement, ...]:
    """Image of each target variable x_eta: sum over source rays of phi_eta(v_nu) x_nu.

    phi_eta(v_nu) is the coefficient of v_eta when v_nu is written in the
    rays of its image cone.
    """
    tgt, src = pi.target, pi.source
    table = [[Fraction(0)] * len(src.rays) for _ in tgt.rays]
    for nu, v in enumerate(src.rays):
        cone = pi.ray_image[nu]
        for eta, c in zip(cone, tgt.coordinates(cone, v)):
            table[eta][nu] = c
    return tuple(SRElement.linear(row) for row in table)


def pullback_images_by_evaluation(pi) -> list[SRElement]:
    """Same images computed by locating each source ray in the target fan."""
    tgt, src = pi.target, pi.source
    out = []
    for eta in range(len(tgt.rays)):
        phi = PLFunction.courant(tgt, eta)
        out.append(SRElement.linear([pl_evaluate(tgt, phi, v) for v in src.rays]))
    return out


def pullback_sr(pi, a: SRElement) -> SRElement:
    return a.substitute(pullback_images(pi))


def _check_transverse(fan: Fan, tau: Cone, mono: Monomial) -> None:
    ts = set(tau)
    for r in mono:
        if r in ts or tuple(sorted(ts | {r})) not in fan.cone_set:
            raise PreconditionViolated(f"ray {r} is not transverse to {list(tau)}")
    if len(mono) + len(tau) != fan.rank:
        raise PreconditionViolated("degree of the monomial plus dim of the cone must equal the rank")


def star_integral_sides(fan: Fan, tau: Iterable[int], mono: Iterable[int]) -> tuple[Fraction, Fraction]:
    """(integral over the fan of x_tau * m, integral over the quotient star of the image of m)."""
    t = fan.require(tau)
    m = tuple(sorted(mono))
    _check_transverse(fan, t, m)
    lhs = integrate(fan, SRElement.monomial(t + m))
    q, ray_map = quotient_star(fan, t)
    rhs = integrate(q, SRElement.monomial(tuple(ray_map[r] for r in m)))
    return lhs, rhs


def verify_star_integral(fan: Fan, tau: Iterable[int], mono: Iterable[int]) -> bool:
    lhs, rhs = star_integral_sides(fan, tau, mono)
    return lhs == rhs


def transverse_pairs(fan: Fan):
    """All (tau, m) with m a monomial of degree n - dim(tau) in the link rays of tau."""
    for t in fan.cones:
        link = fan.link(t)
        for m in combinations_with_replacement(link, fan.rank - len(t)):
            yield t, m
