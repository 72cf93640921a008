"""The Grothendieck group of sheaves on a fan, in the basis of the classes [O(sigma)].

``[O(sigma)]`` is the class of the rank-one sheaf supported on the cones
sharing no ray with ``sigma``; ``[O(())]`` is the structure sheaf ``[O]``.
Classes carry rational coefficients so that the forms sum, which involves a
power-of-two denominator in its product expansion, fits the same type.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import NotComplete, UnsupportedSpec
from .fan import ORIGIN, Cone, Fan, as_cone
from .sheaves import Constant, IndicatorStar, LineO, SheafSpec, Skyscraper, stalk_dim


def _subsets(c: Cone):
    k = len(c)
    for mask in range(1 << k):
        yield tuple(c[i] for i in range(k) if mask >> i & 1)


class KClass:
    """Finite rational combination of the classes [O(sigma)] on one fan."""

    __slots__ = ("fan", "coeffs")

    def __init__(self, fan: Fan, coeffs: Mapping[Iterable[int], object] | None = None):
        self.fan = fan
        out: dict[Cone, Fraction] = {}
        for c, v in (coeffs or {}).items():
            c = fan.require(c)
            v = Fraction(v)
            if v:
                out[c] = out.get(c, Fraction(0)) + v
        self.coeffs = {c: v for c, v in out.items() if v}

    @classmethod
    def basis(cls, fan: Fan, cone: Iterable[int] = ORIGIN) -> "KClass":
        return cls(fan, {as_cone(cone): 1})

    @classmethod
    def one(cls, fan: Fan) -> "KClass":
        return cls.basis(fan, ORIGIN)

    def _check(self, other: "KClass"):
        if other.fan != self.fan:
            raise ValueError("classes live on different fans")

    def __add__(self, other: "KClass") -> "KClass":
        self._check(other)
        out = dict(self.coeffs)
        for c, v in other.coeffs.items():
            out[c] = out.get(c, Fraction(0)) + v
        return KClass(self.fan, out)

    def __neg__(self) -> "KClass":
        return KClass(self.fan, {c: -v for c, v in self.coeffs.items()})

    def __sub__(self, other: "KClass") -> "KClass":
        return self + (-other)

    def scale(self, s) -> "KClass":
        s = Fraction(s)
        return KClass(self.fan, {c: s * v for c, v in self.coeffs.items()})

    def __mul__(self, other: "KClass") -> "KClass":
        return k_product(self, other)

    def __eq__(self, other):
        return isinstance(other, KClass) and self.fan == other.fan and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.fan, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return "KClass(0)"
        terms = [f"{v}*O{list(c)}" for c, v in sorted(self.coeffs.items(), key=lambda t: (len(t[0]), t[0]))]
        return "KClass(" + " + ".join(terms) + ")"

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coeffs.values())


def indicator_star_class(fan: Fan, sigma: Iterable[int]) -> KClass:
    """[R_Star(sigma)] as the alternating sum of [O(tau)] over faces tau."""
    s = fan.require(sigma)
    return KClass(fan, {t: (-1) ** len(t) for t in _subsets(s)})


def skyscraper_class(fan: Fan, sigma: Iterable[int]) -> KClass:
    """Class of the skyscraper at ``sigma`` by Moebius inversion over the cones above it."""
    s = fan.require(sigma)
    ss = set(s)
    out: dict[Cone, Fraction] = {}
    for t in fan.cones:
        if ss <= set(t):
            sign = (-1) ** (len(t) - len(s))
            for u in _subsets(t):
                out[u] = out.get(u, Fraction(0)) + sign * (-1) ** len(u)
    return KClass(fan, out)


def kclass_of(fan: Fan, spec: SheafSpec) -> KClass:
    if isinstance(spec, Constant):
        return KClass.one(fan).scale(spec.dim)
    if isinstance(spec, LineO):
        return KClass.basis(fan, spec.cone)
    if isinstance(spec, IndicatorStar):
        return indicator_star_class(fan, spec.cone)
    if isinstance(spec, Skyscraper):
        return skyscraper_class(fan, spec.cone)
    raise UnsupportedSpec(f"no single-class expansion for {spec!r}; use forms_sum_kclass")


def kclass_from_stalks(fan: Fan, dims: Mapping[Cone, int]) -> KClass:
    """Class of any sheaf from its stalk dimensions (sum over skyscraper classes)."""
    out = KClass(fan)
    for c, d in dims.items():
        if d:
            out = out + skyscraper_class(fan, c).scale(d)
    return out


def kclass_from_spec_stalks(fan: Fan, spec: SheafSpec) -> KClass:
    return kclass_from_stalks(fan, {c: stalk_dim(fan, spec, c) for c in fan.cones})


def o_from_indicator_stars(fan: Fan, sigma: Iterable[int]) -> KClass:
    """[O(sigma)] rebuilt from the classes [R_Star(tau)], tau a face of sigma."""
    s = fan.require(sigma)
    out = KClass(fan)
    for t in _subsets(s):
        out = out + indicator_star_class(fan, t).scale((-1) ** len(t))
    return out


# -- product formula ------------------------------------------------------


def generated_subfan(fan: Fan, rays: Iterable[int]) -> list[Cone]:
    """Cones of ``fan`` all of whose rays lie in ``rays``."""
    s = set(rays)
    return [c for c in fan.cones if set(c) <= s]


@lru_cache(maxsize=1 << 16)
def ray_product(fan: Fan, rays: frozenset) -> KClass:
    """The product of [O(rho)] over a set of rays, expanded in the O-basis.

    The coefficient of [O(tau)], for tau in the subfan spanned by the rays,
    is the reduced alternating count of the cones above tau in that subfan;
    this equals the signed Euler characteristic of the quotient star.
    """
    sub = generated_subfan(fan, rays)
    out: dict[Cone, int] = {}
    for t in sub:
        st = set(t)
        out[t] = sum((-1) ** (len(s) - len(t)) for s in sub if st <= set(s))
    return KClass(fan, out)


def basis_product(fan: Fan, a: Cone, b: Cone) -> KClass:
    return ray_product(fan, frozenset(a) | frozenset(b))


def k_product(a: KClass, b: KClass) -> KClass:
    a._check(b)
    fan = a.fan
    out: dict[Cone, Fraction] = {}
    for s, x in a.coeffs.items():
        for t, y in b.coeffs.items():
            for c, z in basis_product(fan, s, t).coeffs.items():
                out[c] = out.get(c, Fraction(0)) + x * y * z
    return KClass(fan, out)


# -- Euler characteristic --------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _chi_basis(fan: Fan, sigma: Cone) -> int:
    return sum(
        (-1) ** (fan.rank - len(t)) for t in fan.cones if not set(t) & set(sigma)
    )


def chi_k(a: KClass) -> Fraction:
    if not a.fan.is_complete:
        raise NotComplete("Euler characteristic pairing needs a complete fan")
    return sum((v * _chi_basis(a.fan, c) for c, v in a.coeffs.items()), Fraction(0))


def forms_sum_kclass(fan: Fan) -> KClass:
    """Sum of the classes of all form sheaves, from the product over rays.

    Computed as 2^(-h) * prod_rho ([O(rho)] + 1) with h = #rays - rank.
    """
    if not fan.is_complete:
        raise NotComplete("forms sum is defined for complete fans")
    acc = KClass.one(fan)
    for r in range(len(fan.rays)):
        acc = acc + k_product(acc, KClass.basis(fan, (r,)))
    h1 = len(fan.rays) - fan.rank
    return acc.scale(Fraction(1, 2 ** h1))


def forms_sum_from_stalks(fan: Fan) -> KClass:
    """Independent route: the stalk of the forms sum at sigma has dim 2^(n - d)."""
    return kclass_from_stalks(fan, {c: 2 ** (fan.rank - len(c)) for c in fan.cones})
