"""Chern character, Todd and L classes, and executable theorem checks.

Every check returns a :class:`TheoremReport` holding both sides of the
identity as exact rationals. Nothing here compares floating-point values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Any, Iterable

from .cohomology import SRElement, pullback_images, ring, signature_report
from .errors import NoTransverseCone, NotLocallyConvex, OddRank, PreconditionViolated
from .fan import Fan, is_locally_convex
from .ktheory import KClass, chi_k
from .series import bernoulli_abs, series
from .subdivision import regular_star_subdivide


def fmt(q) -> str:
    """Rational as a "p/q" string."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass
class TheoremReport:
    theorem: str
    fan_id: str
    lhs: Any
    rhs: Any
    passed: bool | None
    status: str = ""
    details: dict = field(default_factory=dict)
    terms: list = field(default_factory=list)

    def __post_init__(self):
        if not self.status:
            self.status = "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        def enc(x):
            if isinstance(x, Fraction):
                return fmt(x)
            if isinstance(x, dict):
                return {k: enc(v) for k, v in x.items()}
            if isinstance(x, (list, tuple)):
                return [enc(v) for v in x]
            return x

        out = {
            "theorem": self.theorem,
            "fan": self.fan_id,
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "pass": self.passed,
            "status": self.status,
        }
        if self.details:
            out["details"] = enc(self.details)
        if self.terms:
            out["terms"] = enc(self.terms)
        return out


# -- classes --------------------------------------------------------------


def _ray_series_product(fan: Fan, kind: str, start: SRElement | None = None,
                        rays: Iterable[int] | None = None) -> SRElement:
    r = ring(fan)
    coeffs = series(kind, max(r.n, 1)).coeffs
    acc = SRElement.const(1) if start is None else start
    for rho in range(len(fan.rays)) if rays is None else rays:
        acc = r.series_product(acc, rho, coeffs)
    return acc


def chern_character(fan: Fan, a: KClass) -> SRElement:
    """ch([O(sigma)]) is the product of exp(-x_rho) over the rays of sigma."""
    out = SRElement()
    for cone, c in a.coeffs.items():
        out = out + _ray_series_product(fan, "exp_neg", rays=cone) * c
    return out


def todd_class(fan: Fan) -> SRElement:
    return _ray_series_product(fan, "todd")


def l_class(fan: Fan) -> SRElement:
    """2^rank times the product of (x/2)/tanh(x/2) over the rays."""
    return _ray_series_product(fan, "l_factor") * (2 ** fan.rank)


def integral_top(fan: Fan, f: SRElement) -> Fraction:
    return ring(fan).integrate(f.component(fan.rank))


def compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _l_weight(ms) -> Fraction:
    w = Fraction(1)
    for m in ms:
        w *= bernoulli_abs(2 * m) / factorial(2 * m)
    return w


def lr_terms(fan: Fan) -> list[dict]:
    """(-1)^k times the integral of prod x_{rho_i}^{2 m_i}, for every k, composition and k-subset.

    Each monomial is listed once: the composition is attached to the
    rays of the subset in increasing order.
    """
    if fan.rank % 2:
        raise OddRank("the term expansion needs even rank")
    n = fan.rank // 2
    r = ring(fan)
    out = []
    for k in range(1, n + 1):
        for ms in compositions(n, k):
            for rays in combinations(range(len(fan.rays)), k):
                mono = tuple(x for ray, m in zip(rays, ms) for x in (ray,) * (2 * m))
                t = (-1) ** k * r.integrate(SRElement.monomial(mono))
                out.append({
                    "k": k,
                    "m": list(ms),
                    "rays": list(rays),
                    "spans_cone": tuple(rays) in fan.cone_set,
                    "value": t,
                })
    return out


def l_top_by_enumeration(fan: Fan) -> Fraction:
    """Integral of the L class from the explicit Bernoulli expansion of its top degree."""
    if fan.rank % 2:
        return Fraction(0)
    n = fan.rank // 2
    total = sum((t["value"] * _l_weight(t["m"]) for t in lr_terms(fan)), Fraction(0))
    return (-1) ** n * 2 ** (2 * n) * total


# -- theorem checks ------------------------------------------------------


def todd_check(fan: Fan, fan_id: str = "") -> TheoremReport:
    v = integral_top(fan, todd_class(fan))
    return TheoremReport("genus_one", fan_id, v, Fraction(1), v == 1)


def rr_check(fan: Fan, a: KClass, fan_id: str = "") -> TheoremReport:
    lhs = chi_k(a)
    r = ring(fan)
    rhs = r.integrate(r.mul(chern_character(fan, a), todd_class(fan)).component(fan.rank))
    return TheoremReport("riemann_roch", fan_id, lhs, rhs, lhs == rhs,
                         details={"class": {str(list(c)): v for c, v in sorted(a.coeffs.items())}})


def signature_theorem_check(fan: Fan, fan_id: str = "") -> TheoremReport:
    """signature = euler number = integral of L (all zero in odd rank)."""
    rep = signature_report(fan)
    lint = integral_top(fan, l_class(fan))
    ok = rep.signature == rep.epsilon == lint
    status = ("pass" if ok else "fail") if fan.rank % 2 == 0 else ("odd_rank" if ok else "fail")
    return TheoremReport(
        "signature", fan_id, rep.signature, lint, ok, status,
        details={"h": list(rep.h), "signature": rep.signature, "epsilon": rep.epsilon,
                 "integral_L": lint},
    )


def exceptional_positivity_check(fan: Fan, tau: Iterable[int], fan_id: str = "") -> TheoremReport:
    """Sign of the exceptional class after the regular subdivision at ``tau``.

    With rho the new ray and xi a cone completing ``tau`` to a maximal cone,
    ``(-1)^(k-1) * integral of x_rho^k * pullback(x_xi)`` must be positive.
    """
    t = fan.require(tau)
    k = len(t)
    if k < 2:
        raise PreconditionViolated("the cone must have dimension at least 2")
    top = next((m for m in fan.max_cones if set(t) <= set(m)), None)
    if top is None or len(top) != fan.rank:
        raise NoTransverseCone(f"no maximal cone contains {list(t)}")
    xi = tuple(r for r in top if r not in t)
    psi, pi = regular_star_subdivide(fan, t)
    rho = len(psi.rays) - 1
    images = pullback_images(pi)
    pb = SRElement.const(1)
    for r in xi:
        pb = pb * images[r]
    integrand = SRElement.monomial((rho,) * k) * pb
    val = (-1) ** (k - 1) * ring(psi).integrate(integrand)
    return TheoremReport("exceptional_positivity", fan_id, val, Fraction(0), val > 0,
                         details={"cone": list(t), "xi": list(xi), "new_ray": list(psi.rays[rho])})


def leung_reiner_certificate(fan: Fan, fan_id: str = "", strict: bool = False) -> TheoremReport:
    """Term-by-term certificate that (-1)^n signature >= 0 for locally convex fans of rank 2n.

    If the fan is not locally convex the report has status
    "hypothesis_failed" (or :class:`NotLocallyConvex` is raised when
    ``strict``).
    """
    if fan.rank % 2:
        raise OddRank("the certificate is stated for even rank")
    n = fan.rank // 2
    rep = signature_report(fan)
    sgn = (-1) ** n * rep.signature
    if not is_locally_convex(fan):
        if strict:
            raise NotLocallyConvex("fan is not locally convex")
        return TheoremReport(
            "leung_reiner", fan_id, sgn, 0, None, "hypothesis_failed",
            details={"locally_convex": False, "signature": rep.signature,
                     "signed_signature": sgn},
        )
    terms = lr_terms(fan)
    nonneg = all(t["value"] >= 0 for t in terms)
    vanish = all(t["value"] == 0 for t in terms if not t["spans_cone"])
    recon = (-1) ** n * 2 ** (2 * n) * sum(
        (t["value"] * _l_weight(t["m"]) for t in terms), Fraction(0))
    lint = integral_top(fan, l_class(fan))
    ok = nonneg and vanish and sgn >= 0 and recon == lint == rep.signature
    return TheoremReport(
        "leung_reiner", fan_id, sgn, 0, ok,
        details={"locally_convex": True, "signature": rep.signature,
                 "signed_signature": sgn, "terms_nonnegative": nonneg,
                 "non_cone_terms_vanish": vanish, "integral_L_from_terms": recon,
                 "integral_L": lint},
        terms=[t for t in terms if t["spans_cone"] or t["value"]],
    )
