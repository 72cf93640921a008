"""Invariant suites shared by the command line fuzzer and the test-suite."""

from __future__ import annotations

from itertools import combinations_with_replacement

from .charclasses import (
    exceptional_positivity_check,
    integral_top,
    l_class,
    rr_check,
    todd_check,
)
from .cohomology import (
    SRElement,
    h_vector_from_faces,
    integrate,
    pullback_sr,
    ring,
    signature_report,
)
from .fan import Fan, quotient_star_fan
from .ktheory import KClass
from .subdivision import SubdivisionMap, volume_defects


def fan_invariants(fan: Fan, rr_cones: int | None = None) -> dict[str, bool]:
    """Checks that need only the fan itself.

    ``rr_cones`` limits Riemann-Roch to the first that many cones (None = all).
    """
    out: dict[str, bool] = {}
    out["complete_unimodular"] = fan.is_complete and fan.is_unimodular
    r = ring(fan)
    out["h_matches_faces"] = r.h == h_vector_from_faces(fan)
    out["poincare_duality"] = r.h == tuple(reversed(r.h))
    out["genus_one"] = bool(todd_check(fan).passed)
    rep = signature_report(fan)
    lint = integral_top(fan, l_class(fan))
    out["signature_three_way"] = rep.signature == rep.epsilon == lint
    cones = fan.cones if rr_cones is None else fan.cones[:rr_cones]
    out["riemann_roch"] = all(rr_check(fan, KClass.basis(fan, c)).passed for c in cones)
    return out


def subdivision_invariants(pi: SubdivisionMap, probe_limit: int = 40) -> dict[str, bool]:
    """Checks relating a regular star subdivision to its target."""
    phi, psi = pi.target, pi.source
    out: dict[str, bool] = {}
    new = pi.new_rays
    tau = pi.ray_image[new[0]] if new else ()
    out["volumes_tile"] = not volume_defects(pi)
    star = quotient_star_fan(phi, tau)
    # h(psi) = h(phi) + sum_{i=1}^{k-1} h(star) shifted up by i, in any rank
    want = list(ring(phi).h)
    for i in range(1, len(tau)):
        for j, x in enumerate(ring(star).h):
            want[i + j] += x
    out["h_decomposition"] = list(ring(psi).h) == want
    if phi.rank % 2 == 0:
        sp, sq, ss = signature_report(phi), signature_report(psi), signature_report(star)
        out["signature_recursion"] = sq.signature == sp.signature - ss.signature
        out["epsilon_recursion"] = sq.epsilon == sp.epsilon - ss.epsilon
    # integration commutes with pullback on top-degree monomials
    ok = True
    monos = combinations_with_replacement(range(len(phi.rays)), phi.rank)
    for i, m in enumerate(monos):
        if i >= probe_limit:
            break
        a = SRElement.monomial(m)
        if integrate(psi, pullback_sr(pi, a)) != integrate(phi, a):
            ok = False
            break
    out["pullback_preserves_integral"] = ok
    if len(tau) >= 2:
        out["exceptional_positivity"] = bool(exceptional_positivity_check(phi, tau).passed)
    return out
