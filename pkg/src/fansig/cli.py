"""Command line front-end.

Every command reads a fan file (or ``catalog:NAME``) and prints one JSON
document to stdout. Exit codes: 0 success, 1 a theorem check failed,
2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .catalog import catalog, projective
from .charclasses import (
    TheoremReport,
    exceptional_positivity_check,
    fmt,
    integral_top,
    l_class,
    leung_reiner_certificate,
    rr_check,
    signature_theorem_check,
    todd_check,
    todd_class,
)
from .checks import fan_invariants, subdivision_invariants
from .cohomology import SRElement, h_vector, integrate, signature_report
from .errors import FanError, ParseError
from .fan import Fan, as_cone, dumps, load
from .ktheory import KClass, forms_sum_kclass, kclass_of
from .sheaves import (
    Constant,
    Forms,
    IndicatorStar,
    LineO,
    Skyscraper,
    cellular_cohomology,
    euler_char,
    stalk_model,
)
from .subdivision import random_chain, regular_star_subdivide, star_subdivide

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, separators=(",", ":")) + "\n")


def read_fan(arg: str) -> Fan:
    if arg.startswith("catalog:"):
        return catalog(arg[len("catalog:"):])
    return load(arg)


def parse_ints(text: str, what: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}", what) from None


def parse_sheaf(text: str):
    """O | O:i,j | star:i,j | sky:i,j | const:d | forms:q."""
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind == "o":
        return LineO(tuple(parse_ints(arg, "--sheaf")))
    if kind == "star":
        return IndicatorStar(tuple(parse_ints(arg, "--sheaf")))
    if kind == "sky":
        return Skyscraper(tuple(parse_ints(arg, "--sheaf")))
    if kind == "const":
        (d,) = parse_ints(arg or "1", "--sheaf")
        return Constant(d)
    if kind == "forms":
        (q,) = parse_ints(arg, "--sheaf")
        return Forms(q)
    raise ParseError(f"unknown sheaf {text!r}", "--sheaf")


def parse_poly(text: str) -> SRElement:
    """Polynomial like ``x0*x1 - 1/2*x2^2 + 3``."""
    src = text.replace(" ", "")
    if not src:
        raise ParseError("empty polynomial", "--poly")
    terms = []
    buf = ""
    for i, ch in enumerate(src):
        if ch in "+-" and buf and src[i - 1] not in "*^/":
            terms.append(buf)
            buf = ""
        buf += ch
    terms.append(buf)
    out = SRElement()
    for t in terms:
        sign = 1
        while t and t[0] in "+-":
            sign = -sign if t[0] == "-" else sign
            t = t[1:]
        coeff = Fraction(sign)
        mono: list[int] = []
        if not t:
            raise ParseError(f"dangling sign in {text!r}", "--poly")
        for factor in t.split("*"):
            if factor.startswith("x"):
                base, _, exp = factor[1:].partition("^")
                try:
                    mono += [int(base)] * (int(exp) if exp else 1)
                except ValueError:
                    raise ParseError(f"bad factor {factor!r}", "--poly") from None
            else:
                try:
                    coeff *= Fraction(factor)
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"bad coefficient {factor!r}", "--poly") from None
        out = out + SRElement.monomial(mono, coeff)
    return out


def kclass_table(a: KClass) -> list[dict]:
    return [
        {"cone": list(c), "coeff": fmt(v)}
        for c, v in sorted(a.coeffs.items(), key=lambda t: (len(t[0]), t[0]))
    ]


def report_exit(passed) -> int:
    return EXIT_OK if passed or passed is None else EXIT_FAIL


# -- commands -----------------------------------------------------------


def cmd_validate(args) -> int:
    fan = read_fan(args.fan)
    emit({"valid": True, "rank": fan.rank, "rays": len(fan.rays),
          "f_vector": list(fan.f_vector()), **fan.classify()})
    return EXIT_OK


def cmd_classify(args) -> int:
    emit(read_fan(args.fan).classify())
    return EXIT_OK


def cmd_catalog(args) -> int:
    fan = catalog(args.name)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(fan))
    else:
        sys.stdout.write(dumps(fan))
    return EXIT_OK


def _map_path(path: str) -> str:
    root, ext = os.path.splitext(path)
    return (root if ext == ".json" else path) + ".map.json"


def cmd_subdivide(args) -> int:
    fan = read_fan(args.fan)
    cone = as_cone(parse_ints(args.cone, "--cone"))
    if args.ray:
        out, pi = star_subdivide(fan, cone, parse_ints(args.ray, "--ray"))
    else:
        out, pi = regular_star_subdivide(fan, cone)
    sidecar = {
        "subdivided_cone": list(cone),
        "new_rays": [{"index": i, "ray": list(out.rays[i]), "cone": list(pi.ray_image[i])}
                     for i in pi.new_rays],
    }
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(out))
        with open(_map_path(args.output), "w", encoding="utf-8") as fh:
            fh.write(json.dumps(sidecar, separators=(",", ":")) + "\n")
        emit({"fan": args.output, "map": _map_path(args.output), **out.classify()})
    else:
        sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_hvector(args) -> int:
    emit({"h": list(h_vector(read_fan(args.fan)))})
    return EXIT_OK


def cmd_integrate(args) -> int:
    fan = read_fan(args.fan)
    if args.poly is not None:
        f = parse_poly(args.poly)
        for m in f.terms:
            for r in m:
                if not 0 <= r < len(fan.rays):
                    raise ParseError(f"variable x{r} does not name a ray", "--poly")
        val = integrate(fan, f)
        label = args.poly
    elif args.cls == "todd":
        val, label = integral_top(fan, todd_class(fan)), "todd"
    else:
        val, label = integral_top(fan, l_class(fan)), "L"
    emit({"integrand": label, "integral": fmt(val)})
    return EXIT_OK


def cmd_signature(args) -> int:
    emit(signature_report(read_fan(args.fan)).as_dict())
    return EXIT_OK


def cmd_chi(args) -> int:
    fan = read_fan(args.fan)
    spec = parse_sheaf(args.sheaf)
    fan.require(getattr(spec, "cone", ()))
    doc = {"sheaf": args.sheaf, "euler_characteristic": euler_char(fan, spec)}
    if fan.is_complete:
        doc["cohomology"] = cellular_cohomology(stalk_model(fan, spec))
    emit(doc)
    return EXIT_OK


def cmd_kclass(args) -> int:
    fan = read_fan(args.fan)
    if args.sheaf.lower() == "forms-sum":
        a = forms_sum_kclass(fan)
    else:
        spec = parse_sheaf(args.sheaf)
        fan.require(getattr(spec, "cone", ()))
        a = kclass_of(fan, spec)
    emit({"sheaf": args.sheaf, "basis": "O(cone)", "coefficients": kclass_table(a)})
    return EXIT_OK


def cmd_todd_check(args) -> int:
    rep = todd_check(read_fan(args.fan), args.fan)
    emit(rep.as_dict())
    return report_exit(rep.passed)


def cmd_rr_check(args) -> int:
    fan = read_fan(args.fan)
    cones = [as_cone(parse_ints(args.cone, "--cone"))] if args.cone is not None else fan.cones
    reports = [rr_check(fan, KClass.basis(fan, c), args.fan) for c in cones]
    ok = all(r.passed for r in reports)
    emit({"theorem": "riemann_roch", "fan": args.fan, "pass": ok,
          "checks": [{"cone": list(c), "chi": fmt(r.lhs), "integral": fmt(r.rhs), "pass": r.passed}
                     for c, r in zip(cones, reports)]})
    return report_exit(ok)


def cmd_sig_check(args) -> int:
    rep = signature_theorem_check(read_fan(args.fan), args.fan)
    emit(rep.as_dict())
    return report_exit(rep.passed)


def cmd_lr_certify(args) -> int:
    rep: TheoremReport = leung_reiner_certificate(read_fan(args.fan), args.fan)
    if rep.status == "hypothesis_failed":
        emit({"locally_convex": False, "status": "hypothesis_failed"})
        return EXIT_OK
    d = rep.as_dict()
    emit({"locally_convex": True, "status": rep.status, "pass": rep.passed,
          "signature": rep.details["signature"], "details": d["details"], "terms": d["terms"]})
    return report_exit(rep.passed)


def cmd_fuzz(args) -> int:
    if args.dim < 1:
        raise ParseError("--dim must be at least 1", "--dim")
    if args.steps < 0:
        raise ParseError("--steps must be nonnegative", "--steps")
    start = projective(args.dim)
    t0 = time.perf_counter()
    steps = []
    ok = True
    base = fan_invariants(start)
    ok &= all(base.values())
    for i, (fan, pi) in enumerate(random_chain(args.seed, start, args.steps)):
        res = {**fan_invariants(fan, rr_cones=args.rr_cones), **subdivision_invariants(pi)}
        passed = all(res.values())
        ok &= passed
        entry = {"step": i + 1, "cone": list(pi.ray_image[pi.new_rays[0]]),
                 "rays": len(fan.rays), "h": list(h_vector(fan)), "pass": passed}
        if not passed:
            entry["failed"] = sorted(k for k, v in res.items() if not v)
        steps.append(entry)
    doc = {"seed": args.seed, "steps": args.steps, "dim": args.dim,
           "start_pass": all(base.values()), "chain": steps, "pass": ok}
    if args.timings:
        doc["seconds"] = round(time.perf_counter() - t0, 3)
    emit(doc)
    return report_exit(ok)


def cmd_exceptional(args) -> int:
    fan = read_fan(args.fan)
    rep = exceptional_positivity_check(fan, parse_ints(args.cone, "--cone"), args.fan)
    emit(rep.as_dict())
    return report_exit(rep.passed)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fansig", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"fansig {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, fan=True):
        sp = sub.add_parser(name, help=help_)
        if fan:
            sp.add_argument("fan", help="fan JSON file or catalog:NAME")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "parse and validate a fan file")
    add("classify", cmd_classify, "report complete/simplicial/unimodular flags")
    sp = add("catalog", cmd_catalog, "write a named fan (P2, P1xP1, blowup_p1xp1, ...)", fan=False)
    sp.add_argument("name")
    sp.add_argument("--output")
    sp = add("subdivide", cmd_subdivide, "star subdivision (regular unless --ray is given)")
    sp.add_argument("--cone", required=True, help="comma-separated ray indices")
    sp.add_argument("--ray", help="comma-separated coordinates of the new ray")
    sp.add_argument("--output", help="fan file to write; a .map.json sidecar is written next to it")
    add("hvector", cmd_hvector, "dimensions of the graded pieces of the cohomology ring")
    sp = add("integrate", cmd_integrate, "integral of a top-degree polynomial or class")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--poly", help="polynomial in x<ray>, e.g. 'x0*x1 - 1/2*x2^2'")
    g.add_argument("--class", dest="cls", choices=("todd", "L"), default="todd")
    add("signature", cmd_signature, "h-vector, signature and Euler number")
    sp = add("chi", cmd_chi, "Euler characteristic and cellular cohomology of a sheaf")
    sp.add_argument("--sheaf", default="const:1",
                    help="O[:cone] | star:cone | sky:cone | const:d | forms:q")
    sp = add("kclass", cmd_kclass, "class of a sheaf in the O(cone) basis")
    sp.add_argument("--sheaf", default="const:1", help="as for chi, or forms-sum")
    add("todd-check", cmd_todd_check, "check that the Todd class integrates to 1")
    sp = add("rr-check", cmd_rr_check, "Riemann-Roch for the basis classes")
    sp.add_argument("--cone", help="check only this cone (default: all cones)")
    add("sig-check", cmd_sig_check, "signature = Euler number = integral of L")
    add("lr-certify", cmd_lr_certify, "term-by-term sign certificate for locally convex fans")
    sp = add("exceptional", cmd_exceptional, "positivity of the exceptional class of a subdivision")
    sp.add_argument("--cone", required=True)
    sp = add("fuzz", cmd_fuzz, "run the invariant suite along a random subdivision chain", fan=False)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--steps", type=int, default=5)
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--rr-cones", type=int, default=None,
                    help="limit Riemann-Roch to the first N cones of each fan")
    sp.add_argument("--timings", action="store_true", help="include wall-clock time (not byte-stable)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FanError, ValueError) as e:
        sys.stderr.write(json.dumps({"error": type(e).__name__, "message": str(e)}) + "\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
