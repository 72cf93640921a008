"""Compare the compiled and pure-Python kernels on representative inputs.

Run with ``python3 benchmarks/bench_kernels.py``. The echelon workload is
the squarefree relation matrices of a few fans; the zeta workload is the
integration of every top-degree monomial of those fans.
"""

from __future__ import annotations

import argparse
import timeit
from itertools import combinations_with_replacement

from fansig import _kernels
from fansig._kernels import _pure
from fansig.catalog import catalog
from fansig.cohomology import full_span_relations, ring
from fansig.linalg import integer_row
from fansig.subdivision import random_chain


def echelon_workload():
    jobs = []
    for name in ("P2xP2", "blowup_p1xp1xblowup_p1xp1", "P1xP1xP1"):
        fan = catalog(name)
        for k in range(1, fan.rank):
            monos, rows = full_span_relations(fan, k)
            if rows and len(monos) <= 400:
                jobs.append(([integer_row(r) for r in rows], len(monos)))
    return jobs


def zeta_workload():
    jobs = []
    fans = [catalog("blowup_p1xp1xblowup_p1xp1")]
    fans += [f for f, _ in random_chain(7, catalog("P4"), 4)]
    for fan in fans:
        r = ring(fan)
        coords = r._coords_at(r.points[0])
        for m in combinations_with_replacement(range(len(fan.rays)), fan.rank):
            supp = tuple(sorted(set(m)))
            cones = r._cones_with.get(supp)
            if cones:
                jobs.append(([coords[s] for s in cones], [[m.count(x) for x in s] for s in cones]))
    return jobs


def run(repeat: int) -> None:
    native = _kernels._native
    ech = echelon_workload()
    zet = zeta_workload()
    for e in ech:
        assert native is None or native.echelon(*e) == _pure.echelon(*e)
    for z in zet:
        assert native is None or native.zeta_sum(*z) == _pure.zeta_sum(*z)
    print(f"backend: {_kernels.BACKEND}")
    print(f"echelon: {len(ech)} matrices, zeta: {len(zet)} monomials")
    rows = [("echelon", ech, "echelon"), ("zeta_sum", zet, "zeta_sum")]
    for label, jobs, fn in rows:
        pure_fn = getattr(_pure, fn)
        t_pure = min(timeit.repeat(lambda: [pure_fn(*j) for j in jobs], number=1, repeat=repeat))
        line = f"{label:9s} pure {t_pure * 1e3:9.2f} ms"
        if native is not None:
            nat_fn = getattr(native, fn)
            t_nat = min(timeit.repeat(lambda: [nat_fn(*j) for j in jobs], number=1, repeat=repeat))
            line += f"   native {t_nat * 1e3:9.2f} ms   speedup {t_pure / t_nat:6.1f}x"
        print(line)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    run(ap.parse_args().repeat)
