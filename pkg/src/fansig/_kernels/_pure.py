"""Pure-Python reference kernels.

These define the semantics; the compiled module must agree with them on
every input (see tests/test_kernels.py).
"""

from __future__ import annotations

from math import gcd


def _primitive(row: list[int], pivot_col: int) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if row[pivot_col] < 0:
        g = -g
    if g not in (0, 1):
        row = [x // g for x in row]
    return row


def echelon(rows, ncols: int) -> tuple[list[list[int]], list[int]]:
    """Integer Gauss-Jordan elimination.

    Returns ``(reduced, pivots)``. Each reduced row is a primitive integer
    vector whose entry in its own pivot column is positive and whose
    entries in every other pivot column are zero. Over the rationals the
    reduced rows span the same space as the input rows.
    """
    work = [list(r) for r in rows]
    for r in work:
        if len(r) != ncols:
            raise ValueError("row length does not match ncols")
    work = [r for r in work if any(r)]
    reduced: list[list[int]] = []
    pivots: list[int] = []
    for c in range(ncols):
        best = -1
        best_abs = 0
        for i, r in enumerate(work):
            a = r[c]
            if a and (best < 0 or abs(a) < best_abs):
                best, best_abs = i, abs(a)
                if best_abs == 1:
                    break
        if best < 0:
            continue
        prow = _primitive(work.pop(best), c)
        p = prow[c]
        rest = []
        for r in work:
            a = r[c]
            if a:
                r = [p * x - a * y for x, y in zip(r, prow)]
                if not any(r):
                    continue
                r = _primitive(r, c)
            rest.append(r)
        work = rest
        for k, r in enumerate(reduced):
            a = r[c]
            if a:
                r = [p * x - a * y for x, y in zip(r, prow)]
                reduced[k] = _primitive(r, pivots[k])
        reduced.append(prow)
        pivots.append(c)
        if not work:
            break
    return reduced, pivots


def zeta_sum(coords, exps) -> tuple[int, int]:
    """Sum over cones of ``prod_i coords[i] ** (exps[i] - 1)``.

    ``coords`` and ``exps`` are parallel lists with one entry per cone; each
    entry is a sequence with one value per ray of that cone. Coordinates
    must be nonzero. Returns ``(numerator, denominator)`` in lowest terms
    with a positive denominator.
    """
    num, den = 0, 1
    for cs, es in zip(coords, exps):
        tn, td = 1, 1
        for c, e in zip(cs, es):
            if c == 0:
                raise ZeroDivisionError("degenerate coordinate")
            if e == 0:
                td *= c
            elif e > 1:
                tn *= c ** (e - 1)
        if td < 0:
            tn, td = -tn, -td
        num = num * td + tn * den
        den *= td
        g = gcd(num, den)
        if g > 1:
            num //= g
            den //= g
    return num, den
