"""Exact linear algebra over the integers and rationals.

Everything here is small dense linear algebra on lists of ``int`` or
``Fraction``; no floating point is used anywhere. Row reduction is routed
through the integer echelon kernel in :mod:`fansig._kernels`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from . import _kernels

Matrix = list[list[Fraction]]


def integer_row(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive-free integer row (same span)."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q. Pivot entries are 1."""
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    ints = [integer_row(r) for r in rows]
    red, piv = _kernels.echelon(ints, ncols)
    out = []
    for r, c in zip(red, piv):
        p = r[c]
        out.append([Fraction(x, p) for x in r])
    return out, piv


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    if ncols == 0:
        return 0
    return len(_kernels.echelon([integer_row(r) for r in rows], ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> Matrix:
    """Basis of {x : rows . x = 0}; each vector is 1 on its own free column."""
    red, piv = rref(rows, ncols) if rows else ([], [])
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, piv):
            v[p] = -r[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of ``a x = b`` (free variables set to 0), or None."""
    m = len(a)
    k = len(a[0]) if m else 0
    aug = [list(a[i]) + [b[i]] for i in range(m)]
    red, piv = rref(aug, k + 1)
    if piv and piv[-1] == k:
        return None
    x = [Fraction(0)] * k
    for r, p in zip(red, piv):
        x[p] = r[k]
    return x


def det(m: Sequence[Sequence]) -> Fraction | int:
    """Determinant by fraction-free Bareiss elimination on integer input."""
    n = len(m)
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) and x.denominator != 1 for r in m for x in r):
        a = [[Fraction(x) for x in r] for r in m]
        sign = 1
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c]), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                sign = -sign
            for i in range(c + 1, n):
                f = a[i][c] / a[c][c]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        out = Fraction(sign)
        for i in range(n):
            out *= a[i][i]
        return out
    a = [[int(x) for x in r] for r in m]
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            p = next((i for i in range(c + 1, n) if a[i][c]), None)
            if p is None:
                return 0
            a[c], a[p] = a[p], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(m[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) != n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def vec_mat(v: Sequence, m: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    cols = len(m[0]) if m else 0
    return [sum((v[i] * m[i][j] for i in range(len(m))), 0) for j in range(cols)]


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def maximal_minors_gcd(rows: Sequence[Sequence[int]]) -> int:
    """gcd of the d x d minors of a d x n integer matrix (d <= n)."""
    d = len(rows)
    if d == 0:
        return 1
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), d):
        g = gcd(g, int(det([[r[c] for c in cols] for r in rows])))
        if g == 1:
            return 1
    return g


def normal_vector(rows: Sequence[Sequence[int]]) -> list[int]:
    """Integer vector orthogonal to n-1 independent rows in Z^n (cofactors)."""
    n = len(rows) + 1
    out = []
    for j in range(n):
        minor = [[r[c] for c in range(n) if c != j] for r in rows]
        out.append((-1) ** j * int(det(minor)))
    return out


def column_completion(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Unimodular ``M`` with ``rows . M = [H | 0]``, H lower triangular.

    ``rows`` is a d x n integer matrix. Column operations by extended
    Euclid clear each row to the right of the diagonal; the last ``n - d``
    coordinates of ``v . M`` then give a projection Z^n -> Z^(n-d) whose
    kernel contains the row span.
    """
    d = len(rows)
    n = len(rows[0]) if d else 0
    a = [list(map(int, r)) for r in rows]
    m = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j, k, p, q, r, s):
        # (col_j, col_k) <- (p*col_j + q*col_k, r*col_j + s*col_k)
        for mat in (a, m):
            for row in mat:
                x, y = row[j], row[k]
                row[j], row[k] = p * x + q * y, r * x + s * y

    for i in range(d):
        for k in range(i + 1, n):
            x, y = a[i][i], a[i][k]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            # [s t; -y/g x/g] has determinant 1
            colop(i, k, s, t, -y // g, x // g)
        if a[i][i] < 0:
            for mat in (a, m):
                for row in mat:
                    row[i] = -row[i]
    return m


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def lp_feasible(a: Sequence[Sequence], b: Sequence) -> bool:
    """Is {x >= 0 : a x = b} nonempty? Exact phase-one simplex, Bland's rule."""
    m = len(a)
    if m == 0:
        return True
    k = len(a[0])
    rows = []
    for i in range(m):
        r = [Fraction(x) for x in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            r = [-x for x in r]
            rhs = -rhs
        rows.append(r + [Fraction(int(j == i)) for j in range(m)] + [rhs])
    width = k + m
    basis = [k + i for i in range(m)]
    # objective: minimise the sum of artificials, i.e. reduced costs below
    cost = [Fraction(0)] * (width + 1)
    for r in rows:
        for j in range(k):
            cost[j] -= r[j]
        cost[width] -= r[width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[width] / r[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return True  # unbounded below cannot happen for phase one
        i = best[1]
        piv = rows[i][enter]
        rows[i] = [x / piv for x in rows[i]]
        for t, r in enumerate(rows):
            if t != i and r[enter]:
                f = r[enter]
                rows[t] = [x - f * y for x, y in zip(r, rows[i])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, rows[i])]
        basis[i] = enter
    return cost[width] == 0


def symmetric_signature(g: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric rational matrix.

    Exact congruence diagonalization: pivot on a nonzero diagonal entry when
    one exists; otherwise split off a 2x2 hyperbolic block [[0, a], [a, 0]],
    which contributes one positive and one negative direction.
    """
    a = [[Fraction(x) for x in r] for r in g]
    pos = neg = 0
    while a:
        n = len(a)
        i = next((i for i in range(n) if a[i][i] != 0), None)
        if i is not None:
            p = a[i][i]
            if p > 0:
                pos += 1
            else:
                neg += 1
            keep = [t for t in range(n) if t != i]
            a = [[a[r][c] - a[r][i] * a[i][c] / p for c in keep] for r in keep]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
        if pair is None:
            return pos, neg, n
        i, j = pair
        h = a[i][j]
        pos += 1
        neg += 1
        keep = [t for t in range(n) if t not in (i, j)]
        # Schur complement with B^{-1} = [[0, 1/h], [1/h, 0]]
        a = [
            [a[r][c] - (a[r][i] * a[j][c] + a[r][j] * a[i][c]) / h for c in keep]
            for r in keep
        ]
    return pos, neg, 0
