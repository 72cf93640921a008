"""Bernoulli numbers and truncated univariate power series over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import OddIndex


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Signed Bernoulli number with B_1 = -1/2."""
    if k < 0:
        raise ValueError("index must be nonnegative")
    if k == 0:
        return Fraction(1)
    # sum_{j=0}^{k} C(k+1, j) B_j = 0
    s = sum((comb(k + 1, j) * bernoulli(j) for j in range(k)), Fraction(0))
    return -s / (k + 1)


def bernoulli_abs(k: int) -> Fraction:
    if k < 2 or k % 2:
        raise OddIndex(f"|B_k| is only used for even k >= 2, got {k}")
    return abs(bernoulli(k))


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 x + ... + c_N x^N, exact."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(self[k] + other[k] for k in range(n + 1))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(
            sum((self[i] * other[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n + 1)
        )

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(c * a for a in self.coeffs)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if other[0] == 0:
            raise ZeroDivisionError("divisor has zero constant term")
        n = min(self.order, other.order)
        q: list[Fraction] = []
        for k in range(n + 1):
            acc = self[k] - sum((q[i] * other[k - i] for i in range(k)), Fraction(0))
            q.append(acc / other[0])
        return TruncatedSeries(q)


def _exp(n: int, sign: int = 1) -> TruncatedSeries:
    return TruncatedSeries(Fraction(sign ** k, factorial(k)) for k in range(n + 1))


def series(kind: str, order: int) -> TruncatedSeries:
    """exp_neg = e^-x, todd = x / (1 - e^-x), l_factor = (x/2) / tanh(x/2).

    The last two are computed by series division after cancelling the
    common factor x.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    n = order
    if kind == "exp_neg":
        return _exp(n, -1)
    if kind == "todd":
        # (1 - e^-x) / x = sum (-1)^k x^k / (k+1)!
        den = TruncatedSeries(Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1))
        return TruncatedSeries([1] + [0] * n) / den
    if kind == "l_factor":
        # (x/2)(e^x + 1)/(e^x - 1) = (1/2)(e^x + 1) / ((e^x - 1)/x)
        num = (_exp(n) + TruncatedSeries([1] + [0] * n)).scale(Fraction(1, 2))
        den = TruncatedSeries(Fraction(1, factorial(k + 1)) for k in range(n + 1))
        return num / den
    raise ValueError(f"unknown series {kind!r}")


def l_factor_closed_form(order: int) -> TruncatedSeries:
    """Coefficients sum_m B_{2m} x^{2m} / (2m)! written with |B_{2m}| and signs."""
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    for m in range(1, order // 2 + 1):
        out[2 * m] = (-1) ** (m + 1) * bernoulli_abs(2 * m) / factorial(2 * m)
    return TruncatedSeries(out)
