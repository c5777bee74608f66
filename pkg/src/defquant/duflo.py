"""Wheel operators c_n = tr(ad^n) and the Duflo series for linear bivectors.

The weight of the 1-wheel is -1/4; the even weights b_2n are the Taylor
coefficients of (1/2) log(sinh(t/2) / (t/2)) and the odd ones beyond the
first vanish.  The series is expanded exactly with rational arithmetic;
``bernoulli_weight`` gives the same numbers from Bernoulli numbers as an
independent route.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .algebra import SymPoly, add_term
from .poisson import PoissonBivector
from .series import HSeries, fraction_str

ONE_WHEEL = Fraction(-1, 4)


def _series_log(a: list[Fraction]) -> list[Fraction]:
    """log of a power series with a[0] = 1, to the same length."""
    n = len(a)
    # (log a)' = a'/a, solved term by term
    da = [a[k + 1] * (k + 1) for k in range(n - 1)]
    q = [Fraction(0)] * (n - 1)
    for k in range(n - 1):
        q[k] = da[k] - sum(a[j] * q[k - j] for j in range(1, k + 1))
    return [Fraction(0)] + [q[k] / (k + 1) for k in range(n - 1)]


def log_sinhc_coefficients(order: int) -> list[Fraction]:
    """Coefficients of (1/2) log(sinh(t/2)/(t/2)) up to t^order."""
    a = [Fraction(0)] * (order + 1)
    for k in range(0, order + 1, 2):
        a[k] = Fraction(1, 2 ** k * factorial(k + 1))
    return [c / 2 for c in _series_log(a)]


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{k<=n} C(n+1, k) B_k = 0."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B[n]


def bernoulli_weight(n: int) -> Fraction:
    """B_n / (2 n n!), the t^n coefficient of (1/2) log(sinh(t/2)/(t/2)) for even n >= 2."""
    if n < 2 or n % 2:
        return Fraction(0)
    return bernoulli(n) / (2 * n * factorial(n))


@dataclass(frozen=True)
class DufloSeries:
    order: int
    one_wheel: Fraction
    even: dict

    def weight(self, n: int) -> Fraction:
        if n == 1:
            return self.one_wheel
        return self.even.get(n, Fraction(0))

    def to_json(self) -> dict:
        return {"order": self.order, "w1": fraction_str(self.one_wheel),
                "b": {str(k): fraction_str(v) for k, v in sorted(self.even.items())}}


def duflo_series(order: int) -> DufloSeries:
    coeffs = log_sinhc_coefficients(order)
    even = {n: coeffs[n] for n in range(2, order + 1, 2)}
    return DufloSeries(order, ONE_WHEEL, even)


def ad_matrices(pi: PoissonBivector) -> list[list[list[Fraction]]]:
    """ad x_i as a matrix: (ad x_i)[k][j] = f_ij^k."""
    d = pi.dim
    f = pi.structure_constants()
    mats = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for (i, j, k), c in f.items():
        mats[i][k][j] = c
    return mats


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def wheel_symbol(pi: PoissonBivector, n: int) -> SymPoly:
    """c_n as a polynomial in the derivative symbols: sum tr(ad x_i1 ... ad x_in) d_i1 ... d_in."""
    d = pi.dim
    mats = ad_matrices(pi)
    acc: dict = {}
    for idx in itertools.product(range(d), repeat=n):
        m = mats[idx[0]]
        for i in idx[1:]:
            m = _matmul(m, mats[i])
        tr = sum(m[k][k] for k in range(d))
        if tr:
            exps = [0] * d
            for i in idx:
                exps[i] += 1
            add_term(acc, tuple(exps), HSeries.const(tr, pi.trunc))
    return SymPoly(d, acc, pi.trunc)


def apply_operator(symbol: SymPoly, f: SymPoly) -> SymPoly:
    out = SymPoly(f.dim, trunc=f.trunc)
    for exps, c in symbol.items():
        out = out + f.diff_multi(exps).scale(c)
    return out


def duflo_exponent(pi: PoissonBivector, series: DufloSeries | None = None) -> SymPoly:
    """Symbol of w_1 h c_1 + sum b_2n h^2n c_2n."""
    N = pi.trunc
    series = series or duflo_series(N)
    out = SymPoly(pi.dim, trunc=N)
    for n in range(1, N + 1):
        w = series.weight(n)
        if w:
            out = out + wheel_symbol(pi, n).scale(HSeries.h(n, w, N))
    return out


def duflo_operator(pi: PoissonBivector, series: DufloSeries | None = None) -> SymPoly:
    """Symbol of exp of the Duflo exponent; finite because the exponent is O(h)."""
    X = duflo_exponent(pi, series)
    out = SymPoly.const(1, pi.dim, pi.trunc)
    power = out
    for k in range(1, pi.trunc + 1):
        power = power * X
        out = out + power.scale(Fraction(1, factorial(k)))
    return out


def duflo_apply(pi: PoissonBivector, f: SymPoly, series: DufloSeries | None = None) -> SymPoly:
    return apply_operator(duflo_operator(pi, series), f)
