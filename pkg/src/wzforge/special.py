"""Arbitrary-precision log-gamma, polygamma and Bell-polynomial machinery.

All routines return values with a guaranteed absolute error below
10**(-prec.digits).  The gamma-family functions use argument raising up to a
Stirling threshold followed by the asymptotic series with Bernoulli-number
coefficients; for positive real arguments the asymptotic remainder is bounded
by the first omitted term, and a factor-2 safety margin is applied on top.

The complete Bell polynomials  B_m(x_1, ..., x_m)  convert the derivatives of
L = log f into derivatives of f = exp(L):

    f^(m) = f * B_m(L', L'', ..., L^(m)),
    B_{m+1} = sum_{j=0..m} C(m, j) * B_{m-j} * x_{j+1},   B_0 = 1.

Derivative orders are capped at 8, which bounds every table precomputed here.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from mpmath import mp, mpc, mpf

MAX_DERIVATIVE_ORDER = 8


@dataclass(frozen=True)
class Precision:
    """Requested certified digits plus working guard digits."""

    digits: int = 25
    guard: int = 20

    def __post_init__(self):
        if self.digits < 1:
            raise ValueError("digits must be >= 1")
        if self.guard < 10:
            raise ValueError("guard must be >= 10")

    @property
    def work_digits(self) -> int:
        return self.digits + self.guard

    def tol(self) -> mpf:
        return mpf(10) ** (-self.digits)


# -- Bernoulli numbers -------------------------------------------------------

_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m (B_1 = -1/2 convention)."""
    if m < 0:
        raise ValueError("negative index")
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= m:
            j = len(_bernoulli_cache)
            acc = Fraction(0)
            for i in range(j):
                acc += comb(j + 1, i) * _bernoulli_cache[i]
            _bernoulli_cache.append(-acc / (j + 1))
        return _bernoulli_cache[m]


def _to_mpf(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, int):
        return mpf(x)
    return mpf(x)


# -- log Gamma ---------------------------------------------------------------


def log_gamma(x, prec: Precision = Precision()) -> mpf:
    """ln Gamma(x) for real x > 0 with |error| <= 10**(-prec.digits)."""
    d = prec.digits
    with mp.workdps(prec.work_digits + 10):
        xv = _to_mpf(x)
        if not xv > 0:
            raise ValueError("log_gamma requires x > 0")
        threshold = mpf(int(0.4 * d) + 10)
        shift = mpf(0)
        while xv < threshold:
            shift += mp.log(xv)
            xv += 1
        # Stirling series: (y-1/2)ln y - y + ln(2*pi)/2 + sum B_2i/(2i(2i-1) y^(2i-1))
        y = xv
        total = (y - mpf(1) / 2) * mp.log(y) - y + mp.log(2 * mp.pi) / 2
        y2 = y * y
        ypow = y  # y^(2i-1)
        target = mpf(10) ** (-(prec.work_digits + 5))
        i = 1
        while True:
            b = bernoulli(2 * i)
            term = (mpf(b.numerator) / b.denominator) / ((2 * i) * (2 * i - 1) * ypow)
            total += term
            # remainder is below twice the first omitted term; the series
            # terms decrease monotonically until far beyond our target here
            bnext = bernoulli(2 * i + 2)
            bound = abs(mpf(bnext.numerator) / bnext.denominator) / (
                (2 * i + 2) * (2 * i + 1) * ypow * y2
            ) * 2
            if bound < target:
                break
            ypow *= y2
            i += 1
            if i > 4 * prec.work_digits:
                raise RuntimeError("Stirling series failed to converge")
        return total - shift


# -- polygamma ---------------------------------------------------------------


def polygamma(m: int, x, prec: Precision = Precision()) -> mpf:
    """psi^(m)(x) for real x > 0 and 0 <= m <= 8, certified to prec.digits."""
    if not 0 <= m <= MAX_DERIVATIVE_ORDER:
        raise ValueError(f"polygamma order must be in 0..{MAX_DERIVATIVE_ORDER}")
    d = prec.digits
    with mp.workdps(prec.work_digits + 10):
        xv = _to_mpf(x)
        if not xv > 0:
            raise ValueError("polygamma requires x > 0")
        threshold = mpf(int(0.4 * d) + 10 + m)
        # psi^(m)(x) = psi^(m)(x+1) - (-1)^m m! / x^(m+1)
        sgn = -1 if m % 2 else 1
        fact_m = factorial(m)
        acc = mpf(0)
        while xv < threshold:
            acc += sgn * fact_m / xv ** (m + 1)
            xv += 1
        return _polygamma_asymptotic(m, xv, prec) - acc


def _polygamma_asymptotic(m: int, y: mpf, prec: Precision) -> mpf:
    """Asymptotic series at large y; remainder below twice the first omitted term."""
    target = mpf(10) ** (-(prec.work_digits + 5))
    y2 = y * y
    if m == 0:
        total = mp.log(y) - 1 / (2 * y)
        ypow = y2  # y^(2i)
        i = 1
        while True:
            b = bernoulli(2 * i)
            term = (mpf(b.numerator) / b.denominator) / ((2 * i) * ypow)
            total -= term
            bnext = bernoulli(2 * i + 2)
            bound = 2 * abs(mpf(bnext.numerator) / bnext.denominator) / ((2 * i + 2) * ypow * y2)
            if bound < target:
                return total
            ypow *= y2
            i += 1
            if i > 4 * prec.work_digits:
                raise RuntimeError("polygamma series failed to converge")
    sign = 1 if m % 2 else -1  # (-1)^(m-1)
    total = factorial(m - 1) / y ** m + factorial(m) / (2 * y ** (m + 1))
    ypow = y ** (m + 2)  # y^(2i+m) at i=1
    i = 1
    while True:
        b = bernoulli(2 * i)
        coeff = factorial(2 * i + m - 1) // factorial(2 * i)
        term = (mpf(b.numerator) / b.denominator) * coeff / ypow
        total += term
        bnext = bernoulli(2 * i + 2)
        cnext = factorial(2 * i + m + 1) // factorial(2 * i + 2)
        bound = 2 * abs(mpf(bnext.numerator) / bnext.denominator) * cnext / (ypow * y2)
        if bound < target:
            return sign * total
        ypow *= y2
        i += 1
        if i > 4 * prec.work_digits:
            raise RuntimeError("polygamma series failed to converge")


class PolygammaLadder:
    """Running psi^(j)(arg), j < orders, for an argument advancing by a fixed step.

    Seeds from `polygamma` once, then applies the recurrence
    psi^(j)(x + 1) = psi^(j)(x) + (-1)^j j! x^(-j-1) per unit step, which costs
    a handful of multiplications instead of a fresh asymptotic evaluation.
    """

    def __init__(self, arg0: Fraction, step: int, orders: int, prec: Precision):
        if step < 0:
            raise ValueError("ladder step must be nonnegative")
        if orders < 1 or orders > MAX_DERIVATIVE_ORDER:
            raise ValueError("orders out of range")
        self.arg = Fraction(arg0)
        self.step = int(step)
        self.orders = orders
        self.prec = prec
        self._wp = prec.work_digits + 10
        with mp.workdps(self._wp):
            self.vals = [polygamma(j, arg0, prec) for j in range(orders)]

    def values(self) -> list[mpf]:
        return list(self.vals)

    def advance(self):
        """Move arg -> arg + step, updating all tracked orders."""
        with mp.workdps(self._wp):
            for _ in range(self.step):
                xv = _to_mpf(self.arg)
                inv = 1 / xv
                p = inv  # x^(-j-1) running power
                for j in range(self.orders):
                    self.vals[j] += (factorial(j) * p) if j % 2 == 0 else -(factorial(j) * p)
                    p *= inv
                self.arg += 1


class LogGammaLadder:
    """Running ln Gamma(arg) for an argument advancing by a fixed integer step."""

    def __init__(self, arg0: Fraction, step: int, prec: Precision):
        if step < 0:
            raise ValueError("ladder step must be nonnegative")
        self.arg = Fraction(arg0)
        self.step = int(step)
        self.prec = prec
        self._wp = prec.work_digits + 10
        with mp.workdps(self._wp):
            self.val = log_gamma(arg0, prec)

    def advance(self):
        with mp.workdps(self._wp):
            for _ in range(self.step):
                self.val += mp.log(_to_mpf(self.arg))
                self.arg += 1


# -- Bell polynomials --------------------------------------------------------


@dataclass
class BellTable:
    """Complete Bell polynomial values B_0..B_order at a fixed input vector."""

    order: int
    values: list = field(default_factory=list)


def complete_bell(xs) -> BellTable:
    """B_0..B_m at (x_1, ..., x_m) via the binomial recurrence."""
    m = len(xs)
    if m > MAX_DERIVATIVE_ORDER:
        raise ValueError(f"Bell order capped at {MAX_DERIVATIVE_ORDER}")
    values = [mpc(1)]
    for mm in range(m):
        acc = mpc(0)
        for j in range(mm + 1):
            acc += comb(mm, j) * values[mm - j] * xs[j]
        values.append(acc)
    return BellTable(order=m, values=values)


def derivative_via_bell(l_derivs, f_value):
    """m-th derivative of exp(L) from [L', ..., L^(m)] and f = exp(L)."""
    if len(l_derivs) > MAX_DERIVATIVE_ORDER:
        raise ValueError(f"derivative order capped at {MAX_DERIVATIVE_ORDER}")
    table = complete_bell(list(l_derivs))
    return f_value * table.values[table.order]
