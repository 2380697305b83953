"""Summation engine with certified geometric tail bounds.

Sums  sum_{k >= k0} t(k)  for terms that decay geometrically, which covers
every series in the catalog (worst ratio about 27/32).  The tail after the
cut K is certified either from the exact shift quotient of the base term
(a rigorous supremum bound of |rho| on [K, infinity)) or, for derivative
terms whose magnitude carries polylogarithmic factors, from three consecutive
empirical ratios inflated by 1.5 plus a small K^eps * 2 allowance.

The engine monitors cancellation (max partial sum over final value) and
reports when the requested tolerance cannot be met at the term precision it
was handed, so the caller can re-run with more digits.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from mpmath import mp, mpc, mpf

from .exact import Polynomial, RationalFunction
from .hyperterm import TermValue

DEFAULT_DIGIT_CAP = 100
MAX_TERMS = 10 ** 6
RATIO_SAFETY = Fraction(3, 2)  # inflation on empirical ratios
ORDER_EPS = Fraction(1, 50)    # extra K^(order/50) * 2 margin for derivative terms


def digit_cap() -> int:
    try:
        return int(os.environ.get("WZFORGE_PRECISION_CAP", DEFAULT_DIGIT_CAP))
    except ValueError:
        return DEFAULT_DIGIT_CAP


class EngineError(RuntimeError):
    """The engine could not certify the requested tolerance."""


@dataclass
class SeriesJob:
    """One summation task: term(k) for k = start, start+1, ..."""

    term: Callable[[int], TermValue]
    start: int
    target_digits: int
    ratio_probe: Optional[RationalFunction] = None  # exact base-term shift quotient
    derivative_order: int = 0


@dataclass
class SeriesResult:
    value: mpc
    error_bound: mpf
    terms_used: int
    tail_bound: mpf


def _rational_sup_bound(rho: RationalFunction, K: int) -> Fraction | None:
    """A certified bound on sup_{k >= K} |rho(k)|, or None if not available.

    Shift to s = k - K and demand that the denominator have nonnegative
    coefficients (true once K clears its real roots); then
    |num(s)| / den(s) <= max_j |num_j| / den_j termwise for s >= 0.
    """
    num = rho.num.shift(dk=K)
    den = rho.den.shift(dk=K)
    if num.degree("n") > 0 or den.degree("n") > 0:
        return None
    nc: dict[int, Fraction] = {}
    dc: dict[int, Fraction] = {}
    for (en, ek), c in num.terms.items():
        nc[ek] = nc.get(ek, Fraction(0)) + c
    for (en, ek), c in den.terms.items():
        dc[ek] = dc.get(ek, Fraction(0)) + c
    if not dc:
        return None
    lead = dc[max(dc)]
    if lead < 0:
        nc = {j: -c for j, c in nc.items()}
        dc = {j: -c for j, c in dc.items()}
    if any(c <= 0 for c in dc.values()):
        return None
    if max(nc, default=0) > max(dc):
        return None
    best = Fraction(0)
    for j, c in nc.items():
        if j not in dc:
            return None
        best = max(best, abs(c) / dc[j])
    return best


def tail_bound_geometric(job: SeriesJob, K: int, recent: list[mpf] | None = None,
                         t_last: mpf | None = None) -> mpf:
    """Certified bound on sum_{k > K} |t(k)|.

    `recent` holds the last consecutive empirical magnitude ratios, `t_last`
    the magnitude |t(K)|; both are required on the empirical route.
    """
    with mp.workdps(30):
        rho_hat = None
        if job.ratio_probe is not None and job.derivative_order == 0:
            sup = _rational_sup_bound(job.ratio_probe, K)
            if sup is not None and sup < 1:
                rho_hat = mpf(sup.numerator) / sup.denominator
        if rho_hat is None:
            if not recent or len(recent) < 3:
                raise EngineError("no ratio bound certifiable yet")
            emp = max(recent[-3:])
            rho_hat = emp * mpf(RATIO_SAFETY.numerator) / RATIO_SAFETY.denominator
        if not rho_hat < mpf("0.98"):
            raise EngineError("series ratio too close to 1 for the geometric engine")
        if t_last is None:
            raise EngineError("no last-term magnitude available")
        # polylog growth allowance for derivative terms: an extra K^eps factor
        margin = mpf(2)
        if job.derivative_order:
            margin *= mpf(K + 2) ** (mpf(job.derivative_order) / 50)
    return t_last * rho_hat / (1 - rho_hat) * margin


def sum_to_tolerance(job: SeriesJob) -> SeriesResult:
    """Sum the series to |error| <= 10^(-target_digits) * max(1, |value|)."""
    cap = digit_cap()
    if job.target_digits > cap:
        raise EngineError(f"requested digits exceed the engine cap ({cap})")
    if job.target_digits < 1:
        raise ValueError("target_digits must be >= 1")
    wp = job.target_digits + 25
    with mp.workdps(wp):
        tol = mpf(10) ** (-job.target_digits)
        total = mpc(0)
        acc_err = mpf(0)
        max_mag = mpf(0)
        ratios: list[mpf] = []
        prev_mag = None
        k = job.start
        used = 0
        zero_run = 0
        while used < MAX_TERMS:
            tv = job.term(k)
            total += tv.value
            acc_err += tv.error_bound
            mag = abs(tv.value)
            max_mag = max(max_mag, abs(total))
            if mag > 0:
                if prev_mag is not None and prev_mag > 0:
                    ratios.append(mag / prev_mag)
                prev_mag = mag
                zero_run = 0
            else:
                # a vanishing term breaks the consecutive-ratio window
                ratios.clear()
                prev_mag = None
                zero_run += 1
                if zero_run > 8:
                    raise EngineError("term vanished repeatedly; no ratio to certify")
            used += 1
            if used >= 4 and mag > 0:
                try:
                    tail = tail_bound_geometric(job, k, ratios, mag)
                except EngineError:
                    k += 1
                    continue
                scale = max(mpf(1), abs(total))
                if tail + acc_err <= tol * scale:
                    rounding = mpf(10) ** (-(wp - 5)) * used
                    err = tail + acc_err + rounding
                    if err > tol * scale:
                        raise EngineError(
                            "accumulated term error exceeds the tolerance; "
                            "re-run with more working digits"
                        )
                    return SeriesResult(total, err, used, tail)
            k += 1
        raise EngineError("tail not certifiable within the term budget")
