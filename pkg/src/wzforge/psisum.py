"""Certified summation of rational-times-polygamma terms over the integers.

Handles series whose general term is

    c * x**(-p) * prod_r  psi^(r)(x) ** e_r,     x = start, start+1, ...

which decay only polynomially (times powers of log), so the geometric engine
cannot touch them.  Strategy: sum directly up to a cut N, then replace every
polygamma factor by its asymptotic expansion in (log x, 1/x) with a rigorous
remainder envelope, reducing the tail to sums of  log^a(x) * x^(-b)  which are
evaluated by Euler-Maclaurin with elementary derivatives and integrals.

The Euler-Maclaurin remainder after p correction terms is bounded using
|periodic Bernoulli B~_{2p}(x)| / (2p)! <= 4 / (2pi)^{2p}, giving

    |R_p| <= 4 (2pi)^(-2p) * int_N^inf |g^(2p)(x)| dx,

with the integral computed from the closed forms for log-power monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from mpmath import mp, mpc, mpf

from .special import MAX_DERIVATIVE_ORDER, PolygammaLadder, Precision, bernoulli


@dataclass(frozen=True)
class PsiTerm:
    """coeff * x**(-power) * prod psi^(order)(x)**exp."""

    coeff: complex
    power: int
    psi: tuple[tuple[int, int], ...] = ()  # ((order, exponent), ...)


# ---------------------------------------------------------------------------
# log-power polynomials: dict {(a, b): coeff} for sum c * log(x)^a * x^(-b)
# ---------------------------------------------------------------------------


def _lp_mul(p1: dict, p2: dict, bmax: int, overflow: list) -> dict:
    out: dict[tuple[int, int], mpf] = {}
    for (a1, b1), c1 in p1.items():
        for (a2, b2), c2 in p2.items():
            a, b = a1 + a2, b1 + b2
            c = c1 * c2
            if b > bmax:
                overflow.append((abs(c), a, b))
                continue
            out[(a, b)] = out.get((a, b), mpf(0)) + c
    return out


def _fold_envelope(monomials: list, N: int) -> tuple[mpf, int, int]:
    """Collapse |eps(x)| <= sum C_i log^{a_i}x x^{-b_i} (x >= N) to one monomial."""
    if not monomials:
        return (mpf(0), 0, 2)
    A = max(a for _, a, _ in monomials)
    B = min(b for _, _, b in monomials)
    lnN = mp.log(N)
    C = mpf(0)
    for c, a, b in monomials:
        # C_i log^a x x^-b <= [C_i log^{a-A}N N^{B-b}] log^A x x^-B on x >= N
        C += c * lnN ** (a - A) * mpf(N) ** (B - b)
    return (C, A, B)


def _psi_expansion(order: int, depth: int, N: int) -> tuple[dict, tuple[mpf, int, int]]:
    """Asymptotic expansion of psi^(order)(x) valid for x >= N.

    Returns (log-power polynomial, envelope monomial (C, a, b)) with
    |psi^(order)(x) - poly(x)| <= C log^a(x) x^(-b) for x >= N.
    """
    poly: dict[tuple[int, int], mpf] = {}
    if order == 0:
        poly[(1, 0)] = mpf(1)          # log x
        poly[(0, 1)] = mpf(-0.5)       # -1/(2x)
        for i in range(1, depth + 1):
            b = bernoulli(2 * i)
            poly[(0, 2 * i)] = -mpf(b.numerator) / b.denominator / (2 * i)
        bn = bernoulli(2 * depth + 2)
        C = 2 * abs(mpf(bn.numerator) / bn.denominator) / (2 * depth + 2)
        return poly, (C, 0, 2 * depth + 2)
    sign = 1 if order % 2 else -1
    poly[(0, order)] = mpf(sign * factorial(order - 1))
    poly[(0, order + 1)] = mpf(sign) * factorial(order) / 2
    for i in range(1, depth + 1):
        b = bernoulli(2 * i)
        coeff = factorial(2 * i + order - 1) // factorial(2 * i)
        poly[(0, 2 * i + order)] = mpf(sign) * (mpf(b.numerator) / b.denominator) * coeff
    bn = bernoulli(2 * depth + 2)
    cnext = factorial(2 * depth + 2 + order - 1) // factorial(2 * depth + 2)
    C = 2 * abs(mpf(bn.numerator) / bn.denominator) * cnext
    return poly, (C, 0, 2 * depth + 2 + order)


def _lp_integral(a: int, b: int, N: int) -> mpf:
    """int_N^inf log^a(x) x^(-b) dx for b >= 2."""
    if b < 2:
        raise ValueError("divergent integral")
    lnN = mp.log(N)
    total = mpf(0)
    term = mpf(N) ** (1 - b) / (b - 1) * lnN ** a
    total += term
    coeff = mpf(1)
    for j in range(a, 0, -1):
        coeff = coeff * j / (b - 1)
        total += coeff * mpf(N) ** (1 - b) / (b - 1) * lnN ** (j - 1)
    return total


def _lp_derivative(poly: dict) -> dict:
    out: dict[tuple[int, int], mpf] = {}
    for (a, b), c in poly.items():
        if a:
            out[(a - 1, b + 1)] = out.get((a - 1, b + 1), mpf(0)) + c * a
        out[(a, b + 1)] = out.get((a, b + 1), mpf(0)) - c * b
    return out


def _lp_value(poly: dict, x: mpf) -> mpf:
    lx = mp.log(x)
    return mp.fsum(c * lx ** a * x ** (-b) for (a, b), c in poly.items())


def lp_tail(a: int, b: int, N: int, corrections: int = 12) -> tuple[mpf, mpf]:
    """(value, error bound) for sum_{x=N}^inf log^a(x) x^(-b), b >= 2, N >= 3."""
    g = {(a, b): mpf(1)}
    xN = mpf(N)
    total = _lp_integral(a, b, N) + _lp_value(g, xN) / 2
    dg = g
    for i in range(1, corrections + 1):
        dg = _lp_derivative(dg)  # g^(2i-1)
        bi = bernoulli(2 * i)
        total -= (mpf(bi.numerator) / bi.denominator) / factorial(2 * i) * _lp_value(dg, xN)
        dg = _lp_derivative(dg)  # g^(2i)
    # remainder via  4 (2pi)^(-2p) * int |g^(2p)|
    bound = mpf(0)
    for (aa, bb), c in dg.items():
        bound += abs(c) * _lp_integral(aa, bb, N)
    bound *= 4 * (2 * mp.pi) ** (-2 * corrections)
    return total, bound


def sum_psi_polynomial(terms: list[PsiTerm], start: int, prec: Precision) -> tuple[mpc, mpf]:
    """Sum the series for x = start, start+1, ... with a certified bound."""
    if start < 1:
        raise ValueError("start must be >= 1")
    wp = prec.work_digits + 10
    tol = mpf(10) ** (-(prec.digits + 5))
    with mp.workdps(wp):
        orders = sorted({r for t in terms for r, _ in t.psi})
        max_order = max(orders, default=0)
        if max_order > MAX_DERIVATIVE_ORDER:
            raise ValueError("polygamma order above cap")
        N = 64
        while True:
            tail_val, tail_err = _tail_psi(terms, N, prec)
            if tail_err < tol or N >= 1 << 16:
                break
            N *= 2
        # direct part start..N-1 with a running polygamma ladder
        ladder = None
        if orders:
            ladder = PolygammaLadder(Fraction(start), 1, max(orders) + 1, prec)
        total = mpc(0)
        for x in range(start, N):
            xv = mpf(x)
            psival = ladder.vals if ladder else []
            for t in terms:
                v = mpc(t.coeff) * xv ** (-t.power)
                for r, e in t.psi:
                    v *= psival[r] ** e
                total += v
            if ladder:
                ladder.advance()
        rounding = mpf(10) ** (-(wp - 6)) * (N - start + 1)
        return total + tail_val, tail_err + rounding


def _tail_psi(terms: list[PsiTerm], N: int, prec: Precision) -> tuple[mpc, mpf]:
    """Tail sum_{x>=N} of all terms, via log-power expansion + Euler-Maclaurin."""
    depth = 14
    bmax = 2 * depth + 4
    value = mpc(0)
    err = mpf(0)
    lnN = mp.log(N)
    expansions = {r: _psi_expansion(r, depth, N) for r in {r for t in terms for r, _ in t.psi}}
    for t in terms:
        poly = {(0, t.power): mpf(1)}
        env: list = []  # envelope monomials (C, a, b)
        for r, e in t.psi:
            p_r, env_r = expansions[r]
            # bound of psi factor magnitude on x >= N, as monomials
            bound_r = [(abs(c), a, b) for (a, b), c in p_r.items()] + [env_r]
            for _ in range(e):
                overflow: list = []
                bound_poly = [(abs(c), a, b) for (a, b), c in poly.items()]
                new_env: list = []
                # env_total(new) = env(old)*bound(factor) + bound(poly)*env(factor)
                Ce, Ae, Be = _fold_envelope(env, N)
                if Ce:
                    for c2, a2, b2 in bound_r:
                        new_env.append((Ce * c2, Ae + a2, Be + b2))
                Cf, Af, Bf = env_r
                for c1, a1, b1 in bound_poly:
                    new_env.append((c1 * Cf, a1 + Af, b1 + Bf))
                poly = _lp_mul(poly, p_r, bmax, overflow)
                new_env.extend(overflow)
                env = [_fold_envelope(new_env, N)]
        # sum the polynomial part by Euler-Maclaurin per monomial
        tval = mpf(0)
        terr = mpf(0)
        for (a, b), c in poly.items():
            if not c:
                continue
            v, e2 = lp_tail(a, b, N)
            tval += c * v
            terr += abs(c) * e2
        # envelope contribution: integral comparison for a decreasing majorant
        for C, A, B in env:
            if not C:
                continue
            if B < 2 or mpf(B) * lnN <= A:  # need monotone decrease on [N, inf)
                return mpc(0), mpf("inf")
            terr += C * (_lp_integral(A, B, N) + lnN ** A * mpf(N) ** (-B))
        value += mpc(t.coeff) * tval
        err += abs(mpc(t.coeff)) * terr
    return value, err
