"""Special-function tests against independent mpmath oracles."""

from fractions import Fraction

import pytest
from mpmath import mp, mpf, mpc

from wzforge.special import (
    BellTable,
    LogGammaLadder,
    Precision,
    PolygammaLadder,
    bernoulli,
    complete_bell,
    derivative_via_bell,
    log_gamma,
    polygamma,
)

P40 = Precision(40)


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(12) == Fraction(-691, 2730)


def test_log_gamma_trivia():
    with mp.workdps(60):
        assert abs(log_gamma(1, P40)) < mpf(10) ** -40
        assert abs(log_gamma(Fraction(1, 2), P40) - mp.log(mp.pi) / 2) < mpf(10) ** -39
        # ln(9!) computed by integer arithmetic
        assert abs(log_gamma(10, P40) - mp.log(362880)) < mpf(10) ** -39


def test_log_gamma_vs_mpmath():
    with mp.workdps(70):
        for x in [Fraction(1, 5), Fraction(7, 3), Fraction(101, 2), Fraction(1234, 7)]:
            mine = log_gamma(x, Precision(50))
            ref = mp.loggamma(mpf(x.numerator) / x.denominator)
            assert abs(mine - ref) < mpf(10) ** -49


def test_log_gamma_domain():
    with pytest.raises(ValueError):
        log_gamma(0, P40)
    with pytest.raises(ValueError):
        log_gamma(-3.5, P40)


def test_polygamma_trivia():
    with mp.workdps(60):
        # psi'(1) = pi^2/6
        assert abs(polygamma(1, 1, P40) - mp.pi ** 2 / 6) < mpf(10) ** -39
        # psi(1/2) - psi(1) = -2 ln 2
        d = polygamma(0, Fraction(1, 2), P40) - polygamma(0, 1, P40)
        assert abs(d + 2 * mp.log(2)) < mpf(10) ** -39
        # psi(2) - psi(1) = 1
        assert abs(polygamma(0, 2, P40) - polygamma(0, 1, P40) - 1) < mpf(10) ** -39


def test_polygamma_vs_mpmath():
    with mp.workdps(70):
        for m in range(9):
            for x in [Fraction(1, 3), Fraction(5, 2), Fraction(97, 4)]:
                mine = polygamma(m, x, Precision(45))
                ref = mp.psi(m, mpf(x.numerator) / x.denominator)
                assert abs(mine - ref) < mpf(10) ** -44, (m, x)


def test_polygamma_order_cap():
    with pytest.raises(ValueError):
        polygamma(9, 1, P40)


def test_reflection_property():
    # Gamma(x) Gamma(1-x) sin(pi x) = pi at rational probes
    with mp.workdps(60):
        for x in [Fraction(1, 5), Fraction(1, 3), Fraction(2, 7)]:
            lg = log_gamma(x, P40) + log_gamma(1 - x, P40)
            val = mp.exp(lg) * mp.sinpi(mpf(x.numerator) / x.denominator)
            assert abs(val - mp.pi) < mpf(10) ** -37


def test_recurrence_property():
    import random

    rng = random.Random(7)
    with mp.workdps(60):
        for _ in range(20):
            x = Fraction(rng.randint(1, 5000), 100)
            lhs = log_gamma(x + 1, P40) - log_gamma(x, P40)
            assert abs(lhs - mp.log(mpf(x.numerator) / x.denominator)) < mpf(10) ** -38


def test_polygamma_finite_difference_consistency():
    # psi^(m) is the derivative of psi^(m-1): central difference check at digits/2
    with mp.workdps(80):
        h = mpf(10) ** -15
        for m in range(1, 9):
            x = mpf(7) / 2
            approx = (polygamma(m - 1, x + h, Precision(60)) - polygamma(m - 1, x - h, Precision(60))) / (2 * h)
            assert abs(approx - polygamma(m, x, Precision(60))) < mpf(10) ** -12, m


def test_ladders_match_direct():
    with mp.workdps(60):
        lad = PolygammaLadder(Fraction(3, 2), 2, 4, P40)
        lg = LogGammaLadder(Fraction(3, 2), 2, P40)
        for step in range(40):
            arg = Fraction(3, 2) + 2 * step
            for j in range(4):
                assert abs(lad.vals[j] - polygamma(j, arg, P40)) < mpf(10) ** -35
            assert abs(lg.val - log_gamma(arg, P40)) < mpf(10) ** -35
            lad.advance()
            lg.advance()


def test_bell_identities():
    with mp.workdps(40):
        a, b = mpc(2, 1), mpc(-1, 3)
        # m = 0 is the identity
        assert derivative_via_bell([], mpc(5)) == mpc(5)
        # (e^L)'' = e^L (L'^2 + L'')
        fv = mpc(3)
        assert abs(derivative_via_bell([a, b], fv) - fv * (a * a + b)) < mpf(10) ** -30
        table = complete_bell([a, b, mpc(0), mpc(1)])
        assert isinstance(table, BellTable)
        assert table.order == 4
        # recurrence invariant: B_{m+1} = sum C(m,j) B_{m-j} x_{j+1}
        xs = [a, b, mpc(0), mpc(1)]
        from math import comb

        for mm in range(4):
            acc = mpc(0)
            for j in range(mm + 1):
                acc += comb(mm, j) * table.values[mm - j] * xs[j]
            assert abs(acc - table.values[mm + 1]) < mpf(10) ** -25


def test_bell_vs_finite_difference_exp_poly():
    # f = exp(sin-like polynomial L); compare against mpmath high-order diff
    with mp.workdps(80):
        L = lambda t: t ** 3 / 7 - 2 * t + mpf(1) / 3
        f = lambda t: mp.exp(L(t))
        x0 = mpf(3) / 2
        for m in range(1, 9):
            derivs = [mp.diff(L, x0, j) for j in range(1, m + 1)]
            mine = derivative_via_bell(derivs, f(x0))
            ref = mp.diff(f, x0, m)
            assert abs(mine - ref) / abs(ref) < mpf(10) ** -20, m


def test_bell_order_cap():
    with pytest.raises(ValueError):
        derivative_via_bell([mpc(1)] * 9, mpc(1))
