"""Series-engine tests: geometric tails, catalog-representative sums."""

from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from wzforge.exact import Polynomial, RationalFunction, k
from wzforge.hyperterm import GammaFactor, HyperTerm, TermEvaluator, TermValue, shift_quotient
from wzforge.psisum import PsiTerm, sum_psi_polynomial
from wzforge.series import (
    EngineError,
    SeriesJob,
    SeriesResult,
    sum_to_tolerance,
    tail_bound_geometric,
)
from wzforge.special import Precision


def geometric_term(base):
    def term(kv):
        with mp.workdps(60):
            return TermValue(mpc(mpf(base) ** kv), mpf(10) ** -55)
    return term


def test_plain_geometric_sum():
    job = SeriesJob(geometric_term(0.5), start=1, target_digits=30)
    res = sum_to_tolerance(job)
    assert abs(res.value - 1) < mpf(10) ** -29
    assert res.error_bound <= mpf(10) ** -29 * 10
    assert res.tail_bound <= res.error_bound


def test_exact_quotient_tail_bound():
    # t = 2^-k: exact ratio 1/2 certifies the tail without empirical probes
    job = SeriesJob(geometric_term(0.5), start=1, target_digits=20,
                    ratio_probe=RationalFunction.const(Fraction(1, 2)))
    bound = tail_bound_geometric(job, 10, None, mpf(2) ** -10)
    # true tail is exactly 2^-10; certified bound within a small factor
    assert mpf(2) ** -10 <= bound <= mpf(2) ** -10 * 4


def test_harmonic_rejected():
    def term(kv):
        return TermValue(mpc(1) / kv, mpf(10) ** -40)
    job = SeriesJob(term, start=1, target_digits=10)
    with pytest.raises(EngineError):
        sum_to_tolerance(job)


def test_digit_cap(monkeypatch):
    monkeypatch.setenv("WZFORGE_PRECISION_CAP", "50")
    job = SeriesJob(geometric_term(0.5), start=1, target_digits=60)
    with pytest.raises(EngineError):
        sum_to_tolerance(job)


def _apery_evaluator(digits):
    # (-1)^k / (k^3 C(2k,k)): Apery's series
    t = HyperTerm(
        RationalFunction(Polynomial.const(1), k ** 3),
        sign_k=1,
        gammas=[GammaFactor(0, 1, (), Fraction(1), 2), GammaFactor(0, 2, (), Fraction(1), -1)],
        domain=(0, 1),
    )
    ev = TermEvaluator(t, "k", 0, 1, digits)

    def term(kv):
        assert kv == ev.k
        out = ev.current()
        ev.advance()
        return out

    return t, term


def test_apery_series():
    with mp.workdps(50):
        t, term = _apery_evaluator(40)
        job = SeriesJob(term, start=1, target_digits=30, ratio_probe=shift_quotient(t, "k"))
        res = sum_to_tolerance(job)
        want = -mpf(2) / 5 * mp.zeta(3)
        assert abs(res.value - want) < mpf(10) ** -29
        assert abs(res.value.imag) <= res.error_bound


def test_zeilberger_zeta2_series():
    # (21k-8)/(k^3 C(2k,k)^3) sums to zeta(2)
    with mp.workdps(50):
        t = HyperTerm(
            RationalFunction(21 * k - 8, k ** 3),
            gammas=[GammaFactor(0, 1, (), Fraction(1), 6), GammaFactor(0, 2, (), Fraction(1), -3)],
            domain=(0, 1),
        )
        ev = TermEvaluator(t, "k", 0, 1, 40)

        def term(kv):
            out = ev.current()
            ev.advance()
            return out

        job = SeriesJob(term, start=1, target_digits=30, ratio_probe=shift_quotient(t, "k"))
        res = sum_to_tolerance(job)
        assert abs(res.value - mp.zeta(2)) < mpf(10) ** -29


def test_monotone_refinement():
    values = []
    for digits in (10, 20, 30):
        t, term = _apery_evaluator(digits + 10)
        job = SeriesJob(term, start=1, target_digits=digits, ratio_probe=shift_quotient(t, "k"))
        values.append(sum_to_tolerance(job))
    for lo, hi in zip(values, values[1:]):
        assert hi.error_bound <= lo.error_bound
        assert abs(lo.value - hi.value) <= lo.error_bound + hi.error_bound


def test_engine_vs_direct_partial_sum_oracle():
    # naive high-precision partial sum far beyond the engine cutoff
    with mp.workdps(60):
        t, term = _apery_evaluator(45)
        job = SeriesJob(term, start=1, target_digits=35, ratio_probe=shift_quotient(t, "k"))
        res = sum_to_tolerance(job)
        binom = lambda a, b: mp.gamma(a + 1) / (mp.gamma(b + 1) * mp.gamma(a - b + 1))
        direct = mp.fsum((-1) ** kk / (mpf(kk) ** 3 * binom(2 * kk, kk)) for kk in range(1, 4 * res.terms_used))
        assert abs(res.value - direct) <= res.error_bound + mpf(10) ** -40


def test_psisum_hsum_style_series():
    # sum_{j>=1} psi'(j)/j^3 = zeta(2)zeta(3) - ... checked against mpmath nsum
    with mp.workdps(40):
        terms = [PsiTerm(mpc(1), 3, ((1, 1),))]
        v, err = sum_psi_polynomial(terms, 1, Precision(30))
        ref = mp.nsum(lambda j: mp.psi(1, j) / j ** 3, [1, mp.inf])
        assert err < mpf(10) ** -28
        assert abs(v - ref) < mpf(10) ** -25
