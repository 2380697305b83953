"""Gosper / WZ certification tests, including a sympy cross-oracle."""

from fractions import Fraction
from math import factorial

import pytest

from wzforge.exact import KPoly, Polynomial, RationalFunction, k, n
from wzforge.gosper import (
    NoWZMateError,
    WZCertificate,
    gosper_certificate,
    gosper_form,
    hyperterm_ratio,
    verify_reflected_pair,
    verify_wz_pair,
    wz_mate,
)
from wzforge.hyperterm import GammaFactor, HyperTerm


def G(cn, ck, off, exp=1):
    return GammaFactor(cn, ck, (), Fraction(off), exp)


def fact(cn, ck, off, exp=1):
    return G(cn, ck, Fraction(off) + 1, exp)


def rf(a, b=1):
    return RationalFunction(a if isinstance(a, Polynomial) else Polynomial.const(a),
                            b if isinstance(b, Polynomial) else Polynomial.const(b))


def test_certificate_k_times_factorial():
    # t = k * k!, rho = (k+1)^2 / k, certificate R = 1/k
    R = gosper_certificate(rf((k + 1)**2, k))
    assert R == rf(Polynomial.const(1), k)


def test_certificate_reciprocal_k_kplus1():
    # t = 1/(k(k+1)), rho = k/(k+2), R = -(k+1); S = R t = -1/k telescopes
    R = gosper_certificate(rf(k, k + 2))
    assert R == rf(-(k + 1))


def test_no_certificate_for_harmonic():
    # t = 1/k has no hypergeometric antidifference
    assert gosper_certificate(rf(k, k + 1)) is None


def test_certificate_zero_numerator():
    with pytest.raises(ValueError):
        gosper_certificate(rf(0, k))


def test_gosper_form_reconstructs_quotient():
    # the normalized (p, q, r) must satisfy rho = (q/r) * p(k+1)/p(k)
    from wzforge.exact import poly_gcd

    num = (k + 3) * (k + 1)
    den = k * (k + 5)
    form = gosper_form(num, den)
    lhs = form.q * form.p.shift(dk=1) * den
    rhs = form.r * form.p * num
    assert lhs == rhs
    # Gosper-Petkovsek condition gcd(q(k), r(k+j)) = 1 for j = 0..12
    for j in range(13):
        assert poly_gcd(form.q, form.r.shift(dk=j)).degree("k") < 1


def test_certificate_telescopes_exactly():
    # sum_{k=a}^{b} t(k) = R(b+1) t(b+1) - R(a) t(a) for t = k * k!
    R = gosper_certificate(rf((k + 1)**2, k))

    def t(kv):
        return Fraction(kv * factorial(kv))

    def S(kv):
        return R.eval(Fraction(0), Fraction(kv)) * t(kv)

    for a, b in [(1, 5), (2, 9), (3, 4)]:
        assert sum(t(j) for j in range(a, b + 1)) == S(b + 1) - S(a)


def test_against_sympy_oracle():
    sympy = pytest.importorskip("sympy")
    from sympy.concrete.gosper import gosper_term

    kk = sympy.Symbol("k")
    cases = [
        (kk * sympy.factorial(kk), rf((k + 1)**2, k)),
        (sympy.Rational(1, 1) / (kk * (kk + 1)), rf(k, k + 2)),
        ((4 * kk + 1) * sympy.factorial(kk) / sympy.factorial(2 * kk + 1),
         rf((4*k + 5) * (k + 1), (4*k + 1) * (2*k + 2) * (2*k + 3))),
    ]
    for expr, rho in cases:
        mine = gosper_certificate(rho)
        ref = gosper_term(expr, kk)  # the certificate ratio: (ref * expr) telescopes
        if ref is None:
            assert mine is None
            continue
        for kv in (3, 5, 11):
            assert sympy.nsimplify(ref.subs(kk, kv)) == mine.eval(Fraction(0), Fraction(kv))


def f1_pair_F():
    # (1/3) (k+n)! n! / ((k+1+n)(1+2n+k)(2n+k)!)
    return HyperTerm(
        RationalFunction(Polynomial.const(1), 3 * (k + 1 + n) * (1 + 2*n + k)),
        gammas=[fact(1, 1, 0), fact(1, 0, 0), fact(2, 1, 0, -1)],
    )


def f2_pair_F():
    # -(2/5) e^{i pi n} n!^2 k! / ((k+n+1)^2 (2n+1+k) (2n+k)!)
    return HyperTerm(
        RationalFunction(Polynomial.const(-2), 5 * (k + n + 1)**2 * (2*n + 1 + k)),
        phase=("n", Fraction(1)),
        gammas=[fact(1, 0, 0, 2), fact(0, 1, 0), fact(2, 1, 0, -1)],
    )


def f7_pair_F():
    return HyperTerm(
        RationalFunction(Polynomial.const(1), (2*n + 1 + k)**2),
        gammas=[fact(1, 1, 0, 2), fact(1, 0, 0, 4), fact(2, 1, 0, -2), fact(2, 0, 0, -1)],
    )


@pytest.mark.parametrize("builder", [f1_pair_F, f2_pair_F, f7_pair_F])
def test_wz_mate_certifies(builder):
    F = builder()
    Gt, cert = wz_mate(F)
    assert cert.verified
    assert cert.residual.is_zero()
    # independent re-verification through the pair interface
    again = verify_wz_pair(F, Gt)
    assert again.verified


def test_perturbed_pair_fails():
    F = f1_pair_F()
    Gt, cert = wz_mate(F)
    bad_ratio = cert.mate_ratio + 1  # G + F
    bad = verify_wz_pair(F, bad_ratio)
    assert not bad.verified
    assert not bad.residual.is_zero()
    # nonzero residual numerically at (n,k) = (2,3)
    assert bad.residual.eval(Fraction(2), Fraction(3)) != 0


def test_trivial_pair():
    F = HyperTerm(1)
    cert = verify_wz_pair(F, RationalFunction.const(0))
    assert cert.verified


def test_zero_term_mate():
    F = HyperTerm(1)  # constant in n: Delta_n F = 0
    Gt, cert = wz_mate(F)
    assert cert.verified
    assert cert.mate_ratio.is_zero()


def test_reflected_pair_recertifies():
    F = f1_pair_F()
    _, cert = wz_mate(F)
    rcert = verify_reflected_pair(F, cert.mate_ratio)
    assert rcert.verified


def test_certificate_report_schema():
    F = f1_pair_F()
    _, cert = wz_mate(F)
    doc = cert.to_json("f1")
    assert doc["pair_id"] == "f1"
    assert doc["verified"] is True
    assert doc["residual"] == "0"
    assert set(doc) == {"pair_id", "mate_ratio", "verified", "residual"}
