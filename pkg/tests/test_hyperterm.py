"""Hypergeometric-term tests: parsing, quotients, evaluation, reflection, derivatives."""

import random
from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from wzforge.exact import Polynomial, RationalFunction, k, n
from wzforge.hyperterm import (
    GammaFactor,
    HyperTerm,
    TermEvaluator,
    derivative_value,
    eval_term,
    param_log_derivative,
    parse_term,
    reflect_k,
    serialize_term,
    shift_quotient,
)
from wzforge.special import Precision


def G(cn, ck, off, exp=1, **params):
    return GammaFactor(cn, ck, tuple(sorted((p, c) for p, c in params.items())), Fraction(off), exp)


def fact(cn, ck, off, exp=1):
    # (cn*n + ck*k + off)! as a Gamma factor
    return G(cn, ck, Fraction(off) + 1, exp)


def f1_term():
    # Gamma(k+1)^2 / (k^2 Gamma(2k+1)), for k >= 1
    return HyperTerm(RationalFunction(Polynomial.const(1), k**2),
                     gammas=[fact(0, 1, 0, 2), fact(0, 2, 0, -1)], domain=(0, 1))


def f2_term():
    return HyperTerm(RationalFunction(Polynomial.const(1), k**3),
                     phase=("k", Fraction(1)),
                     gammas=[fact(0, 1, 0, 2), fact(0, 2, 0, -1)], domain=(0, 1))


def f7_summand():
    # (21k - 8) Gamma(k)^6 / (8 Gamma(2k)^3)
    return HyperTerm(RationalFunction(21*k - 8, Polynomial.const(8)),
                     gammas=[G(0, 1, 0, 6), G(0, 2, 0, -3)], domain=(0, 1))


def f7_pair_F():
    # (k+n)!^2 n!^4 / ((2n+1+k)^2 ((2n+k)!)^2 (2n)!)
    return HyperTerm(RationalFunction(Polynomial.const(1), (2*n + 1 + k)**2),
                     gammas=[fact(1, 1, 0, 2), fact(1, 0, 0, 4), fact(2, 1, 0, -2), fact(2, 0, 0, -1)])


def test_parse_f1_descriptor():
    doc = {
        "prefactor": {"num": [[0, 0, "1", "1"]], "den": [[0, 2, "1", "1"]]},
        "sign": {"n": 0, "k": 0},
        "phase": None,
        "geometric": [],
        "gammas": [
            {"cn": 0, "ck": 1, "params": {}, "offset": {"p": "1", "q": "1"}, "exp": 2},
            {"cn": 0, "ck": 2, "params": {}, "offset": {"p": "1", "q": "1"}, "exp": -1},
        ],
        "domain": {"n0": 0, "k0": 1},
        "params": [],
    }
    t = parse_term(doc)
    assert t == f1_term()
    assert t.prefactor == RationalFunction(Polynomial.const(1), k**2)


def test_parse_phase_descriptor():
    t = f2_term()
    doc = serialize_term(t)
    assert doc["phase"] == {"var": "k", "p": "1", "q": "1"}
    assert parse_term(doc) == t


def test_parse_identity_term():
    doc = {
        "prefactor": {"num": [[0, 0, "1", "1"]], "den": [[0, 0, "1", "1"]]},
        "sign": {"n": 0, "k": 0}, "phase": None, "geometric": [], "gammas": [],
        "domain": {"n0": 0, "k0": 0}, "params": [],
    }
    t = parse_term(doc)
    v = eval_term(t, 3, 4, 30)
    assert v.value == 1 and v.error_bound == 0


def test_parse_unknown_field():
    doc = serialize_term(f1_term())
    doc["bogus"] = 1
    with pytest.raises(ValueError):
        parse_term(doc)


def test_roundtrip_canonical():
    for t in (f1_term(), f2_term(), f7_pair_F()):
        assert parse_term(serialize_term(t)) == t


def test_shift_quotient_f7_pair():
    q = shift_quotient(f7_pair_F(), "k")
    assert q == RationalFunction((n + k + 1)**2, (2*n + k + 2)**2)


def test_shift_quotient_reciprocal_factorial():
    t = HyperTerm(1, gammas=[fact(0, 1, 0, -1)])
    assert shift_quotient(t, "k") == RationalFunction(Polynomial.const(1), k + 1)


def test_shift_quotient_geometric():
    t = HyperTerm(1, geometric=[(Fraction(1, 16), 1, 0)])
    assert shift_quotient(t, "n") == RationalFunction.const(Fraction(1, 16))


def test_eval_f7_at_1():
    v = eval_term(f7_summand(), 0, 1, 30)
    assert abs(v.value - mpf(13) / 8) < mpf(10) ** -29
    assert v.error_bound < mpf(10) ** -28


def test_eval_f2_at_1():
    v = eval_term(f2_term(), 0, 1, 30)
    assert abs(v.value + mpf(1) / 2) < mpf(10) ** -29
    assert abs(v.value.imag) < mpf(10) ** -29


def test_eval_negative_gamma_argument():
    # constant factor Gamma(-1/2) = -2 sqrt(pi)
    t = HyperTerm(1, gammas=[G(0, 0, Fraction(-1, 2))])
    with mp.workdps(40):
        v = eval_term(t, 0, 0, 30)
        assert abs(v.value + 2 * mp.sqrt(mp.pi)) < mpf(10) ** -28


def test_eval_zero_via_reciprocal_gamma_pole():
    # 1/Gamma(n) vanishes at n = 0
    t = HyperTerm(1, gammas=[G(1, 0, 0, -1)])
    v = eval_term(t, 0, 5, 20)
    assert v.value == 0 and v.error_bound == 0


def test_eval_pole_raises():
    t = HyperTerm(1, gammas=[G(1, 0, 0, 1)])
    with pytest.raises(ValueError):
        eval_term(t, 0, 0, 20)


def test_reflect_factorial_against_direct_gamma():
    # reflect(Gamma(k+1)) equals Gamma(-k), checked off-integers
    t = HyperTerm(1, gammas=[fact(0, 1, 0)])
    r = reflect_k(t)
    with mp.workdps(40):
        for kv in (Fraction(1, 4), Fraction(1, 3)):
            v = eval_term(r, 0, kv, 30)
            ref = mp.gamma(-mpf(kv.numerator) / kv.denominator)
            assert abs(v.value - ref) < mpf(10) ** -27


def test_reflect_constant_and_prefactor():
    assert reflect_k(HyperTerm(1)) == HyperTerm(1)
    t = HyperTerm(RationalFunction(Polynomial.const(1), k + 1))
    assert reflect_k(t).prefactor == RationalFunction(Polynomial.const(-1), k)


def test_reflection_involution_numeric():
    rng = random.Random(5)
    for t in (f1_term(), f7_summand()):
        rr = reflect_k(reflect_k(t))
        for _ in range(10):
            kv = rng.randint(1, 12)
            a = eval_term(t, 0, kv, 30)
            b = eval_term(rr, 0, kv, 30)
            assert abs(a.value - b.value) < mpf(10) ** -25


def test_param_derivative_of_parameterized_gamma():
    # t = Gamma(-a + n + 1/2): dL/da at a=0 is -psi(n + 1/2)
    t = HyperTerm(1, gammas=[G(1, 0, Fraction(1, 2), 1, a=-1)], params=("a",))
    ld = param_log_derivative(t, "a", 1)
    with mp.workdps(40):
        got = ld(3, 0, Precision(30))[0]
        assert abs(got + mp.psi(0, mpf(7) / 2)) < mpf(10) ** -28


def test_param_derivative_constant_term():
    t = HyperTerm(1)
    with pytest.raises(ValueError):
        param_log_derivative(t, "a", 1)  # unknown parameter
    t2 = HyperTerm(1, params=("a",))
    vals = param_log_derivative(t2, "a", 3)(1, 1, Precision(20))
    assert all(abs(v) == 0 for v in vals)


def test_log_derivative_f2_closed_form():
    # L'(k) = 2 psi(k+1) - 2 psi(2k+1) - 3/k + i pi at k = 2
    ld = param_log_derivative(f2_term(), "k", 1)
    with mp.workdps(50):
        got = ld(0, 2, Precision(35))[0]
        want = 2 * mp.psi(0, 3) - 2 * mp.psi(0, 5) - mpf(3) / 2 + mp.mpc(0, 1) * mp.pi
        assert abs(got - want) < mpf(10) ** -32


def test_log_derivative_vs_finite_difference():
    # order-1 log derivative against a central difference of log(eval_term)
    t = f1_term()
    ld = param_log_derivative(t, "k", 1)
    digits = 30
    with mp.workdps(60):
        h = mpf(10) ** (-digits // 3)
        kv = mpf(2)
        up = eval_term(t, 0, kv + h, digits + 20).value
        dn = eval_term(t, 0, kv - h, digits + 20).value
        approx = (mp.log(up) - mp.log(dn)) / (2 * h)
        got = ld(0, 2, Precision(digits))[0]
        assert abs(got - approx) < mpf(10) ** (-(digits - 12))


def test_shift_quotient_consistency_numeric():
    rng = random.Random(11)
    with mp.workdps(45):
        for t in (f1_term(), f2_term(), f7_summand(), f7_pair_F()):
            qk = shift_quotient(t, "k")
            for _ in range(4):
                nv, kv = rng.randint(0, 5), rng.randint(1, 9)
                a = eval_term(t, nv, kv, 30)
                b = eval_term(t, nv, kv + 1, 30)
                qv = qk.eval(Fraction(nv), Fraction(kv))
                qf = mpf(qv.numerator) / qv.denominator
                scale = (abs(qf) + 1) * max(abs(a.value), mpf(1))
                assert abs(b.value - qf * a.value) <= scale * mpf(10) ** -27


def test_derivative_value_first_order_harmonic_form():
    # f1'(k) = -2 (H_2k - H_k + 1/k) f1(k)
    t = f1_term()
    with mp.workdps(50):
        for kv in (1, 2, 5):
            d = derivative_value(t, "k", 1, 0, kv, 30)
            H = lambda m: mp.fsum(mpf(1) / j for j in range(1, m + 1))
            f = eval_term(t, 0, kv, 40).value
            want = -2 * (H(2 * kv) - H(kv) + mpf(1) / kv) * f
            assert abs(d.value - want) < mpf(10) ** -25


def test_term_evaluator_matches_pointwise():
    t = f2_term()
    ev = TermEvaluator(t, "k", 2, 1, 30)
    with mp.workdps(50):
        for kv in range(1, 12):
            got = ev.current()
            ref = derivative_value(t, "k", 2, 0, kv, 30)
            assert abs(got.value - ref.value) < mpf(10) ** -24, kv
            ev.advance()


def test_multiplication_and_inverse():
    t = f1_term()
    u = t * t.inverse()
    v = eval_term(u, 0, 3, 30)
    assert abs(v.value - 1) < mpf(10) ** -28
