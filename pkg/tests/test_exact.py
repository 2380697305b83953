"""Kernel tests: polynomials, rational functions, gcd/divrem over Q(n)[k]."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wzforge.exact import (
    KPoly,
    Polynomial,
    RationalFunction,
    k,
    n,
    poly_arith,
    poly_divexact,
    poly_gcd,
    ratfunc_normalize,
)


def test_gcd_common_root():
    g = poly_arith(k**2 - 1, k**2 - 2*k + 1, "gcd")
    assert g == k - 1


def test_mul_difference_of_squares():
    assert poly_arith(k + n, k - n, "mul") == k**2 - n**2


def test_divrem_cubic():
    q, r = poly_arith(k**3, k - 1, "divrem")
    # verified by expanding (k-1)(k^2+k+1) + 1
    assert q.to_rational() == RationalFunction(k**2 + k + 1)
    assert r.to_rational() == RationalFunction(Polynomial.const(1))
    assert (k - 1) * (k**2 + k + 1) + 1 == k**3


def test_divrem_zero_divisor():
    with pytest.raises(ZeroDivisionError):
        poly_arith(k, Polynomial.const(0), "divrem")


def test_ratfunc_cancellation():
    r = ratfunc_normalize(k**2 - 1, k - 1)
    assert r == RationalFunction(k + 1)


def test_ratfunc_zero():
    r = ratfunc_normalize(Polynomial.const(0), k + 3)
    assert r.num.is_zero()
    assert r.den == Polynomial.const(1)


def test_ratfunc_constant_ratio():
    r = ratfunc_normalize(2*k + 2*n, 4*k + 4*n)
    assert r.is_constant()
    # spot-check the value at (n, k) = (1, 2)
    assert r.eval(Fraction(1), Fraction(2)) == Fraction(1, 2)
    assert r.constant_value() == Fraction(1, 2)


def test_ratfunc_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        ratfunc_normalize(k, Polynomial.const(0))


def test_divexact_bivariate():
    p = (n*k + 1) * (k**2 + n)
    assert poly_divexact(p, n*k + 1) == k**2 + n


def test_gcd_with_n_coefficients():
    a = (n*k + 1) * (k + 2*n)
    b = (n*k + 1) * (k - 1)
    g = poly_gcd(a, b)
    assert g == n*k + 1


def test_kpoly_shift():
    p = KPoly.from_polynomial(k**2 + n*k)
    q = p.shift_k(1)
    assert q.to_rational() == RationalFunction((k + 1)**2 + n*(k + 1))


coeffs = st.integers(min_value=-9, max_value=9)


def _rand_poly(cs, deg_pairs):
    p = Polynomial()
    for c, (en, ek) in zip(cs, deg_pairs):
        p = p + Polynomial.monomial(c, en, ek)
    return p


pair = st.tuples(st.integers(0, 3), st.integers(0, 4))


@given(st.lists(coeffs, min_size=1, max_size=5), st.lists(pair, min_size=1, max_size=5),
       st.lists(coeffs, min_size=1, max_size=5), st.lists(pair, min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_gcd_divides_both(c1, m1, c2, m2):
    a = _rand_poly(c1, m1)
    b = _rand_poly(c2, m2)
    if a.is_zero() or b.is_zero():
        return
    g = poly_gcd(a, b)
    assert not g.is_zero()
    assert poly_divexact(a, g) * g == a
    assert poly_divexact(b, g) * g == b


@given(st.lists(coeffs, min_size=1, max_size=4), st.lists(pair, min_size=1, max_size=4),
       st.lists(coeffs, min_size=1, max_size=4), st.lists(pair, min_size=1, max_size=4),
       st.lists(coeffs, min_size=1, max_size=4), st.lists(pair, min_size=1, max_size=4))
@settings(max_examples=40, deadline=None)
def test_ring_axioms(c1, m1, c2, m2, c3, m3):
    a, b, c = _rand_poly(c1, m1), _rand_poly(c2, m2), _rand_poly(c3, m3)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a*b + a*c
    assert (a * b) * c == a * (b * c)
    assert (a - a).is_zero()


@given(st.lists(coeffs, min_size=1, max_size=5), st.lists(pair, min_size=1, max_size=5),
       st.lists(coeffs, min_size=1, max_size=5), st.lists(pair, min_size=1, max_size=5),
       st.integers(-30, 30), st.integers(-30, 30))
@settings(max_examples=60, deadline=None)
def test_normalization_preserves_value(c1, m1, c2, m2, n0, k0):
    num = _rand_poly(c1, m1)
    den = _rand_poly(c2, m2)
    if den.is_zero():
        return
    r = ratfunc_normalize(num, den)
    nv, kv = Fraction(n0, 7), Fraction(k0, 11)
    if den.eval(nv, kv) == 0 or r.den.eval(nv, kv) == 0:
        return
    assert r.eval(nv, kv) == num.eval(nv, kv) / den.eval(nv, kv)


def test_substitution_and_reflection():
    p = 28*k**2 - 8*k + 1
    q = p.reflect_k()
    assert q == 28*(k + 1)**2 + 8*(k + 1) + 1
    r = RationalFunction(k + 1, 2*n + k)
    assert r.shift(dk=1) == RationalFunction(k + 2, 2*n + k + 1)


def test_rational_derivative():
    r = RationalFunction(Polynomial.const(1), k)
    assert r.derivative("k") == RationalFunction(Polynomial.const(-1), k**2)
    s = RationalFunction(n*k, n + 1)
    assert s.derivative("n") == RationalFunction(k, (n + 1)**2)
