"""Constant-evaluation tests with independent summation oracles."""

from fractions import Fraction

import pytest
from mpmath import mp, mpf

from wzforge.constants import (
    DZ,
    IUNIT,
    L3,
    LOG2,
    PI,
    SQRT2,
    ConstantExpr,
    Z,
    const_expr_eval,
    dirichlet_L_minus3,
    double_zeta,
    hurwitz_zeta,
    log2_value,
    pi_value,
    zeta,
)
from wzforge.special import Precision

P30 = Precision(30)
P40 = Precision(40)


def test_pi_against_oracle():
    with mp.workdps(80):
        v = pi_value(Precision(60))
        assert abs(v.value - mp.pi) < mpf(10) ** -60
        assert v.error_bound < mpf(10) ** -60


def test_log2_against_oracle():
    with mp.workdps(80):
        v = log2_value(Precision(60))
        assert abs(v.value - mp.log(2)) < mpf(10) ** -60


def test_zeta_closed_forms():
    with mp.workdps(60):
        z2 = zeta(2, P40)
        assert abs(z2.value - mp.pi ** 2 / 6) < mpf(10) ** -39
        z6 = zeta(6, P40)
        assert abs(z6.value - mp.pi ** 6 / 945) < mpf(10) ** -39


def test_zeta_odd_em_oracle():
    # independent oracle: partial sum plus integral tail bracket
    with mp.workdps(60):
        z3 = zeta(3, P40)
        N = 4000
        partial = mp.fsum(mpf(m) ** -3 for m in range(1, N + 1))
        lo = partial + mpf(1) / (2 * (N + 1) ** 2)
        hi = partial + mpf(1) / (2 * N ** 2)
        assert lo < z3.value.real < hi
        assert abs(z3.value - mp.zeta(3)) < mpf(10) ** -39


def test_zeta_domain():
    with pytest.raises(ValueError):
        zeta(1, P30)


def test_hurwitz_vs_mpmath():
    with mp.workdps(60):
        for s in (2, 3, 5):
            for off in (Fraction(1, 3), Fraction(2, 3)):
                v = hurwitz_zeta(s, off, P40)
                ref = mp.zeta(s, mpf(off.numerator) / off.denominator)
                assert abs(v.value - ref) < mpf(10) ** -38


def test_double_zeta_euler_identity():
    # zeta(2,1) = zeta(3); brute-force double-sum oracle with tail bracket
    with mp.workdps(60):
        v = double_zeta(2, 1, P30)
        N = 3000
        brute = mp.fsum(
            mpf(m) ** -2 * mp.fsum(mpf(j) ** -1 for j in range(1, m)) for m in range(2, N)
        )
        assert abs(v.value - zeta(3, P30).value) < mpf(10) ** -29
        # remaining tail is between 0 and (ln N + 2) / N
        assert brute < v.value.real < brute + (mp.log(N) + 2) / N


def test_double_zeta_stuffle():
    with mp.workdps(60):
        lhs = double_zeta(3, 5, P40).value + double_zeta(5, 3, P40).value + zeta(8, P40).value
        rhs = zeta(3, P40).value * zeta(5, P40).value
        assert abs(lhs - rhs) < mpf(10) ** -38


def test_double_zeta_73_positive_and_bounded():
    v = double_zeta(7, 3, P30)
    assert 0 < v.value.real < (zeta(7, P30).value * zeta(3, P30).value).real


def test_double_zeta_domain():
    with pytest.raises(ValueError):
        double_zeta(1, 2, P30)


def test_L3_classical_value():
    with mp.workdps(60):
        v = dirichlet_L_minus3(1, P40)
        ref = mp.pi / (3 * mp.sqrt(3))
        assert abs(v.value - ref) < mpf(10) ** -39


def test_L3_direct_summation_agreement():
    with mp.workdps(60):
        for s in (2, 4):
            v = dirichlet_L_minus3(s, P30)
            direct = mp.nsum(
                lambda nn: (3 * nn + 1) ** (-s) - (3 * nn + 2) ** (-s), [0, mp.inf]
            )
            assert abs(v.value - direct) < mpf(10) ** -28


def test_L3_character_period():
    # character values over one period: 1, -1, 0
    s = 3
    partial = mpf(1) - mpf(2) ** (-s)
    assert abs(partial - (1 - mpf(1) / 2 ** s)) == 0


def test_truncation_doubling_invariance():
    # doubling requested digits must not move the value beyond the old bound
    a = double_zeta(5, 3, P30)
    b = double_zeta(5, 3, Precision(60))
    assert abs(a.value - b.value) < a.error_bound


def test_const_expr_algebra_and_eval():
    with mp.workdps(50):
        e = 3 * PI ** -1
        v = const_expr_eval(e, P30)
        assert abs(v.value - 3 / mp.pi) < mpf(10) ** -29
        e2 = 2 * LOG2
        v2 = const_expr_eval(e2, P30)
        assert abs(v2.value - 2 * mp.log(2)) < mpf(10) ** -29
        zero = ConstantExpr()
        v3 = const_expr_eval(zero, P30)
        assert v3.value == 0


def test_const_expr_normalization():
    assert (IUNIT * IUNIT) == ConstantExpr.scalar(-1)
    assert (SQRT2 * SQRT2) == ConstantExpr.scalar(2)
    e = Fraction(1, 2) * Z(3) * Z(5) + Fraction(1, 2) * Z(5) * Z(3)
    assert e == Z(3) * Z(5)
    assert (Z(3) - Z(3)).is_zero()


def test_const_expr_json_roundtrip():
    e = Fraction(1959, 2) * Z(6) - 432 * Z(3) ** 2 + 5 * PI * IUNIT * DZ(5, 3) - L3(2)
    assert ConstantExpr.from_json(e.to_json()) == e


def test_complex_expression_value():
    with mp.workdps(50):
        e = PI ** 5 * IUNIT * Fraction(1, 25) + Fraction(8, 15) * PI ** 2 * Z(3) - Fraction(52, 5) * Z(5)
        v = const_expr_eval(e, P30)
        ref = mp.pi ** 5 / 25 * mp.mpc(0, 1) + mpf(8) / 15 * mp.pi ** 2 * mp.zeta(3) - mpf(52) / 5 * mp.zeta(5)
        assert abs(v.value - ref) < mpf(10) ** -28
