"""Boundary and cross-route checks tying the WZ pairs to the series values.

For the two-parameter pair behind the 3/pi family the summed relation

    sum_n G(n,0) = sum_n g(n),        g(n) = lim_k G(n,k),

is checked numerically at the parameter origin, and the coefficient
extractions in the parameters (the [c] and 2[c]+[a] readings) are realized
as first-order central differences at rational offsets: the residual

    Psi(a,c) = sum_{n>=1} G(n,0) - sum_{n>=1} g(n) - sum_k F(1,k)

vanishes identically near the origin (F(0,k) = 0 there), so both its values
at the sample points and its difference quotient must be zero to within the
summation bounds.  Each sample re-runs the exact mate construction with the
parameters folded into the Gamma offsets; the non-rational unit
e^(i pi (c-a)) 2^(-2c) / cos(pi c) rides along as an external multiplier.

The remaining checks: finite double-sum telescoping for three parameter-free
pairs, the reindexing identity G(n,0) = (first summand)(n+1) for the 2 log 2
pair, the order-2 cross-route for the alternating zeta(3) family (structured
derivative route vs the explicit harmonic-number form, both termwise and
summed), and the numeric WZ relation for the first parameter derivative of
the L_{-3} family's pair.
"""

from __future__ import annotations

from fractions import Fraction as Fr

import random

from mpmath import mp, mpc, mpf

from ..constants import PI, SQRT2, const_expr_eval
from ..exact import Polynomial, RationalFunction, k, n
from ..gosper import wz_mate
from ..hyperterm import (
    GammaFactor,
    HyperTerm,
    TermEvaluator,
    TermValue,
    derivative_value,
    eval_term,
    fix_variable,
    shift_quotient,
    substitute_k_shifted_n,
)
from ..psisum import PsiTerm, sum_psi_polynomial
from ..series import SeriesJob, sum_to_tolerance
from ..special import Precision


def _G(cn, ck, off, exp=1):
    return GammaFactor(cn, ck, (), Fr(off), exp)


# ---------------------------------------------------------------------------
# The two-parameter pair at rational parameter points
# ---------------------------------------------------------------------------


def th2_pair_term(alpha: Fr, c: Fr) -> HyperTerm:
    """F(n,k;a,c) with parameters folded into offsets and Gamma(c-1/2-k)
    pre-reflected; the non-rational unit lives in `th2_pair_multiplier`."""
    return HyperTerm(
        RationalFunction(Polynomial.const(-6)),
        sign_n=1,
        geometric=[(Fr(4), 0, 1)],
        gammas=[
            _G(1, 0, Fr(1, 2) - alpha, 2),
            _G(1, 1, Fr(1, 2), 2),
            _G(1, 0, Fr(1, 2) + alpha + 2 * c, 1),
            _G(1, 1, Fr(1, 2) - alpha - c, 1),
            _G(1, 0, -alpha, -1),
            _G(1, 0, c, -2),
            _G(3, 2, Fr(3, 2) - alpha, -1),
            _G(0, 1, Fr(3, 2) - c, -1),
        ],
        scale=PI ** -2,
        domain=(1, 0),
    )


def th2_pair_multiplier(alpha: Fr, c: Fr, digits: int) -> mpc:
    """e^(i pi (c - a)) * 2^(-2c) / cos(pi c)."""
    with mp.workdps(digits + 15):
        ph = mp.expjpi(mpf((c - alpha).numerator) / (c - alpha).denominator)
        tw = mp.power(2, -2 * mpf(c.numerator) / c.denominator)
        cs = mp.cospi(mpf(c.numerator) / c.denominator)
        return ph * tw / cs


def th2_g_term(alpha: Fr, c: Fr) -> HyperTerm:
    """The boundary term g = lim_k G(n,k), written in the running variable k."""
    pref = Fr(3, 4) * (6 * k + Polynomial.const(1 - 2 * alpha + 4 * c))
    return HyperTerm(
        RationalFunction(pref),
        sign_k=1,
        geometric=[(Fr(1, 512), 0, 1)],
        gammas=[
            _G(0, 2, 1 - 2 * alpha, 2),
            _G(0, 2, 1 + 2 * alpha + 4 * c, 1),
            _G(0, 1, 1 - alpha, -3),
            _G(0, 1, 1 + alpha + 2 * c, -1),
            _G(0, 1, 1 + c, -2),
        ],
        scale=SQRT2,
        domain=(0, 0),
    )


def th2_g_multiplier(alpha: Fr, c: Fr, digits: int) -> mpc:
    """e^(i pi a) * 2^(3a - 6c)."""
    with mp.workdps(digits + 15):
        e = 3 * alpha - 6 * c
        return mp.expjpi(mpf(alpha.numerator) / alpha.denominator) * mp.power(
            2, mpf(e.numerator) / e.denominator
        )


def _series_value(term_fn, start, digits, probe=None, order=0):
    job = SeriesJob(term=term_fn, start=start, target_digits=digits,
                    ratio_probe=probe, derivative_order=order)
    res = sum_to_tolerance(job)
    return res.value, res.error_bound


_psi_cache: dict = {}


def th2_psi_residual(alpha: Fr, c: Fr, digits: int = 18) -> tuple[mpc, mpf]:
    """Psi(a,c) = sum_{n>=1} G(n,0) - sum_{n>=1} g(n) - sum_k F(1,k), with bound."""
    key = (alpha, c, digits)
    if key in _psi_cache:
        return _psi_cache[key]
    F = th2_pair_term(alpha, c)
    multF = th2_pair_multiplier(alpha, c, digits + 10)
    _, cert = wz_mate(F)
    ratio = cert.mate_ratio
    with mp.workdps(digits + 20):
        def g_series():
            gt = th2_g_term(alpha, c)
            ev = TermEvaluator(gt, "k", 0, 0, digits + 8)
            multg = th2_g_multiplier(alpha, c, digits + 10)

            def f(kv):
                while ev.k < kv:
                    ev.advance()
                out = ev.current()
                ev.advance()
                return TermValue(out.value * multg, out.error_bound * abs(multg) * 2)

            return _series_value(f, 0, digits, probe=shift_quotient(gt, "k"))

        def G_series():
            def f(nv):
                base = eval_term(F, nv, 0, digits + 10)
                rv = ratio.eval(Fr(nv), Fr(0))
                rvf = mpf(rv.numerator) / rv.denominator
                return TermValue(base.value * rvf * multF,
                                 base.error_bound * (abs(rvf) + 1) * abs(multF) * 2)

            return _series_value(f, 1, digits)

        def F_row_series():
            ft = fix_variable(F, "n", 1)
            ev = TermEvaluator(ft, "k", 0, 0, digits + 8)

            def f(kv):
                while ev.k < kv:
                    ev.advance()
                out = ev.current()
                ev.advance()
                return TermValue(out.value * multF, out.error_bound * abs(multF) * 2)

            return _series_value(f, 0, digits, probe=shift_quotient(ft, "k"))

        gv, ge = g_series()
        Gv, Ge = G_series()
        Fv, Fe = F_row_series()
        out = (Gv - gv - Fv, ge + Ge + Fe)
    _psi_cache[key] = out
    return out


def th2_origin_check(catalog, digits: int = 25) -> dict:
    """Origin consequences of the summed relation for the two-parameter pair."""
    cert = catalog.certify("th2")
    F = catalog.pairs["th2"]
    ratio = cert.mate_ratio
    summand = catalog.entries["th2a"].addends[0].term
    with mp.workdps(digits + 20):
        # G(n,0) reproduces the 3/pi summand for n = 1..12
        max_dev = mpf(0)
        for nv in range(1, 13):
            base = eval_term(F, nv, 0, digits + 10)
            rv = ratio.eval(Fr(nv), Fr(0))
            gval = base.value * (mpf(rv.numerator) / rv.denominator)
            sval = eval_term(summand, 0, nv, digits + 10)
            max_dev = max(max_dev, abs(gval - sval.value))
        # Psi(0,0) = 0 and  sum_{n>=0} g(n) = 3/pi
        psi, psi_err = th2_psi_residual(Fr(0), Fr(0), digits)
        gt = th2_g_term(Fr(0), Fr(0))
        ev = TermEvaluator(gt, "k", 0, 0, digits + 8)

        def f(kv):
            while ev.k < kv:
                ev.advance()
            out = ev.current()
            ev.advance()
            return out

        g_total, g_err = _series_value(f, 0, digits, probe=shift_quotient(gt, "k"))
        rhs = const_expr_eval(catalog.entries["th2a"].rhs, Precision(digits))
        dev_ram = abs(g_total - rhs.value)
        tol = mpf(10) ** (-(digits - 2))
        passed = bool(max_dev < tol and abs(psi) <= psi_err * 4 + tol and
                      dev_ram <= g_err + rhs.error_bound + tol)
        return {
            "passed": passed,
            "mate_vs_summand_dev": mp.nstr(max_dev, 3),
            "psi_residual": mp.nstr(abs(psi), 3),
            "boundary_sum_vs_rhs": mp.nstr(dev_ram, 3),
            "digits": digits,
        }


def th2_extraction_check(catalog, direction: str, h: Fr = Fr(1, 64), digits: int = 14) -> dict:
    """First-order parameter extraction along [c] or 2[c]+[a] as a difference
    quotient of the identically-zero residual Psi."""
    da, dc = (Fr(0), Fr(1)) if direction == "c" else (Fr(1), Fr(2))
    plus, pe = th2_psi_residual(da * h, dc * h, digits)
    minus, me = th2_psi_residual(-da * h, -dc * h, digits)
    with mp.workdps(digits + 15):
        hval = mpf(h.numerator) / h.denominator
        deriv = abs(plus - minus) / (2 * hval)
        bound = (pe + me) / (2 * hval)
        tol = mpf(10) ** (-(digits - 4))
        passed = bool(abs(plus) <= pe * 4 + tol and abs(minus) <= me * 4 + tol
                      and deriv <= bound * 4 + tol)
        return {
            "passed": passed,
            "direction": direction,
            "step": str(h),
            "psi_plus": mp.nstr(abs(plus), 3),
            "psi_minus": mp.nstr(abs(minus), 3),
            "extracted_derivative": mp.nstr(deriv, 3),
            "digits": digits,
        }


# ---------------------------------------------------------------------------
# Parameter-free pair checks
# ---------------------------------------------------------------------------


def wz_transfer_check(catalog, pair_id: str, digits: int = 25) -> dict:
    """Finite telescoping identity
    sum_{k<=K}[F(N+1,k) - F(0,k)] = sum_{n<=N}[G(n,K+1) - G(n,0)]."""
    F = catalog.pairs[pair_id]
    ratio = catalog.certify(pair_id).mate_ratio
    d = digits + 10
    results = []
    with mp.workdps(d + 15):
        for (N, K) in ((5, 7), (9, 11)):
            lhs = mpc(0)
            for kv in range(0, K + 1):
                lhs += eval_term(F, N + 1, kv, d).value - eval_term(F, 0, kv, d).value
            rhs = mpc(0)
            for nv in range(0, N + 1):
                for kk, sgn in ((K + 1, 1), (0, -1)):
                    rv = ratio.eval(Fr(nv), Fr(kk))
                    base = eval_term(F, nv, kk, d)
                    rhs += sgn * base.value * (mpf(rv.numerator) / rv.denominator)
            results.append(abs(lhs - rhs))
        tol = mpf(10) ** (-digits)
        return {"passed": bool(all(r < tol for r in results)),
                "max_dev": mp.nstr(max(results), 3), "digits": digits}


def th1_reindex_check(catalog, digits: int = 40) -> dict:
    """G(n,0) for the 2 log 2 pair equals the series summand at k = n+1,
    exactly as Gamma-product expressions."""
    Gt = catalog.mate("th1")
    g0 = fix_variable(Gt, "k", 0)
    summand = catalog.entries["th1"].addends[0].term
    shifted = substitute_k_shifted_n(summand, 1)
    quotient = g0 * shifted.inverse()
    q_n = shift_quotient(quotient, "n")
    constant_quotient = q_n == RationalFunction.const(1)
    with mp.workdps(digits + 15):
        val = eval_term(quotient, 1, 0, digits + 5)
        dev = abs(val.value - 1)
        passed = bool(constant_quotient and dev < mpf(10) ** (-digits))
        return {"passed": passed, "shift_quotient_is_one": constant_quotient,
                "value_at_n1_dev": mp.nstr(dev, 3), "digits": digits}


def hsum_crosscheck(catalog, digits: int = 25) -> dict:
    """Order-2 cross-route for the alternating zeta(3) pair.

    Route A sums the structured second derivative of the series term; route B
    sums the explicit harmonic-number form of (d/dn)^2 F(0,k), which decays
    only polynomially and goes through the polygamma tail engine.  Both must
    match each other, termwise and in total, and match the closed form.
    """
    from . import verify_theorem, _sum_addends, theorem_spec

    F = catalog.pairs["f2"]
    wp = digits + 15
    with mp.workdps(wp + 10):
        piv = +mp.pi
        gv = +mp.euler
        z2 = piv ** 2 / 6

        def route_b_term(kv: int) -> mpc:
            H = mp.fsum(mpf(1) / j for j in range(1, kv + 1))
            H2 = mp.fsum(mpf(1) / j ** 2 for j in range(1, kv + 1))
            j1 = mpf(kv + 1)
            return -mpf(8) / 5 * (
                (H2 + H ** 2 - piv ** 2 / 3) / j1 ** 3
                + 4 * H / j1 ** 4
                + mpf(11) / (2 * j1 ** 5)
                - mpc(0, 1) * piv * H / j1 ** 3
                - 2 * mpc(0, 1) * piv / j1 ** 4
            )

        termwise_dev = mpf(0)
        for kv in range(0, 25):
            a = derivative_value(F, "n", 2, 0, kv, digits + 8)
            termwise_dev = max(termwise_dev, abs(a.value - route_b_term(kv)))
        # summed route B: substitute j = k+1, psi(j) = H_k - gamma
        c83 = -mpf(8) / 5
        terms = [
            PsiTerm(-c83, 3, ((1, 1),)),
            PsiTerm(c83, 3, ((0, 2),)),
            PsiTerm(c83 * (2 * gv - mpc(0, 1) * piv), 3, ((0, 1),)),
            PsiTerm(c83 * (z2 + gv ** 2 - piv ** 2 / 3 - mpc(0, 1) * piv * gv), 3, ()),
            PsiTerm(c83 * 4, 4, ((0, 1),)),
            PsiTerm(c83 * (4 * gv - 2 * mpc(0, 1) * piv), 4, ()),
            PsiTerm(c83 * mpf(11) / 2, 5, ()),
        ]
        vb, eb = sum_psi_polynomial(terms, 1, Precision(digits + 3))
        entry = theorem_spec("f2_m2", catalog)
        va, ea = _sum_addends(entry, digits + 3)
        rhs = const_expr_eval(entry.rhs, Precision(digits + 3))
        dev_routes = abs(va.value - vb)
        dev_rhs = abs(vb - rhs.value)
        tol = mpf(10) ** (-digits)
        passed = bool(termwise_dev < tol and dev_routes <= va.error_bound + eb + tol
                      and dev_rhs <= eb + rhs.error_bound + tol)
        return {"passed": passed, "termwise_dev": mp.nstr(termwise_dev, 3),
                "route_dev": mp.nstr(dev_routes, 3), "rhs_dev": mp.nstr(dev_rhs, 3),
                "digits": digits}


def derivative_closure_check(catalog, digits: int = 25, points: int = 10) -> dict:
    """The order-1 parameter-derivative pair of the L_{-3} family's WZ pair
    satisfies the WZ relation numerically at random lattice points."""
    F = catalog.pairs["f3"]
    ratio = catalog.certify("f3").mate_ratio
    dratio = ratio.derivative("n")
    rng = random.Random(20260810)
    d = digits + 12
    max_rel = mpf(0)
    with mp.workdps(d + 15):
        def dF(nv, kv):
            return derivative_value(F, "n", 1, nv, kv, d).value

        def dG(nv, kv):
            base = eval_term(F, nv, kv, d).value
            rv = dratio.eval(Fr(nv), Fr(kv))
            rv2 = ratio.eval(Fr(nv), Fr(kv))
            return base * (mpf(rv.numerator) / rv.denominator) + (
                mpf(rv2.numerator) / rv2.denominator
            ) * dF(nv, kv)

        for _ in range(points):
            nv, kv = rng.randint(1, 6), rng.randint(1, 6)
            lhs = dF(nv + 1, kv) - dF(nv, kv)
            rhs = dG(nv, kv + 1) - dG(nv, kv)
            scale = max(abs(lhs), abs(rhs), mpf(10) ** -5)
            max_rel = max(max_rel, abs(lhs - rhs) / scale)
        passed = bool(max_rel < mpf(10) ** (-digits))
        return {"passed": passed, "max_rel_dev": mp.nstr(max_rel, 3), "digits": digits}
