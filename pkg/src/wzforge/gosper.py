"""Gosper's algorithm over Q(n)[k] and exact Wilf-Zeilberger certification.

Given the shift quotient rho(k) = t(k+1)/t(k) of a hypergeometric term, the
algorithm either produces a rational certificate R with

    R(k+1) * rho(k) - R(k) = 1        (so S = R*t telescopes: S(k+1)-S(k) = t)

or proves that no hypergeometric antidifference exists.  The pipeline is the
classical one: normalize the quotient as rho = (q/r) * (p(k+1)/p(k)) with
gcd(q(k), r(k+j)) = 1 for every integer j >= 0, bound the degree of the
unknown polynomial x(k) in  q(k) x(k+1) - r(k-1) x(k) = p(k),  and solve the
linear system for its coefficients by fraction-free elimination over Q[n].

The dispersion set (shifts j with gcd(q(k), r(k+j)) != 1) is found through
root differences of the two polynomials at a generic rational specialization
of n, every candidate being confirmed by an exact gcd over Q(n); specializing
can only enlarge the candidate set, so no true dispersion is ever missed.

A mate for F(n,k) is produced by applying the certificate machinery to the
k-quotient of  Delta_n F = (F(n+1,k)/F(n,k) - 1) * F,  and every certification
ends with the residual of Delta_n F = Delta_k G normalized as an exact
rational function; `verified` is true only when that residual is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from mpmath import mp, mpf

from .exact import (
    Polynomial,
    RationalFunction,
    _divmod_univar_n,
    content_in_n,
    gcd_primitive_k,
    poly_divexact,
    poly_divexact_by_npoly,
)
from .hyperterm import HyperTerm, shift_quotient


class NoWZMateError(ValueError):
    """Gosper's algorithm proved no hypergeometric antidifference exists."""


@dataclass
class GosperForm:
    """Normalized quotient data: rho = (q/r) * (p(k+1)/p(k))."""

    p: Polynomial
    q: Polynomial
    r: Polynomial


@dataclass
class WZCertificate:
    """Mate ratio R with G = R*F plus the exact verification outcome."""

    mate_ratio: RationalFunction
    verified: bool
    residual: RationalFunction

    def to_json(self, pair_id: str | None = None) -> dict:
        doc = {
            "mate_ratio": {
                "num": _poly_json(self.mate_ratio.num),
                "den": _poly_json(self.mate_ratio.den),
            },
            "verified": self.verified,
            "residual": (
                "0"
                if self.residual.is_zero()
                else {"num": _poly_json(self.residual.num), "den": _poly_json(self.residual.den)}
            ),
        }
        if pair_id is not None:
            doc = {"pair_id": pair_id, **doc}
        return doc


def _poly_json(p: Polynomial):
    return [[en, ek, str(c.numerator), str(c.denominator)] for (en, ek), c in sorted(p.terms.items())]


# ---------------------------------------------------------------------------
# Dispersion
# ---------------------------------------------------------------------------

_SPECIALIZATIONS = [Fraction(16, 7), Fraction(23, 5), Fraction(9, 4), Fraction(31, 3), Fraction(57, 8)]


def _specialized_coeffs(p: Polynomial, n0: Fraction) -> list[Fraction] | None:
    dk = p.degree("k")
    out = []
    for j in range(dk + 1):
        out.append(Fraction(p.coeff_of_k_power(j).eval(n0, Fraction(0))))
    while out and not out[-1]:
        out.pop()
    if len(out) != dk + 1:
        return None  # leading coefficient vanished at this specialization
    return out


def _dispersion_candidates(q: Polynomial, r: Polynomial) -> list[int]:
    """Nonnegative integer shifts j with gcd(q(k), r(k+j)) possibly nontrivial.

    Root differences at a generic n; every candidate is confirmed exactly by
    the caller, so extra candidates are harmless and true ones are never lost.
    """
    if q.degree("k") < 1 or r.degree("k") < 1:
        return []
    cands = {0, 1, 2}
    for n0 in _SPECIALIZATIONS:
        cq = _specialized_coeffs(q, n0)
        cr = _specialized_coeffs(r, n0)
        if cq is None or cr is None:
            continue
        with mp.workdps(40):
            try:
                rq = mp.polyroots(
                    [mpf(c.numerator) / c.denominator for c in reversed(cq)],
                    maxsteps=200, extraprec=150,
                )
                rr = mp.polyroots(
                    [mpf(c.numerator) / c.denominator for c in reversed(cr)],
                    maxsteps=200, extraprec=150,
                )
            except mp.NoConvergence:
                continue
            for b in rr:
                for a in rq:
                    d = b - a
                    if abs(mp.im(d)) < mpf(10) ** -8:
                        j = int(mp.nint(mp.re(d)))
                        if j >= 0 and abs(mp.re(d) - j) < mpf(10) ** -6:
                            cands.add(j)
        return sorted(cands)
    return sorted(cands | set(range(0, 13)))  # fall back to small shifts


def _gcd_in_k(a: Polynomial, b: Polynomial) -> Polynomial:
    """Primitive gcd of the k-parts (ignores content in n)."""
    pa = poly_divexact_by_npoly(a, content_in_n(a))
    pb = poly_divexact_by_npoly(b, content_in_n(b))
    return gcd_primitive_k(pa.primitive(), pb.primitive())


def gosper_form(num: Polynomial, den: Polynomial) -> GosperForm:
    """Gosper-Petkovsek normalization of the quotient num/den."""
    a, b, c = num, den, Polynomial.const(1)
    while True:
        progressed = False
        for j in _dispersion_candidates(a, b):
            g = _gcd_in_k(a, b.shift(dk=j))
            if g.degree("k") < 1:
                continue
            a = poly_divexact(a, g)
            b = poly_divexact(b, g.shift(dk=-j))
            for i in range(1, j + 1):
                c = c * g.shift(dk=-i)
            progressed = True
            break
        if not progressed:
            return GosperForm(p=c, q=a, r=b)


# ---------------------------------------------------------------------------
# Fraction-free linear algebra over Q[n]
# ---------------------------------------------------------------------------


def _np_strip(v: list[Fraction]) -> list[Fraction]:
    while v and not v[-1]:
        v.pop()
    return v


def _np_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _np_strip(out)


def _np_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    m = max(len(a), len(b))
    out = [
        (a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
        for i in range(m)
    ]
    return _np_strip(out)


def _np_divexact(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not b:
        raise ZeroDivisionError("exact division by zero")
    if not a:
        return []
    r = a[:]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(r) >= len(b):
        if not r[-1]:
            r.pop()
            continue
        f = r[-1] / b[-1]
        off = len(r) - len(b)
        q[off] = f
        for i, c in enumerate(b):
            r[off + i] -= f * c
        r.pop()
    if _np_strip(r):
        raise ValueError("inexact division in fraction-free elimination")
    return _np_strip(q)


def _np_to_poly(v: list[Fraction]) -> Polynomial:
    return Polynomial({(i, 0): c for i, c in enumerate(v) if c})


def _poly_to_np(p: Polynomial) -> list[Fraction]:
    if p.is_zero():
        return []
    out = [Fraction(0)] * (p.degree("n") + 1)
    for (en, ek), c in p.terms.items():
        if ek:
            raise ValueError("entry not free of k")
        out[en] += c
    return _np_strip(out)


def solve_linear_over_qn(
    matrix: list[list[list[Fraction]]], rhs: list[list[Fraction]]
) -> list[RationalFunction] | None:
    """Solve M x = rhs with Q[n] entries; one solution over Q(n) or None.

    Fraction-free (Bareiss) forward elimination, then back substitution in
    Q(n).  Free variables are set to zero.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [matrix[i] + [rhs[i]] for i in range(rows)]
    piv_rows: list[tuple[int, int]] = []
    prev: list[Fraction] = [Fraction(1)]
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if aug[i][c]:
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        piv = aug[r][c]
        for i in range(r + 1, rows):
            if not any(aug[i][c2] for c2 in range(c, cols + 1)):
                continue
            rowc = aug[i][c]
            for c2 in range(cols + 1):
                if c2 == c:
                    continue
                num = _np_sub(_np_mul(piv, aug[i][c2]), _np_mul(rowc, aug[r][c2]))
                aug[i][c2] = _np_divexact(num, prev) if prev != [Fraction(1)] else num
            aug[i][c] = []
        piv_rows.append((r, c))
        prev = piv
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if not any(aug[i][c] for c in range(cols)) and aug[i][cols]:
            return None
    sol: list[RationalFunction] = [RationalFunction.const(0)] * cols
    for (ri, ci) in reversed(piv_rows):
        acc = RationalFunction(_np_to_poly(aug[ri][cols]))
        for c2 in range(ci + 1, cols):
            if aug[ri][c2]:
                acc = acc - RationalFunction(_np_to_poly(aug[ri][c2])) * sol[c2]
        sol[ci] = acc / RationalFunction(_np_to_poly(aug[ri][ci]))
    return sol


# ---------------------------------------------------------------------------
# Gosper certificate
# ---------------------------------------------------------------------------


def gosper_certificate(rho: RationalFunction) -> RationalFunction | None:
    """Certificate R with R(k+1) rho(k) - R(k) = 1, or None if none exists."""
    if rho.is_zero():
        raise ValueError("quotient has zero numerator")
    form = gosper_form(rho.num, rho.den)
    a, btilde, c = form.q, form.r.shift(dk=-1), form.p
    d = _degree_bound(a, btilde, c)
    if d is None or d < 0:
        return None
    kv = Polynomial.variable("k")
    cols = d + 1
    contribs = []
    max_row = c.degree("k")
    for i in range(cols):
        contrib = a * (kv + 1) ** i - btilde * kv ** i
        contribs.append(contrib)
        max_row = max(max_row, contrib.degree("k"))
    matrix = []
    rhs = []
    for row in range(max_row + 1):
        matrix.append([_poly_to_np(ct.coeff_of_k_power(row)) for ct in contribs])
        rhs.append(_poly_to_np(c.coeff_of_k_power(row)))
    sol = solve_linear_over_qn(matrix, rhs)
    if sol is None:
        return None
    if all(s.is_zero() for s in sol):
        return None
    # x(k) = sum sol[i] k^i with Q(n) coefficients; clear to a bivariate pair
    xnum = Polynomial()
    xden = Polynomial.const(1)
    for s in sol:
        g = poly_divexact(xden, _poly_gcd_n(xden, s.den))
        xden = g * s.den
    for i, s in enumerate(sol):
        if s.is_zero():
            continue
        xnum = xnum + s.num * poly_divexact(xden, s.den) * kv ** i
    R = RationalFunction(btilde * xnum, c * xden)
    check = R.shift(dk=1) * rho - R - 1
    if not check.is_zero():
        raise AssertionError("certificate failed its defining identity")
    return R


def _poly_gcd_n(a: Polynomial, b: Polynomial) -> Polynomial:
    from .exact import _gcd_univar

    return _gcd_univar(a, b, "n")


def _degree_bound(a: Polynomial, btilde: Polynomial, c: Polynomial) -> int | None:
    if a.is_zero() or btilde.is_zero():
        return None
    da, db, dc = a.degree("k"), btilde.degree("k"), c.degree("k")
    lca, lcb = a.coeff_of_k_power(da), btilde.coeff_of_k_power(db)
    if da != db or lca != lcb:
        return dc - max(da, db)
    e = da
    alpha = a.coeff_of_k_power(e - 1) if e >= 1 else Polynomial()
    beta = btilde.coeff_of_k_power(e - 1) if e >= 1 else Polynomial()
    cands = [dc - e + 1]
    diff = beta - alpha
    if diff.is_zero():
        cands.append(0)
    else:
        q, r = _divmod_univar_n(diff, lca)
        if r.is_zero() and q.is_constant():
            v = q.constant_value()
            if v.denominator == 1 and v >= 0:
                cands.append(int(v))
    valid = [x for x in cands if x >= 0]
    return max(valid) if valid else None


# ---------------------------------------------------------------------------
# WZ pairs
# ---------------------------------------------------------------------------


def hyperterm_ratio(g_term: HyperTerm, f_term: HyperTerm) -> RationalFunction:
    """G/F when it is a rational function of (n, k); raises otherwise."""
    q = g_term * f_term.inverse()
    if q.gammas or q.geometric or q.sins or q.phase:
        raise ValueError("G/F is not a rational function")
    c, factors = q.scale.terms[0] if q.scale.terms else (Fraction(0), ())
    if factors:
        raise ValueError("G/F carries non-rational constants")
    return q.prefactor * c


def wz_mate(F: HyperTerm) -> tuple[HyperTerm, WZCertificate]:
    """Compute the WZ mate G = R*F with Delta_k G = Delta_n F, exactly certified."""
    rho_n = shift_quotient(F, "n")
    rho_k = shift_quotient(F, "k")
    u = rho_n - 1
    if u.is_zero():
        zero = HyperTerm(0)
        return zero, WZCertificate(RationalFunction.const(0), True, RationalFunction.const(0))
    rho_T = u.shift(dk=1) / u * rho_k
    R = gosper_certificate(rho_T)
    if R is None:
        raise NoWZMateError("Delta_n F has no hypergeometric antidifference in k")
    ratio = R * u
    cert = _certify_ratio(rho_n, rho_k, ratio)
    if not cert.verified:
        raise AssertionError("mate construction produced a non-verifying ratio")
    return F.scaled(ratio), cert


def _certify_ratio(
    rho_n: RationalFunction, rho_k: RationalFunction, ratio: RationalFunction
) -> WZCertificate:
    residual = (rho_n - 1) - (ratio.shift(dk=1) * rho_k - ratio)
    return WZCertificate(mate_ratio=ratio, verified=residual.is_zero(), residual=residual)


def verify_wz_pair(F: HyperTerm, G: HyperTerm | RationalFunction) -> WZCertificate:
    """Exact check of Delta_n F = Delta_k G via shift quotients."""
    ratio = G if isinstance(G, RationalFunction) else hyperterm_ratio(G, F)
    if ratio.is_zero():
        rho_n = shift_quotient(F, "n")
        residual = rho_n - 1
        return WZCertificate(ratio, residual.is_zero(), residual)
    return _certify_ratio(shift_quotient(F, "n"), shift_quotient(F, "k"), ratio)


def verify_reflected_pair(F: HyperTerm, ratio: RationalFunction) -> WZCertificate:
    """Certify the transformed pair (F(n,-k-1), -G(n,-k)) as a rational identity.

    With q_n, q_k the shift quotients of F and G = ratio * F:
      F'(n,k)   = F(n,-k-1):  q'_n(n,k) = q_n(n,-k-1),  q'_k = 1/q_k(n,-k-2)
      G'(n,k)   = -G(n,-k):   G'/F' = -ratio(n,-k) * q_k(n,-k-1)
    """
    rho_n = shift_quotient(F, "n")
    rho_k = shift_quotient(F, "k")
    mk = -Polynomial.variable("k")

    def sub(rf: RationalFunction, shift: int) -> RationalFunction:
        return rf.substitute("k", mk - Polynomial.const(shift))

    rho_n_r = sub(rho_n, 1)
    rho_k_r = RationalFunction.const(1) / sub(rho_k, 2)
    ratio_r = -sub(ratio, 0) * sub(rho_k, 1)
    return _certify_ratio(rho_n_r, rho_k_r, ratio_r)
