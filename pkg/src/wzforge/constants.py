"""Certified basis constants and closed-form constant expressions.

The closed forms appearing on the right-hand sides of the catalog identities
are Q-linear combinations of products drawn from the basis

    pi**j (j in Z), log 2, zeta(s), zeta(s1, s2), L_{-3}(s), i, sqrt(2).

Every constant is computed with an explicit error bound:

* pi        -- Machin's formula 16 atan(1/5) - 4 atan(1/239); alternating tails.
* log 2     -- 2 atanh(1/3); geometric tail bound.
* zeta(2m)  -- Bernoulli closed form (2pi)^(2m) |B_2m| / (2 (2m)!).
* zeta(s)   -- Euler-Maclaurin with 12 correction terms and an adaptive cut.
* zeta(s,a) -- the same Euler-Maclaurin engine parameterized by the offset a,
               used for the L_{-3} character split 3^(-s)(zeta(s,1/3)-zeta(s,2/3)).
* zeta(s1,s2) = sum_{m>=2} m^(-s1) H^{(s2)}_{m-1}, with the tail split as
               zeta(s2) * tail(zeta(s1)) minus an Euler-Maclaurin-corrected
               remainder; the depth-1 case s2 = 1 goes through the polygamma
               series engine.

Values are cached per (atom, digits); the cache is lock-protected and all
returned values are immutable.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp, mpc, mpf

from .psisum import PsiTerm, sum_psi_polynomial
from .special import Precision, bernoulli

EM_CORRECTIONS = 12


@dataclass(frozen=True)
class ApproxValue:
    """A complex value with a certified absolute error bound."""

    value: mpc
    error_bound: mpf

    def __add__(self, other: "ApproxValue") -> "ApproxValue":
        return ApproxValue(self.value + other.value, self.error_bound + other.error_bound)


# ---------------------------------------------------------------------------
# Constant expressions
# ---------------------------------------------------------------------------

# Atom keys: ("pi",), ("log2",), ("zeta", s), ("dzeta", s1, s2), ("L3", s),
# ("i",), ("sqrt2",).  A term is (Fraction coeff, ((atom, exponent), ...)).


def _normalize_term(coeff: Fraction, factors: dict) -> tuple[Fraction, tuple]:
    out = {}
    for atom, e in factors.items():
        if e == 0:
            continue
        kind = atom[0]
        if kind == "i":
            e4 = e % 4
            if e4 >= 2:
                coeff = -coeff
                e4 -= 2
            if e4:
                out[atom] = out.get(atom, 0) + 1
            continue
        if kind == "sqrt2":
            coeff *= Fraction(2) ** (e // 2) if e >= 0 else Fraction(1, 2 ** ((-e + 1) // 2)) * (2 if (-e) % 2 else 1) ** 0
            if e < 0:
                raise ValueError("negative sqrt2 power unsupported")
            if e % 2:
                out[atom] = out.get(atom, 0) + 1
            continue
        out[atom] = out.get(atom, 0) + e
    clean = tuple(sorted((a, e) for a, e in out.items() if e))
    return coeff, clean


class ConstantExpr:
    """Q-linear combination of products of basis constants."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged: dict[tuple, Fraction] = {}
        for coeff, factors in terms:
            coeff = Fraction(coeff)
            if not coeff:
                continue
            if isinstance(factors, dict):
                coeff, key = _normalize_term(coeff, factors)
            else:
                coeff, key = _normalize_term(coeff, {a: e for a, e in factors})
            if not coeff:
                continue
            merged[key] = merged.get(key, Fraction(0)) + coeff
        self.terms = tuple(sorted(((c, f) for f, c in merged.items() if c), key=lambda t: t[1]))

    # -- constructors --------------------------------------------------------

    @classmethod
    def scalar(cls, c) -> "ConstantExpr":
        return cls([(Fraction(c), ())])

    @classmethod
    def atom(cls, *key, exp: int = 1) -> "ConstantExpr":
        return cls([(Fraction(1), ((tuple(key), exp),))])

    # -- algebra ---------------------------------------------------------------

    def __add__(self, other) -> "ConstantExpr":
        other = _as_expr(other)
        return ConstantExpr(list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self) -> "ConstantExpr":
        return ConstantExpr([(-c, f) for c, f in self.terms])

    def __sub__(self, other) -> "ConstantExpr":
        return self + (-_as_expr(other))

    def __rsub__(self, other) -> "ConstantExpr":
        return _as_expr(other) + (-self)

    def __mul__(self, other) -> "ConstantExpr":
        other = _as_expr(other)
        out = []
        for c1, f1 in self.terms:
            for c2, f2 in other.terms:
                factors: dict = {}
                for a, e in f1:
                    factors[a] = factors.get(a, 0) + e
                for a, e in f2:
                    factors[a] = factors.get(a, 0) + e
                out.append((c1 * c2, factors))
        return ConstantExpr(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ConstantExpr":
        if e < 0:
            if len(self.terms) == 1 and len(self.terms[0][1]) == 1:
                c, ((atom, ae),) = self.terms[0]
                if atom == ("pi",):
                    return ConstantExpr([(Fraction(1) / c ** (-e), ((atom, ae * e),))])
            raise ValueError("negative powers only supported for pure pi terms")
        out = ConstantExpr.scalar(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstantExpr):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def atoms(self) -> set:
        return {a for _, f in self.terms for a, _ in f}

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": {"p": str(c.numerator), "q": str(c.denominator)},
                    "atoms": [
                        {"kind": a[0], "args": [int(x) for x in a[1:]], "exp": e}
                        for a, e in f
                    ],
                }
                for c, f in self.terms
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConstantExpr":
        terms = []
        for t in data["terms"]:
            coeff = Fraction(int(t["coeff"]["p"]), int(t["coeff"]["q"]))
            factors = {}
            for a in t["atoms"]:
                key = (a["kind"], *[int(x) for x in a["args"]])
                factors[key] = factors.get(key, 0) + int(a.get("exp", 1))
            terms.append((coeff, factors))
        return cls(terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, f in self.terms:
            atoms = "*".join(
                (_atom_name(a) if e == 1 else f"{_atom_name(a)}**{e}") for a, e in f
            )
            if not atoms:
                parts.append(str(c))
            elif c == 1:
                parts.append(atoms)
            else:
                parts.append(f"{c}*{atoms}")
        return " + ".join(parts).replace("+ -", "- ")


def _atom_name(a) -> str:
    kind = a[0]
    if kind == "pi":
        return "pi"
    if kind == "log2":
        return "log2"
    if kind == "zeta":
        return f"zeta({a[1]})"
    if kind == "dzeta":
        return f"zeta({a[1]},{a[2]})"
    if kind == "L3":
        return f"L3({a[1]})"
    if kind == "i":
        return "I"
    if kind == "sqrt2":
        return "sqrt2"
    return str(a)


def _as_expr(x) -> "ConstantExpr":
    if isinstance(x, ConstantExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return ConstantExpr.scalar(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to ConstantExpr")


# Public atom builders.
PI = ConstantExpr.atom("pi")
LOG2 = ConstantExpr.atom("log2")
IUNIT = ConstantExpr.atom("i")
SQRT2 = ConstantExpr.atom("sqrt2")
ONE = ConstantExpr.scalar(1)


def Z(s: int) -> ConstantExpr:
    if s < 2:
        raise ValueError("zeta argument must be >= 2")
    return ConstantExpr.atom("zeta", s)


def DZ(s1: int, s2: int) -> ConstantExpr:
    if s1 < 2 or s2 < 1:
        raise ValueError("divergent double zeta")
    return ConstantExpr.atom("dzeta", s1, s2)


def L3(s: int) -> ConstantExpr:
    if s < 1:
        raise ValueError("L_{-3} argument must be >= 1")
    return ConstantExpr.atom("L3", s)


# ---------------------------------------------------------------------------
# Constant evaluation
# ---------------------------------------------------------------------------

_cache: dict[tuple, ApproxValue] = {}
_cache_lock = threading.Lock()


def _cached(key, builder, prec: Precision) -> ApproxValue:
    full_key = key + (prec.digits,)
    with _cache_lock:
        hit = _cache.get(full_key)
    if hit is not None:
        return hit
    val = builder(prec)
    with _cache_lock:
        _cache[full_key] = val
    return val


def _arctan_inv(x: int, wp: int) -> mpf:
    """atan(1/x) by the alternating Taylor series; error below last term."""
    inv2 = mpf(1) / (x * x)
    term = mpf(1) / x
    total = mpf(0)
    j = 0
    tol = mpf(10) ** (-wp)
    while True:
        total += term / (2 * j + 1) if j % 2 == 0 else -term / (2 * j + 1)
        term *= inv2
        j += 1
        if term / (2 * j + 1) < tol:
            break
    return total


def pi_value(prec: Precision = Precision()) -> ApproxValue:
    def build(p: Precision) -> ApproxValue:
        wp = p.work_digits + 10
        with mp.workdps(wp):
            v = 16 * _arctan_inv(5, wp) - 4 * _arctan_inv(239, wp)
            return ApproxValue(mpc(v), mpf(10) ** (-(p.digits + 5)))

    return _cached(("pi",), build, prec)


def log2_value(prec: Precision = Precision()) -> ApproxValue:
    def build(p: Precision) -> ApproxValue:
        wp = p.work_digits + 10
        with mp.workdps(wp):
            # log 2 = 2 atanh(1/3) = 2 sum (1/3)^(2j+1)/(2j+1); positive terms,
            # tail below first omitted term / (1 - 1/9)
            total = mpf(0)
            term = mpf(1) / 3
            j = 0
            tol = mpf(10) ** (-wp)
            while term / (2 * j + 1) > tol:
                total += term / (2 * j + 1)
                term /= 9
                j += 1
            return ApproxValue(mpc(2 * total), mpf(10) ** (-(p.digits + 5)))

    return _cached(("log2",), build, prec)


def sqrt2_value(prec: Precision = Precision()) -> ApproxValue:
    def build(p: Precision) -> ApproxValue:
        with mp.workdps(p.work_digits + 10):
            return ApproxValue(mpc(mp.sqrt(2)), mpf(10) ** (-(p.digits + 5)))

    return _cached(("sqrt2",), build, prec)


def _em_power_tail(s: int, x0: mpf, wp: int) -> tuple[mpf, mpf]:
    """(value, bound) for sum_{m>=0} (x0+m)^(-s) by Euler-Maclaurin at x0."""
    total = x0 ** (1 - s) / (s - 1) + x0 ** (-s) / 2
    poch = mpf(s)
    xpow = x0 ** (-s - 1)
    for i in range(1, EM_CORRECTIONS + 1):
        b = bernoulli(2 * i)
        total += (mpf(b.numerator) / b.denominator) / factorial(2 * i) * poch * xpow
        poch *= (s + 2 * i - 1) * (s + 2 * i)
        xpow /= x0 * x0
    b = bernoulli(2 * EM_CORRECTIONS + 2)
    bound = 2 * abs(mpf(b.numerator) / b.denominator) / factorial(2 * EM_CORRECTIONS + 2) * poch * xpow
    return total, bound


def _zeta_em(s: int, prec: Precision, offset: Fraction = Fraction(1)) -> ApproxValue:
    """Hurwitz zeta(s, offset) for integer s >= 2 by direct sum + EM tail."""
    wp = prec.work_digits + 10
    tol = mpf(10) ** (-(prec.digits + prec.guard))
    with mp.workdps(wp):
        N = max(20, int(prec.digits * 1.16 / 2) + 20)
        while True:
            x0 = mpf(offset.numerator) / offset.denominator + N
            tail, bound = _em_power_tail(s, x0, wp)
            if bound < tol or N > 10 ** 7:
                break
            N *= 2
        base = mpf(offset.numerator) / offset.denominator
        partial = mp.fsum((base + j) ** (-s) for j in range(N))
        err = bound + mpf(10) ** (-(wp - 6)) * (N + 1)
        return ApproxValue(mpc(partial + tail), err)


def zeta(s: int, prec: Precision = Precision()) -> ApproxValue:
    """Riemann zeta at integer s >= 2."""
    if s < 2:
        raise ValueError("zeta argument must be >= 2")

    def build(p: Precision) -> ApproxValue:
        with mp.workdps(p.work_digits + 10):
            if s % 2 == 0:
                m = s // 2
                piv = pi_value(Precision(p.digits + 10, p.guard))
                b = bernoulli(s)
                c = Fraction((-1) ** (m + 1) * b.numerator * 2 ** (s - 1), b.denominator * factorial(s))
                v = (mpf(c.numerator) / c.denominator) * piv.value.real ** s
                return ApproxValue(mpc(v), mpf(10) ** (-(p.digits + 5)))
            return _zeta_em(s, p)

    return _cached(("zeta", s), build, prec)


def hurwitz_zeta(s: int, offset: Fraction, prec: Precision = Precision()) -> ApproxValue:
    """zeta(s, offset) for integer s >= 2 and rational offset > 0."""
    if s < 2:
        raise ValueError("hurwitz_zeta needs s >= 2")
    if offset <= 0:
        raise ValueError("offset must be positive")

    def build(p: Precision) -> ApproxValue:
        return _zeta_em(s, p, offset=Fraction(offset))

    return _cached(("hurwitz", s, str(Fraction(offset))), build, prec)


def dirichlet_L_minus3(s: int, prec: Precision = Precision()) -> ApproxValue:
    """L_{-3}(s) = sum_{n>=0} [ (3n+1)^(-s) - (3n+2)^(-s) ] for s >= 1."""
    if s < 1:
        raise ValueError("L_{-3} argument must be >= 1")

    def build(p: Precision) -> ApproxValue:
        wp = p.work_digits + 10
        with mp.workdps(wp):
            if s >= 2:
                a = hurwitz_zeta(s, Fraction(1, 3), p)
                b = hurwitz_zeta(s, Fraction(2, 3), p)
                v = (a.value - b.value) * mpf(3) ** (-s)
                return ApproxValue(v, (a.error_bound + b.error_bound) * mpf(3) ** (-s))
            # s = 1: Euler-Maclaurin on phi(x) = 1/((3x+1)(3x+2)), which is
            # completely monotone, with elementary derivatives and integral
            tol = mpf(10) ** (-(p.digits + p.guard))
            N = max(30, p.digits)
            while True:
                bnd = _l3_em_bound(N)
                if bnd < tol or N > 10 ** 7:
                    break
                N *= 2
            partial = mp.fsum(
                mpf(1) / (3 * x + 1) - mpf(1) / (3 * x + 2) for x in range(N)
            )
            xN = mpf(N)
            integral = mp.log((3 * xN + 2) / (3 * xN + 1)) / 3
            tail = integral + (1 / (3 * xN + 1) - 1 / (3 * xN + 2)) / 2
            for i in range(1, EM_CORRECTIONS + 1):
                b = bernoulli(2 * i)
                j = 2 * i - 1
                der = (mpf(3) ** j * factorial(j)) * (
                    (3 * xN + 1) ** (-j - 1) - (3 * xN + 2) ** (-j - 1)
                ) * (-1) ** j
                tail -= (mpf(b.numerator) / b.denominator) / factorial(2 * i) * der
            err = bnd + mpf(10) ** (-(wp - 6)) * (N + 1)
            return ApproxValue(mpc(partial + tail), err)

    return _cached(("L3", s), build, prec)


def _l3_em_bound(N: int) -> mpf:
    j = 2 * EM_CORRECTIONS + 1
    b = bernoulli(2 * EM_CORRECTIONS + 2)
    xN = mpf(N)
    der = mpf(3) ** j * factorial(j) * (3 * xN + 1) ** (-j - 1)
    return 2 * abs(mpf(b.numerator) / b.denominator) / factorial(2 * EM_CORRECTIONS + 2) * der


def double_zeta(s1: int, s2: int, prec: Precision = Precision()) -> ApproxValue:
    """zeta(s1, s2) = sum_{k1 > k2 > 0} k1^(-s1) k2^(-s2), for s1 >= 2, s2 >= 1."""
    if s1 < 2 or s2 < 1:
        raise ValueError("divergent double zeta")

    def build(p: Precision) -> ApproxValue:
        wp = p.work_digits + 10
        with mp.workdps(wp):
            if s2 == 1:
                # sum_{m>=1} m^(-s1) (psi(m) + euler_gamma); depth-1 case
                g = +mp.euler
                terms = [
                    PsiTerm(mpc(1), s1, ((0, 1),)),
                    PsiTerm(mpc(g), s1, ()),
                ]
                v, e = sum_psi_polynomial(terms, 1, p)
                return ApproxValue(v, e + mpf(10) ** (-(wp - 4)))
            tol = mpf(10) ** (-(p.digits + p.guard))
            M = max(40, p.digits)
            while True:
                bnd = _dzeta_tail_bound(s1, s2, M)
                if bnd < tol or M > 10 ** 6:
                    break
                M *= 2
            # A = sum_{m=2..M} m^(-s1) H^{(s2)}_{m-1}
            H = mpf(0)
            A = mpf(0)
            for m in range(2, M + 1):
                H += mpf(m - 1) ** (-s2)
                A += mpf(m) ** (-s1) * H
            x0 = mpf(M + 1)
            t1, e1 = _em_power_tail(s1, x0, wp)
            zs2 = zeta(s2, p)
            # C = sum_{m>M} m^(-s1) zeta_H(s2, m), via the expansion of zeta_H
            C = mpf(0)
            eC = mpf(0)
            v, e = _em_power_tail(s1 + s2 - 1, x0, wp)
            C += v / (s2 - 1)
            eC += e / (s2 - 1)
            v, e = _em_power_tail(s1 + s2, x0, wp)
            C += v / 2
            eC += e / 2
            poch = mpf(s2)
            for i in range(1, EM_CORRECTIONS + 1):
                b = bernoulli(2 * i)
                v, e = _em_power_tail(s1 + s2 + 2 * i - 1, x0, wp)
                ci = (mpf(b.numerator) / b.denominator) / factorial(2 * i) * poch
                C += ci * v
                eC += abs(ci) * e
                poch *= (s2 + 2 * i - 1) * (s2 + 2 * i)
            # remainder of the zeta_H expansion, summed over m > M
            b = bernoulli(2 * EM_CORRECTIONS + 2)
            rem_c = 2 * abs(mpf(b.numerator) / b.denominator) / factorial(2 * EM_CORRECTIONS + 2) * poch
            v, e = _em_power_tail(s1 + s2 + 2 * EM_CORRECTIONS + 1, x0, wp)
            eC += rem_c * (v + e)
            total = A + zs2.value.real * t1 - C
            err = (
                eC
                + e1 * zs2.value.real
                + zs2.error_bound * (t1 + e1)
                + mpf(10) ** (-(wp - 6)) * (M + 10)
            )
            return ApproxValue(mpc(total), err)

    return _cached(("dzeta", s1, s2), build, prec)


def _dzeta_tail_bound(s1: int, s2: int, M: int) -> mpf:
    # crude a-priori bound used only to pick M: the EM remainder scales like
    # the first omitted Bernoulli term of the zeta_H expansion at m = M+1
    j = 2 * EM_CORRECTIONS + 1
    b = bernoulli(2 * EM_CORRECTIONS + 2)
    poch = mpf(1)
    for t in range(2 * EM_CORRECTIONS + 1):
        poch *= s2 + t
    x = mpf(M + 1)
    return 2 * abs(mpf(b.numerator) / b.denominator) / factorial(2 * EM_CORRECTIONS + 2) * poch * x ** (
        -(s1 + s2 + 2 * EM_CORRECTIONS)
    )


def atom_value(atom: tuple, prec: Precision) -> ApproxValue:
    kind = atom[0]
    if kind == "pi":
        return pi_value(prec)
    if kind == "log2":
        return log2_value(prec)
    if kind == "sqrt2":
        return sqrt2_value(prec)
    if kind == "zeta":
        return zeta(atom[1], prec)
    if kind == "dzeta":
        return double_zeta(atom[1], atom[2], prec)
    if kind == "L3":
        return dirichlet_L_minus3(atom[1], prec)
    if kind == "i":
        return ApproxValue(mpc(0, 1), mpf(0))
    raise ValueError(f"unsupported atom {atom!r}")


def const_expr_eval(expr: ConstantExpr, prec: Precision = Precision()) -> ApproxValue:
    """Evaluate a constant expression with first-order error propagation (x2)."""
    wp = prec.work_digits + 10
    atom_prec = Precision(prec.digits + 10, prec.guard)
    with mp.workdps(wp):
        total = mpc(0)
        err = mpf(0)
        for coeff, factors in expr.terms:
            c = mpf(coeff.numerator) / coeff.denominator
            val = mpc(1)
            rel = mpf(0)
            for atom, e in factors:
                av = atom_value(atom, atom_prec)
                if abs(av.value) == 0:
                    raise ValueError(f"atom {atom!r} evaluated to zero")
                val *= av.value ** e
                rel += abs(e) * av.error_bound / abs(av.value)
            total += c * val
            err += abs(c) * abs(val) * rel
        err = 2 * err + mpf(10) ** (-(wp - 6)) * (len(expr.terms) + 1)
        return ApproxValue(total, err)
