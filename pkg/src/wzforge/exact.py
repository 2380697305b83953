"""Exact arithmetic kernel: bivariate polynomials over Q and rational functions.

Everything here is immutable and exact.  Polynomials live in Q[n, k] with a
graded-lexicographic term order (n before k); rational functions are kept
coprime with a sign-normalized denominator, so equal functions have equal
representations.  Division and gcd treat polynomials as univariate in k with
coefficients in the field Q(n), which is the coefficient field used by the
telescoping machinery.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Union

Scalar = Union[int, Fraction]

# Monomial keys are (exp_n, exp_k).


def _grlex_key(mono: tuple[int, int]) -> tuple[int, int, int]:
    en, ek = mono
    return (en + ek, en, ek)


class Polynomial:
    """Bivariate polynomial in (n, k) with exact Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], Fraction] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[(int(mono[0]), int(mono[1]))] = c
        self.terms = clean

    # -- construction ------------------------------------------------------

    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return cls({(0, 0): c} if c else {})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        if name == "n":
            return cls({(1, 0): Fraction(1)})
        if name == "k":
            return cls({(0, 1): Fraction(1)})
        raise ValueError(f"unknown variable {name!r}")

    @classmethod
    def monomial(cls, c: Scalar, en: int, ek: int) -> "Polynomial":
        c = Fraction(c)
        return cls({(en, ek): c} if c else {})

    # -- predicates / views -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0, 0), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        """Degree in one variable, or total degree when var is None; -1 for 0."""
        if not self.terms:
            return -1
        if var is None:
            return max(en + ek for en, ek in self.terms)
        idx = 0 if var == "n" else 1
        return max(m[idx] for m in self.terms)

    def leading_monomial(self) -> tuple[int, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=_grlex_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def coeff_of_k_power(self, j: int) -> "Polynomial":
        """The coefficient of k**j, as a polynomial in n."""
        return Polynomial({(en, 0): c for (en, ek), c in self.terms.items() if ek == j})

    def content(self) -> Fraction:
        """Positive rational content (gcd of coefficients); 0 for the zero poly."""
        if not self.terms:
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = _igcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // _igcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive(self) -> "Polynomial":
        """Scale to coprime integer coefficients with positive grlex leading sign."""
        if not self.terms:
            return self
        c = self.content()
        p = self * (1 / c)
        if p.leading_coeff() < 0:
            p = -p
        return p

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Polynomial":
        return _as_poly(other) + (-self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = _as_poly(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                m = (a1 + a2, b1 + b2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        return RationalFunction(self, _as_poly(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus, substitution, evaluation ----------------------------------

    def derivative(self, var: str) -> "Polynomial":
        idx = 0 if var == "n" else 1
        out: dict[tuple[int, int], Fraction] = {}
        for (en, ek), c in self.terms.items():
            e = (en, ek)[idx]
            if e:
                m = (en - 1, ek) if idx == 0 else (en, ek - 1)
                out[m] = out.get(m, Fraction(0)) + c * e
        return Polynomial(out)

    def substitute(self, var: str, target: "Polynomial") -> "Polynomial":
        """Replace var by an arbitrary polynomial."""
        idx = 0 if var == "n" else 1
        # cache powers of the target
        powers: dict[int, Polynomial] = {0: Polynomial.const(1)}

        def tpow(e: int) -> Polynomial:
            if e not in powers:
                powers[e] = tpow(e - 1) * target
            return powers[e]

        out = Polynomial()
        for (en, ek), c in self.terms.items():
            e = (en, ek)[idx]
            rest = Polynomial.monomial(c, (0 if idx == 0 else en), (ek if idx == 0 else 0))
            out = out + rest * tpow(e)
        return out

    def shift(self, dn: Scalar = 0, dk: Scalar = 0) -> "Polynomial":
        """p(n + dn, k + dk) for rational shifts."""
        out = self
        if dn:
            out = out.substitute("n", Polynomial.variable("n") + Polynomial.const(dn))
        if dk:
            out = out.substitute("k", Polynomial.variable("k") + Polynomial.const(dk))
        return out

    def reflect_k(self) -> "Polynomial":
        """p(n, -k-1)."""
        return self.substitute("k", -Polynomial.variable("k") - Polynomial.const(1))

    def eval(self, n_val, k_val):
        """Evaluate at numbers (Fraction/int stay exact; floats/mpf propagate)."""
        total = None
        npows: dict[int, object] = {0: 1}
        kpows: dict[int, object] = {0: 1}

        def pw(cache, base, e):
            if e not in cache:
                cache[e] = pw(cache, base, e - 1) * base
            return cache[e]

        for (en, ek), c in self.terms.items():
            term = c * pw(npows, n_val, en) * pw(kpows, k_val, ek)
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[m]
            en, ek = m
            v = "*".join(
                ([f"n**{en}" if en > 1 else "n"] if en else [])
                + ([f"k**{ek}" if ek > 1 else "k"] if ek else [])
            )
            if not v:
                parts.append(str(c))
            elif c == 1:
                parts.append(v)
            elif c == -1:
                parts.append(f"-{v}")
            else:
                parts.append(f"{c}*{v}")
        s = " + ".join(parts).replace("+ -", "- ")
        return s


def _zero_div():
    raise ZeroDivisionError("division by zero")


def _as_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Polynomial")


def _igcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# Convenience symbols for building polynomials expressively.
n = Polynomial.variable("n")
k = Polynomial.variable("k")
one = Polynomial.const(1)


# ---------------------------------------------------------------------------
# Univariate helpers over Q (used as the base case of the gcd tower).
# ---------------------------------------------------------------------------


def _gcd_univar(a: Polynomial, b: Polynomial, var: str) -> Polynomial:
    """Monic-Euclid gcd of two univariate polynomials, returned primitive."""
    idx = 0 if var == "n" else 1

    def coeffs(p: Polynomial) -> list[Fraction]:
        d = p.degree(var)
        out = [Fraction(0)] * (d + 1)
        for m, c in p.terms.items():
            out[m[idx]] += c
        return out

    fa, fb = coeffs(a), coeffs(b)

    def strip(v):
        while v and not v[-1]:
            v.pop()
        return v

    fa, fb = strip(fa), strip(fb)
    while fb:
        # remainder of fa by fb
        r = fa[:]
        dl = len(fb) - 1
        lb = fb[-1]
        while True:
            strip(r)
            if not r or len(r) - 1 < dl:
                break
            q = r[-1] / lb
            off = len(r) - 1 - dl
            for i, c in enumerate(fb):
                r[off + i] -= q * c
            r[-1] = Fraction(0)
        fa, fb = fb, strip(r)
    if not fa:
        return Polynomial()
    mono = (1, 0) if var == "n" else (0, 1)
    g = Polynomial({(mono[0] * i, mono[1] * i): c for i, c in enumerate(fa) if c})
    return g.primitive()


def content_in_n(p: Polynomial) -> Polynomial:
    """gcd over Q[n] of the k-slices of p (primitive, positive lc)."""
    c = Polynomial()
    for j in range(p.degree("k") + 1):
        cj = p.coeff_of_k_power(j)
        if not cj.is_zero():
            c = _gcd_univar(c, cj, "n") if not c.is_zero() else cj.primitive()
        if c == Polynomial.const(1):
            break
    return c if not c.is_zero() else Polynomial.const(1)


def prem_k(a: Polynomial, b: Polynomial) -> Polynomial:
    """Pseudo-remainder of a by b, treating k as the main variable."""
    db = b.degree("k")
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    lcb = b.coeff_of_k_power(db)
    r = a
    kv = Polynomial.variable("k")
    while not r.is_zero() and r.degree("k") >= db:
        dr = r.degree("k")
        lcr = r.coeff_of_k_power(dr)
        r = r * lcb - b * (lcr * kv ** (dr - db))
    return r


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Primitive gcd in Q[n, k].

    Content over Q[n] is split off; the k-parts run through a primitive
    pseudo-remainder sequence, the fraction-free realization of the monic
    Euclidean sequence over the field Q(n).
    """
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.degree("k") == 0 and b.degree("k") == 0:
        return _gcd_univar(a, b, "n")
    if a.degree("n") == 0 and b.degree("n") == 0:
        return _gcd_univar(a, b, "k")
    ca, cb = content_in_n(a), content_in_n(b)
    g_cont = _gcd_univar(ca, cb, "n")
    pa = poly_divexact_by_npoly(a, ca).primitive()
    pb = poly_divexact_by_npoly(b, cb).primitive()
    g_pp = gcd_primitive_k(pa, pb)
    return (g_cont * g_pp).primitive()


def gcd_primitive_k(a: Polynomial, b: Polynomial) -> Polynomial:
    """gcd of the primitive k-parts (content over Q[n] assumed removed)."""
    if a.degree("k") < b.degree("k"):
        a, b = b, a
    while True:
        if b.is_zero():
            return a.primitive()
        if b.degree("k") == 0:
            return Polynomial.const(1)
        r = prem_k(a, b)
        if r.is_zero():
            return poly_divexact_by_npoly(b, content_in_n(b)).primitive()
        r = poly_divexact_by_npoly(r, content_in_n(r)).primitive()
        a, b = b, r


def poly_divexact_by_npoly(p: Polynomial, d: Polynomial) -> Polynomial:
    """Divide every k-slice of p by the n-polynomial d, exactly."""
    if d.is_constant():
        return p * (1 / d.constant_value())
    out = Polynomial()
    kv = Polynomial.variable("k")
    for j in range(p.degree("k") + 1):
        cj = p.coeff_of_k_power(j)
        if cj.is_zero():
            continue
        qj, rj = _divmod_univar_n(cj, d)
        if not rj.is_zero():
            raise ValueError("inexact content division")
        out = out + qj * kv ** j
    return out


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Quotient of polynomials in Q(n, k), kept coprime and sign-normalized."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, *, _normalized=False):
        num = _as_poly(num)
        den = _as_poly(den) if den is not None else Polynomial.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            if num.is_zero():
                den = Polynomial.const(1)
            else:
                g = poly_gcd(num, den)
                if g.degree() > 0 or g.constant_value() != 1:
                    num = poly_divexact(num, g)
                    den = poly_divexact(den, g)
                # normalize scale: make the denominator primitive with lc > 0
                c = den.content()
                if den.leading_coeff() < 0:
                    c = -c
                num = num * (1 / c)
                den = den * (1 / c)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c: Scalar) -> "RationalFunction":
        return cls(Polynomial.const(c), Polynomial.const(1), _normalized=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value() / self.den.constant_value()

    def __add__(self, other) -> "RationalFunction":
        other = _as_rat(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_as_rat(other))

    def __rsub__(self, other) -> "RationalFunction":
        return _as_rat(other) + (-self)

    def __mul__(self, other) -> "RationalFunction":
        other = _as_rat(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _as_rat(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return _as_rat(other) / self

    def __pow__(self, e: int) -> "RationalFunction":
        if e < 0:
            return RationalFunction(self.den, self.num) ** (-e)
        return RationalFunction(self.num ** e, self.den ** e)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Polynomial)):
            other = _as_rat(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self, var: str) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative(var) * self.den - self.num * self.den.derivative(var),
            self.den * self.den,
        )

    def substitute(self, var: str, target: Polynomial) -> "RationalFunction":
        return RationalFunction(self.num.substitute(var, target), self.den.substitute(var, target))

    def shift(self, dn: Scalar = 0, dk: Scalar = 0) -> "RationalFunction":
        return RationalFunction(self.num.shift(dn, dk), self.den.shift(dn, dk))

    def reflect_k(self) -> "RationalFunction":
        return RationalFunction(self.num.reflect_k(), self.den.reflect_k())

    def eval(self, n_val, k_val):
        den = self.den.eval(n_val, k_val)
        if den == 0:
            raise ZeroDivisionError("pole of rational function")
        num = self.num.eval(n_val, k_val)
        # mixed Fraction/float division is not defined by either side
        if isinstance(num, Fraction) and not isinstance(den, Fraction):
            num = type(den)(num.numerator) / num.denominator
        elif isinstance(den, Fraction) and not isinstance(num, Fraction):
            den = type(num)(den.numerator) / den.denominator
        return num / den

    def __repr__(self) -> str:
        if self.den == Polynomial.const(1):
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _as_rat(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction.const(x)
    if isinstance(x, Polynomial):
        return RationalFunction(x, Polynomial.const(1), _normalized=True)
    raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")


def _divmod_univar_n(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Univariate division in n over Q."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    da, db = a.degree("n"), b.degree("n")
    ca = [Fraction(0)] * (da + 1)
    for (en, ek), c in a.terms.items():
        if ek:
            raise ValueError("not univariate in n")
        ca[en] += c
    cb = [Fraction(0)] * (db + 1)
    for (en, ek), c in b.terms.items():
        if ek:
            raise ValueError("not univariate in n")
        cb[en] += c
    q = [Fraction(0)] * max(0, da - db + 1)
    r = ca[:]
    while len(r) - 1 >= db:
        if not r[-1]:
            r.pop()
            continue
        f = r[-1] / cb[-1]
        off = len(r) - 1 - db
        q[off] = f
        for i, c in enumerate(cb):
            r[off + i] -= f * c
        r.pop()
    qp = Polynomial({(i, 0): c for i, c in enumerate(q) if c})
    rp = Polynomial({(i, 0): c for i, c in enumerate(r) if c})
    return qp, rp


def poly_divexact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact division a / b in Q[n, k]; raises if the division is not exact.

    Long division in k; when the division is exact, every coefficient step is
    an exact division in Q[n], so no rational functions ever appear.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if b.is_constant():
        return a * (1 / b.constant_value())
    if a.is_zero():
        return a
    if b.degree("k") == 0:
        return poly_divexact_by_npoly(a, b)
    if a.degree("k") == 0 and b.degree("k") == 0:
        q, r = _divmod_univar_n(a, b)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q
    db = b.degree("k")
    lcb = b.coeff_of_k_power(db)
    kv = Polynomial.variable("k")
    q = Polynomial()
    r = a
    while not r.is_zero() and r.degree("k") >= db:
        dr = r.degree("k")
        lcr = r.coeff_of_k_power(dr)
        qc, rem = _divmod_univar_n(lcr, lcb)
        if not rem.is_zero():
            raise ValueError("inexact polynomial division")
        mono = qc * kv ** (dr - db)
        q = q + mono
        r = r - b * mono
    if not r.is_zero():
        raise ValueError("inexact polynomial division")
    return q


# ---------------------------------------------------------------------------
# Polynomials in k over the field Q(n)
# ---------------------------------------------------------------------------


class KPoly:
    """Dense polynomial in k with coefficients in Q(n).

    This is the working representation for the telescoping algorithms, where
    the natural coefficient field is Q(n).  Coefficients are RationalFunction
    values whose polynomials involve n only.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RationalFunction]):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def zero(cls) -> "KPoly":
        return cls([])

    @classmethod
    def one(cls) -> "KPoly":
        return cls([RationalFunction.const(1)])

    @classmethod
    def from_polynomial(cls, p: Polynomial, den: Polynomial | None = None) -> "KPoly":
        den_rf = RationalFunction(Polynomial.const(1), den) if den is not None else None
        cs = []
        for j in range(p.degree("k") + 1):
            cj = RationalFunction(p.coeff_of_k_power(j))
            if den_rf is not None:
                cj = cj * den_rf
            cs.append(cj)
        return cls(cs)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> RationalFunction:
        if self.is_zero():
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def coeff(self, j: int) -> RationalFunction:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return RationalFunction.const(0)

    def __add__(self, other: "KPoly") -> "KPoly":
        m = max(len(self.coeffs), len(other.coeffs))
        return KPoly([self.coeff(i) + other.coeff(i) for i in range(m)])

    def __sub__(self, other: "KPoly") -> "KPoly":
        m = max(len(self.coeffs), len(other.coeffs))
        return KPoly([self.coeff(i) - other.coeff(i) for i in range(m)])

    def __neg__(self) -> "KPoly":
        return KPoly([-c for c in self.coeffs])

    def __mul__(self, other: "KPoly") -> "KPoly":
        if self.is_zero() or other.is_zero():
            return KPoly.zero()
        out = [RationalFunction.const(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return KPoly(out)

    def scale(self, c: RationalFunction) -> "KPoly":
        return KPoly([a * c for a in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, KPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def divmod(self, other: "KPoly") -> tuple["KPoly", "KPoly"]:
        """Euclidean division over the field Q(n)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q = [RationalFunction.const(0)] * max(0, self.degree() - other.degree() + 1)
        rem = list(self.coeffs)
        d = other.degree()
        lb = other.lc()
        while len(rem) - 1 >= d and rem:
            if rem[-1].is_zero():
                rem.pop()
                continue
            f = rem[-1] / lb
            off = len(rem) - 1 - d
            q[off] = f
            for i, c in enumerate(other.coeffs):
                rem[off + i] = rem[off + i] - f * c
            rem.pop()
        return KPoly(q), KPoly(rem)

    def monic(self) -> "KPoly":
        if self.is_zero():
            return self
        inv = RationalFunction.const(1) / self.lc()
        return self.scale(inv)

    def gcd(self, other: "KPoly") -> "KPoly":
        """Monic gcd via the Euclidean remainder sequence over Q(n)."""
        a, b = self, other
        while not b.is_zero():
            _, r = a.divmod(b)
            a, b = b, r
        if a.is_zero():
            return a
        return a.monic()

    def shift_k(self, j: Scalar) -> "KPoly":
        """Substitute k -> k + j."""
        if not self.coeffs or j == 0:
            return self
        d = self.degree()
        out = [RationalFunction.const(0)] * (d + 1)
        jf = Fraction(j)
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            # (k + j)^i
            for t in range(i + 1):
                out[t] = out[t] + c * (comb(i, t) * jf ** (i - t))
        return KPoly(out)

    def clear_denominators(self) -> tuple[Polynomial, Polynomial]:
        """Return (P, D) with self = P / D, P in Q[n, k], D in Q[n]."""
        den = Polynomial.const(1)
        for c in self.coeffs:
            g = poly_gcd(den, c.den)
            den = poly_divexact(den, g) * c.den
        num = Polynomial()
        kvar = Polynomial.variable("k")
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            part = c.num * poly_divexact(den, c.den)
            num = num + part * kvar ** i
        return num, den

    def to_rational(self) -> RationalFunction:
        num, den = self.clear_denominators()
        return RationalFunction(num, den)

    def eval_k(self, value) -> RationalFunction:
        """Evaluate at a rational k, leaving a function of n."""
        out = RationalFunction.const(0)
        p = Fraction(1)
        v = Fraction(value)
        for c in self.coeffs:
            out = out + c * p
            p *= v
        return out

    def __repr__(self) -> str:
        return " + ".join(f"({c!r})*k^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero()) or "0"


# ---------------------------------------------------------------------------
# Operation dispatcher used by the public API
# ---------------------------------------------------------------------------


def poly_arith(lhs: Polynomial, rhs: Polynomial, op: str):
    """Arithmetic on polynomials: add/sub/mul in Q[n,k]; divrem/gcd in Q(n)[k].

    divrem returns a (quotient, remainder) pair of KPoly values with
    deg_k(remainder) < deg_k(divisor); gcd returns the primitive generator of
    the gcd ideal (monic in k up to a unit of Q(n)).
    """
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "divrem":
        if rhs.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q, r = KPoly.from_polynomial(lhs).divmod(KPoly.from_polynomial(rhs))
        return q, r
    if op == "gcd":
        return poly_gcd(lhs, rhs)
    raise ValueError(f"unknown op {op!r}")


def ratfunc_normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Normalize num/den to the canonical coprime, sign-fixed representative."""
    return RationalFunction(num, den)
