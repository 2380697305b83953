"""Structured hypergeometric terms.

A term is a product

    prefactor(n,k) * (-1)^(sn*n + sk*k) * e^(i*pi*phi*v) * prod base^(en*n+ek*k)
                   * prod Gamma(cn*n + ck*k + sum_i a_i*p_i + offset)^exponent
                   * prod sin(pi*(cn*n + ck*k + offset))^exponent * scale

with exact rational data everywhere; `scale` is a constant-expression multiplier
(powers of pi enter through Euler reflection, sqrt(2) through one boundary
term).  Factorials and binomials are normalized to Gamma factors when terms
are built, so shift quotients and logarithmic derivatives have one code path.

Supported operations: exact shift quotients in n and k, certified numeric
evaluation (including Gamma at negative non-integer arguments via the
reflection formula), the k -> -k-1 reflection with Euler-reflection rewriting
of Gamma factors that would become eventually-negative, and logarithmic
derivatives with respect to n, k, or a named parameter at the origin.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor

from mpmath import mp, mpc, mpf

from .constants import PI, ConstantExpr, const_expr_eval
from .exact import Polynomial, RationalFunction
from .special import (
    MAX_DERIVATIVE_ORDER,
    LogGammaLadder,
    Precision,
    PolygammaLadder,
    complete_bell,
    log_gamma,
    polygamma,
)

ONE_EXPR = ConstantExpr.scalar(1)


@dataclass(frozen=True)
class GammaFactor:
    """Gamma(coeff_n*n + coeff_k*k + sum params + offset) ** exponent."""

    coeff_n: int
    coeff_k: int
    params: tuple[tuple[str, int], ...]
    offset: Fraction
    exponent: int

    def arg_poly(self) -> Polynomial:
        return (
            Polynomial.monomial(self.coeff_n, 1, 0)
            + Polynomial.monomial(self.coeff_k, 0, 1)
            + Polynomial.const(self.offset)
        )

    def arg_at(self, n_val, k_val):
        return self.coeff_n * n_val + self.coeff_k * k_val + self.offset

    def param_coeff(self, name: str) -> int:
        for p, c in self.params:
            if p == name:
                return c
        return 0


@dataclass(frozen=True)
class SinFactor:
    """sin(pi * (coeff_n*n + coeff_k*k + offset)) ** exponent."""

    coeff_n: int
    coeff_k: int
    offset: Fraction
    exponent: int

    def arg_at(self, n_val, k_val):
        return self.coeff_n * n_val + self.coeff_k * k_val + self.offset


@dataclass
class TermValue:
    """A complex value with a certified absolute error bound."""

    value: mpc
    error_bound: mpf


class HyperTerm:
    """Immutable structured hypergeometric term in (n, k) with parameters."""

    __slots__ = (
        "prefactor",
        "sign_n",
        "sign_k",
        "phase",
        "geometric",
        "gammas",
        "sins",
        "scale",
        "domain",
        "params",
    )

    def __init__(
        self,
        prefactor: RationalFunction | Polynomial | int | Fraction = 1,
        *,
        sign_n: int = 0,
        sign_k: int = 0,
        phase: tuple[str, Fraction] | None = None,
        geometric=(),
        gammas=(),
        sins=(),
        scale: ConstantExpr = ONE_EXPR,
        domain: tuple[int, int] = (0, 0),
        params: tuple[str, ...] = (),
    ):
        if isinstance(prefactor, (int, Fraction, Polynomial)):
            prefactor = RationalFunction(
                prefactor if isinstance(prefactor, Polynomial) else Polynomial.const(prefactor)
            )
        extra_sign = Fraction(1)

        # geometric: positive bases, merged by base
        geo: dict[Fraction, tuple[int, int]] = {}
        sn, sk = int(sign_n) % 2, int(sign_k) % 2
        for base, en, ek in geometric:
            base = Fraction(base)
            if base == 0:
                raise ValueError("zero geometric base")
            if base < 0:
                base = -base
                sn = (sn + en) % 2
                sk = (sk + ek) % 2
            if en == 0 and ek == 0:
                continue
            cen, cek = geo.get(base, (0, 0))
            geo[base] = (cen + en, cek + ek)
        geometric_t = tuple(
            (b, en, ek) for b, (en, ek) in sorted(geo.items()) if (en or ek) and b != 1
        )

        # gammas: merge identical arguments
        gm: dict[tuple, int] = {}
        for g in gammas:
            if not isinstance(g, GammaFactor):
                g = GammaFactor(*g)
            key = (g.coeff_n, g.coeff_k, tuple(sorted(g.params)), Fraction(g.offset))
            gm[key] = gm.get(key, 0) + g.exponent
        gammas_t = tuple(
            GammaFactor(cn, ck, ps, off, e)
            for (cn, ck, ps, off), e in sorted(gm.items(), key=lambda t: (t[0][0], t[0][1], str(t[0][2]), t[0][3]))
            if e
        )

        # sins: canonicalize argument (leading sign, offset mod 1), then merge
        sn_map: dict[tuple, int] = {}
        zero_term = False
        for s in sins:
            if not isinstance(s, SinFactor):
                s = SinFactor(*s)
            cn, ck, off, e = s.coeff_n, s.coeff_k, Fraction(s.offset), s.exponent
            if not e:
                continue
            if cn < 0 or (cn == 0 and ck < 0):
                # sin(-t) = -sin(t)
                cn, ck, off = -cn, -ck, -off
                extra_sign *= Fraction(-1) ** e
            m = floor(off)
            if m:
                # sin(pi(t+m)) = (-1)^m sin(pi t)
                off -= m
                extra_sign *= Fraction(-1) ** (m * e)
            if cn == 0 and ck == 0:
                if off == 0:
                    if e > 0:
                        zero_term = True
                        continue
                    raise ValueError("sin factor pole: sin(0) to a negative power")
                if off == Fraction(1, 2):
                    continue  # sin(pi/2) = 1
            key = (cn, ck, off)
            sn_map[key] = sn_map.get(key, 0) + e
        sins_t = tuple(
            SinFactor(cn, ck, off, e) for (cn, ck, off), e in sorted(sn_map.items()) if e
        )

        if phase is not None:
            var, phi = phase
            if var == "x":
                var = "k"
            phi = Fraction(phi)
            phase = None if phi == 0 else (var, phi)

        if zero_term:
            prefactor = RationalFunction(Polynomial.const(0))
        self.prefactor = prefactor * extra_sign if extra_sign != 1 else prefactor
        self.sign_n = sn
        self.sign_k = sk
        self.phase = phase
        self.geometric = geometric_t
        self.gammas = gammas_t
        self.sins = sins_t
        self.scale = scale if isinstance(scale, ConstantExpr) else ConstantExpr.scalar(scale)
        self.domain = (int(domain[0]), int(domain[1]))
        self.params = tuple(sorted(params))
        for g in self.gammas:
            for p, _ in g.params:
                if p not in self.params:
                    raise ValueError(f"gamma factor uses undeclared parameter {p!r}")

    # -- basic algebra ---------------------------------------------------------

    def __mul__(self, other: "HyperTerm") -> "HyperTerm":
        if not isinstance(other, HyperTerm):
            return NotImplemented
        if self.phase and other.phase and self.phase[0] != other.phase[0]:
            raise ValueError("cannot merge phases on different variables")
        phase = None
        if self.phase or other.phase:
            var = (self.phase or other.phase)[0]
            phi = (self.phase[1] if self.phase else 0) + (other.phase[1] if other.phase else 0)
            phase = (var, Fraction(phi))
        return HyperTerm(
            self.prefactor * other.prefactor,
            sign_n=self.sign_n ^ other.sign_n,
            sign_k=self.sign_k ^ other.sign_k,
            phase=phase,
            geometric=self.geometric + other.geometric,
            gammas=self.gammas + other.gammas,
            sins=self.sins + other.sins,
            scale=self.scale * other.scale,
            domain=(max(self.domain[0], other.domain[0]), max(self.domain[1], other.domain[1])),
            params=tuple(set(self.params) | set(other.params)),
        )

    def inverse(self) -> "HyperTerm":
        if self.prefactor.is_zero():
            raise ZeroDivisionError("inverse of zero term")
        scale_terms = self.scale.terms
        if len(scale_terms) != 1:
            raise ValueError("inverse supported only for monomial scales")
        c, factors = scale_terms[0]
        inv_scale = ConstantExpr([(1 / c, tuple((a, -e) for a, e in factors))])
        return HyperTerm(
            RationalFunction(self.prefactor.den, self.prefactor.num),
            sign_n=self.sign_n,
            sign_k=self.sign_k,
            phase=(self.phase[0], -self.phase[1]) if self.phase else None,
            geometric=tuple((b, -en, -ek) for b, en, ek in self.geometric),
            gammas=tuple(
                GammaFactor(g.coeff_n, g.coeff_k, g.params, g.offset, -g.exponent)
                for g in self.gammas
            ),
            sins=tuple(SinFactor(s.coeff_n, s.coeff_k, s.offset, -s.exponent) for s in self.sins),
            scale=inv_scale,
            domain=self.domain,
            params=self.params,
        )

    def scaled(self, factor) -> "HyperTerm":
        """Multiply by a rational function, Fraction, or constant expression."""
        if isinstance(factor, ConstantExpr):
            return HyperTerm(
                self.prefactor, sign_n=self.sign_n, sign_k=self.sign_k, phase=self.phase,
                geometric=self.geometric, gammas=self.gammas, sins=self.sins,
                scale=self.scale * factor, domain=self.domain, params=self.params,
            )
        pref = self.prefactor * factor
        return HyperTerm(
            pref, sign_n=self.sign_n, sign_k=self.sign_k, phase=self.phase,
            geometric=self.geometric, gammas=self.gammas, sins=self.sins,
            scale=self.scale, domain=self.domain, params=self.params,
        )

    def specialize_params(self) -> "HyperTerm":
        """Evaluate all parameters at 0 (their declared evaluation point)."""
        if not self.params:
            return self
        return HyperTerm(
            self.prefactor, sign_n=self.sign_n, sign_k=self.sign_k, phase=self.phase,
            geometric=self.geometric,
            gammas=tuple(
                GammaFactor(g.coeff_n, g.coeff_k, (), g.offset, g.exponent) for g in self.gammas
            ),
            sins=self.sins, scale=self.scale, domain=self.domain, params=(),
        )

    def canonical_key(self):
        return (
            self.prefactor.num, self.prefactor.den, self.sign_n, self.sign_k, self.phase,
            self.geometric, self.gammas, self.sins, self.scale, self.domain, self.params,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, HyperTerm):
            return NotImplemented
        return self.canonical_key() == other.canonical_key()

    def __repr__(self) -> str:
        bits = [f"pref=({self.prefactor!r})"]
        if self.sign_n or self.sign_k:
            bits.append(f"sign=(-1)^({self.sign_n}n+{self.sign_k}k)")
        if self.phase:
            bits.append(f"phase=e^(i*pi*{self.phase[1]}*{self.phase[0]})")
        for b, en, ek in self.geometric:
            bits.append(f"({b})^({en}n+{ek}k)")
        for g in self.gammas:
            bits.append(f"Gamma({g.coeff_n}n+{g.coeff_k}k+{g.offset}{_param_str(g.params)})^{g.exponent}")
        for s in self.sins:
            bits.append(f"sin(pi({s.coeff_n}n+{s.coeff_k}k+{s.offset}))^{s.exponent}")
        return "HyperTerm[" + " * ".join(bits) + "]"


def _param_str(params) -> str:
    return "".join(f"+{c}*{p}" for p, c in params)


# ---------------------------------------------------------------------------
# Schema (de)serialization
# ---------------------------------------------------------------------------


def _poly_to_json(p: Polynomial) -> list:
    return [
        [en, ek, str(c.numerator), str(c.denominator)]
        for (en, ek), c in sorted(p.terms.items())
    ]


def _poly_from_json(rows) -> Polynomial:
    out = Polynomial()
    for en, ek, ps, qs in rows:
        out = out + Polynomial.monomial(Fraction(int(ps), int(qs)), int(en), int(ek))
    return out


def serialize_term(t: HyperTerm) -> dict:
    doc = {
        "prefactor": {"num": _poly_to_json(t.prefactor.num), "den": _poly_to_json(t.prefactor.den)},
        "sign": {"n": t.sign_n, "k": t.sign_k},
        "phase": (
            {"var": t.phase[0], "p": str(t.phase[1].numerator), "q": str(t.phase[1].denominator)}
            if t.phase
            else None
        ),
        "geometric": [
            {"base": {"p": str(b.numerator), "q": str(b.denominator)}, "exp_n": en, "exp_k": ek}
            for b, en, ek in t.geometric
        ],
        "gammas": [
            {
                "cn": g.coeff_n,
                "ck": g.coeff_k,
                "params": {p: c for p, c in g.params},
                "offset": {"p": str(g.offset.numerator), "q": str(g.offset.denominator)},
                "exp": g.exponent,
            }
            for g in t.gammas
        ],
        "domain": {"n0": t.domain[0], "k0": t.domain[1]},
        "params": list(t.params),
    }
    if t.sins:
        doc["sins"] = [
            {
                "cn": s.coeff_n,
                "ck": s.coeff_k,
                "offset": {"p": str(s.offset.numerator), "q": str(s.offset.denominator)},
                "exp": s.exponent,
            }
            for s in t.sins
        ]
    if not t.scale.is_zero() and t.scale != ONE_EXPR:
        doc["scale"] = t.scale.to_json()
    return doc


_ALLOWED_KEYS = {"prefactor", "sign", "phase", "geometric", "gammas", "domain", "params", "sins", "scale"}


def parse_term(doc) -> HyperTerm:
    """Build a term from its schema document (dict or JSON text)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    unknown = set(doc) - _ALLOWED_KEYS
    if unknown:
        raise ValueError(f"unknown field(s) in term document: {sorted(unknown)}")
    try:
        num = _poly_from_json(doc["prefactor"]["num"])
        den = _poly_from_json(doc["prefactor"]["den"])
        phase = None
        if doc.get("phase"):
            ph = doc["phase"]
            phase = (ph["var"], Fraction(int(ph["p"]), int(ph["q"])))
        geometric = [
            (Fraction(int(g["base"]["p"]), int(g["base"]["q"])), int(g["exp_n"]), int(g["exp_k"]))
            for g in doc.get("geometric", [])
        ]
        gammas = [
            GammaFactor(
                int(g["cn"]),
                int(g["ck"]),
                tuple(sorted((p, int(c)) for p, c in g.get("params", {}).items())),
                Fraction(int(g["offset"]["p"]), int(g["offset"]["q"])),
                int(g["exp"]),
            )
            for g in doc.get("gammas", [])
        ]
        sins = [
            SinFactor(
                int(s["cn"]),
                int(s["ck"]),
                Fraction(int(s["offset"]["p"]), int(s["offset"]["q"])),
                int(s["exp"]),
            )
            for s in doc.get("sins", [])
        ]
        scale = ConstantExpr.from_json(doc["scale"]) if "scale" in doc else ONE_EXPR
        return HyperTerm(
            RationalFunction(num, den),
            sign_n=int(doc["sign"]["n"]),
            sign_k=int(doc["sign"]["k"]),
            phase=phase,
            geometric=geometric,
            gammas=gammas,
            sins=sins,
            scale=scale,
            domain=(int(doc["domain"]["n0"]), int(doc["domain"]["k0"])),
            params=tuple(doc.get("params", [])),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed term document: {exc}") from exc


# ---------------------------------------------------------------------------
# Shift quotients
# ---------------------------------------------------------------------------


def shift_quotient(t: HyperTerm, var: str) -> RationalFunction:
    """Exact q(n,k) with t(shifted by +1 in var) = q * t, params at the origin."""
    if var not in ("n", "k"):
        raise ValueError("shift variable must be n or k")
    t = t.specialize_params()
    q = t.prefactor.shift(dn=1 if var == "n" else 0, dk=1 if var == "k" else 0) / t.prefactor
    for g in t.gammas:
        c = g.coeff_n if var == "n" else g.coeff_k
        if c == 0:
            continue
        arg = g.arg_poly()
        if c > 0:
            prod = RationalFunction(Polynomial.const(1))
            for i in range(c):
                prod = prod * RationalFunction(arg + Polynomial.const(i))
        else:
            prod = RationalFunction(Polynomial.const(1))
            for i in range(1, -c + 1):
                prod = prod / RationalFunction(arg - Polynomial.const(i))
        q = q * prod ** g.exponent if g.exponent >= 0 else q / prod ** (-g.exponent)
    for base, en, ek in t.geometric:
        e = en if var == "n" else ek
        if e:
            q = q * Fraction(base) ** e
    s = t.sign_n if var == "n" else t.sign_k
    if s:
        q = q * (-1)
    for sf in t.sins:
        c = sf.coeff_n if var == "n" else sf.coeff_k
        if c % 2:
            q = q * Fraction(-1) ** sf.exponent
    if t.phase and (t.phase[0] == var or (t.phase[0] == "x" and var == "k")):
        phi = t.phase[1]
        if phi.denominator != 1:
            raise ValueError("phase shift is irrational: non-integer phase coefficient")
        if phi.numerator % 2:
            q = q * (-1)
    return q


# ---------------------------------------------------------------------------
# Numeric evaluation
# ---------------------------------------------------------------------------


def _is_int(x) -> bool:
    if isinstance(x, int):
        return True
    if isinstance(x, Fraction):
        return x.denominator == 1
    return False


def _log_gamma_signed(x, prec: Precision):
    """(log|Gamma(x)|, sign) for real x, x not a nonpositive integer."""
    if x > 0:
        return log_gamma(x, prec), 1
    # reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    xf = mpf(x.numerator) / x.denominator if isinstance(x, (int, Fraction)) else mpf(x)
    s = mp.sinpi(xf)
    if s == 0:
        raise ValueError("Gamma evaluated at a nonpositive integer")
    lg = mp.log(mp.pi) - mp.log(abs(s)) - log_gamma(1 - x, prec)
    return lg, (1 if s > 0 else -1)


def eval_term(t: HyperTerm, n_val, k_val, digits: int = 25) -> TermValue:
    """Certified evaluation at a point of the term's domain.

    |value - true| <= error_bound <= 10^(-digits) * max(1, |true value|).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    t = t.specialize_params()
    n0, k0 = t.domain
    if n_val < n0 or k_val < k0:
        raise ValueError(f"point ({n_val},{k_val}) outside domain n>={n0}, k>={k0}")
    wp = digits + 20
    prec = Precision(digits + 10, 10)
    with mp.workdps(wp):
        exact_point = isinstance(n_val, (int, Fraction)) and isinstance(k_val, (int, Fraction))
        # zero detection: prefactor zero, or reciprocal Gamma at a pole
        pref = t.prefactor.eval(n_val, k_val) if exact_point else None
        if exact_point and pref == 0:
            return TermValue(mpc(0), mpf(0))
        for g in t.gammas:
            if g.exponent < 0:
                arg = g.arg_at(n_val, k_val)
                if _is_int(arg) and arg <= 0:
                    return TermValue(mpc(0), mpf(0))
        if (
            exact_point
            and not t.gammas
            and not t.geometric
            and not t.sins
            and t.phase is None
            and t.scale == ONE_EXPR
        ):
            # purely rational value: evaluate exactly
            v = Fraction(pref)
            if t.sign_n and int(n_val) % 2:
                v = -v
            if t.sign_k and int(k_val) % 2:
                v = -v
            val = mpf(v.numerator) / v.denominator
            exactly_representable = v.denominator == 1 and abs(v.numerator) < 1 << 60
            return TermValue(mpc(val), mpf(0) if exactly_representable else abs(val) * mpf(10) ** (-(wp - 3)))
        log_abs = mpf(0)
        sign = 1
        ops = 0
        for g in t.gammas:
            arg = g.arg_at(n_val, k_val)
            if _is_int(arg) and arg <= 0:
                raise ValueError(f"Gamma pole at argument {arg}")
            lg, s = _log_gamma_signed(arg, prec)
            log_abs += g.exponent * lg
            if s < 0 and g.exponent % 2:
                sign = -sign
            ops += abs(g.exponent) + 1
        for base, en, ek in t.geometric:
            e = en * n_val + ek * k_val
            ef = mpf(e.numerator) / e.denominator if isinstance(e, Fraction) else mpf(e)
            log_abs += ef * (mp.log(mpf(base.numerator)) - mp.log(mpf(base.denominator)))
            ops += 2
        for sf in t.sins:
            arg = sf.arg_at(n_val, k_val)
            av = mpf(arg.numerator) / arg.denominator if isinstance(arg, Fraction) else mpf(arg)
            sv = mp.sinpi(av)
            if sv == 0:
                if sf.exponent > 0:
                    return TermValue(mpc(0), mpf(0))
                raise ValueError("sin-factor pole")
            log_abs += sf.exponent * mp.log(abs(sv))
            if sv < 0 and sf.exponent % 2:
                sign = -sign
            ops += 2
        # prefactor
        if exact_point:
            if pref == 0:
                return TermValue(mpc(0), mpf(0))
            pn, pd = Fraction(pref).numerator, Fraction(pref).denominator
            log_abs += mp.log(abs(mpf(pn))) - mp.log(mpf(pd))
            if pn < 0:
                sign = -sign
        else:
            pv = t.prefactor.eval(mpf(n_val), mpf(k_val))
            if pv == 0:
                return TermValue(mpc(0), mpf(0))
            log_abs += mp.log(abs(pv))
            if pv < 0:
                sign = -sign
        ops += 4
        # exact sign factors
        if t.sign_n and not _is_int(n_val):
            raise ValueError("(-1)^n at a non-integer point")
        if t.sign_k and not _is_int(k_val):
            raise ValueError("(-1)^k at a non-integer point")
        if t.sign_n and int(n_val) % 2:
            sign = -sign
        if t.sign_k and int(k_val) % 2:
            sign = -sign
        # phase
        phase_val = mpc(1)
        if t.phase:
            var, phi = t.phase
            x = {"n": n_val, "k": k_val, "x": k_val}.get(var)
            if x is None:
                x = 0  # parameter phases sit at the origin
            px = phi * x if isinstance(x, (int, Fraction)) else None
            if px is not None:
                px = Fraction(px)
                px -= 2 * (px.numerator // (2 * px.denominator))
                phase_val = mp.expjpi(mpf(px.numerator) / px.denominator)
            else:
                phase_val = mp.expjpi(mpf(phi.numerator) / phi.denominator * mpf(x))
            ops += 2
        scale_val = mpc(1)
        scale_err_rel = mpf(0)
        if t.scale != ONE_EXPR:
            sv = const_expr_eval(t.scale, Precision(digits + 10, 10))
            scale_val = sv.value
            if abs(sv.value) == 0:
                return TermValue(mpc(0), mpf(0))
            scale_err_rel = sv.error_bound / abs(sv.value)
        value = sign * mp.exp(log_abs) * phase_val * scale_val
        # every log/Gamma call is certified to digits+10; exp turns the summed
        # absolute log error into a relative one
        log_err = (ops + 2) * mpf(10) ** (-(digits + 10))
        err = abs(value) * (2 * log_err + 2 * scale_err_rel) + mpf(10) ** (-(wp - 3))
        return TermValue(mpc(value), err)


# ---------------------------------------------------------------------------
# Logarithmic derivatives
# ---------------------------------------------------------------------------


def _log_prefactor_derivs(pref: RationalFunction, var: str, order: int) -> list[RationalFunction]:
    """Exact j-th derivatives of log(prefactor) for j = 1..order."""
    out = []
    if order >= 1:
        d = RationalFunction(pref.num.derivative(var), pref.num) - RationalFunction(
            pref.den.derivative(var), pref.den
        )
        out.append(d)
        for _ in range(order - 1):
            d = d.derivative(var)
            out.append(d)
    return out


def param_log_derivative(t: HyperTerm, var: str, order: int):
    """Procedure returning [L', ..., L^(order)] of L = log t at a point.

    var is "n", "k", or a declared parameter name; parameters are evaluated at
    the origin.  The returned callable takes (n, k, prec) and yields exact
    polygamma-based values.
    """
    if not 1 <= order <= MAX_DERIVATIVE_ORDER:
        raise ValueError(f"order must be 1..{MAX_DERIVATIVE_ORDER}")
    is_param = var not in ("n", "k")
    if is_param and var not in t.params:
        raise ValueError(f"unknown parameter {var!r}")
    if t.sins:
        raise ValueError("derivatives across sin factors are not supported")
    if not is_param:
        s = t.sign_n if var == "n" else t.sign_k
        if s:
            raise ValueError("cannot differentiate an exact sign factor; use a phase")
    pref_derivs = [] if is_param else _log_prefactor_derivs(t.prefactor, var, order)

    gamma_coeffs = []
    for g in t.gammas:
        c = g.param_coeff(var) if is_param else (g.coeff_n if var == "n" else g.coeff_k)
        if c:
            gamma_coeffs.append((g, c))

    phase_var = t.phase[0] if t.phase else None
    if phase_var == "x":
        phase_var = "k"

    def at(n_val, k_val, prec: Precision):
        with mp.workdps(prec.work_digits + 10):
            out = []
            for j in range(1, order + 1):
                acc = mpc(0)
                for g, c in gamma_coeffs:
                    arg = g.arg_at(n_val, k_val)
                    if not arg > 0:
                        raise ValueError("polygamma at a nonpositive argument")
                    acc += g.exponent * (mpf(c) ** j) * polygamma(j - 1, arg, prec)
                if not is_param and j - 1 < len(pref_derivs):
                    v = pref_derivs[j - 1].eval(Fraction(n_val), Fraction(k_val))
                    acc += mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else v
                if j == 1 and not is_param:
                    for base, en, ek in t.geometric:
                        e = en if var == "n" else ek
                        if e:
                            acc += e * (mp.log(mpf(base.numerator)) - mp.log(mpf(base.denominator)))
                if j == 1 and t.phase and phase_var == var:
                    acc += mpc(0, 1) * mp.pi * mpf(t.phase[1].numerator) / t.phase[1].denominator
                out.append(acc)
            return out

    return at


def derivative_value(t: HyperTerm, var: str, order: int, n_val, k_val, digits: int = 25) -> TermValue:
    """(d/d var)^order of the term at a point, via Bell-polynomial composition."""
    base = eval_term(t, n_val, k_val, digits + 6)
    if order == 0:
        return base
    lders = param_log_derivative(t, var, order)(n_val, k_val, Precision(digits + 6, 12))
    bell = complete_bell(lders)
    val = base.value * bell.values[order]
    # crude but safe magnification of the certified pieces
    mag = max(mpf(1), abs(bell.values[order]))
    err = base.error_bound * mag * 2 + abs(base.value) * mpf(10) ** (-(digits + 4))
    return TermValue(val, err)


# ---------------------------------------------------------------------------
# Reflection k -> -k-1
# ---------------------------------------------------------------------------


def _eventually_positive(cn: int, ck: int, off: Fraction, domain: tuple[int, int]) -> bool:
    """True when cn*n + ck*k + off > 0 across the domain n>=n0, k>=k0."""
    n0, k0 = domain
    if ck < 0 or cn < 0:
        return False
    return cn * n0 + ck * k0 + off > 0


def reflect_k(t: HyperTerm) -> HyperTerm:
    """The term t(n, -k-1), with Gamma factors that would become negative
    rewritten through Gamma(x) = pi / (sin(pi x) Gamma(1-x))."""
    t0 = t.specialize_params()
    pref = t0.prefactor.reflect_k()
    extra = Fraction(1)
    if t0.sign_k:
        extra = -extra  # (-1)^(s(-k-1)) = (-1)^(sk) * (-1)^s
    phase = t0.phase
    if phase and phase[0] in ("k", "x"):
        phi = phase[1]
        if phi.denominator != 1:
            raise ValueError("cannot reflect a non-integer phase")
        if phi.numerator % 2:
            extra = -extra  # e^(-i pi phi) at integer phi
        phase = ("k", -phi)
    geometric = []
    for base, en, ek in t0.geometric:
        geometric.append((base, en, -ek))
        extra *= base ** (-ek)
    gammas = []
    sins = [SinFactor(s.coeff_n, -s.coeff_k, s.offset - s.coeff_k, s.exponent) for s in t0.sins]
    scale = t0.scale
    new_domain = (t0.domain[0], 0)
    for g in t0.gammas:
        cn, ck, off, e = g.coeff_n, -g.coeff_k, g.offset - g.coeff_k, g.exponent
        if _eventually_positive(cn, ck, off, new_domain):
            gammas.append(GammaFactor(cn, ck, (), off, e))
            continue
        # Gamma(x)^e = pi^e sin(pi x)^(-e) Gamma(1-x)^(-e)
        gammas.append(GammaFactor(-cn, -ck, (), 1 - off, -e))
        sins.append(SinFactor(cn, ck, off, -e))
        scale = scale * PI ** e
    return HyperTerm(
        pref * extra,
        sign_n=t0.sign_n,
        sign_k=t0.sign_k,
        phase=phase,
        geometric=geometric,
        gammas=gammas,
        sins=sins,
        scale=scale,
        domain=new_domain,
        params=(),
    )


# ---------------------------------------------------------------------------
# Variable specialization
# ---------------------------------------------------------------------------


def fix_variable(t: HyperTerm, var: str, value: int) -> HyperTerm:
    """Specialize n or k to a fixed integer, leaving a term in the other variable."""
    t = t.specialize_params()
    if var not in ("n", "k"):
        raise ValueError("var must be n or k")
    extra = Fraction(1)
    pref = t.prefactor.substitute(var, Polynomial.const(value))
    sign_n, sign_k = t.sign_n, t.sign_k
    if var == "n":
        if sign_n and value % 2:
            extra = -extra
        sign_n = 0
    else:
        if sign_k and value % 2:
            extra = -extra
        sign_k = 0
    phase = t.phase
    if phase:
        pv = "k" if phase[0] == "x" else phase[0]
        if pv == var:
            px = Fraction(phase[1] * value)
            if px.denominator != 1:
                raise ValueError("cannot fold a non-integer phase exactly")
            extra *= Fraction(-1) ** px.numerator
            phase = None
    geometric = []
    for base, en, ek in t.geometric:
        e_fix = en * value if var == "n" else ek * value
        extra *= Fraction(base) ** e_fix
        geometric.append((base, 0 if var == "n" else en, ek if var == "n" else 0))
    gammas = []
    for g in t.gammas:
        if var == "n":
            gammas.append(GammaFactor(0, g.coeff_k, (), g.offset + g.coeff_n * value, g.exponent))
        else:
            gammas.append(GammaFactor(g.coeff_n, 0, (), g.offset + g.coeff_k * value, g.exponent))
    sins = []
    for s in t.sins:
        if var == "n":
            sins.append(SinFactor(0, s.coeff_k, s.offset + s.coeff_n * value, s.exponent))
        else:
            sins.append(SinFactor(s.coeff_n, 0, s.offset + s.coeff_k * value, s.exponent))
    dom = (t.domain[0], t.domain[1])
    return HyperTerm(
        pref * extra, sign_n=sign_n, sign_k=sign_k, phase=phase, geometric=geometric,
        gammas=gammas, sins=sins, scale=t.scale,
        domain=(0, dom[1]) if var == "n" else (dom[0], 0),
    )


def substitute_k_shifted_n(t: HyperTerm, shift: int = 1) -> HyperTerm:
    """The term t with k replaced by n + shift (used for reindexing checks)."""
    t = t.specialize_params()
    nv = Polynomial.variable("n")
    extra = Fraction(1)
    pref = t.prefactor.substitute("k", nv + Polynomial.const(shift))
    sign_n = t.sign_n ^ t.sign_k
    if t.sign_k and shift % 2:
        extra = -extra
    phase = t.phase
    if phase and phase[0] in ("k", "x"):
        phi = phase[1]
        if phi.denominator != 1:
            raise ValueError("cannot reindex a non-integer phase")
        if (phi * shift).numerator % 2:
            extra = -extra
        phase = ("n", phi)
    geometric = []
    for base, en, ek in t.geometric:
        extra *= Fraction(base) ** (ek * shift)
        geometric.append((base, en + ek, 0))
    gammas = [
        GammaFactor(g.coeff_n + g.coeff_k, 0, (), g.offset + g.coeff_k * shift, g.exponent)
        for g in t.gammas
    ]
    if t.sins:
        raise ValueError("sin factors not supported in reindexing")
    return HyperTerm(
        pref * extra, sign_n=sign_n, sign_k=0, phase=phase, geometric=geometric,
        gammas=gammas, domain=(max(0, t.domain[1] - shift), 0),
    )


# ---------------------------------------------------------------------------
# Efficient evaluation along a series
# ---------------------------------------------------------------------------


class TermEvaluator:
    """Evaluates (d/d var)^order t at k = start, start+1, ... with running ladders.

    All Gamma arguments step by their (nonnegative) k-coefficients, so both
    ln Gamma values and the polygamma vectors advance by cheap recurrences
    instead of fresh asymptotic evaluations at every k.
    """

    def __init__(self, t: HyperTerm, var: str, order: int, start: int, digits: int):
        self.t = t
        self.var = var
        self.order = order
        self.k = start
        self.digits = digits
        self.prec = Precision(digits + 10, 12)
        self._wp = digits + 24
        self.is_param = var not in ("n", "k")
        if order > 0 and t.sins:
            raise ValueError("derivatives across sin factors are not supported")
        if order > 0 and not self.is_param and var == "k" and t.sign_k:
            raise ValueError("cannot differentiate an exact sign factor")
        n0 = t.domain[0]
        self.n_val = n0  # series run at fixed n = n0 (univariate summands)
        with mp.workdps(self._wp):
            self.loggam = []
            for g in t.gammas:
                arg0 = g.arg_at(self.n_val, start)
                if g.coeff_k == 0:
                    self.loggam.append((g, None, log_gamma(arg0, self.prec)))
                else:
                    self.loggam.append((g, LogGammaLadder(Fraction(arg0), g.coeff_k, self.prec), None))
            self.psis = []
            if order >= 1:
                for g in t.gammas:
                    c = (
                        g.param_coeff(var)
                        if self.is_param
                        else (g.coeff_n if var == "n" else g.coeff_k)
                    )
                    if not c:
                        continue
                    arg0 = g.arg_at(self.n_val, start)
                    if not arg0 > 0:
                        raise ValueError("polygamma at a nonpositive argument")
                    if g.coeff_k == 0:
                        vals = [polygamma(j, arg0, self.prec) for j in range(order)]
                        self.psis.append((g, c, None, vals))
                    else:
                        self.psis.append(
                            (g, c, PolygammaLadder(Fraction(arg0), g.coeff_k, order, self.prec), None)
                        )
            self.pref_derivs = (
                []
                if (self.is_param or order == 0)
                else _log_prefactor_derivs(t.prefactor, var, order)
            )
            self.log_bases = {
                base: mp.log(mpf(base.numerator)) - mp.log(mpf(base.denominator))
                for base, _, _ in t.geometric
            }
            self.scale_val = mpc(1)
            self.scale_rel = mpf(0)
            if t.scale != ONE_EXPR:
                sv = const_expr_eval(t.scale, self.prec)
                self.scale_val = sv.value
                self.scale_rel = sv.error_bound / abs(sv.value) if abs(sv.value) else mpf(0)

    def current(self) -> TermValue:
        t = self.t
        kv = self.k
        nv = self.n_val
        with mp.workdps(self._wp):
            pref = t.prefactor.eval(Fraction(nv), Fraction(kv))
            zero = pref == 0
            for g in t.gammas:
                if g.exponent < 0:
                    arg = g.arg_at(nv, kv)
                    if _is_int(arg) and arg <= 0:
                        zero = True
            if zero:
                return TermValue(mpc(0), mpf(0))
            log_abs = mpf(0)
            sign = 1
            for (g, ladder, const) in self.loggam:
                lg = const if ladder is None else ladder.val
                log_abs += g.exponent * lg
            for base, en, ek in t.geometric:
                log_abs += (en * nv + ek * kv) * self.log_bases[base]
            for sf in t.sins:
                arg = Fraction(sf.arg_at(nv, kv))
                sv = mp.sinpi(mpf(arg.numerator) / arg.denominator)
                if sv == 0:
                    if sf.exponent > 0:
                        return TermValue(mpc(0), mpf(0))
                    raise ValueError("sin-factor pole")
                log_abs += sf.exponent * mp.log(abs(sv))
                if sv < 0 and sf.exponent % 2:
                    sign = -sign
            fp = Fraction(pref)
            log_abs += mp.log(abs(mpf(fp.numerator))) - mp.log(mpf(fp.denominator))
            if fp < 0:
                sign = -sign
            if t.sign_n and nv % 2:
                sign = -sign
            if t.sign_k and kv % 2:
                sign = -sign
            value = mpc(sign) * mp.exp(log_abs)
            if t.phase:
                var, phi = t.phase
                x = kv if var in ("k", "x") else (nv if var == "n" else 0)
                px = Fraction(phi * x)
                px -= 2 * (px.numerator // (2 * px.denominator))
                value *= mp.expjpi(mpf(px.numerator) / px.denominator)
            value *= self.scale_val
            if self.order >= 1:
                lders = []
                for j in range(1, self.order + 1):
                    acc = mpc(0)
                    for (g, c, ladder, const_vals) in self.psis:
                        vals = const_vals if ladder is None else ladder.vals
                        acc += g.exponent * (mpf(c) ** j) * vals[j - 1]
                    if j - 1 < len(self.pref_derivs):
                        v = self.pref_derivs[j - 1].eval(Fraction(nv), Fraction(kv))
                        acc += mpf(v.numerator) / v.denominator
                    if j == 1 and not self.is_param:
                        for base, en, ek in t.geometric:
                            e = en if self.var == "n" else ek
                            if e:
                                acc += e * self.log_bases[base]
                    if j == 1 and t.phase:
                        pv = t.phase[0] if t.phase[0] != "x" else "k"
                        if pv == self.var:
                            acc += mpc(0, 1) * mp.pi * mpf(t.phase[1].numerator) / t.phase[1].denominator
                    lders.append(acc)
                bell = complete_bell(lders)
                value = value * bell.values[self.order]
            err = abs(value) * (mpf(10) ** (-(self.digits + 4)) + 2 * self.scale_rel)
            return TermValue(mpc(value), err)

    def advance(self):
        self.k += 1
        with mp.workdps(self._wp):
            for (_, ladder, _) in self.loggam:
                if ladder is not None:
                    ladder.advance()
            for (_, _, ladder, _) in self.psis:
                if ladder is not None:
                    ladder.advance()
