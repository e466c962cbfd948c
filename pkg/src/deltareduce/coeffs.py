"""Exact rational-function coefficients.

A coefficient is a ratio of two integer-coefficient polynomials in the
session's parameters (typically just ``nu``).  The representation is kept
canonical at all times: the fraction is fully reduced (polynomial gcd and
integer content), the denominator is nonzero with a positive leading
integer coefficient, and zero has the unique form 0/1.  Canonical form is
what makes structural equality of differential polynomials meaningful, so
every constructor funnels through :func:`Coefficient._make`.

Parameter polynomials are plain dicts mapping a parameter monomial (a
sorted tuple of ``(name, exponent)`` pairs) to a nonzero int.  The helper
functions below operate on those dicts directly; only `Coefficient` is
part of the public surface.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable

from .errors import InternalError

ParamMono = tuple  # tuple[tuple[str, int], ...], sorted by name, exponents > 0
PPoly = dict  # dict[ParamMono, int], no zero values

_UNIT_MONO: ParamMono = ()


def _pconst(n: int) -> PPoly:
    return {_UNIT_MONO: n} if n else {}


_P_ZERO: PPoly = {}
_P_ONE: PPoly = {_UNIT_MONO: 1}


def _pm_mul(m1: ParamMono, m2: ParamMono) -> ParamMono:
    if not m1:
        return m2
    if not m2:
        return m1
    out = dict(m1)
    for name, exp in m2:
        out[name] = out.get(name, 0) + exp
    return tuple(sorted(out.items()))


def _pm_order_key(m: ParamMono):
    # Graded-lex order on parameter monomials; used only to pick a
    # deterministic leading term for sign normalisation.
    return (sum(e for _, e in m), m)


def _padd(a: PPoly, b: PPoly) -> PPoly:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            del out[m]
    return out


def _pneg(a: PPoly) -> PPoly:
    return {m: -c for m, c in a.items()}


def _psub(a: PPoly, b: PPoly) -> PPoly:
    return _padd(a, _pneg(b))


def _pmul(a: PPoly, b: PPoly) -> PPoly:
    if not a or not b:
        return {}
    if len(a) == 1:
        (ma, ca), = a.items()
        if ma == _UNIT_MONO:
            return {m: c * ca for m, c in b.items()}
        return {_pm_mul(ma, m): ca * c for m, c in b.items()}
    if len(b) == 1:
        return _pmul(b, a)
    out: PPoly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = _pm_mul(ma, mb)
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _pis_const(a: PPoly) -> bool:
    return not a or (len(a) == 1 and _UNIT_MONO in a)


def _plead_sign(a: PPoly) -> int:
    if not a:
        return 0
    lead = max(a, key=_pm_order_key)
    return 1 if a[lead] > 0 else -1


def _picontent(a: PPoly) -> int:
    g = 0
    for c in a.values():
        g = math.gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def _pvars(a: PPoly) -> list[str]:
    names = {name for m in a for name, _ in m}
    return sorted(names)


def _to_univar(a: PPoly, v: str) -> dict[int, PPoly]:
    """View ``a`` as a polynomial in ``v`` with PPoly coefficients."""
    out: dict[int, PPoly] = {}
    for m, c in a.items():
        deg = 0
        rest = []
        for name, exp in m:
            if name == v:
                deg = exp
            else:
                rest.append((name, exp))
        coeff = out.setdefault(deg, {})
        rm = tuple(rest)
        s = coeff.get(rm, 0) + c
        if s:
            coeff[rm] = s
        else:
            del coeff[rm]
    return {d: c for d, c in out.items() if c}


def _from_univar(u: dict[int, PPoly], v: str) -> PPoly:
    out: PPoly = {}
    for deg, coeff in u.items():
        for m, c in coeff.items():
            full = _pm_mul(m, ((v, deg),)) if deg else m
            s = out.get(full, 0) + c
            if s:
                out[full] = s
            else:
                del out[full]
    return out


def _prem(a: PPoly, b: PPoly, v: str) -> PPoly:
    """Pseudo-remainder of ``a`` by ``b`` w.r.t. main variable ``v``."""
    ua = _to_univar(a, v)
    ub = _to_univar(b, v)
    db = max(ub)
    if db == 0:
        return {}
    lcb = ub[db]
    while ua:
        da = max(ua)
        if da < db:
            break
        lca = ua[da]
        new: dict[int, PPoly] = {}
        for d, c in ua.items():
            if d != da:
                new[d] = _pmul(c, lcb)
        for d, c in ub.items():
            if d == db:
                continue
            dd = d + da - db
            cur = _psub(new.get(dd, {}), _pmul(c, lca))
            if cur:
                new[dd] = cur
            else:
                new.pop(dd, None)
        ua = new
    return _from_univar(ua, v)


def _pmono_gcd(a: PPoly, b: PPoly) -> PPoly:
    """gcd when at least one argument is a single term."""
    g_int = math.gcd(_picontent(a), _picontent(b))
    exps: dict[str, int] = {}
    first = True
    for p in (a, b):
        for m in p:
            md = dict(m)
            if first:
                exps = md
                first = False
            else:
                exps = {n: min(e, md.get(n, 0)) for n, e in exps.items()}
                exps = {n: e for n, e in exps.items() if e > 0}
    mono = tuple(sorted(exps.items()))
    return {mono: g_int}


def _pdivexact(a: PPoly, b: PPoly) -> PPoly:
    """Exact polynomial division; raises InternalError if not exact."""
    if not b:
        raise InternalError("division of parameter polynomial by zero")
    if not a:
        return {}
    if len(b) == 1:
        (mb, cb), = b.items()
        out: PPoly = {}
        for m, c in a.items():
            if c % cb:
                raise InternalError("inexact integer division in coefficients")
            md = dict(m)
            for name, exp in mb:
                have = md.get(name, 0) - exp
                if have < 0:
                    raise InternalError("inexact monomial division in coefficients")
                if have:
                    md[name] = have
                else:
                    del md[name]
            out[tuple(sorted(md.items()))] = c // cb
        return out
    v = _pvars(b)[0]
    ua = _to_univar(a, v)
    ub = _to_univar(b, v)
    db = max(ub)
    lcb = ub[db]
    quot: dict[int, PPoly] = {}
    while ua:
        da = max(ua)
        if da < db:
            raise InternalError("inexact polynomial division in coefficients")
        q = _pdivexact(ua[da], lcb)
        quot[da - db] = q
        for d, c in ub.items():
            dd = d + da - db
            cur = _psub(ua.get(dd, {}), _pmul(c, q))
            if cur:
                ua[dd] = cur
            else:
                ua.pop(dd, None)
    return _from_univar(quot, v)


def _pcontent_wrt(a: PPoly, v: str) -> PPoly:
    coeffs = list(_to_univar(a, v).values())
    return reduce(_pgcd, coeffs)


def _pgcd(a: PPoly, b: PPoly) -> PPoly:
    """Polynomial gcd (including integer content), positive leading sign."""
    if not a:
        return _psign_pos(b)
    if not b:
        return _psign_pos(a)
    if _pis_const(a) and _pis_const(b):
        return _pconst(math.gcd(a[_UNIT_MONO], b[_UNIT_MONO]))
    if len(a) == 1 or len(b) == 1:
        return _pmono_gcd(a, b)
    shared = set(_pvars(a)) & set(_pvars(b))
    if not shared:
        return _pconst(math.gcd(_picontent(a), _picontent(b)))
    v = sorted(shared)[0]
    cont_a = _pcontent_wrt(a, v)
    cont_b = _pcontent_wrt(b, v)
    cont = _pgcd(cont_a, cont_b)
    pa = _pdivexact(a, cont_a)
    pb = _pdivexact(b, cont_b)
    while pb:
        if max(_to_univar(pb, v)) == 0:
            # Nonzero remainder of degree 0 in v; primitive parts are coprime.
            pa = _P_ONE
            break
        r = _prem(pa, pb, v)
        if r:
            r = _pdivexact(r, _pcontent_wrt(r, v))
        pa, pb = pb, r
    g = _pmul(cont, pa)
    return _psign_pos(g)


def _psign_pos(a: PPoly) -> PPoly:
    return _pneg(a) if _plead_sign(a) < 0 else a


def _pstr(a: PPoly) -> str:
    """Debug rendering; the user-facing renderer lives in rendering.py."""
    if not a:
        return "0"
    parts = []
    for m in sorted(a, key=_pm_order_key, reverse=True):
        c = a[m]
        factors = [str(abs(c))] if abs(c) != 1 or not m else []
        for name, exp in m:
            factors.append(name if exp == 1 else f"{name}^{exp}")
        term = "*".join(factors) if factors else str(abs(c))
        parts.append(("- " if c < 0 else "+ ") + term)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


class Coefficient:
    """An exact rational function of the parameters, kept in canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: PPoly, den: PPoly, _raw: bool = False):
        if _raw:
            self.num = num
            self.den = den
        else:
            c = Coefficient._make(num, den)
            self.num = c.num
            self.den = c.den
        self._hash = None

    @staticmethod
    def _make(num: PPoly, den: PPoly) -> "Coefficient":
        if not den:
            raise ZeroDivisionError("coefficient with zero denominator")
        if not num:
            return ZERO
        if den == _P_ONE:
            # Already reduced: gcd(num, 1) = 1.  Shared dicts are never
            # mutated after construction, so aliasing _P_ONE is safe.
            return Coefficient(num, _P_ONE, _raw=True)
        if num == den:
            return ONE
        if _pis_const(num) and _pis_const(den):
            a, b = num[_UNIT_MONO], den[_UNIT_MONO]
            g = math.gcd(a, b) if b > 0 else -math.gcd(a, b)
            a //= g
            b //= g
            if b == 1:
                return Coefficient({_UNIT_MONO: a}, _P_ONE, _raw=True)
            return Coefficient({_UNIT_MONO: a}, {_UNIT_MONO: b}, _raw=True)
        g = _pgcd(num, den)
        if g != _P_ONE:
            num = _pdivexact(num, g)
            den = _pdivexact(den, g)
        if _plead_sign(den) < 0:
            num = _pneg(num)
            den = _pneg(den)
        return Coefficient(num, den, _raw=True)

    @staticmethod
    def from_int(n: int) -> "Coefficient":
        return Coefficient._make(_pconst(n), _P_ONE)

    @staticmethod
    def from_fraction(q: Fraction | int) -> "Coefficient":
        q = Fraction(q)
        return Coefficient._make(_pconst(q.numerator), _pconst(q.denominator))

    @staticmethod
    def param(name: str, exp: int = 1) -> "Coefficient":
        if exp == 0:
            return ONE
        mono = ((name, abs(exp)),)
        if exp > 0:
            return Coefficient({mono: 1}, _P_ONE, _raw=True)
        return Coefficient(_P_ONE, {mono: 1}, _raw=True)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == _P_ONE and self.den == _P_ONE

    def is_constant(self) -> bool:
        """True when no parameter appears (a plain rational number)."""
        return _pis_const(self.num) and _pis_const(self.den)

    def is_negative(self) -> bool:
        """Sign of the leading numerator term (denominator is positive)."""
        return _plead_sign(self.num) < 0

    def mentions_param(self, name: str) -> bool:
        """True when the parameter appears in numerator or denominator."""
        return any(any(n == name for n, _ in mono) for part in
                   (self.num, self.den) for mono in part)

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise InternalError("coefficient involves parameters")
        return Fraction(self.num.get(_UNIT_MONO, 0), self.den[_UNIT_MONO])

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Coefficient") -> "Coefficient":
        if not isinstance(other, Coefficient):
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        a, b = self.num, other.num
        if (self.den == _P_ONE and other.den == _P_ONE
                and len(a) == 1 and len(b) == 1
                and _UNIT_MONO in a and _UNIT_MONO in b):
            s = a[_UNIT_MONO] + b[_UNIT_MONO]
            if not s:
                return ZERO
            return Coefficient({_UNIT_MONO: s}, _P_ONE, _raw=True)
        if self.den == other.den:
            return Coefficient._make(_padd(self.num, other.num), self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return Coefficient._make(num, _pmul(self.den, other.den))

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        return self + (-other)

    def __neg__(self) -> "Coefficient":
        if not self.num:
            return self
        return Coefficient(_pneg(self.num), self.den, _raw=True)

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        if not isinstance(other, Coefficient):
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        if self.den == _P_ONE and other.den == _P_ONE:
            # Products of polynomials need no gcd pass.
            if self.num == _P_ONE:
                return other
            if other.num == _P_ONE:
                return self
            a, b = self.num, other.num
            if (len(a) == 1 and len(b) == 1
                    and _UNIT_MONO in a and _UNIT_MONO in b):
                return Coefficient({_UNIT_MONO: a[_UNIT_MONO] * b[_UNIT_MONO]},
                                   _P_ONE, _raw=True)
            return Coefficient(_pmul(self.num, other.num), _P_ONE, _raw=True)
        return Coefficient._make(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __truediv__(self, other: "Coefficient") -> "Coefficient":
        if not isinstance(other, Coefficient):
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero coefficient")
        return Coefficient._make(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def inverse(self) -> "Coefficient":
        if not self.num:
            raise ZeroDivisionError("inverse of zero coefficient")
        return Coefficient._make(self.den, self.num)

    def __pow__(self, n: int) -> "Coefficient":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def scale_int(self, n: int) -> "Coefficient":
        if n == 0 or not self.num:
            return ZERO
        if n == 1:
            return self
        if n == -1:
            return -self
        if self.den == _P_ONE:
            return Coefficient({m: c * n for m, c in self.num.items()},
                               _P_ONE, _raw=True)
        return Coefficient._make({m: c * n for m, c in self.num.items()}, self.den)

    # -- equality --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def __repr__(self):
        if self.den == _P_ONE:
            return f"Coefficient({_pstr(self.num)})"
        return f"Coefficient(({_pstr(self.num)})/({_pstr(self.den)}))"


ZERO = Coefficient(_P_ZERO, dict(_P_ONE), _raw=True)
ONE = Coefficient(dict(_P_ONE), dict(_P_ONE), _raw=True)


def coeff_sum(items: Iterable[Coefficient]) -> Coefficient:
    out = ZERO
    for c in items:
        out = out + c
    return out


def common_unit(coeffs: Iterable[Coefficient]) -> Coefficient:
    """A unit ``lcm(denominators)/gcd(numerators)`` of the given nonzero
    coefficients.

    Parameters are globally nonzero, so multiplying a polynomial's
    coefficients through by this unit preserves its zero set while
    clearing denominators and stripping shared numerator content.
    """
    items = coeffs if isinstance(coeffs, (list, tuple)) else list(coeffs)
    # Fast path: all plain integers (the overwhelmingly common case).
    gcd_int = 0
    for c in items:
        num = c.num
        if c.den != _P_ONE or len(num) != 1 or _UNIT_MONO not in num:
            break
        gcd_int = math.gcd(gcd_int, num[_UNIT_MONO])
    else:
        if gcd_int in (0, 1):
            return ONE
        return Coefficient._make(_P_ONE, {_UNIT_MONO: gcd_int})
    gcd_num: PPoly | None = None
    lcm_den: PPoly = _P_ONE
    for c in items:
        gcd_num = _psign_pos(c.num) if gcd_num is None else _pgcd(gcd_num, c.num)
        if c.den != _P_ONE:
            shared = _pgcd(lcm_den, c.den)
            lcm_den = _pmul(_pdivexact(lcm_den, shared), c.den)
    if gcd_num is None:
        return ONE
    return Coefficient._make(lcm_den, gcd_num)
