"""Differential polynomials with exact rational-function coefficients.

The alphabet of derivations is fixed as (x, y, z, t); a derivative key is
an indeterminate plus a multi-index over that alphabet, and derivations
commute, so the multi-index is all that matters.  Monomials are finite
power products of derivative keys; polynomials map monomials to nonzero
coefficients.  Every value is canonical on construction, so ``==`` is
structural identity of mathematical objects.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Iterator

from .coeffs import Coefficient, ONE as C_ONE, ZERO as C_ZERO
from .errors import InternalError, ZeroPolynomial

DERIVATIONS = ("x", "y", "z", "t")
_AXIS_INDEX = {name: i for i, name in enumerate(DERIVATIONS)}


def _gl_key(m: "Monomial"):
    """Graded-lex key: total degree, then exponents compared from the
    structurally largest derivative key down.  Tuples of descending
    (key, exponent) pairs realize the lex comparison exactly, and unlike
    the ascending canonical form this order is multiplicative, which
    exact division relies on."""
    return (m.degree, m._dkey)


class _RevKey:
    """Reverses comparison so heapq acts as a max-heap over monomials."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

DEPENDENT = "dependent"
PARAMETER = "parameter"


class Indeterminate:
    """A named function symbol (dependent) or scalar parameter."""

    __slots__ = ("name", "kind", "_hash")

    def __init__(self, name: str, kind: str = DEPENDENT):
        if kind not in (DEPENDENT, PARAMETER):
            raise ValueError(f"unknown indeterminate kind {kind!r}")
        if not name:
            raise ValueError("indeterminate name must be nonempty")
        self.name = name
        self.kind = kind
        self._hash = hash((name, kind))

    def __eq__(self, other):
        if not isinstance(other, Indeterminate):
            return NotImplemented
        return self.name == other.name and self.kind == other.kind

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Indeterminate({self.name!r}, {self.kind!r})"


def axis_of(derivation: str | int) -> int:
    if isinstance(derivation, int):
        if not 0 <= derivation < len(DERIVATIONS):
            raise ValueError(f"derivation index {derivation} out of range")
        return derivation
    try:
        return _AXIS_INDEX[derivation]
    except KeyError:
        raise ValueError(f"unknown derivation {derivation!r}") from None


class DerivativeKey:
    """An indeterminate differentiated by a multi-index over (x, y, z, t)."""

    __slots__ = ("base", "alpha", "order", "_hash", "_skey", "_bumps")

    def __init__(self, base: Indeterminate, alpha: tuple[int, int, int, int] = (0, 0, 0, 0)):
        if base.kind != DEPENDENT:
            raise ValueError("parameters never carry derivative indices")
        if len(alpha) != len(DERIVATIONS) or any(a < 0 for a in alpha):
            raise ValueError(f"bad multi-index {alpha!r}")
        self.base = base
        self.alpha = tuple(alpha)
        self.order = sum(alpha)
        self._skey = (base.name, self.alpha)
        self._hash = hash(self._skey)
        self._bumps = {}

    def bump(self, axis: int) -> "DerivativeKey":
        cached = self._bumps.get(axis)
        if cached is None:
            a = list(self.alpha)
            a[axis] += 1
            cached = DerivativeKey(self.base, tuple(a))
            self._bumps[axis] = cached
        return cached

    def suffix(self) -> str:
        """Derivation letters in alphabet order, e.g. ``xxt``."""
        return "".join(DERIVATIONS[i] * self.alpha[i] for i in range(len(DERIVATIONS)))

    def __eq__(self, other):
        if not isinstance(other, DerivativeKey):
            return NotImplemented
        return self._skey == other._skey

    def __hash__(self):
        return self._hash

    def __repr__(self):
        s = self.suffix()
        return f"{self.base.name}_{s}" if s else self.base.name


def derivative_offset(key: DerivativeKey, of: DerivativeKey) -> tuple[int, ...] | None:
    """The multi-index theta with key == theta(of), or None."""
    if key.base != of.base:
        return None
    theta = tuple(a - b for a, b in zip(key.alpha, of.alpha))
    if any(t < 0 for t in theta):
        return None
    return theta


def is_proper_derivative(key: DerivativeKey, of: DerivativeKey) -> bool:
    theta = derivative_offset(key, of)
    return theta is not None and any(theta)


class Monomial:
    """A power product of derivative keys with positive integer exponents."""

    __slots__ = ("pairs", "_map", "degree", "_hash", "_skey", "_dkey")

    def __init__(self, pairs: Iterable[tuple[DerivativeKey, int]]):
        merged: dict[DerivativeKey, int] = {}
        for key, exp in pairs:
            if exp == 0:
                continue
            if exp < 0:
                raise ValueError("monomial exponents must be positive")
            merged[key] = merged.get(key, 0) + exp
        ordered = tuple(sorted(merged.items(), key=lambda kv: kv[0]._skey))
        self.pairs = ordered
        self._map = dict(ordered)
        self.degree = sum(e for _, e in ordered)
        self._skey = tuple((k._skey, e) for k, e in ordered)
        self._dkey = self._skey[::-1]
        self._hash = hash(self._skey)

    @classmethod
    def _make(cls, ordered: tuple[tuple[DerivativeKey, int], ...]) -> "Monomial":
        """Raw construction from pairs already merged, positive, and sorted."""
        m = object.__new__(cls)
        m.pairs = ordered
        m._map = dict(ordered)
        m.degree = sum(e for _, e in ordered)
        m._skey = tuple((k._skey, e) for k, e in ordered)
        m._dkey = m._skey[::-1]
        m._hash = hash(m._skey)
        return m

    def is_unit(self) -> bool:
        return not self.pairs

    def degree_of(self, key: DerivativeKey) -> int:
        return self._map.get(key, 0)

    def keys(self) -> Iterator[DerivativeKey]:
        for k, _ in self.pairs:
            yield k

    def mul(self, other: "Monomial") -> "Monomial":
        a, b = self.pairs, other.pairs
        if not a:
            return other
        if not b:
            return self
        out = []
        i = j = 0
        na, nb = len(a), len(b)
        while i < na and j < nb:
            ka, ea = a[i]
            kb, eb = b[j]
            if ka._skey == kb._skey:
                out.append((ka, ea + eb))
                i += 1
                j += 1
            elif ka._skey < kb._skey:
                out.append(a[i])
                i += 1
            else:
                out.append(b[j])
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return Monomial._make(tuple(out))

    def replace_power(self, key: DerivativeKey, new_exp: int) -> "Monomial":
        if key in self._map:
            if new_exp:
                pairs = tuple((k, new_exp if k is key or k == key else e)
                              for k, e in self.pairs)
            else:
                pairs = tuple(kv for kv in self.pairs if kv[0] != key)
            return Monomial._make(pairs)
        if not new_exp:
            return self
        return Monomial(self.pairs + ((key, new_exp),))

    def without_power_of(self, key: DerivativeKey) -> "Monomial":
        return self.replace_power(key, 0)

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._skey == other._skey

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.pairs:
            return "1"
        return "*".join(repr(k) if e == 1 else f"{k!r}^{e}" for k, e in self.pairs)


UNIT_MONOMIAL = Monomial(())


def monomial_gcd(a: Monomial, b: Monomial) -> Monomial:
    """Common power product: each shared key at its smaller exponent."""
    if not a.pairs or not b.pairs:
        return UNIT_MONOMIAL
    bmap = b._map
    pairs = []
    for key, exp in a.pairs:
        other = bmap.get(key, 0)
        if other:
            pairs.append((key, exp if exp < other else other))
    if not pairs:
        return UNIT_MONOMIAL
    return Monomial._make(tuple(pairs))


class DiffPoly:
    """A differential polynomial in canonical sparse form."""

    __slots__ = ("_terms", "_dcache", "_ldcache", "_kdeg", "_mcontent")

    def __init__(self, terms: Iterable[tuple[Monomial, Coefficient]] | dict | None = None,
                 _raw: dict | None = None):
        if _raw is not None:
            self._terms = _raw
        else:
            merged: dict[Monomial, Coefficient] = {}
            if terms:
                items = terms.items() if isinstance(terms, dict) else terms
                for mono, coeff in items:
                    cur = merged.get(mono)
                    s = coeff if cur is None else cur + coeff
                    if s.is_zero():
                        merged.pop(mono, None)
                    else:
                        merged[mono] = s
            self._terms = merged
        self._dcache = None
        self._ldcache = None
        self._kdeg = None
        self._mcontent = None

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "DiffPoly":
        return DiffPoly(_raw={})

    @staticmethod
    def constant(c: Coefficient | Fraction | int) -> "DiffPoly":
        if isinstance(c, (int, Fraction)):
            c = Coefficient.from_fraction(c)
        if c.is_zero():
            return DiffPoly(_raw={})
        return DiffPoly(_raw={UNIT_MONOMIAL: c})

    @staticmethod
    def from_key(key: DerivativeKey, exp: int = 1) -> "DiffPoly":
        return DiffPoly(_raw={Monomial(((key, exp),)): C_ONE})

    @staticmethod
    def from_monomial(mono: Monomial, coeff: Coefficient = C_ONE) -> "DiffPoly":
        if coeff.is_zero():
            return DiffPoly(_raw={})
        return DiffPoly(_raw={mono: coeff})

    # -- views -----------------------------------------------------------

    def terms(self) -> Iterator[tuple[Monomial, Coefficient]]:
        return iter(self._terms.items())

    def term_count(self) -> int:
        return len(self._terms)

    def coeff_of(self, mono: Monomial) -> Coefficient:
        return self._terms.get(mono, C_ZERO)

    def monomials(self) -> Iterator[Monomial]:
        return iter(self._terms.keys())

    def _key_degrees(self) -> dict[DerivativeKey, int]:
        """Cached map key -> max exponent, in first-appearance order."""
        kdeg = self._kdeg
        if kdeg is None:
            kdeg = {}
            for mono in self._terms:
                for k, e in mono.pairs:
                    if e > kdeg.get(k, 0):
                        kdeg[k] = e
            self._kdeg = kdeg
        return kdeg

    def keys(self) -> Iterator[DerivativeKey]:
        return iter(self._key_degrees())

    def is_zero(self) -> bool:
        return not self._terms

    def is_param_only(self) -> bool:
        """True when no derivative key appears (constant in the field sense)."""
        return all(m.is_unit() for m in self._terms)

    def degree_in(self, key: DerivativeKey) -> int:
        return self._key_degrees().get(key, 0)

    def coeff_of_power(self, key: DerivativeKey, d: int) -> "DiffPoly":
        """Coefficient of key**d viewed as a polynomial in key."""
        out = {}
        for mono, c in self._terms.items():
            if mono.degree_of(key) == d:
                out[mono.without_power_of(key)] = c
        return DiffPoly(out)

    def partial_wrt(self, key: DerivativeKey) -> "DiffPoly":
        """Formal algebraic partial derivative with respect to one key."""
        out: dict[Monomial, Coefficient] = {}
        for mono, c in self._terms.items():
            e = mono.degree_of(key)
            if not e:
                continue
            m2 = mono.replace_power(key, e - 1)
            add = c.scale_int(e)
            cur = out.get(m2)
            s = add if cur is None else cur + add
            if s.is_zero():
                out.pop(m2, None)
            else:
                out[m2] = s
        return DiffPoly(_raw=out)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "DiffPoly") -> "DiffPoly":
        if not isinstance(other, DiffPoly):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for mono, c in other._terms.items():
            cur = out.get(mono)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        return DiffPoly(_raw=out)

    def __neg__(self) -> "DiffPoly":
        return DiffPoly(_raw={m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "DiffPoly") -> "DiffPoly":
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Coefficient) -> "DiffPoly":
        if c.is_zero():
            return DiffPoly(_raw={})
        if c.is_one():
            return self
        return DiffPoly(_raw={m: v * c for m, v in self._terms.items()})

    def mul_monomial(self, mono: Monomial, c: Coefficient = C_ONE) -> "DiffPoly":
        if c.is_zero():
            return DiffPoly(_raw={})
        if mono.is_unit():
            return self.scale(c)
        out = {}
        for m, v in self._terms.items():
            out[m.mul(mono)] = v * c
        return DiffPoly(_raw=out)

    def monomial_content(self) -> Monomial:
        """The largest power product dividing every monomial (cached)."""
        cached = self._mcontent
        if cached is not None:
            return cached
        content: Monomial | None = None
        for m in self._terms:
            if not m.pairs:
                content = UNIT_MONOMIAL
                break
            content = m if content is None else monomial_gcd(content, m)
            if content.is_unit():
                break
        if content is None:
            content = UNIT_MONOMIAL
        self._mcontent = content
        return content

    def leading_structural(self) -> tuple[Monomial, Coefficient]:
        """Leading term under the graded structural monomial order (degree,
        then the canonical key tuple) — ranking-independent and
        multiplicative, as exact division requires."""
        if not self._terms:
            raise ZeroPolynomial("leading term of the zero polynomial")
        m = max(self._terms, key=_gl_key)
        return m, self._terms[m]

    def divide_exact(self, g: "DiffPoly") -> "DiffPoly | None":
        """Exact quotient ``self / g`` over the coefficient field, or None
        when the division is not exact."""
        gt = g._terms
        if not gt:
            raise ZeroDivisionError("division by the zero polynomial")
        ft = self._terms
        if not ft:
            return self
        if len(gt) == 1 and UNIT_MONOMIAL in gt:
            return self.scale(gt[UNIT_MONOMIAL].inverse())
        gm, gc = g.leading_structural()
        gmap = gm._map
        # Fail fast: the dividend's leading monomial must be divisible.
        fm = max(ft, key=_gl_key)
        for key, exp in gm.pairs:
            if fm._map.get(key, 0) < exp:
                return None
        rem = dict(ft)
        out: dict[Monomial, Coefficient] = {}
        heap = [(_RevKey(_gl_key(m)), m) for m in rem]
        heapq.heapify(heap)
        while rem:
            lead = None
            while heap:
                _, m = heapq.heappop(heap)
                if m in rem:
                    lead = m
                    break
            if lead is None:
                raise InternalError("division heap lost track of terms")
            lmap = lead._map
            pairs = []
            for key, exp in lead.pairs:
                rest = exp - gmap.get(key, 0)
                if rest < 0:
                    return None
                if rest:
                    pairs.append((key, rest))
            if lead.degree - gm.degree != sum(e for _, e in pairs):
                return None  # gm has a key absent from lead
            qm = Monomial._make(tuple(pairs))
            qc = rem[lead] / gc
            out[qm] = qc
            for m2, c2 in gt.items():
                mm = qm.mul(m2)
                cc = qc * c2
                cur = rem.get(mm)
                s = -cc if cur is None else cur - cc
                if s.is_zero():
                    rem.pop(mm, None)
                else:
                    if cur is None:
                        heapq.heappush(heap, (_RevKey(_gl_key(mm)), mm))
                    rem[mm] = s
        return DiffPoly(_raw=out)

    def divide_monomial(self, mono: Monomial) -> "DiffPoly":
        """Exact division by a power product dividing every monomial."""
        if mono.is_unit():
            return self
        mmap = mono._map
        out = {}
        for m, c in self._terms.items():
            pairs = []
            for key, exp in m.pairs:
                rem = exp - mmap.get(key, 0)
                if rem < 0:
                    raise InternalError(
                        "monomial content division is not exact")
                if rem:
                    pairs.append((key, rem))
            out[Monomial._make(tuple(pairs))] = c
        if len(out) != len(self._terms):
            raise InternalError("monomial content division collided")
        return DiffPoly(_raw=out)

    def __mul__(self, other):
        if isinstance(other, DiffPoly):
            if not self._terms or not other._terms:
                return DiffPoly(_raw={})
            a, b = self, other
            if len(a._terms) > len(b._terms):
                a, b = b, a
            out: dict[Monomial, Coefficient] = {}
            for mono, c in a._terms.items():
                for m2, c2 in b._terms.items():
                    m = mono.mul(m2)
                    cc = c * c2
                    cur = out.get(m)
                    s = cc if cur is None else cur + cc
                    if s.is_zero():
                        out.pop(m, None)
                    else:
                        out[m] = s
            return DiffPoly(_raw=out)
        if isinstance(other, Coefficient):
            return self.scale(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(Coefficient.from_fraction(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Coefficient)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int) -> "DiffPoly":
        if n < 0:
            raise ValueError("negative powers of differential polynomials")
        out = DiffPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    # -- derivation ------------------------------------------------------

    def differentiate(self, derivation: str | int) -> "DiffPoly":
        axis = axis_of(derivation)
        if self._dcache is None:
            self._dcache = {}
        cached = self._dcache.get(axis)
        if cached is not None:
            return cached
        out: dict[Monomial, Coefficient] = {}
        for mono, c in self._terms.items():
            for key, e in mono.pairs:
                bumped = Monomial._make(((key.bump(axis), 1),))
                m2 = mono.replace_power(key, e - 1).mul(bumped)
                add = c.scale_int(e)
                cur = out.get(m2)
                s = add if cur is None else cur + add
                if s.is_zero():
                    out.pop(m2, None)
                else:
                    out[m2] = s
        result = DiffPoly(_raw=out)
        self._dcache[axis] = result
        return result

    def differentiate_multi(self, theta: tuple[int, ...]) -> "DiffPoly":
        out = self
        for axis, times in enumerate(theta):
            for _ in range(times):
                out = out.differentiate(axis)
        return out

    # -- equality --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self._terms == other._terms

    def sort_key(self):
        """A ranking-independent total order key, for deterministic output."""
        return tuple(sorted(((m._skey, _coeff_skey(c)) for m, c in self._terms.items()),
                            reverse=True))

    def __repr__(self):
        if not self._terms:
            return "DiffPoly(0)"
        parts = []
        for mono in sorted(self._terms, key=lambda m: m._skey, reverse=True):
            parts.append(f"{self._terms[mono]!r}*{mono!r}")
        return "DiffPoly(" + " + ".join(parts) + ")"


def _coeff_skey(c: Coefficient):
    return (tuple(sorted(c.num.items())), tuple(sorted(c.den.items())))


def add(p: DiffPoly, q: DiffPoly) -> DiffPoly:
    return p + q


def mul(p: DiffPoly, q: DiffPoly) -> DiffPoly:
    return p * q


def differentiate(p: DiffPoly, derivation: str | int) -> DiffPoly:
    return p.differentiate(derivation)


def measure(p: DiffPoly) -> tuple[int, tuple[DerivativeKey, ...]]:
    """Max derivative order and the set of keys present, sorted structurally."""
    if p.is_zero():
        raise ZeroPolynomial("measure of the zero polynomial")
    keys = sorted(p.keys(), key=lambda k: k._skey)
    if not keys:
        return (0, ())
    return (max(k.order for k in keys), tuple(keys))
