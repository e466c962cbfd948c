"""Shared hypothesis strategies for randomized kernel tests.

Sizes are kept small (orders <= 3, a handful of terms) so that exact
arithmetic stays fast across tens of thousands of cases; the algebraic
laws under test are size-independent.
"""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from deltareduce import (Coefficient, DerivativeKey, DiffPoly, Indeterminate,
                         Monomial, Ranking)

U = Indeterminate("u")
V = Indeterminate("v")
W = Indeterminate("w")
POOL = (U, V, W)

_small_int = st.integers(min_value=-6, max_value=6)
_pos_int = st.integers(min_value=1, max_value=6)


@st.composite
def coefficients(draw, allow_zero: bool = True) -> Coefficient:
    num = draw(_small_int)
    if not allow_zero and num == 0:
        num = 1
    c = Coefficient.from_fraction(Fraction(num, draw(_pos_int)))
    # an optional power of the parameter, including inverse powers
    exp = draw(st.integers(min_value=-2, max_value=2))
    if exp and num != 0:
        c = c * Coefficient.param("nu", exp)
    return c


@st.composite
def derivative_keys(draw, max_order: int = 3) -> DerivativeKey:
    base = draw(st.sampled_from(POOL))
    budget = draw(st.integers(min_value=0, max_value=max_order))
    alpha = [0, 0, 0, 0]
    for _ in range(budget):
        alpha[draw(st.integers(min_value=0, max_value=3))] += 1
    return DerivativeKey(base, tuple(alpha))


@st.composite
def monomials(draw, max_factors: int = 3, max_exp: int = 2,
              linear: bool = False) -> Monomial:
    if linear:
        return Monomial(((draw(derivative_keys()), 1),))
    n = draw(st.integers(min_value=1, max_value=max_factors))
    pairs = [(draw(derivative_keys()),
              draw(st.integers(min_value=1, max_value=max_exp)))
             for _ in range(n)]
    return Monomial(pairs)


@st.composite
def diff_polys(draw, max_terms: int = 4, allow_zero: bool = True,
               linear: bool = False) -> DiffPoly:
    n = draw(st.integers(min_value=0 if allow_zero else 1,
                         max_value=max_terms))
    p = DiffPoly.zero()
    for _ in range(n):
        c = draw(coefficients(allow_zero=False))
        if draw(st.booleans()):
            p = p + DiffPoly.from_monomial(draw(monomials(linear=linear)), c)
        else:
            p = p + DiffPoly.constant(c)
    return p


@st.composite
def rankings(draw) -> Ranking:
    blocks = tuple(draw(st.permutations(POOL)))
    precedence = tuple(draw(st.permutations(("x", "y", "z", "t"))))
    return Ranking(blocks, precedence)
