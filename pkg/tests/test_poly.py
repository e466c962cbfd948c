"""Differential polynomials: sparse exact arithmetic and derivations."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltareduce import (Coefficient, DerivativeKey, DiffPoly, Indeterminate,
                         Monomial, errors)
from strategies import U, V, coefficients, derivative_keys, diff_polys

NU = Coefficient.param("nu")
ZERO = DiffPoly.zero()
ONE = DiffPoly.constant(1)

u = DiffPoly.from_key(DerivativeKey(U))
u_x = DiffPoly.from_key(DerivativeKey(U, (1, 0, 0, 0)))
u_y = DiffPoly.from_key(DerivativeKey(U, (0, 1, 0, 0)))
v = DiffPoly.from_key(DerivativeKey(V))


class TestStructure:
    def test_parameters_carry_no_derivatives(self):
        with pytest.raises(ValueError):
            DerivativeKey(Indeterminate("nu", "parameter"))

    def test_monomial_merges_repeated_keys(self):
        k = DerivativeKey(U)
        m = Monomial(((k, 1), (k, 2)))
        assert m.degree == 3 and m.degree_of(k) == 3

    def test_zero_terms_dropped(self):
        p = u + (-u)
        assert p.is_zero() and p.term_count() == 0

    def test_constant_folding(self):
        assert DiffPoly.constant(0).is_zero()
        assert (ONE + ONE).coeff_of(Monomial(())) == Coefficient.from_int(2)

    def test_is_param_only(self):
        assert DiffPoly.constant(NU).is_param_only()
        assert not u.is_param_only()
        assert ZERO.is_param_only()


class TestDerivations:
    def test_basic_derivative(self):
        assert u.differentiate("x") == u_x
        assert ONE.differentiate("x").is_zero()

    def test_leibniz_example(self):
        p = u * v
        assert p.differentiate("x") == u_x * v + u * v.differentiate("x")

    def test_power_rule(self):
        p = u ** 3
        assert p.differentiate("y") == \
            DiffPoly.constant(3) * u * u * u_y

    @given(diff_polys(), diff_polys(), st.sampled_from("xyzt"))
    def test_leibniz(self, f, g, d):
        assert (f * g).differentiate(d) == \
            f.differentiate(d) * g + f * g.differentiate(d)

    @given(diff_polys(), st.sampled_from("xyzt"), st.sampled_from("xyzt"))
    def test_derivations_commute(self, f, d1, d2):
        assert f.differentiate(d1).differentiate(d2) == \
            f.differentiate(d2).differentiate(d1)

    @given(diff_polys())
    def test_differentiate_multi_matches_repeated(self, f):
        g = f.differentiate_multi((1, 0, 2, 0))
        h = f.differentiate("x").differentiate("z").differentiate("z")
        assert g == h


class TestDivision:
    def test_divide_exact_examples(self):
        f = (u + v) * u_x
        assert f.divide_exact(u_x) == u + v
        assert f.divide_exact(u + v) == u_x
        assert (u + ONE).divide_exact(u_x) is None

    def test_zero_dividend_divides_to_zero(self):
        assert ZERO.divide_exact(u_x) == ZERO
        assert ZERO.divide_exact(u_x).is_zero()

    def test_divide_by_zero_is_an_error(self):
        with pytest.raises(ZeroDivisionError):
            u.divide_exact(ZERO)

    def test_divide_monomial(self):
        k = DerivativeKey(U, (1, 0, 0, 0))
        f = (u + v) * DiffPoly.from_key(k, 2)
        assert f.divide_monomial(Monomial(((k, 2),))) == u + v

    @given(diff_polys(), diff_polys(allow_zero=False))
    def test_product_division_roundtrip(self, f, g):
        assert (f * g).divide_exact(g) == f


class TestRingOps:
    @given(diff_polys(), diff_polys(), diff_polys())
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + ZERO == a
        assert a * ONE == a
        assert (a - a).is_zero()

    @given(diff_polys(), st.integers(min_value=0, max_value=3))
    def test_pow_matches_repeated_mul(self, a, n):
        expected = ONE
        for _ in range(n):
            expected = expected * a
        assert a ** n == expected

    @given(diff_polys(), coefficients())
    def test_scale_matches_constant_mul(self, a, c):
        assert a.scale(c) == DiffPoly.constant(c) * a

    @given(diff_polys(), diff_polys())
    def test_sort_key_consistent_with_eq(self, a, b):
        assert (a == b) == (a.sort_key() == b.sort_key())
