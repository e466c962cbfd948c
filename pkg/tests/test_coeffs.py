"""Exact rational-function coefficient arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltareduce import Coefficient, errors
from strategies import coefficients

NU = Coefficient.param("nu")
ONE = Coefficient.from_int(1)
ZERO = Coefficient.from_int(0)


class TestConstruction:
    def test_integers_and_fractions(self):
        assert Coefficient.from_int(3).as_fraction() == 3
        assert Coefficient.from_fraction(Fraction(6, 4)).as_fraction() == \
            Fraction(3, 2)

    def test_param_powers(self):
        assert Coefficient.param("nu", 0) == ONE
        assert Coefficient.param("nu", 2) == NU * NU
        assert Coefficient.param("nu", -1) * NU == ONE

    def test_canonical_cancellation(self):
        # (2 nu) / (4 nu^2) must normalize to 1 / (2 nu)
        c = (Coefficient.from_int(2) * NU) / (Coefficient.from_int(4) * NU * NU)
        assert c == Coefficient.from_fraction(Fraction(1, 2)) * NU.inverse()

    def test_as_fraction_rejects_parameters(self):
        with pytest.raises(errors.InternalError):
            NU.as_fraction()


class TestPredicates:
    def test_zero_one(self):
        assert ZERO.is_zero() and not ZERO.is_one()
        assert ONE.is_one() and not ONE.is_zero()

    def test_is_negative_tracks_leading_sign(self):
        assert (-NU).is_negative()
        assert not NU.is_negative()

    def test_mentions_param(self):
        assert NU.mentions_param("nu")
        assert NU.inverse().mentions_param("nu")
        assert not ONE.mentions_param("nu")
        assert not NU.mentions_param("mu")


class TestArithmetic:
    def test_division_and_inverse(self):
        c = Coefficient.from_int(3) * NU
        assert c / c == ONE
        assert c * c.inverse() == ONE
        with pytest.raises(ZeroDivisionError):
            ZERO.inverse()

    def test_pow(self):
        assert NU ** 3 == NU * NU * NU
        assert NU ** 0 == ONE
        assert NU ** -2 == (NU * NU).inverse()

    def test_mixed_fraction_param(self):
        # 1/2 + 1/(2 nu) = (nu + 1) / (2 nu)
        half = Coefficient.from_fraction(Fraction(1, 2))
        lhs = half + half * NU.inverse()
        rhs = (NU + ONE) / (Coefficient.from_int(2) * NU)
        assert lhs == rhs

    @given(coefficients(), coefficients(), coefficients())
    def test_field_axioms(self, a, b, c):
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + ZERO == a
        assert a * ONE == a
        assert a + (-a) == ZERO

    @given(coefficients(allow_zero=False))
    def test_inverse_roundtrip(self, a):
        assert a * a.inverse() == ONE
        assert a.inverse().inverse() == a

    @given(coefficients(), coefficients())
    def test_hash_consistent_with_eq(self, a, b):
        if a == b:
            assert hash(a) == hash(b)

    @given(coefficients())
    def test_scale_int_matches_mul(self, a):
        assert a.scale_int(5) == a * Coefficient.from_int(5)
        assert a.scale_int(0) == ZERO
