"""Ranking construction, ordering axioms, leaders, and reducedness."""

import pytest
from hypothesis import given, strategies as st

from deltareduce import (
    Coefficient,
    DerivativeKey,
    DiffPoly,
    Indeterminate,
    Ranking,
    leader_data,
)
from deltareduce.errors import (
    DuplicateEntry,
    MissingIndeterminate,
    UnknownIndeterminate,
    ZeroPolynomial,
)
from deltareduce.ranking import (
    EQ,
    GT,
    LT,
    compare,
    is_reduced,
    make_ranking,
    poly_sort_key,
)

from strategies import U, V, W, derivative_keys, diff_polys, rankings

NU = Indeterminate("nu", kind="parameter")


def k(ind, x=0, y=0, z=0, t=0):
    return DerivativeKey(ind, (x, y, z, t))


# --------------------------------------------------------------------------
# construction and validation
# --------------------------------------------------------------------------


class TestConstruction:
    def test_empty_blocks_rejected(self):
        with pytest.raises(MissingIndeterminate):
            Ranking(())

    def test_parameter_in_blocks_rejected(self):
        with pytest.raises(UnknownIndeterminate):
            Ranking((U, NU))

    def test_duplicate_block_rejected(self):
        with pytest.raises(DuplicateEntry):
            Ranking((U, V, U))

    def test_precedence_must_permute_derivations(self):
        with pytest.raises(ValueError):
            Ranking((U,), precedence=("x", "y", "z"))
        with pytest.raises(ValueError):
            Ranking((U,), precedence=("x", "x", "y", "z"))
        with pytest.raises(ValueError):
            Ranking((U,), precedence=("x", "y", "z", "s"))

    def test_block_of_unknown_indeterminate(self):
        r = Ranking((U, V))
        with pytest.raises(UnknownIndeterminate):
            r.block_of(W)

    def test_names(self):
        assert Ranking((V, U, W)).names() == ("v", "u", "w")

    def test_make_ranking_requires_full_coverage(self):
        deps = {"u": U, "v": V}
        with pytest.raises(MissingIndeterminate):
            make_ranking(["u"], deps)
        with pytest.raises(UnknownIndeterminate):
            make_ranking(["u", "q"], deps)
        with pytest.raises(DuplicateEntry):
            make_ranking(["u", "u", "v"], deps)
        r = make_ranking(["v", "u"], deps)
        assert r.blocks == (V, U)


# --------------------------------------------------------------------------
# the order itself
# --------------------------------------------------------------------------


class TestOrder:
    def test_elimination_blocks_dominate(self):
        # Every derivative of the top-block indeterminate outranks every
        # derivative of a lower-block one, regardless of order.
        r = Ranking((U, V))
        assert compare(k(U), k(V, x=3, t=2), r) == GT
        assert compare(k(V, x=3, t=2), k(U), r) == LT

    def test_orderly_within_block(self):
        r = Ranking((U,))
        assert compare(k(U, x=1), k(U), r) == GT
        assert compare(k(U, t=1), k(U, x=2), r) == LT
        assert compare(k(U, x=1, y=1), k(U, z=1), r) == GT

    def test_precedence_breaks_equal_order_ties(self):
        # Same indeterminate, same total order: compare the multi-index in
        # precedence order.
        r1 = Ranking((U,), precedence=("x", "y", "z", "t"))
        assert compare(k(U, x=1), k(U, t=1), r1) == GT
        r2 = Ranking((U,), precedence=("t", "z", "y", "x"))
        assert compare(k(U, x=1), k(U, t=1), r2) == LT

    def test_equal_keys_compare_equal(self):
        r = Ranking((U, V))
        assert compare(k(U, x=1, t=2), k(U, x=1, t=2), r) == EQ

    @given(a=derivative_keys(), r=rankings())
    def test_axiom_derivative_raises_rank(self, a, r):
        for axis in range(4):
            assert compare(a.bump(axis), a, r) == GT

    @given(a=derivative_keys(), b=derivative_keys(), r=rankings())
    def test_axiom_compatible_with_derivation(self, a, b, r):
        c = compare(a, b, r)
        for axis in range(4):
            assert compare(a.bump(axis), b.bump(axis), r) == c

    @given(a=derivative_keys(), b=derivative_keys(), r=rankings())
    def test_strict_totality(self, a, b, r):
        c = compare(a, b, r)
        assert c in (LT, EQ, GT)
        assert (c == EQ) == (a == b)
        assert compare(b, a, r) == -c

    @given(a=derivative_keys(), b=derivative_keys(), c=derivative_keys(),
           r=rankings())
    def test_transitivity(self, a, b, c, r):
        if compare(a, b, r) != LT or compare(b, c, r) != LT:
            return
        assert compare(a, c, r) == LT


# --------------------------------------------------------------------------
# leaders, initials, separants
# --------------------------------------------------------------------------


class TestLeaderData:
    def test_zero_has_no_leader(self):
        with pytest.raises(ZeroPolynomial):
            leader_data(DiffPoly.zero(), Ranking((U,)))

    def test_simple_leader(self):
        # u_xx + u under any ranking on u alone: leader u_xx, degree 1,
        # initial 1, separant 1.
        p = DiffPoly.from_key(k(U, x=2)) + DiffPoly.from_key(k(U))
        ld = leader_data(p, Ranking((U,)))
        assert ld.leader == k(U, x=2)
        assert ld.degree == 1
        assert ld.initial == DiffPoly.constant(1)
        assert ld.separant == DiffPoly.constant(1)

    def test_leader_depends_on_ranking(self):
        p = DiffPoly.from_key(k(U, x=2)) + DiffPoly.from_key(k(V, t=1))
        assert leader_data(p, Ranking((U, V))).leader == k(U, x=2)
        assert leader_data(p, Ranking((V, U))).leader == k(V, t=1)

    def test_initial_and_separant_of_quadratic(self):
        # v * u_x^2 + u: leader u_x, degree 2, initial v, separant 2*v*u_x.
        u_x = DiffPoly.from_key(k(U, x=1))
        v = DiffPoly.from_key(k(V))
        u = DiffPoly.from_key(k(U))
        p = v * u_x * u_x + u
        ld = leader_data(p, Ranking((U, V)))
        assert ld.leader == k(U, x=1)
        assert ld.degree == 2
        assert ld.initial == v
        assert ld.separant == v.scale(Coefficient.from_int(2)) * u_x

    @given(p=diff_polys(allow_zero=False), r=rankings())
    def test_leader_outranks_every_other_key(self, p, r):
        if p.is_param_only():
            return
        ld = leader_data(p, r)
        for key in p.keys():
            assert compare(ld.leader, key, r) in (EQ, GT)


# --------------------------------------------------------------------------
# reducedness predicate
# --------------------------------------------------------------------------


class TestIsReduced:
    def setup_method(self):
        self.r = Ranking((U, V))
        # g with leader u_x, degree 2
        u_x = DiffPoly.from_key(k(U, x=1))
        self.g = u_x * u_x + DiffPoly.from_key(k(V))

    def test_zero_is_reduced(self):
        assert is_reduced(DiffPoly.zero(), self.g, self.r)

    def test_proper_derivative_of_leader_not_reduced(self):
        f = DiffPoly.from_key(k(U, x=1, y=1))
        assert not is_reduced(f, self.g, self.r, mode="partial")
        assert not is_reduced(f, self.g, self.r, mode="full")

    def test_high_degree_in_leader_not_fully_reduced(self):
        u_x = DiffPoly.from_key(k(U, x=1))
        f = u_x * u_x * u_x
        assert is_reduced(f, self.g, self.r, mode="partial")
        assert not is_reduced(f, self.g, self.r, mode="full")

    def test_lower_degree_in_leader_is_reduced(self):
        f = DiffPoly.from_key(k(U, x=1)) + DiffPoly.from_key(k(V, t=2))
        assert is_reduced(f, self.g, self.r, mode="full")

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            is_reduced(self.g, self.g, self.r, mode="sideways")


# --------------------------------------------------------------------------
# deterministic polynomial sort key
# --------------------------------------------------------------------------


class TestPolySortKey:
    @given(p=diff_polys(), q=diff_polys(), r=rankings())
    def test_total_and_consistent_with_eq(self, p, q, r):
        kp, kq = poly_sort_key(p, r), poly_sort_key(q, r)
        assert (kp == kq) == (p == q)

    def test_param_only_sorts_below(self):
        r = Ranking((U,))
        low = DiffPoly.constant(5)
        high = DiffPoly.from_key(k(U))
        assert poly_sort_key(low, r) < poly_sort_key(high, r)
