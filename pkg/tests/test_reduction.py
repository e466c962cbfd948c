"""Pseudo-reduction, traces and replay, chains, and autoreduction."""

import pytest
from hypothesis import given, settings

from deltareduce import (
    Chain,
    Coefficient,
    DerivativeKey,
    DiffPoly,
    Ranking,
    autoreduce,
    leader_data,
    normalize_leading,
    pseudo_reduce,
    reduce_against_chain,
)
from deltareduce.errors import InconsistentSystem, InternalError
from deltareduce.poly import UNIT_MONOMIAL, Monomial
from deltareduce.ranking import is_reduced
from deltareduce.reduction import (
    gated_content,
    replay_trace,
    strip_content,
)

from strategies import U, V, W, diff_polys, rankings

R_UVW = Ranking((U, V, W))


def k(ind, x=0, y=0, z=0, t=0):
    return DerivativeKey(ind, (x, y, z, t))


def kp(ind, x=0, y=0, z=0, t=0, exp=1):
    return DiffPoly.from_key(k(ind, x, y, z, t), exp)


# --------------------------------------------------------------------------
# single-divisor pseudo-reduction
# --------------------------------------------------------------------------


class TestPseudoReduce:
    def test_reduce_by_derivative_of_divisor(self):
        # u_xx against u_x - v: subtract the x-derivative, leaving v_x.
        f = kp(U, x=2)
        g = kp(U, x=1) - kp(V)
        rem, trace = pseudo_reduce(f, g, R_UVW)
        assert rem == kp(V, x=1)
        assert trace.step_count == 1
        assert trace.steps[0].theta == (1, 0, 0, 0)

    def test_full_mode_lowers_leader_degree(self):
        # u^2 against u - v reduces all the way to v^2.
        f = kp(U) * kp(U)
        g = kp(U) - kp(V)
        rem, trace = pseudo_reduce(f, g, R_UVW)
        assert rem == kp(V) * kp(V)
        assert trace.step_count == 2

    def test_partial_mode_keeps_leader_powers(self):
        f = kp(U, x=1) * kp(U, x=1)
        g = kp(U, x=1) - kp(V)
        rem, trace = pseudo_reduce(f, g, R_UVW, mode="partial")
        assert rem == f
        assert trace.step_count == 0

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            pseudo_reduce(kp(U), kp(V), R_UVW, mode="best")

    def test_divisor_reduces_itself_to_zero(self):
        g = kp(U, x=1).scale(Coefficient.param("nu")) + kp(V)
        rem, _ = pseudo_reduce(g, g, R_UVW)
        assert rem.is_zero()

    def test_derivative_of_divisor_reduces_to_zero(self):
        # theta(g) lies in the differential ideal of g; the remainder must
        # vanish even when the elimination premultiplies by a non-parameter
        # initial and the intermediate becomes exactly zero.
        g = (kp(V) + kp(W)) * kp(U, x=1) + DiffPoly.constant(1)
        f = g.differentiate_multi((1, 0, 0, 0))
        rem, trace = pseudo_reduce(f, g, R_UVW)
        assert rem.is_zero()
        assert all(s.peeled == 0 for s in trace.steps)

    def test_peel_removes_dragged_initial_factors(self):
        # Reducing initial*leader^2 style input drags a power of the initial
        # into the remainder; exact division peels it back off.
        g = (kp(V) + kp(W)) * kp(U, x=1) + DiffPoly.constant(1)
        f = (kp(V) + kp(W)) * kp(U, x=1) * kp(U, x=1)
        rem, trace = pseudo_reduce(f, g, R_UVW)
        assert rem == DiffPoly.constant(1)
        assert any(s.peeled >= 1 for s in trace.steps)

    def test_premultiplier_check_sees_nonparam_initials(self):
        g = kp(V) * kp(U, x=1) + DiffPoly.constant(1)
        f = kp(U, x=2)
        seen = []
        rem, _ = pseudo_reduce(f, g, R_UVW, premultiplier_check=seen.append)
        assert seen and all(p == kp(V) for p in seen)

    def test_on_step_reports_eliminated_keys(self):
        f = kp(U, x=2)
        g = kp(U, x=1) - kp(V)
        hits = []
        pseudo_reduce(f, g, R_UVW, on_step=hits.append)
        assert hits == [k(U, x=2)]

    @given(f=diff_polys(), g=diff_polys(allow_zero=False), r=rankings())
    @settings(max_examples=200)
    def test_remainder_is_fully_reduced(self, f, g, r):
        if g.is_param_only():
            return
        rem, _ = pseudo_reduce(f, g, r)
        assert is_reduced(rem, g, r, "full")

    @given(f=diff_polys(), g=diff_polys(allow_zero=False), r=rankings())
    @settings(max_examples=200)
    def test_replay_reproduces_remainder(self, f, g, r):
        if g.is_param_only():
            return
        rem, trace = pseudo_reduce(f, g, r)
        assert replay_trace(f, [g], trace, r) == rem


# --------------------------------------------------------------------------
# content stripping and normalization
# --------------------------------------------------------------------------


class TestContentAndNormalization:
    def test_strip_content_clears_denominators_and_content(self):
        p = kp(U).scale(Coefficient.from_fraction(2, 3)) \
            + kp(V).scale(Coefficient.from_int(2))
        stripped, unit = strip_content(p)
        assert stripped == kp(U) + kp(V).scale(Coefficient.from_int(3))
        assert p.scale(unit) == stripped

    def test_strip_content_zero(self):
        stripped, unit = strip_content(DiffPoly.zero())
        assert stripped.is_zero() and unit.is_one()

    def test_normalize_leading_param_initial(self):
        p = kp(U, x=1).scale(Coefficient.param("nu").scale_int(2)) + kp(V)
        q = normalize_leading(p, R_UVW)
        ld = leader_data(q, R_UVW)
        assert ld.initial == DiffPoly.constant(1)
        # same zero set: q is p times a unit
        assert q.scale(Coefficient.param("nu").scale_int(2)) == p

    def test_normalize_leading_idempotent(self):
        p = (kp(V) + kp(W)) * kp(U, x=1) + kp(W, t=1)
        q = normalize_leading(p, R_UVW)
        assert normalize_leading(q, R_UVW) == q

    def test_normalize_leading_fixed_points(self):
        z = DiffPoly.zero()
        assert normalize_leading(z, R_UVW) == z
        c = DiffPoly.constant(7)
        assert normalize_leading(c, R_UVW) == c

    def test_gated_content_respects_gate(self):
        p = kp(U, x=1) * kp(V) + kp(U, x=1) * kp(W)
        full = gated_content(p, lambda key: True)
        assert full == Monomial(((k(U, x=1), 1),))
        none = gated_content(p, lambda key: False)
        assert none == UNIT_MONOMIAL
        assert gated_content(p, None) == UNIT_MONOMIAL


# --------------------------------------------------------------------------
# chains
# --------------------------------------------------------------------------


class TestChain:
    def test_valid_chain(self):
        a = kp(W, x=1) + DiffPoly.constant(2)
        b = kp(V) + kp(W)
        c = kp(U, t=1) + kp(V, x=1)
        chain = Chain([c, b, a], Ranking((W, V, U)))
        assert len(chain) == 3
        assert list(chain) == [c, b, a]

    def test_leaders_must_strictly_ascend(self):
        a = kp(U) + kp(V)
        b = kp(U, x=1) + kp(V)
        with pytest.raises(InternalError):
            Chain([b, a], R_UVW)

    def test_elements_must_be_pairwise_autoreduced(self):
        a = kp(V) + kp(W)
        b = kp(U, x=1) + kp(V, y=1)  # v_y is a proper derivative of v
        with pytest.raises(InternalError):
            Chain([a, b], R_UVW)

    def test_zero_and_param_only_elements_rejected(self):
        with pytest.raises(InternalError):
            Chain([DiffPoly.zero()], R_UVW)
        with pytest.raises(InternalError):
            Chain([DiffPoly.constant(3)], R_UVW)

    def test_equality(self):
        a = kp(V) + kp(W)
        assert Chain([a], R_UVW) == Chain([a], R_UVW)
        assert Chain([a], R_UVW) != Chain([a], Ranking((W, V, U)))


# --------------------------------------------------------------------------
# reduction against a chain
# --------------------------------------------------------------------------


class TestReduceAgainstChain:
    def test_reduces_against_every_element(self):
        # u_x -> w_x via u - w, then v -> w_x via v - w_x: remainder zero.
        chain = [kp(V) - kp(W, x=1), kp(U) - kp(W)]
        f = kp(U, x=1) - kp(V)
        rem, trace = reduce_against_chain(f, chain, R_UVW)
        assert rem.is_zero()
        assert trace.step_count == 2

    def test_empty_chain_is_identity(self):
        f = kp(U, x=1)
        rem, trace = reduce_against_chain(f, [], R_UVW)
        assert rem == f and trace.step_count == 0

    def test_replay_with_multiple_divisors(self):
        divisors = [kp(V) - kp(W, x=1), kp(U) - kp(W)]
        f = kp(U, x=1) * kp(U, x=1) + kp(V, t=1)
        rem, trace = reduce_against_chain(f, divisors, R_UVW)
        assert replay_trace(f, divisors, trace, R_UVW) == rem

    def test_replay_detects_divisor_mismatch(self):
        divisors = [kp(U) - kp(V)]
        f = kp(U, x=1)
        rem, trace = reduce_against_chain(f, divisors, R_UVW)
        assert rem == kp(V, x=1)
        wrong = [kp(U) - kp(W)]
        assert replay_trace(f, wrong, trace, R_UVW) != rem


# --------------------------------------------------------------------------
# autoreduce
# --------------------------------------------------------------------------


class TestAutoreduce:
    def test_triangularizes_linear_system(self):
        system = [kp(U, x=1) - kp(V), kp(U) - kp(W)]
        chain = autoreduce(system, R_UVW)
        assert chain.elements == (kp(V) - kp(W, x=1), kp(U) - kp(W))

    def test_drops_zero_and_duplicate_inputs(self):
        p = kp(U) - kp(W)
        chain = autoreduce([DiffPoly.zero(), p, p], R_UVW)
        assert chain.elements == (p,)

    def test_empty_input_gives_empty_chain(self):
        assert len(autoreduce([], R_UVW)) == 0

    def test_param_only_input_is_inconsistent(self):
        with pytest.raises(InconsistentSystem):
            autoreduce([DiffPoly.constant(1)], R_UVW)

    def test_derived_param_only_is_inconsistent(self):
        # u - 1 and u - 2 force 1 = 2.
        a = kp(U) - DiffPoly.constant(1)
        b = kp(U) - DiffPoly.constant(2)
        with pytest.raises(InconsistentSystem):
            autoreduce([a, b], R_UVW)

    def test_idempotent_on_own_output(self):
        system = [kp(U, x=1) - kp(V), kp(U) - kp(W), kp(V, t=1) - kp(W, x=1)]
        chain = autoreduce(system, R_UVW)
        again = autoreduce(chain.elements, R_UVW)
        assert again == chain

    def test_output_is_valid_chain(self):
        system = [kp(U, x=1) - kp(V), kp(U) - kp(W)]
        chain = autoreduce(system, R_UVW)
        # re-validate explicitly: strictly ascending and pairwise reduced
        Chain(chain.elements, R_UVW, validate=True)
