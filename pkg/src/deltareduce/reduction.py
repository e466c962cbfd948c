"""Pseudo-reduction, autoreduced chains, and the characteristic-set loop.

One *elementary elimination* removes the highest offending occurrence of a
divisor's leader (or a proper derivative of it) from the polynomial being
reduced, premultiplying by the divisor's initial or separant as required
by Ritt pseudo-division.  The premultiplier is kept minimal: any power
product and rational-function content shared between the initial and the
coefficient being cancelled is divided out first, which is what keeps long
reductions from accumulating extraneous factors.  Traces record exactly
what was applied per step — ``f <- premultiplier*f - multiplier*theta(g)``
followed by a unit rescale and an exact monomial-content division — so a
replay needs no recomputation beyond differentiating the divisors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .coeffs import ONE as COEFF_ONE
from .coeffs import Coefficient, common_unit
from .errors import InconsistentSystem, InternalError
from .poly import (UNIT_MONOMIAL, DerivativeKey, DiffPoly, Monomial,
                   derivative_offset, is_proper_derivative, monomial_gcd)
from .ranking import LeaderData, Ranking, is_reduced, leader_data, poly_sort_key

OnStep = Callable[[DerivativeKey], None]
PremultiplierCheck = Callable[[DiffPoly], None]
ContentGate = Callable[[DerivativeKey], bool]

_ZERO_THETA = (0, 0, 0, 0)


@dataclass(frozen=True)
class ReductionStep:
    """One elementary elimination against divisor ``divisor`` differentiated
    by ``theta``: subtract ``multiplier`` times that derivative from
    ``premultiplier`` times the polynomial, rescale by the unit ``scale``,
    divide out the power product ``strip``, then divide by the
    premultiplier itself ``peeled`` times (each division exact)."""
    divisor: int
    theta: tuple[int, int, int, int]
    premultiplier: DiffPoly
    multiplier: DiffPoly
    scale: Coefficient = COEFF_ONE
    strip: Monomial = UNIT_MONOMIAL
    peeled: int = 0


@dataclass
class ReductionTrace:
    steps: list[ReductionStep] = field(default_factory=list)

    @property
    def step_count(self) -> int:
        return len(self.steps)


def strip_content(p: DiffPoly) -> tuple[DiffPoly, Coefficient]:
    """Scale ``p`` by the unit clearing denominators and shared numerator
    content; returns the stripped polynomial and the unit applied.

    Parameters are globally nonzero, so this preserves the zero set.  It
    keeps coefficient growth in check during long pseudo-reductions.
    """
    if p.is_zero():
        return p, COEFF_ONE
    unit = common_unit(c for _, c in p.terms())
    if unit.is_one():
        return p, unit
    return p.scale(unit), unit


def normalize_leading(p: DiffPoly, r: Ranking) -> DiffPoly:
    """Scale ``p`` by a unit so the leading term is deterministic.

    When the initial is parameter-only this makes the leader's coefficient
    exactly 1, so solved forms read ``leader = rhs``.  Otherwise the
    structurally smallest monomial carrying the full leader power gets
    coefficient 1, which is an arbitrary but stable choice.
    """
    if p.is_zero() or p.is_param_only():
        return p
    ld = leader_data(p, r)
    candidates = [m for m in p.monomials() if m.degree_of(ld.leader) == ld.degree]
    anchor = min(candidates, key=lambda m: m._skey)
    c = p.coeff_of(anchor)
    if c.is_one():
        return p
    return p.scale(c.inverse())


def _find_offender(f: DiffPoly, divisors: Sequence[tuple[DiffPoly, LeaderData]],
                   r: Ranking, mode: str):
    """Highest offending occurrence in ``f``; ties go to the divisor with
    the highest-ranked leader.  Returns (key, divisor_index) or None."""
    best = None
    best_rank = None
    for idx, (_, ld) in enumerate(divisors):
        lrank = r.key_rank(ld.leader)
        for key in f.keys():
            if is_proper_derivative(key, ld.leader):
                pass
            elif mode == "full" and key == ld.leader and f.degree_in(key) >= ld.degree:
                pass
            else:
                continue
            cand = (r.key_rank(key), lrank)
            if best_rank is None or cand > best_rank:
                best_rank = cand
                best = (key, idx)
    return best


def gated_content(p: DiffPoly, gate: ContentGate | None) -> Monomial:
    """Power product dividing every term of ``p``, restricted to derivatives
    the gate allows (those already assumed nonzero on the current branch)."""
    if gate is None or p.is_zero():
        return UNIT_MONOMIAL
    mono = p.monomial_content()
    if mono.is_unit():
        return mono
    pairs = tuple((key, exp) for key, exp in mono.pairs if gate(key))
    if not pairs:
        return UNIT_MONOMIAL
    return Monomial(pairs)


def _reduce_core(f: DiffPoly, divisors: Sequence[tuple[DiffPoly, LeaderData]],
                 r: Ranking, mode: str, trace: ReductionTrace,
                 on_step: OnStep | None,
                 premultiplier_check: PremultiplierCheck | None,
                 content_gate: ContentGate | None) -> DiffPoly:
    while not f.is_zero():
        hit = _find_offender(f, divisors, r, mode)
        if hit is None:
            break
        v, idx = hit
        g, ld_g = divisors[idx]
        theta = derivative_offset(v, ld_g.leader)
        if any(theta):
            h = g.differentiate_multi(theta)
            ld_h = leader_data(h, r)
            if ld_h.leader != v or ld_h.degree != 1:
                raise InternalError("derivative of divisor has unexpected leader")
        else:
            h, ld_h = g, ld_g
        d = f.degree_in(v)
        c = f.coeff_of_power(v, d)
        initial = ld_h.initial
        # Reduced pseudo-division: cancel the power product shared by the
        # initial and the coefficient it must clear, instead of multiplying
        # it in only to have it divide every term of the result.  The
        # combination premult*f - mult*theta(g) is the exact quotient of the
        # classical one by the shared factor, and that factor divides the
        # initial, which the quotient-branch semantics already invert.
        shared = monomial_gcd(initial.monomial_content(), c.monomial_content())
        if not shared.is_unit():
            initial = initial.divide_monomial(shared)
            c = c.divide_monomial(shared)
        cunit = common_unit(coef for _, coef in initial.terms())
        if not cunit.is_one():
            initial = initial.scale(cunit)
            c = c.scale(cunit)
        if premultiplier_check is not None and not initial.is_param_only():
            premultiplier_check(initial)
        if on_step is not None:
            # Observe and count the target before the expensive arithmetic
            # so budget caps fire without paying for the aborted step.
            on_step(v)
        power = d - ld_h.degree
        mult = c.mul_monomial(Monomial(((v, power),))) if power else c
        f = initial * f - mult * h
        if f.degree_in(v) >= d:
            raise InternalError("elimination failed to lower the target degree")
        f, unit = strip_content(f)
        strip = gated_content(f, content_gate)
        if not strip.is_unit():
            f = f.divide_monomial(strip)
        # Pseudo-division drags powers of the initial into the result as
        # exact factors; peel them back off while division stays exact
        # (the initial is in the saturated set, so the quotient generates
        # the same saturation ideal).
        peeled = 0
        if not initial.is_param_only():
            while not f.is_zero():
                q = f.divide_exact(initial)
                if q is None:
                    break
                f = q
                peeled += 1
        trace.steps.append(
            ReductionStep(idx, theta, initial, mult, unit, strip, peeled))
    if trace.steps and not f.is_zero():
        f = normalize_leading(f, r)
    return f


def pseudo_reduce(f: DiffPoly, g: DiffPoly, r: Ranking, mode: str = "full",
                  on_step: OnStep | None = None,
                  premultiplier_check: PremultiplierCheck | None = None,
                  content_gate: ContentGate | None = None
                  ) -> tuple[DiffPoly, ReductionTrace]:
    """Ritt pseudo-reduction of ``f`` by a single nonzero divisor ``g``."""
    if mode not in ("full", "partial"):
        raise ValueError(f"unknown reduction mode {mode!r}")
    ld = leader_data(g, r)
    trace = ReductionTrace()
    remainder = _reduce_core(f, [(g, ld)], r, mode, trace, on_step,
                             premultiplier_check, content_gate)
    return remainder, trace


class Chain:
    """An autoreduced list of polynomials, strictly ascending by leader rank."""

    __slots__ = ("elements", "ranking")

    def __init__(self, elements: Iterable[DiffPoly], ranking: Ranking,
                 validate: bool = True):
        elems = tuple(elements)
        self.elements = elems
        self.ranking = ranking
        if validate:
            self._validate()

    def _validate(self):
        r = self.ranking
        datas = []
        for p in self.elements:
            if p.is_zero() or p.is_param_only():
                raise InternalError("chain element without a leader")
            datas.append(leader_data(p, r))
        for a, b in zip(datas, datas[1:]):
            if not r.key_rank(a.leader) < r.key_rank(b.leader):
                raise InternalError("chain leaders not strictly ascending")
        for i, p in enumerate(self.elements):
            for j, q in enumerate(self.elements):
                if i != j and not is_reduced(p, q, r, "full"):
                    raise InternalError("chain is not pairwise autoreduced")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.elements == other.elements and self.ranking == other.ranking

    def __repr__(self):
        return f"Chain({list(self.elements)!r})"


def reduce_against_chain(f: DiffPoly, chain: Chain | Sequence[DiffPoly],
                         r: Ranking, mode: str = "full",
                         on_step: OnStep | None = None,
                         premultiplier_check: PremultiplierCheck | None = None,
                         content_gate: ContentGate | None = None
                         ) -> tuple[DiffPoly, ReductionTrace]:
    """Fully reduce ``f`` against every chain element (highest leaders first)."""
    elements = list(chain.elements if isinstance(chain, Chain) else chain)
    trace = ReductionTrace()
    if not elements:
        return f, trace
    divisors = [(g, leader_data(g, r)) for g in elements]
    remainder = _reduce_core(f, divisors, r, mode, trace, on_step,
                             premultiplier_check, content_gate)
    return remainder, trace


def replay_trace(f: DiffPoly, divisors: Sequence[DiffPoly], trace: ReductionTrace,
                 r: Ranking) -> DiffPoly:
    """Re-run a recorded reduction; must reproduce the remainder exactly."""
    cur = f
    for step in trace.steps:
        g = divisors[step.divisor]
        h = g.differentiate_multi(step.theta) if any(step.theta) else g
        cur = step.premultiplier * cur - step.multiplier * h
        cur = cur.scale(step.scale)
        if not step.strip.is_unit():
            cur = cur.divide_monomial(step.strip)
        for _ in range(step.peeled):
            q = cur.divide_exact(step.premultiplier)
            if q is None:
                raise InternalError("recorded peel no longer divides")
            cur = q
    if trace.steps and not cur.is_zero():
        cur = normalize_leading(cur, r)
    return cur


def basic_set(work: list[DiffPoly], r: Ranking) -> list[DiffPoly]:
    """Lowest-rank autoreduced subset, scanning in ascending rank order."""
    basic: list[DiffPoly] = []
    for p in sorted(work, key=lambda q: poly_sort_key(q, r)):
        if all(is_reduced(p, b, r, "full") for b in basic):
            basic.append(p)
    return basic


def autoreduce(polys: Iterable[DiffPoly], r: Ranking,
               on_step: OnStep | None = None,
               premultiplier_check: PremultiplierCheck | None = None,
               on_new_poly: Callable[[DiffPoly], None] | None = None,
               on_reduction: Callable[[], None] | None = None,
               content_gate: ContentGate | None = None) -> Chain:
    """Characteristic-set loop: pick a basic set, reduce the rest, repeat.

    Raises InconsistentSystem if a nonzero parameter-only polynomial is
    derived at any point.
    """
    work: list[DiffPoly] = []
    for p in polys:
        if p.is_zero():
            continue
        if p.is_param_only():
            raise InconsistentSystem(
                "nonzero parameter-only polynomial in the system")
        if p not in work:
            work.append(p)
    if not work:
        return Chain((), r, validate=False)
    while True:
        basic = basic_set(work, r)
        fresh: list[DiffPoly] = []
        for p in work:
            if any(p is b for b in basic):
                continue
            rem, _ = reduce_against_chain(p, basic, r, "full", on_step,
                                          premultiplier_check, content_gate)
            if on_reduction is not None:
                on_reduction()
            if rem.is_zero():
                continue
            if rem.is_param_only():
                raise InconsistentSystem(
                    "reduction produced a nonzero parameter-only polynomial")
            if rem not in work and rem not in fresh:
                fresh.append(rem)
                if on_new_poly is not None:
                    on_new_poly(rem)
        if not fresh:
            return Chain([normalize_leading(p, r) for p in basic], r,
                         validate=False)
        work.extend(fresh)
