"""Rankings on derivative keys, and leader data of polynomials.

A ranking is a strict total order on derivative keys: elimination blocks
dominate (any derivative of a higher-block indeterminate outranks every
derivative of a lower-block one), then total derivative order, then a
lexicographic tie-break on the multi-index read in derivation-precedence
order.  Both ranking axioms hold by construction: differentiation raises
the total order without changing the block, and adding the same
multi-index to both sides preserves every comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import (DuplicateEntry, MissingIndeterminate, NoLeader,
                     UnknownIndeterminate, ZeroPolynomial)
from .poly import (DEPENDENT, DERIVATIONS, DerivativeKey, DiffPoly,
                   Indeterminate, is_proper_derivative)

LT, EQ, GT = -1, 0, 1

DEFAULT_PRECEDENCE = ("x", "y", "z", "t")


@dataclass(frozen=True)
class Ranking:
    """Elimination blocks (highest first) plus a derivation precedence."""

    blocks: tuple[Indeterminate, ...]
    precedence: tuple[str, ...] = DEFAULT_PRECEDENCE
    _index: dict = field(init=False, repr=False, compare=False, hash=False, default=None)
    _perm: tuple = field(init=False, repr=False, compare=False, hash=False, default=None)

    def __post_init__(self):
        if not self.blocks:
            raise MissingIndeterminate("ranking has no blocks")
        index: dict[str, int] = {}
        for i, ind in enumerate(self.blocks):
            if ind.kind != DEPENDENT:
                raise UnknownIndeterminate(
                    f"parameter {ind.name!r} cannot appear in a ranking")
            if ind.name in index:
                raise DuplicateEntry(f"indeterminate {ind.name!r} listed twice")
            index[ind.name] = i
        if sorted(self.precedence) != sorted(DERIVATIONS):
            raise ValueError(f"precedence must permute {DERIVATIONS}")
        perm = tuple(DERIVATIONS.index(d) for d in self.precedence)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_perm", perm)

    def block_of(self, ind: Indeterminate) -> int:
        try:
            return self._index[ind.name]
        except KeyError:
            raise UnknownIndeterminate(
                f"indeterminate {ind.name!r} is not in the ranking") from None

    def key_rank(self, key: DerivativeKey):
        """A tuple that orders keys exactly as the ranking does (bigger = higher)."""
        alpha = key.alpha
        return (len(self.blocks) - self.block_of(key.base),
                key.order,
                tuple(alpha[i] for i in self._perm))

    def names(self) -> tuple[str, ...]:
        return tuple(ind.name for ind in self.blocks)


def compare(a: DerivativeKey, b: DerivativeKey, r: Ranking) -> int:
    ka, kb = r.key_rank(a), r.key_rank(b)
    if ka < kb:
        return LT
    if ka > kb:
        return GT
    return EQ


@dataclass
class LeaderData:
    leader: DerivativeKey
    degree: int
    initial: DiffPoly
    separant: DiffPoly


def leader_data(p: DiffPoly, r: Ranking) -> LeaderData:
    """Leader, its degree, and the initial/separant of ``p`` under ``r``."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no leader")
    if p._ldcache is not None:
        cached = p._ldcache.get(r)
        if cached is not None:
            return cached
    leader = None
    rank = None
    for key in p.keys():
        kr = r.key_rank(key)
        if rank is None or kr > rank:
            leader, rank = key, kr
    if leader is None:
        raise NoLeader("parameter-only polynomial has no leader")
    degree = p.degree_in(leader)
    data = LeaderData(leader=leader,
                      degree=degree,
                      initial=p.coeff_of_power(leader, degree),
                      separant=p.partial_wrt(leader))
    if p._ldcache is None:
        p._ldcache = {}
    p._ldcache[r] = data
    return data


def is_reduced(f: DiffPoly, g: DiffPoly, r: Ranking, mode: str = "full") -> bool:
    """Whether ``f`` is (partially or fully) reduced with respect to ``g``."""
    if mode not in ("full", "partial"):
        raise ValueError(f"unknown reduction mode {mode!r}")
    ld = leader_data(g, r)
    if f.is_zero():
        return True
    for key in f.keys():
        if is_proper_derivative(key, ld.leader):
            return False
    if mode == "full" and f.degree_in(ld.leader) >= ld.degree:
        return False
    return True


def poly_sort_key(p: DiffPoly, r: Ranking):
    """Deterministic total order on polynomials: by leader rank, degree,
    then structure.  Parameter-only polynomials sort below everything."""
    if p.is_zero() or p.is_param_only():
        return ((0,), 0, p.sort_key())
    ld = leader_data(p, r)
    return ((1,) + r.key_rank(ld.leader), ld.degree, p.sort_key())


def make_ranking(names: Iterable[str], dependents: dict[str, Indeterminate],
                 precedence: tuple[str, ...] = DEFAULT_PRECEDENCE) -> Ranking:
    """Build a ranking from names, requiring full coverage of dependents."""
    blocks = []
    seen = set()
    for name in names:
        if name in seen:
            raise DuplicateEntry(f"indeterminate {name!r} listed twice")
        seen.add(name)
        if name not in dependents:
            raise UnknownIndeterminate(f"unknown indeterminate {name!r} in ranking")
        blocks.append(dependents[name])
    missing = sorted(set(dependents) - seen)
    if missing:
        raise MissingIndeterminate(
            "ranking must place every dependent indeterminate; missing: "
            + ", ".join(missing))
    return Ranking(tuple(blocks), tuple(precedence))
