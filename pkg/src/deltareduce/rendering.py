"""Human and JSON renderings of polynomials, chains, and verdicts.

The human form is valid input for :func:`deltareduce.parsing.parse_system`:
re-parsing a rendered document reproduces the same polynomials (up to the
leading-coefficient normalization a chain already applies).  Coefficients
are printed exactly, as integers and fractions such as ``3/2`` or ``1/nu``
— never as decimals.  Chain elements print as solved equations with the
leader isolated on the left whenever its initial is invertible.
"""

from __future__ import annotations

from typing import Iterable

from .coeffs import Coefficient, _pm_order_key
from .engine import Verdict
from .poly import DERIVATIONS, DerivativeKey, DiffPoly, Monomial
from .ranking import Ranking, leader_data
from .reduction import Chain

__all__ = [
    "SCHEMA_ID", "render_poly", "render_solved", "render_chain",
    "render_verdict", "verdict_payload",
]

SCHEMA_ID = "delta-reduce/1"

_ONE = Coefficient.from_int(1)


# -- coefficient strings ---------------------------------------------------

def _ppoly_str(terms: dict) -> tuple[str, bool]:
    """Render a parameter polynomial; the flag marks a single-term result."""
    if not terms:
        return "0", True
    parts = []
    for mono in sorted(terms, key=_pm_order_key, reverse=True):
        c = terms[mono]
        factors = []
        if abs(c) != 1 or not mono:
            factors.append(str(abs(c)))
        for name, exp in mono:
            factors.append(name if exp == 1 else f"{name}^{exp}")
        parts.append(("-" if c < 0 else "+", "*".join(factors)))
    sign, first = parts[0]
    out = ("-" if sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out, len(parts) == 1


def _coeff_str(c: Coefficient) -> str:
    """Exact rendering of a rational-function coefficient, e.g. ``3*nu/2``."""
    num, num_single = _ppoly_str(c.num)
    den, den_single = _ppoly_str(c.den)
    if den == "1":
        return num if num_single else f"({num})"
    if not num_single:
        num = f"({num})"
    if "*" in den or not den_single:
        den = f"({den})"
    return f"{num}/{den}"


# -- monomial and polynomial strings ----------------------------------------

def _key_str(key: DerivativeKey, precedence: tuple[str, ...]) -> str:
    if key.order == 0:
        return key.base.name
    suffix = "".join(d * key.alpha[DERIVATIONS.index(d)] for d in precedence)
    return f"{key.base.name}_{suffix}"


def _rank_of(key: DerivativeKey, ranking: Ranking | None):
    if ranking is not None:
        return ranking.key_rank(key)
    return (key.order, key._skey)


def _mono_sort_key(mono: Monomial, ranking: Ranking | None):
    return tuple(sorted(((_rank_of(k, ranking), e) for k, e in mono.pairs),
                        reverse=True))


def render_poly(p: DiffPoly, ranking: Ranking | None = None) -> str:
    """Render a differential polynomial as a parseable expression."""
    if p.is_zero():
        return "0"
    precedence = ranking.precedence if ranking is not None else DERIVATIONS
    ordered = sorted(p.terms(), key=lambda t: _mono_sort_key(t[0], ranking),
                     reverse=True)
    pieces: list[tuple[bool, str]] = []
    for mono, coeff in ordered:
        negative = coeff.is_negative()
        if negative:
            coeff = -coeff
        factors = []
        if coeff != _ONE or mono.is_unit():
            factors.append(_coeff_str(coeff))
        for key, exp in sorted(mono.pairs,
                               key=lambda ke: _rank_of(ke[0], ranking),
                               reverse=True):
            name = _key_str(key, precedence)
            factors.append(name if exp == 1 else f"{name}^{exp}")
        pieces.append((negative, "*".join(factors)))
    negative, first = pieces[0]
    out = ("-" if negative else "") + first
    for negative, term in pieces[1:]:
        out += (" - " if negative else " + ") + term
    return out


def render_solved(p: DiffPoly, ranking: Ranking) -> tuple[str, str | None]:
    """Render ``p = 0`` with the leader isolated when possible.

    Returns ``(line, rhs)`` where ``rhs`` is the right-hand side of the
    solved form, or ``None`` when the initial is not invertible and the
    element falls back to the plain ``expr = 0`` shape.
    """
    if p.is_zero():
        return "0 = 0", None
    ld = leader_data(p, ranking)
    if not ld.initial.is_param_only():
        return f"{render_poly(p, ranking)} = 0", None
    unit = next(iter(ld.initial.terms()))[1]
    lead = DiffPoly.from_key(ld.leader, ld.degree)
    rest = p - lead.scale(unit)
    rhs_poly = (-rest).scale(unit.inverse())
    lhs = _key_str(ld.leader, ranking.precedence)
    if ld.degree > 1:
        lhs = f"{lhs}^{ld.degree}"
    rhs = render_poly(rhs_poly, ranking)
    return f"{lhs} = {rhs}", rhs


def render_chain(chain: Chain) -> list[str]:
    """One solved line per chain element, ascending by leader rank."""
    return [render_solved(p, chain.ranking)[0] for p in chain.elements]


# -- whole-verdict renderings ------------------------------------------------

def _param_names(polys: Iterable[DiffPoly]) -> list[str]:
    names: set[str] = set()
    for p in polys:
        for _, coeff in p.terms():
            for part in (coeff.num, coeff.den):
                for mono in part:
                    names.update(n for n, _ in mono)
    return sorted(names)


def _condition_str(cond, ranking: Ranking | None) -> str:
    op = "!=" if cond.assumption == "nonzero" else "=="
    return f"{render_poly(cond.poly, ranking)} {op} 0"


def _all_polys(verdict: Verdict) -> list[DiffPoly]:
    polys = [p for chain in verdict.chains for p in chain.elements]
    for conds in verdict.branch_conditions:
        polys.extend(c.poly for c in conds)
    return polys


def _ranking_line(ranking: Ranking) -> str:
    line = "ranking " + " > ".join(ranking.names())
    if ranking.precedence != DERIVATIONS:
        line += "; prec " + ",".join(ranking.precedence)
    return line


def render_verdict(verdict: Verdict, ranking: Ranking) -> str:
    """Full human report; the non-comment lines form a parseable system."""
    lines = [f"# outcome: {verdict.outcome}"]
    if verdict.reason:
        lines.append(f"# reason: {verdict.reason}")
    s = verdict.stats
    lines.append(f"# steps: {s.total_steps}  leaders: {s.distinct_leaders_seen}"
                 f"  max-order: {s.max_order_reached}")
    params = _param_names(_all_polys(verdict))
    if params:
        lines.append("param " + ", ".join(params) + ";")
    lines.append("var " + ", ".join(ranking.names()) + ";")
    lines.append(_ranking_line(ranking))
    for i, chain in enumerate(verdict.chains):
        conds = (verdict.branch_conditions[i]
                 if i < len(verdict.branch_conditions) else [])
        label = (", ".join(_condition_str(c, ranking) for c in conds)
                 or "no assumptions")
        lines.append(f"# branch {i + 1} of {len(verdict.chains)}: {label}")
        lines.extend(render_chain(chain))
    return "\n".join(lines) + "\n"


def verdict_payload(verdict: Verdict, ranking: Ranking) -> dict:
    """JSON-ready dictionary for a verdict under the package schema."""
    chains = []
    for chain in verdict.chains:
        element_list = []
        for p in chain.elements:
            _, rhs = render_solved(p, ranking)
            ld = leader_data(p, ranking)
            element_list.append({
                "leader": _key_str(ld.leader, ranking.precedence),
                "rhs": rhs,
                "poly": render_poly(p, ranking),
            })
        chains.append(element_list)
    return {
        "schema": SCHEMA_ID,
        "kind": "verdict",
        "outcome": verdict.outcome,
        "reason": verdict.reason,
        "ranking": {"blocks": list(ranking.names()),
                    "precedence": list(ranking.precedence)},
        "chains": chains,
        "stats": {
            "total_steps": verdict.stats.total_steps,
            "distinct_leaders_seen": verdict.stats.distinct_leaders_seen,
            "max_order_reached": verdict.stats.max_order_reached,
        },
        "branch_conditions": [
            [{"poly": render_poly(c.poly, ranking), "assumption": c.assumption}
             for c in conds]
            for conds in verdict.branch_conditions
        ],
    }
