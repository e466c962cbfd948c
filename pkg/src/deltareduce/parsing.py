"""Text format for differential-polynomial systems and rankings.

A system file is line oriented.  ``#`` starts a comment that runs to the
end of the line; blank lines are skipped.  Each remaining line is one
statement, optionally terminated by ``;``:

* ``param nu, eps;`` declares scalar parameters.
* ``var u, v, p;`` declares dependent indeterminates.
* ``ranking u > v > p; prec x,y,z,t`` fixes the elimination order (the
  whole rest of the line uses the same syntax as :func:`parse_ranking`).
* anything else is an equation: either a bare expression (read as
  ``expr = 0``) or ``lhs = rhs`` (read as ``lhs - rhs``).

Expressions use ``+ - * / ^`` with integer exponents and parentheses.
Division is only defined by parameter expressions (``1/2``, ``u_x/nu``).
A dependent name may carry a derivative suffix: an underscore followed
by derivation letters, order-insensitive, so ``u_xy`` and ``u_yx`` are
the same derivative.  Apostrophes are legal inside names (``u'``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .coeffs import Coefficient
from .errors import (DuplicateEntry, ParseError, UndeclaredSymbol,
                     UnknownIndeterminate)
from .poly import (DEPENDENT, DERIVATIONS, DerivativeKey, DiffPoly,
                   Indeterminate)
from .ranking import DEFAULT_PRECEDENCE, Ranking

__all__ = ["SystemFile", "parse_system", "parse_system_file", "parse_ranking"]

_AXIS = {name: i for i, name in enumerate(DERIVATIONS)}

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<comment>\#[^\n]*)
      | (?P<name>[A-Za-z][A-Za-z0-9']*(?:_[A-Za-z]+)?)
      | (?P<int>\d+)
      | (?P<op>[-+*/^()=>,;])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "name" | "int" | "op" | "end"
    text: str
    line: int
    column: int


def _tokenize_line(text: str, line_no: int, col_base: int = 1) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}",
                             line_no, col_base + pos)
        pos = m.end()
        kind = m.lastgroup
        if kind in ("ws", "comment"):
            continue
        tokens.append(_Token(kind, m.group(), line_no, col_base + m.start()))
    tokens.append(_Token("end", "", line_no, col_base + len(text)))
    return tokens


class _Cursor:
    """A peekable stream over one statement's tokens."""

    def __init__(self, tokens: list[_Token]):
        self._tokens = tokens
        self._i = 0

    def peek(self) -> _Token:
        return self._tokens[self._i]

    def next(self) -> _Token:
        tok = self._tokens[self._i]
        if tok.kind != "end":
            self._i += 1
        return tok

    def take_op(self, text: str) -> bool:
        tok = self.peek()
        if tok.kind == "op" and tok.text == text:
            self.next()
            return True
        return False

    def expect_op(self, text: str) -> _Token:
        tok = self.next()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}", tok.line, tok.column)
        return tok

    def expect_end(self):
        self.take_op(";")
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r} after statement",
                             tok.line, tok.column)


def _split_name(tok: _Token) -> tuple[str, str | None]:
    """Split a name token into (base, derivative-suffix-or-None)."""
    text = tok.text
    if "_" not in text:
        return text, None
    base, suffix = text.split("_", 1)
    return base, suffix


@dataclass(frozen=True)
class SystemFile:
    """A parsed system: declarations, equations, and an optional ranking."""

    parameters: tuple[str, ...]
    dependents: tuple[Indeterminate, ...]
    equations: tuple[DiffPoly, ...]
    ranking: Ranking | None

    @property
    def dependent_map(self) -> dict[str, Indeterminate]:
        return {ind.name: ind for ind in self.dependents}


class _ExprParser:
    """Recursive-descent parser for one expression statement."""

    def __init__(self, cursor: _Cursor, params: set[str],
                 dependents: dict[str, Indeterminate]):
        self.cur = cursor
        self.params = params
        self.dependents = dependents

    # expr := ['+'|'-'] product (('+'|'-') product)*
    def expr(self) -> DiffPoly:
        negate = False
        if self.cur.take_op("-"):
            negate = True
        else:
            self.cur.take_op("+")
        acc = self.product()
        if negate:
            acc = -acc
        while True:
            if self.cur.take_op("+"):
                acc = acc + self.product()
            elif self.cur.take_op("-"):
                acc = acc - self.product()
            else:
                return acc

    # product := power (('*'|'/') power)*
    def product(self) -> DiffPoly:
        acc = self.power()
        while True:
            if self.cur.take_op("*"):
                acc = acc * self.power()
            elif self.cur.take_op("/"):
                tok = self.cur.peek()
                divisor = self.power()
                if divisor.is_zero():
                    raise ParseError("division by zero", tok.line, tok.column)
                if not divisor.is_param_only():
                    raise ParseError(
                        "can only divide by a parameter expression",
                        tok.line, tok.column)
                unit = next(iter(divisor.terms()))[1]
                acc = acc.scale(unit.inverse())
            else:
                return acc

    # power := atom ['^' INT]
    def power(self) -> DiffPoly:
        base = self.atom()
        if self.cur.take_op("^"):
            tok = self.cur.next()
            if tok.kind != "int":
                raise ParseError("exponent must be a nonnegative integer",
                                 tok.line, tok.column)
            return base ** int(tok.text)
        return base

    # atom := INT | NAME | '(' expr ')'
    def atom(self) -> DiffPoly:
        tok = self.cur.next()
        if tok.kind == "int":
            return DiffPoly.constant(int(tok.text))
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr()
            self.cur.expect_op(")")
            return inner
        if tok.kind == "name":
            return self._name_atom(tok)
        raise ParseError(f"expected a term, found {tok.text or 'end of line'!r}",
                         tok.line, tok.column)

    def _name_atom(self, tok: _Token) -> DiffPoly:
        base, suffix = _split_name(tok)
        if base in self.params:
            if suffix is not None:
                raise ParseError(
                    f"parameter {base!r} takes no derivative suffix",
                    tok.line, tok.column)
            return DiffPoly.constant(Coefficient.param(base))
        ind = self.dependents.get(base)
        if ind is None:
            raise UndeclaredSymbol(f"undeclared symbol {base!r}",
                                   tok.line, tok.column)
        alpha = [0, 0, 0, 0]
        for letter in suffix or "":
            axis = _AXIS.get(letter)
            if axis is None:
                raise ParseError(
                    f"unknown derivation letter {letter!r} in {tok.text!r}",
                    tok.line, tok.column)
            alpha[axis] += 1
        return DiffPoly.from_key(DerivativeKey(ind, tuple(alpha)))


def _parse_decl_names(cur: _Cursor) -> list[_Token]:
    names = []
    while True:
        tok = cur.next()
        if tok.kind != "name":
            raise ParseError("expected a name in declaration",
                             tok.line, tok.column)
        if "_" in tok.text:
            raise ParseError("declared names cannot carry derivative suffixes",
                             tok.line, tok.column)
        names.append(tok)
        if not cur.take_op(","):
            cur.expect_end()
            return names


def parse_system_file(text: str) -> SystemFile:
    """Parse a full system file into declarations, equations, and ranking."""
    params: set[str] = set()
    dependents: dict[str, Indeterminate] = {}
    equations: list[DiffPoly] = []
    ranking_parts: tuple[str, int, int] | None = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0]
        if not stripped.strip():
            continue
        tokens = _tokenize_line(stripped, line_no)
        cur = _Cursor(tokens)
        head = cur.peek()

        if head.kind == "name" and head.text in ("param", "var"):
            cur.next()
            for tok in _parse_decl_names(cur):
                if tok.text in params or tok.text in dependents:
                    raise ParseError(f"{tok.text!r} declared twice",
                                     tok.line, tok.column)
                if head.text == "param":
                    params.add(tok.text)
                else:
                    dependents[tok.text] = Indeterminate(tok.text, DEPENDENT)
            continue

        if head.kind == "name" and head.text == "ranking":
            if ranking_parts is not None:
                raise ParseError("duplicate ranking statement",
                                 head.line, head.column)
            rest = stripped.split("ranking", 1)[1]
            ranking_parts = (rest, line_no, len(stripped) - len(rest) + 1)
            continue

        lhs = _ExprParser(cur, params, dependents).expr()
        if cur.take_op("="):
            rhs = _ExprParser(cur, params, dependents).expr()
            lhs = lhs - rhs
        cur.expect_end()
        equations.append(lhs)

    ranking = None
    if ranking_parts is not None:
        rest, line_no, col = ranking_parts
        ranking = parse_ranking(rest, dependents=dependents,
                                line=line_no, column=col)

    return SystemFile(parameters=tuple(sorted(params)),
                      dependents=tuple(dependents.values()),
                      equations=tuple(equations),
                      ranking=ranking)


def parse_system(text: str) -> list[DiffPoly]:
    """Parse a system file and return just its equations."""
    return list(parse_system_file(text).equations)


def parse_ranking(text: str, dependents: dict[str, Indeterminate] | None = None,
                  line: int = 1, column: int = 1) -> Ranking:
    """Parse ``a > b > c`` with an optional ``; prec x,y,z,t`` tail.

    When ``dependents`` is given, every listed name must be one of them
    (:class:`UnknownIndeterminate` otherwise) and the returned blocks
    reuse those objects; otherwise names become fresh indeterminates.
    Listing a name twice raises :class:`DuplicateEntry`.
    """
    head, _, tail = text.partition(";")
    cur = _Cursor(_tokenize_line(head, line, column))

    blocks: list[Indeterminate] = []
    seen: set[str] = set()
    while True:
        tok = cur.next()
        if tok.kind != "name" or "_" in tok.text:
            raise ParseError("expected an indeterminate name in ranking",
                             tok.line, tok.column)
        if tok.text in seen:
            raise DuplicateEntry(f"indeterminate {tok.text!r} listed twice")
        seen.add(tok.text)
        if dependents is None:
            blocks.append(Indeterminate(tok.text, DEPENDENT))
        elif tok.text in dependents:
            blocks.append(dependents[tok.text])
        else:
            raise UnknownIndeterminate(
                f"unknown indeterminate {tok.text!r} in ranking")
        if not cur.take_op(">"):
            cur.expect_end()
            break

    precedence = DEFAULT_PRECEDENCE
    if tail.strip():
        pcur = _Cursor(_tokenize_line(tail, line, column + len(head) + 1))
        tok = pcur.next()
        if tok.kind != "name" or tok.text != "prec":
            raise ParseError("expected 'prec' after ';' in ranking",
                             tok.line, tok.column)
        letters: list[str] = []
        while True:
            tok = pcur.next()
            if tok.kind != "name" or tok.text not in DERIVATIONS:
                raise ParseError(
                    f"precedence entries must be one of {', '.join(DERIVATIONS)}",
                    tok.line, tok.column)
            if tok.text in letters:
                raise DuplicateEntry(f"derivation {tok.text!r} listed twice")
            letters.append(tok.text)
            if not pcur.take_op(","):
                pcur.expect_end()
                break
        if sorted(letters) != sorted(DERIVATIONS):
            raise ParseError("precedence must list all of "
                             + ", ".join(DERIVATIONS), line, column)
        precedence = tuple(letters)

    return Ranking(tuple(blocks), precedence)
