#!/usr/bin/env python3
"""
Text front end: polynomial expressions to MPoly, and the canonical rendering back.

Grammar (explicit ``*`` only, ``^`` binds tightest and takes an integer literal):

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | VAR | "(" expr ")"

Variables match ``[a-z][a-z0-9]*``. Spans are byte offsets into the UTF-8 encoding of the
input so they stay meaningful for non-ASCII text.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from polynomial_reducts.algebra.mpoly import MPoly
from polynomial_reducts.algebra.rational import render_rat
from polynomial_reducts.constants import DEFAULT_MAX_EXPONENT, ParseErrorKind
from polynomial_reducts.exceptions import ParseError, SourceSpan

logger = logging.getLogger(__name__)

_TOKEN_PATTERN = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<var>[a-z][a-z0-9]*)|(?P<op>[-+*^/()])"
)

COMMENT_MARKER = "#"


@dataclass(frozen=True)
class Token:
    """A lexeme with its byte span"""
    kind: str  # "int", "var", "op" or "end"
    text: str
    span: SourceSpan


def _byte_offsets(text: str) -> list[int]:
    """Byte offset of every character index, plus the total length."""
    offsets = [0]
    for ch in text:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))
    return offsets


def tokenize(text: str) -> list[Token]:
    """
    Split text into tokens, ending with an ``end`` token.

    Raises:
        ParseError: (lex) on a character outside the grammar
    """
    offsets = _byte_offsets(text)
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_PATTERN.match(text, pos)
        if match is None:
            raise ParseError(
                f"illegal character {text[pos]!r}",
                kind=ParseErrorKind.LEX.value,
                span=SourceSpan(offsets[pos], offsets[pos + 1]),
                operation="tokenize",
            )
        kind = match.lastgroup or ""
        if kind != "ws":
            tokens.append(
                Token(kind, match.group(), SourceSpan(offsets[pos], offsets[match.end()]))
            )
        pos = match.end()
    tokens.append(Token("end", "", SourceSpan(offsets[-1], offsets[-1])))
    return tokens


class Parser:
    """Recursive-descent parser producing expanded MPoly values."""

    def __init__(self, tokens: list[Token], max_exponent: int = DEFAULT_MAX_EXPONENT):
        self._tokens = tokens
        self._index = 0
        self.max_exponent = max_exponent

    @property
    def token(self) -> Token:
        return self._tokens[self._index]

    def advance(self) -> Token:
        token = self.token
        if token.kind != "end":
            self._index += 1
        return token

    def _is_op(self, *symbols: str) -> bool:
        return self.token.kind == "op" and self.token.text in symbols

    def _syntax_error(self, message: str, token: Token | None = None) -> ParseError:
        token = token or self.token
        found = "end of input" if token.kind == "end" else repr(token.text)
        return ParseError(
            f"{message}, found {found}",
            kind=ParseErrorKind.SYNTAX.value,
            span=token.span,
            operation="parse_poly",
        )

    def _expect_op(self, symbol: str) -> Token:
        if not self._is_op(symbol):
            raise self._syntax_error(f"expected {symbol!r}")
        return self.advance()

    def parse(self) -> MPoly:
        value = self.expr()
        if self.token.kind != "end":
            raise self._syntax_error("unexpected trailing input")
        return value

    def expr(self) -> MPoly:
        value = self.term()
        while self._is_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> MPoly:
        value = self.unary()
        while self._is_op("*"):
            self.advance()
            value = value * self.unary()
        return value

    def unary(self) -> MPoly:
        if self._is_op("-"):
            self.advance()
            return -self.unary()
        return self.power()

    def power(self) -> MPoly:
        base = self.atom()
        if not self._is_op("^"):
            return base
        self.advance()
        token = self.token
        if token.kind != "int":
            raise self._syntax_error("exponent must be a nonnegative integer literal")
        self.advance()
        exponent = int(token.text)
        if exponent > self.max_exponent:
            raise ParseError(
                f"exponent {exponent} exceeds limit {self.max_exponent}",
                kind=ParseErrorKind.OVERFLOW.value,
                span=token.span,
                operation="parse_poly",
            )
        return base ** exponent

    def atom(self) -> MPoly:
        token = self.token
        if token.kind == "int":
            self.advance()
            numerator = int(token.text)
            if not self._is_op("/"):
                return MPoly.constant(numerator)
            self.advance()
            den_token = self.token
            if den_token.kind != "int":
                raise self._syntax_error("expected integer denominator")
            self.advance()
            if int(den_token.text) == 0:
                raise ParseError(
                    "zero denominator in rational literal",
                    kind=ParseErrorKind.SYNTAX.value,
                    span=den_token.span,
                    operation="parse_poly",
                )
            return MPoly.constant(Fraction(numerator, int(den_token.text)))
        if token.kind == "var":
            self.advance()
            return MPoly.variable(token.text)
        if self._is_op("("):
            self.advance()
            value = self.expr()
            self._expect_op(")")
            return value
        raise self._syntax_error("expected a number, variable or '('")


def parse_poly(text: str, max_exponent: int = DEFAULT_MAX_EXPONENT) -> MPoly:
    """
    Parse one polynomial expression.

    Raises:
        ParseError: lex, syntax or overflow (exponent above ``max_exponent``)
    """
    result = Parser(tokenize(text), max_exponent).parse()
    logger.debug("parsed %r into %d terms", text, len(result))
    return result


def parse_collection(text: str, max_exponent: int = DEFAULT_MAX_EXPONENT) -> list[MPoly]:
    """
    Parse one polynomial per non-blank line; ``#`` starts a comment.

    Order and duplicates are preserved. The first failing line is reported with its
    1-based line number.
    """
    polys: list[MPoly] = []
    # only \n ends a line; a trailing \r is dropped
    for number, raw in enumerate(text.split("\n"), start=1):
        line = raw.removesuffix("\r").split(COMMENT_MARKER, 1)[0]
        if not line.strip():
            continue
        try:
            polys.append(parse_poly(line, max_exponent))
        except ParseError as e:
            raise e.with_line(number) from None
    logger.debug("collection has %d polynomials", len(polys))
    return polys


def _render_monomial(ev: tuple[tuple[str, int], ...]) -> str:
    return "*".join(var if exp == 1 else f"{var}^{exp}" for var, exp in ev)


def render(p: MPoly) -> str:
    """Canonical text: graded-lex order, explicit ``*``, coefficient 1 omitted."""
    terms = p.sorted_terms()
    if not terms:
        return "0"
    pieces: list[str] = []
    for index, (ev, coeff) in enumerate(terms):
        magnitude = abs(coeff)
        if not ev:
            body = render_rat(magnitude)
        elif magnitude == 1:
            body = _render_monomial(ev)
        else:
            body = f"{render_rat(magnitude)}*{_render_monomial(ev)}"
        if index == 0:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"{'-' if coeff < 0 else '+'} {body}")
    return " ".join(pieces)
