"""
Two textual forms of concept expressions.

The KB file uses prefix s-expressions, ``(and A (some r B))``; results use the
readable infix form produced by ``render_solution``,
``A and (r some B)``. Both parse back to the same canonical expression.
"""

import re
from typing import NamedTuple

from ..core.exceptions import KBSyntaxException
from ..models.concepts import (
    TOP_NAME,
    THING,
    Atomic,
    ConceptExpression,
    Conj,
    Disj,
    Exists,
    Neg,
    Signature,
    canonicalize,
)

NAME_PATTERN = r"[A-Za-z_][A-Za-z0-9_.\-]*"
KEYWORDS = frozenset({"and", "or", "not", "some"})

_TOKEN = re.compile(rf"\s*(?:(?P<open>\()|(?P<close>\))|(?P<name>{NAME_PATTERN})|(?P<bad>\S))")


class Token(NamedTuple):
    kind: str
    text: str
    column: int


def tokenize(text: str, line: int | None = None) -> list[Token]:
    tokens = []
    for match in _TOKEN.finditer(text):
        kind = match.lastgroup
        if kind is None:
            continue
        if kind == "bad":
            raise KBSyntaxException(
                f"unexpected character {match.group(kind)!r} at column {match.start(kind) + 1}",
                line,
            )
        tokens.append(Token(kind, match.group(kind), match.start(kind) + 1))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[Token], line: int | None):
        self.tokens = tokens
        self.pos = 0
        self.line = line

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise KBSyntaxException("unexpected end of expression", self.line)
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            wanted = text or kind
            raise KBSyntaxException(
                f"expected {wanted!r} at column {tok.column}, found {tok.text!r}",
                self.line,
            )
        return tok

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise KBSyntaxException(
                f"trailing input {tok.text!r} at column {tok.column}", self.line
            )


def _concept(name: Token, signature: Signature, cursor: _Cursor) -> ConceptExpression:
    if name.text in KEYWORDS:
        raise KBSyntaxException(
            f"keyword {name.text!r} used as a name at column {name.column}", cursor.line
        )
    if name.text == TOP_NAME:
        return THING
    return Atomic(signature.concept(name.text))


# s-expressions


def parse_sexpr(
    text: str, signature: Signature, line: int | None = None
) -> ConceptExpression:
    """Parse ``name | (and e e …) | (or e e …) | (not e) | (some role e)``."""
    cursor = _Cursor(tokenize(text, line), line)
    expr = _sexpr(cursor, signature)
    cursor.done()
    return canonicalize(expr)


def _sexpr(cursor: _Cursor, signature: Signature) -> ConceptExpression:
    tok = cursor.next()
    if tok.kind == "name":
        return _concept(tok, signature, cursor)
    if tok.kind != "open":
        raise KBSyntaxException(
            f"unexpected {tok.text!r} at column {tok.column}", cursor.line
        )
    op = cursor.expect("name")
    if op.text == "some":
        role = signature.role(cursor.expect("name").text)
        filler = _sexpr(cursor, signature)
        cursor.expect("close")
        return Exists(role, filler)
    if op.text == "not":
        child = _sexpr(cursor, signature)
        cursor.expect("close")
        return Neg(child)
    if op.text in ("and", "or"):
        children = []
        while (nxt := cursor.peek()) is not None and nxt.kind != "close":
            children.append(_sexpr(cursor, signature))
        cursor.expect("close")
        if len(children) < 2:
            raise KBSyntaxException(
                f"'{op.text}' needs at least two operands (column {op.column})",
                cursor.line,
            )
        return Conj(tuple(children)) if op.text == "and" else Disj(tuple(children))
    raise KBSyntaxException(
        f"unknown operator {op.text!r} at column {op.column}", cursor.line
    )


def to_sexpr(expr: ConceptExpression) -> str:
    return canonicalize(expr).key


# readable infix form


def render_solution(expr: ConceptExpression) -> str:
    """
    Render with the keywords and / or / not / some.

    Every compound operand is parenthesized, so the text is unambiguous.
    """
    if isinstance(expr, Atomic):
        return expr.concept.name
    if isinstance(expr, Neg):
        return f"not {_operand(expr.child)}"
    if isinstance(expr, Exists):
        return f"{expr.role.name} some {_operand(expr.filler)}"
    joiner = " and " if isinstance(expr, Conj) else " or "
    return joiner.join(_operand(c) for c in expr.children)


def _operand(expr: ConceptExpression) -> str:
    if isinstance(expr, Atomic):
        return expr.concept.name
    return f"({render_solution(expr)})"


def parse_solution(text: str, signature: Signature) -> ConceptExpression:
    """Parse the infix form; precedence is or < and < not / some."""
    cursor = _Cursor(tokenize(text), None)
    expr = _disjunction(cursor, signature)
    cursor.done()
    return canonicalize(expr)


def _is_keyword(tok: Token | None, word: str) -> bool:
    return tok is not None and tok.kind == "name" and tok.text == word


def _disjunction(cursor: _Cursor, signature: Signature) -> ConceptExpression:
    parts = [_conjunction(cursor, signature)]
    while _is_keyword(cursor.peek(), "or"):
        cursor.next()
        parts.append(_conjunction(cursor, signature))
    return parts[0] if len(parts) == 1 else Disj(tuple(parts))


def _conjunction(cursor: _Cursor, signature: Signature) -> ConceptExpression:
    parts = [_unary(cursor, signature)]
    while _is_keyword(cursor.peek(), "and"):
        cursor.next()
        parts.append(_unary(cursor, signature))
    return parts[0] if len(parts) == 1 else Conj(tuple(parts))


def _unary(cursor: _Cursor, signature: Signature) -> ConceptExpression:
    tok = cursor.peek()
    if tok is None:
        raise KBSyntaxException("unexpected end of expression")
    if _is_keyword(tok, "not"):
        cursor.next()
        return Neg(_unary(cursor, signature))
    if tok.kind == "open":
        cursor.next()
        inner = _disjunction(cursor, signature)
        cursor.expect("close")
        return inner
    if tok.kind == "name" and _is_keyword(cursor.peek(1), "some"):
        cursor.next()
        cursor.next()
        return Exists(signature.role(tok.text), _unary(cursor, signature))
    if tok.kind == "name":
        cursor.next()
        return _concept(tok, signature, cursor)
    raise KBSyntaxException(f"unexpected {tok.text!r} at column {tok.column}")
