"""Lexer and recursive-descent parser for types, expressions and ``.lim`` files.

Grammar::

    type   ::= atype | atype "->" type
    atype  ::= btype | atype "&" btype
    btype  ::= "Int" | "Bool" | "Top" | "(" type ")"
    expr   ::= mexpr | mexpr ":" type
    mexpr  ::= aexpr | mexpr ",," aexpr
    aexpr  ::= pexpr | aexpr pexpr
    pexpr  ::= INT | "true" | "false" | "top" | IDENT
             | "\\" IDENT "." expr | "(" expr ")"

Unicode synonyms: ``λ`` for ``\\``, ``→`` for ``->``, ``∧`` for ``&``, and
``⊤`` for ``Top`` / ``top`` depending on position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Optional

from .syntax import (
    BOOL,
    INT,
    TOP,
    And,
    Anno,
    App,
    Arrow,
    Lam,
    LitBool,
    LitInt,
    Merge,
    SourceExpr,
    SourceType,
    TopVal,
    Var,
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int, expected: Optional[List[str]] = None):
        self.message = message
        self.line = line
        self.column = column
        self.expected = list(expected or [])
        super().__init__(f"{line}:{column}: {message}")


class MissingExpression(ParseError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int
    offset: int


@dataclass
class Program:
    main: SourceExpr
    expected_type: Optional[SourceType] = None
    expected_value: Optional[str] = None
    expected_error: Optional[str] = None
    source: str = field(default="", repr=False)


KEYWORDS = {
    "Int": "INT_T",
    "Bool": "BOOL_T",
    "Top": "TOP",
    "true": "TRUE",
    "false": "FALSE",
    "top": "TOP",
}

_SYMBOLS = [
    ("->", "ARROW"),
    ("→", "ARROW"),
    (",,", "MERGE"),
    ("&", "AND"),
    ("∧", "AND"),
    ("\\", "LAMBDA"),
    ("λ", "LAMBDA"),
    ("⊤", "TOP"),
    ("(", "LPAREN"),
    (")", "RPAREN"),
    (".", "DOT"),
    (":", "COLON"),
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_NUMBER = re.compile(r"-?[0-9]+")

_DESCRIBE = {
    "ARROW": "'->'",
    "MERGE": "',,'",
    "AND": "'&'",
    "LAMBDA": "'\\'",
    "LPAREN": "'('",
    "RPAREN": "')'",
    "DOT": "'.'",
    "COLON": "':'",
    "IDENT": "identifier",
    "NUM": "integer literal",
    "INT_T": "'Int'",
    "BOOL_T": "'Bool'",
    "TOP": "'Top'",
    "TRUE": "'true'",
    "FALSE": "'false'",
    "EOF": "end of input",
}


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(Token("NUM", m.group(), line, col, i))
            col += len(m.group())
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            tokens.append(Token(KEYWORDS.get(word, "IDENT"), word, line, col, i))
            col += len(word)
            i = m.end()
            continue
        for sym, kind in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token(kind, sym, line, col, i))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def error(self, expected: List[str]) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        return ParseError(
            f"unexpected {found}, expected {' or '.join(expected)}", t.line, t.column, expected
        )

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            raise self.error([_DESCRIBE[kind]])
        return self.advance()

    def finish(self) -> None:
        if self.tok.kind != "EOF":
            raise self.error(["end of input"])

    # types

    def type_(self) -> SourceType:
        left = self.atype()
        if self.tok.kind == "ARROW":
            self.advance()
            return Arrow(left, self.type_())
        return left

    def atype(self) -> SourceType:
        t = self.btype()
        while self.tok.kind == "AND":
            self.advance()
            t = And(t, self.btype())
        return t

    def btype(self) -> SourceType:
        k = self.tok.kind
        if k == "INT_T":
            self.advance()
            return INT
        if k == "BOOL_T":
            self.advance()
            return BOOL
        if k == "TOP":
            self.advance()
            return TOP
        if k == "LPAREN":
            self.advance()
            t = self.type_()
            self.expect("RPAREN")
            return t
        raise self.error(["'Int'", "'Bool'", "'Top'", "'('"])

    # expressions

    def expr(self) -> SourceExpr:
        start = self.tok
        e = self.mexpr()
        if self.tok.kind == "COLON":
            self.advance()
            return Anno(e, self.type_(), span=(start.line, start.column))
        return e

    def mexpr(self) -> SourceExpr:
        start = self.tok
        e = self.aexpr()
        while self.tok.kind == "MERGE":
            self.advance()
            e = Merge(e, self.aexpr(), span=(start.line, start.column))
        return e

    _PEXPR_START = {"NUM", "TRUE", "FALSE", "TOP", "IDENT", "LAMBDA", "LPAREN"}

    def aexpr(self) -> SourceExpr:
        start = self.tok
        e = self.pexpr()
        while self.tok.kind in self._PEXPR_START:
            e = App(e, self.pexpr(), span=(start.line, start.column))
        return e

    def pexpr(self) -> SourceExpr:
        t = self.tok
        span = (t.line, t.column)
        if t.kind == "NUM":
            self.advance()
            return LitInt(int(t.text), span=span)
        if t.kind in ("TRUE", "FALSE"):
            self.advance()
            return LitBool(t.kind == "TRUE", span=span)
        if t.kind == "TOP":
            self.advance()
            return TopVal(span=span)
        if t.kind == "IDENT":
            self.advance()
            return Var(t.text, span=span)
        if t.kind == "LAMBDA":
            self.advance()
            name = self.expect("IDENT").text
            self.expect("DOT")
            return Lam(name, self.expr(), span=span)
        if t.kind == "LPAREN":
            self.advance()
            e = self.expr()
            self.expect("RPAREN")
            return e
        raise self.error(["integer literal", "'true'", "'false'", "'top'", "identifier", "'\\'", "'('"])


def parse_type(text: str) -> SourceType:
    p = _Parser(text)
    t = p.type_()
    p.finish()
    return t


def parse_expr(text: str) -> SourceExpr:
    p = _Parser(text)
    e = p.expr()
    p.finish()
    return e


_PRAGMA = re.compile(r"^\s*--\s*(expect-error|expect|result)\s*:(.*)$")


def parse_program(text: str) -> Program:
    """Parse a ``.lim`` file: pragmas in ``--`` comments, then one expression."""
    expected_type = expected_value = expected_error = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        m = _PRAGMA.match(line)
        if not m:
            continue
        key, payload = m.group(1), m.group(2).strip()
        if key == "expect":
            try:
                expected_type = parse_type(payload)
            except ParseError as err:
                col = line.index(payload) + err.column
                raise ParseError(f"in pragma: {err.message}", lineno, col, err.expected) from None
        elif key == "result":
            expected_value = payload
        else:
            expected_error = payload
    p = _Parser(text)
    if p.tok.kind == "EOF":
        raise MissingExpression("file contains no expression", p.tok.line, p.tok.column)
    main = p.expr()
    p.finish()
    return Program(main, expected_type, expected_value, expected_error, source=text)
