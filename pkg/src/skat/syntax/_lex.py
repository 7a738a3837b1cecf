"""Tokenizer shared by the S and term parsers."""
from __future__ import annotations

import re
from dataclasses import dataclass


class ParseError(ValueError):
    """Syntax error at a character offset of the input."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class SortError(ValueError):
    """A well-formed phrase whose sorts do not fit the grammar."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        where = "" if pos is None else f" (at position {pos})"
        super().__init__(message + where)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


# longest operators first
_OPERATORS = [
    "==>", "|-", "=>", "->", "~>", "<=", "^+", "^*",
    ";", ".", "+", "!", "(", ")", ",", "=", "&",
]
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"[0-9]+")


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _IDENT.match(text, i)
        if m:
            tokens.append(Token("ident", m.group(), i))
            i = m.end()
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(Token("number", m.group(), i))
            i = m.end()
            continue
        for op in _OPERATORS:
            if text.startswith(op, i):
                tokens.append(Token("op", op, i))
                i += len(op)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", i, text)
    tokens.append(Token("eof", "", len(text)))
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def at(self, *ops: str) -> bool:
        tok = self.peek
        return tok.kind == "op" and tok.text in ops

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect(self, op: str) -> Token:
        tok = self.peek
        if not (tok.kind == "op" and tok.text == op):
            self.error(f"expected {op!r}")
        return self.next()

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.pos, self.text)

    def done(self):
        if self.peek.kind != "eof":
            self.error("unexpected trailing input")
