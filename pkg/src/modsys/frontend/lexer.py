"""Tokenizer for .msl documents.  Comments run from ``%`` or ``#`` to end of line."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, NUMBER, OP, EOF
    text: str
    line: int
    column: int

    def __str__(self):
        return "end of input" if self.kind == "EOF" else repr(self.text)


_OPS = ("<->", ":-", "->", ">>", "=>", "{", "}", "(", ")", "[", "]", ",", ";", ":", "=", ".", "|", "&", "~", "/")
_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>[%#][^\n]*)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<number>[0-9]+)"
    r"|(?P<op>" + "|".join(re.escape(o) for o in _OPS) + ")"
)


def tokenize(text: str) -> list:
    tokens = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        col = pos - start + 1
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind == "ident":
            tokens.append(Token("IDENT", m.group(), line, col))
        elif kind == "number":
            tokens.append(Token("NUMBER", m.group(), line, col))
        elif kind == "op":
            tokens.append(Token("OP", m.group(), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - start + 1))
    return tokens
