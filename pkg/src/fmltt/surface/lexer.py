from __future__ import annotations

import re
from dataclasses import dataclass

KEYWORDS = frozenset("""
fun Type List nil W sup Id refl inl inr Empty Unit Bool tt ff fst snd
ind_list ind_W ind_id ind_sum ind_empty ind_unit ind_bool as return
if then else map coe def var cons
""".split())

SYMBOLS = ("::", ":=", "->", "**", "=>", "(", ")", "{", "}", "[", "]", ",",
           ":", ".", "|", "@", "+")

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>--[^\n]*)"
    r"|(?P<index>\#\d+)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<sym>" + "|".join(re.escape(s) for s in SYMBOLS) + ")"
)


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    length: int

    def as_dict(self):
        return {"line": self.line, "col": self.col, "len": self.length}


@dataclass(frozen=True)
class Token:
    kind: str   # ident, kw, num, index, sym, eof
    text: str
    span: Span


class ParseError(Exception):
    def __init__(self, message, span: Span | None = None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self):
        if self.span is None:
            return self.message
        return f"{self.span.line}:{self.span.col}: {self.message}"


def tokenize(text: str) -> list[Token]:
    out, pos, line, start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", Span(line, pos - start + 1, 1))
        kind, val = m.lastgroup, m.group()
        span = Span(line, pos - start + 1, len(val))
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind == "ident":
            out.append(Token("kw" if val in KEYWORDS else "ident", val, span))
        elif kind in ("num", "index", "sym"):
            out.append(Token(kind, val, span))
        pos = m.end()
    out.append(Token("eof", "", Span(line, pos - start + 1, 0)))
    return out
