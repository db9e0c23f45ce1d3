"""Tokenizer for JX source text."""

from __future__ import annotations

import bisect
import re
from dataclasses import dataclass
from typing import List

from .nodes import SourceSpan

KEYWORDS = frozenset({
    "package", "import", "class", "void", "int", "boolean", "double", "String",
    "if", "else", "while", "for", "return", "break", "continue", "new", "this",
    "true", "false",
})

PUNCT = frozenset({";", ",", ".", "(", ")", "{", "}"})

# Longest operators first so that "<=" wins over "<".
_OPERATORS = ["||", "&&", "==", "!=", "<=", ">=", "<", ">", "+", "-", "*", "/", "%", "!", "="]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<line_comment>//[^\n]*)
  | (?P<block_comment>/\*.*?\*/)
  | (?P<double>\d+\.\d+(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<op>""" + "|".join(re.escape(o) for o in _OPERATORS) + r""")
  | (?P<punct>[;,.(){}])
    """,
    re.VERBOSE | re.DOTALL,
)

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "\\": "\\"}


class LexError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # kw, ident, int, double, string, op, punct, eof
    text: str
    span: SourceSpan

    def __repr__(self):
        return f"{self.kind}:{self.text}"


class _LineIndex:
    def __init__(self, text: str):
        self.starts = [0]
        for m in re.finditer("\n", text):
            self.starts.append(m.end())
        # spans store byte offsets; only non-ASCII text needs a lookup table
        self.byte_at = None
        if not text.isascii():
            acc = [0]
            for ch in text:
                acc.append(acc[-1] + len(ch.encode("utf-8")))
            self.byte_at = acc

    def byte(self, offset: int) -> int:
        return offset if self.byte_at is None else self.byte_at[offset]

    def position(self, offset: int):
        row = bisect.bisect_right(self.starts, offset) - 1
        return row + 1, offset - self.starts[row] + 1


def decode_string(literal: str) -> str:
    body = literal[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            nxt = body[i + 1]
            if nxt not in _ESCAPES:
                raise ValueError(f"unknown escape \\{nxt}")
            out.append(_ESCAPES[nxt])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def tokenize(text: str) -> List[Token]:
    """Split ``text`` into tokens; comments and whitespace are dropped.

    The returned list always ends with an ``eof`` token.
    """
    index = _LineIndex(text)
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or (m.lastgroup == "op" and text.startswith("/*", pos)):
            line, col = index.position(pos)
            if text.startswith("/*", pos):
                raise LexError("unterminated block comment", line, col)
            if text[pos] == '"':
                raise LexError("unterminated string literal", line, col)
            raise LexError(f"illegal character {text[pos]!r}", line, col)
        kind = m.lastgroup
        start, end = m.span()
        pos = end
        if kind in ("ws", "line_comment", "block_comment"):
            continue
        lexeme = m.group()
        if kind == "ident" and lexeme in KEYWORDS:
            kind = "kw"
        if kind == "string":
            try:
                decode_string(lexeme)
            except ValueError as exc:
                line, col = index.position(start)
                raise LexError(str(exc), line, col) from None
        sl, sc = index.position(start)
        el, ec = index.position(end)
        tokens.append(Token(kind, lexeme, SourceSpan(index.byte(start), index.byte(end), sl, sc, el, ec)))
    el, ec = index.position(len(text))
    n = index.byte(len(text))
    tokens.append(Token("eof", "", SourceSpan(n, n, el, ec, el, ec)))
    return tokens
