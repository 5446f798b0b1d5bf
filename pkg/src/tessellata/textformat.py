"""Small key-value document format shared by canon, talea/color and timeline files.

Grammar::

    document   := item*
    item       := assignment | block
    block      := NAME "{" assignment* "}"
    assignment := NAME "=" value [";"]
    value      := INT | RATIONAL | STRING | "[" [value ("," value)*] "]"

``#`` starts a comment running to end of line. Names are ``[A-Za-z_][\\w.-]*``.
Rationals are written ``p/q`` with no spaces. Strings are double-quoted;
backslash escapes ``\\n``, ``\\r`` and ``\\t`` stand for control characters and
any other escaped character stands for itself. Assignments may be separated
by newlines or semicolons.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<rational>-?\d+/\d+)
  | (?P<int>-?\d+)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<name>[A-Za-z_][\w.\-]*)
  | (?P<punct>[{}\[\]=,;])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            tokens.append(Token("nl", "\n", line, col))
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass
class Block:
    name: str
    fields: dict = field(default_factory=dict)
    line: int = 0
    lines: dict = field(default_factory=dict)

    def require(self, key):
        if key not in self.fields:
            raise ParseError(f"{self.name} block is missing '{key}'", self.line)
        return self.fields[key]


@dataclass
class Document:
    fields: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict)
    blocks: list[Block] = field(default_factory=list)

    def blocks_named(self, name: str) -> list[Block]:
        return [b for b in self.blocks if b.name == name]


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def skip_separators(self):
        while self.peek().kind == "nl" or self.peek().text == ";":
            self.i += 1

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.column)
        return t

    def value(self):
        t = self.next()
        if t.kind == "int":
            return int(t.text)
        if t.kind == "rational":
            num, den = t.text.split("/")
            if int(den) == 0:
                raise ParseError("zero denominator", t.line, t.column)
            return Fraction(int(num), int(den))
        if t.kind == "string":
            return re.sub(r"\\(.)", lambda m: _UNESCAPE.get(m[1], m[1]), t.text[1:-1])
        if t.text == "[":
            items = []
            while self.peek().kind == "nl":
                self.i += 1
            if self.peek().text == "]":
                self.i += 1
                return items
            while True:
                while self.peek().kind == "nl":
                    self.i += 1
                items.append(self.value())
                while self.peek().kind == "nl":
                    self.i += 1
                t2 = self.next()
                if t2.text == "]":
                    return items
                if t2.text != ",":
                    raise ParseError(f"expected ',' or ']', found {t2.text!r}", t2.line, t2.column)
        raise ParseError(f"expected a value, found {t.text or 'end of input'!r}", t.line, t.column)

    def assignment(self, target: dict, lines: dict, name_tok: Token):
        self.expect("=")
        if name_tok.text in target:
            raise ParseError(f"duplicate key {name_tok.text!r}", name_tok.line, name_tok.column)
        target[name_tok.text] = self.value()
        lines[name_tok.text] = name_tok.line
        t = self.peek()
        if t.kind not in ("nl", "eof") and t.text not in (";", "}"):
            raise ParseError(f"unexpected {t.text!r} after value", t.line, t.column)

    def document(self) -> Document:
        doc = Document()
        while True:
            self.skip_separators()
            t = self.next()
            if t.kind == "eof":
                return doc
            if t.kind != "name":
                raise ParseError(f"expected a key or block name, found {t.text!r}", t.line, t.column)
            if self.peek().text == "{":
                self.i += 1
                block = Block(t.text, line=t.line)
                while True:
                    self.skip_separators()
                    k = self.next()
                    if k.text == "}":
                        break
                    if k.kind != "name":
                        raise ParseError(
                            f"expected a key or '}}', found {k.text or 'end of input'!r}",
                            k.line,
                            k.column,
                        )
                    self.assignment(block.fields, block.lines, k)
                doc.blocks.append(block)
            else:
                self.assignment(doc.fields, doc.lines, t)


def parse_document(text: str) -> Document:
    return _Parser(text).document()


_ESCAPE = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPE = {"n": "\n", "r": "\r", "t": "\t"}


def format_value(v) -> str:
    if isinstance(v, bool):
        raise TypeError("booleans are not part of the format")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, str):
        return '"' + "".join(_ESCAPE.get(c, c) for c in v) + '"'
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(format_value(x) for x in v) + "]"
    raise TypeError(f"cannot format {v!r}")


def format_block(name: str, fields: dict) -> str:
    body = "; ".join(f"{k} = {format_value(v)}" for k, v in fields.items())
    return f"{name} {{ {body} }}"
