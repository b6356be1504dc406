"""Polynomial input language.

Grammar (no implicit multiplication)::

    expr   := sign? term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := rational | var | '(' expr ')'
    rational := nat ('/' nat)?

A leading sign is accepted so that every canonical output string parses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import MultiPoly, Signature, s_names, x_names

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()])|(?P<bad>\S))")
_XVAR = re.compile(r"^(?:[xyz]|x[1-9][0-9]*)$")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, source: str = ""):
        super().__init__(f"{message} at position {position}" + (f" in {source!r}" if source else ""))
        self.message = message
        self.position = position


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(src):
        mt = _TOKEN.match(src, pos)
        if mt is None or mt.end() == pos:
            break
        kind = mt.lastgroup
        text = mt.group(kind)
        start = mt.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {text!r}", start, src)
        toks.append(_Tok(kind, text, start))
        pos = mt.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, signature: Signature):
        self.src = src
        self.sig = signature
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.pos, self.src)

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.peek().kind != "end":
            t = self.peek()
            if t.kind in ("num", "name") or t.text == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected {t.text!r}")
        return p

    def expr(self) -> MultiPoly:
        sign = 1
        if self.peek().text in ("+", "-"):
            sign = -1 if self.take().text == "-" else 1
        p = self.term() * sign
        while self.peek().text in ("+", "-"):
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MultiPoly:
        p = self.factor()
        while self.peek().text == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> MultiPoly:
        p = self.base()
        if self.peek().text == "^":
            caret = self.take()
            t = self.peek()
            if t.text == "-":
                self.error("negative exponent", caret)
            if t.kind != "num":
                self.error("exponent must be a non-negative integer", t)
            self.take()
            if "/" in t.text:
                self.error("fractional exponent", t)
            p = p ** int(t.text)
        return p

    def base(self) -> MultiPoly:
        t = self.take()
        if t.kind == "num":
            return MultiPoly.constant(self.sig, Fraction(t.text))
        if t.kind == "name":
            if t.text not in self.sig.names:
                self.error(f"unknown variable {t.text!r}", t)
            return MultiPoly.var(self.sig, t.text)
        if t.text == "(":
            p = self.expr()
            if self.peek().text != ")":
                self.error("expected ')'")
            self.take()
            return p
        self.error(f"unexpected {t.text or 'end of input'!r}", t)


def _names_in(src: str) -> list[tuple[str, int]]:
    return [(t.text, t.pos) for t in _tokenize(src) if t.kind == "name"]


def x_signature_for(sources: Sequence[str]) -> Signature:
    """Smallest standard x-signature covering every variable in ``sources``."""
    letters, indexed = set(), set()
    for src in sources:
        for name, pos in _names_in(src):
            if not _XVAR.match(name):
                raise ParseError(f"unknown variable {name!r} (use x, y, z or x1..xn)", pos, src)
            (letters if len(name) == 1 else indexed).add(name)
    if letters and indexed:
        raise ParseError("cannot mix x, y, z with x1..xn", 0, sources[0] if sources else "")
    if indexed:
        n = max(int(v[1:]) for v in indexed)
        return Signature.build(x=tuple(f"x{i + 1}" for i in range(n)))
    n = max(("x", "y", "z").index(v) + 1 for v in letters) if letters else 1
    return Signature.build(x=x_names(n))


def parse_poly(src: str, signature: Signature | None = None) -> MultiPoly:
    """Parse over ``signature`` (default: inferred x-signature)."""
    if signature is None:
        signature = x_signature_for([src])
    return _Parser(src, signature).parse()


def parse_tuple(sources: Sequence[str]) -> list[MultiPoly]:
    sig = x_signature_for(sources)
    return [parse_poly(s, sig) for s in sources]


def parse_s_poly(src: str, r: int) -> MultiPoly:
    return parse_poly(src, Signature.build(s=s_names(r)))
