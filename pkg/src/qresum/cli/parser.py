"""Tokenizer and LL(1) parser for the call expression language.

Grammar:

    expr  := call EOF
    call  := IDENT '(' kv (',' kv)* ')'
    kv    := IDENT '=' value
    value := COMPLEX | NUMBER | call | IDENT

A ``COMPLEX`` literal has the form ``a+bi`` / ``a-bi`` with no interior
whitespace; both halves accept an optional exponent.  Identifiers may
contain hyphens between alphanumeric runs (``limit-scan``); a bare
identifier in value position is an enumeration constant, distinguished
from a nested call by one token of lookahead.  Duplicate argument names
raise ArityError; every other malformation raises ExprSyntaxError with
the 1-based column and the expected token set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from ..errors import ArityError, ExprSyntaxError
from .expr import Call, Node, Num, Sym

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"({_NUM})([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i")
_NUMBER_RE = re.compile(_NUM)
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*")
_PUNCT = {"(": "LPAREN", ")": "RPAREN", ",": "COMMA", "=": "EQUALS"}


@dataclass(frozen=True)
class Token:
    kind: str       # IDENT NUMBER COMPLEX LPAREN RPAREN COMMA EQUALS EOF
    text: str
    col: int        # 1-based position of the first character
    value: complex = 0j


def tokenize(text: str) -> List[Token]:
    toks: List[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch in _PUNCT:
            toks.append(Token(_PUNCT[ch], ch, i + 1))
            i += 1
            continue
        m = _COMPLEX_RE.match(text, i)
        if m:
            v = complex(float(m.group(1)), float(m.group(2)))
            toks.append(Token("COMPLEX", m.group(0), i + 1, v))
            i = m.end()
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            toks.append(Token("NUMBER", m.group(0), i + 1,
                              complex(float(m.group(0)), 0.0)))
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            toks.append(Token("IDENT", m.group(0), i + 1))
            i = m.end()
            continue
        raise ExprSyntaxError("unexpected character", 1, i + 1,
                              expected=("identifier", "number", "punctuation"),
                              found=ch)
    toks.append(Token("EOF", "", n + 1))
    return toks


class _Parser:
    def __init__(self, toks: List[Token]):
        self._toks = toks
        self._i = 0

    def _peek(self, ahead: int = 0) -> Token:
        j = min(self._i + ahead, len(self._toks) - 1)
        return self._toks[j]

    def _advance(self) -> Token:
        t = self._toks[self._i]
        if t.kind != "EOF":
            self._i += 1
        return t

    def _expect(self, kind: str, what: str) -> Token:
        t = self._peek()
        if t.kind != kind:
            raise ExprSyntaxError("unexpected token", 1, t.col,
                                  expected=(what,),
                                  found=t.text if t.kind != "EOF"
                                  else "end of input")
        return self._advance()

    def parse(self) -> Call:
        node = self._call()
        t = self._peek()
        if t.kind != "EOF":
            raise ExprSyntaxError("trailing input after expression", 1, t.col,
                                  expected=("end of input",), found=t.text)
        return node

    def _call(self) -> Call:
        name = self._expect("IDENT", "function name").text
        self._expect("LPAREN", "'('")
        args = [self._kv()]
        seen = {args[0][0]}
        while self._peek().kind == "COMMA":
            self._advance()
            key, val = self._kv()
            if key in seen:
                raise ArityError(f"duplicate argument '{key}' in call to {name}")
            seen.add(key)
            args.append((key, val))
        self._expect("RPAREN", "')' or ','")
        return Call(name, tuple(args))

    def _kv(self):
        key = self._expect("IDENT", "argument name").text
        self._expect("EQUALS", "'='")
        return key, self._value()

    def _value(self) -> Node:
        t = self._peek()
        if t.kind in ("NUMBER", "COMPLEX"):
            self._advance()
            return Num(t.value)
        if t.kind == "IDENT":
            if self._peek(1).kind == "LPAREN":
                return self._call()
            self._advance()
            return Sym(t.text)
        raise ExprSyntaxError("unexpected token", 1, t.col,
                              expected=("number", "complex literal",
                                        "identifier"),
                              found=t.text if t.kind != "EOF"
                              else "end of input")


def parse_expression(text: str) -> Call:
    """Parse one call expression; the result round-trips through
    qresum.cli.expr.format_expr."""
    return _Parser(tokenize(text)).parse()
