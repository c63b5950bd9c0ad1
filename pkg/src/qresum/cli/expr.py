"""AST for the call expression language.

Three node kinds: ``Num`` holds one complex literal, ``Sym`` a bare
identifier used as an enumeration value, and ``Call`` a function with
keyword-only arguments.  ``format_expr`` is a right inverse of the
parser up to AST equality: ``parse_expression(format_expr(node))``
returns a node equal to ``node``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

Node = Union["Num", "Sym", "Call"]


@dataclass(frozen=True)
class Num:
    """One numeric literal; real literals carry a zero imaginary part."""

    value: complex


@dataclass(frozen=True)
class Sym:
    """A bare identifier in value position (an enumeration constant)."""

    name: str


@dataclass(frozen=True)
class Call:
    """``func(name=value, ...)`` with arguments in source order."""

    func: str
    args: Tuple[Tuple[str, Node], ...]


def format_real(x: float) -> str:
    # integers print without a trailing ".0" so that e.g. theta at a zero
    # prints as plain 0; -0.0 keeps the repr path so its sign survives
    if x == int(x) and abs(x) < 1e16 and not (x == 0 and math.copysign(1, x) < 0):
        return str(int(x))
    return repr(x)


def format_complex(v: complex) -> str:
    """Shortest literal that parses back to the same value: ``a`` or ``a+bi``."""
    if v.imag == 0:
        return format_real(v.real)
    sign = "+" if v.imag > 0 else "-"
    return f"{format_real(v.real)}{sign}{format_real(abs(v.imag))}i"


def format_expr(node: Node) -> str:
    if isinstance(node, Num):
        return format_complex(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Call):
        inner = ", ".join(f"{k}={format_expr(v)}" for k, v in node.args)
        return f"{node.func}({inner})"
    raise TypeError(f"not an expression node: {node!r}")
