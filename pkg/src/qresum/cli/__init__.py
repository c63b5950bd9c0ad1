"""Command-line front end: expression language, reports, entry point."""

from .expr import Call, Num, Sym, format_expr
from .parser import parse_expression, tokenize
from .evaluate import EvalOptions, evaluate_expression, function_names, run_limit_scan
from .main import main

__all__ = [
    "Call",
    "Num",
    "Sym",
    "format_expr",
    "parse_expression",
    "tokenize",
    "EvalOptions",
    "evaluate_expression",
    "function_names",
    "run_limit_scan",
    "main",
]
