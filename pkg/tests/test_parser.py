"""Expression language: tokenizer, parser, printer round-trip."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qresum.cli.expr import Call, Num, Sym, format_complex, format_expr
from qresum.cli.parser import parse_expression, tokenize
from qresum.errors import ArityError, ExprSyntaxError

from parser_corpus import CORPUS


# ------------------------------------------------------------- corpus

@pytest.mark.parametrize("text,expected", CORPUS,
                         ids=[f"case{i:02d}" for i in range(len(CORPUS))])
def test_corpus(text, expected):
    if expected == "ok":
        node = parse_expression(text)
        assert isinstance(node, Call)
        # and the round trip is exact
        assert parse_expression(format_expr(node)) == node
    elif expected == "syntax":
        with pytest.raises(ExprSyntaxError):
            parse_expression(text)
    elif expected == "arity":
        with pytest.raises(ArityError):
            parse_expression(text)
    else:
        raise AssertionError(expected)


def test_corpus_shape():
    assert len(CORPUS) == 50
    kinds = {k for _, k in CORPUS}
    assert kinds == {"ok", "syntax", "arity"}


# ------------------------------------------------------------ details

def test_ast_structure():
    node = parse_expression("theta(q=0.5, z=-1)")
    assert node == Call("theta", (("q", Num(0.5 + 0j)), ("z", Num(-1 + 0j))))


def test_complex_literal_is_one_token():
    toks = tokenize("z=1.5-0.25i")
    assert [t.kind for t in toks] == ["IDENT", "EQUALS", "COMPLEX", "EOF"]
    assert toks[2].value == complex(1.5, -0.25)


def test_hyphenated_identifiers():
    node = parse_expression("limit-scan(kind=theta-ratio, alpha=1, beta=2, z=1.5)")
    assert node.func == "limit-scan"
    assert node.args[0] == ("kind", Sym("theta-ratio"))


def test_nested_call_value():
    node = parse_expression("theta(q=0.5, z=qpoch(q=0.5, a=0.3))")
    inner = node.args[1][1]
    assert isinstance(inner, Call) and inner.func == "qpoch"


def test_syntax_error_carries_position_and_expectation():
    with pytest.raises(ExprSyntaxError) as ei:
        parse_expression("theta(q=0.5 z=1)")
    e = ei.value
    assert e.col == 13
    assert e.expected == ("')' or ','",)
    assert "z" in e.found
    msg = str(e)
    assert "column 13" in msg and "expected" in msg


def test_error_at_end_of_input():
    with pytest.raises(ExprSyntaxError) as ei:
        parse_expression("theta(q=0.5")
    assert ei.value.found == "end of input"


def test_duplicate_argument_is_arity_error():
    with pytest.raises(ArityError, match="duplicate"):
        parse_expression("eq(q=0.5, q=0.5)")


# -------------------------------------------------------- round trip

_FLOATS = st.floats(allow_nan=False, allow_infinity=False,
                    allow_subnormal=False)
_IDENTS = st.from_regex(r"[A-Za-z][A-Za-z0-9_]{0,6}", fullmatch=True)


def _nums():
    real = st.builds(lambda r: Num(complex(r, 0.0)), _FLOATS)
    comp = st.builds(lambda r, i: Num(complex(r, i)), _FLOATS, _FLOATS)
    return st.one_of(real, comp)


def _calls(children):
    kv = st.lists(st.tuples(_IDENTS, children), min_size=1, max_size=4,
                  unique_by=lambda p: p[0])
    return st.builds(lambda f, a: Call(f, tuple(a)), _IDENTS, kv)


_AST = st.recursive(
    st.one_of(_nums(), st.builds(Sym, _IDENTS)),
    lambda ch: _calls(ch), max_leaves=12).filter(
        lambda n: isinstance(n, Call))


@settings(max_examples=300, deadline=None)
@given(_AST)
def test_print_parse_round_trip(node):
    assert parse_expression(format_expr(node)) == node


@settings(max_examples=300, deadline=None)
@given(_FLOATS, _FLOATS)
def test_complex_literal_round_trip(re_, im_):
    v = complex(re_, im_)
    toks = tokenize(f"x={format_complex(v)}")
    lit = toks[2]
    assert lit.kind in ("NUMBER", "COMPLEX")
    assert lit.value == v
    assert math.copysign(1.0, lit.value.real) == math.copysign(1.0, v.real) \
        or v.real != 0


def test_formatting_conventions():
    assert format_complex(0j) == "0"
    assert format_complex(2 + 0j) == "2"
    assert format_complex(complex(0.5, -0.3)) == "0.5-0.3i"
    assert format_complex(complex(0, 1)) == "0+1i"
    assert format_complex(complex(-1.5e-10, 2e3)) == "-1.5e-10+2000i"
