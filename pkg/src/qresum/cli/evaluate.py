"""Function registry and evaluator for parsed call expressions.

Each function takes keyword arguments only.  Argument names are checked
against the registry (UnknownParameterError), required arguments and
type/choice mismatches raise ArityError, and an unregistered function
name raises UnknownFunctionError.  Nested calls evaluate to numbers and
may appear anywhere a literal may.

The ``limit-scan`` function runs a q->1 scan on the default dyadic
schedule and evaluates to the Richardson-extrapolated limit estimate;
the ``scan`` command exposes the full report instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Mapping, Optional, Tuple

from ..borel_laplace import LaplaceConfig, connection_coeff, resummed_psiA, resummed_psiB
from ..errors import ArityError, UnknownFunctionError, UnknownParameterError
from ..limits import (
    LimitReport,
    LimitSchedule,
    limit_linear_sum_forms,
    limit_qpoch_ratio,
    limit_theorem_A,
    limit_theorem_B,
    limit_theta_ratio,
)
from ..qcore import QContext, q_exponential, q_gamma, qpoch_finite, qpoch_infinite, theta
from ..series_engine import eval_bilateral_psi, eval_unilateral_phi
from .expr import Call, Node, Num, Sym

_DEFAULT_LAMBDA = 1.1


@dataclass(frozen=True)
class EvalOptions:
    """Evaluation-wide overrides coming from CLI flags or the environment."""

    max_terms: Optional[int] = None
    lam: Optional[complex] = None


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str                       # real | complex | int | sym
    required: bool = False
    choices: Tuple[str, ...] = ()


@dataclass(frozen=True)
class FunctionSpec:
    name: str
    params: Tuple[ParamSpec, ...]
    impl: Callable[[Mapping[str, object], EvalOptions], complex]

    def param(self, name: str) -> Optional[ParamSpec]:
        for p in self.params:
            if p.name == name:
                return p
        return None


def _ctx(q: float, opts: EvalOptions) -> QContext:
    if opts.max_terms is None:
        return QContext(q)
    return QContext(q, max_terms=opts.max_terms)


def _cfg(a: Mapping[str, object], opts: EvalOptions) -> LaplaceConfig:
    lam = a.get("lambda")
    if lam is None:
        lam = opts.lam
    if lam is None:
        lam = _DEFAULT_LAMBDA
    return LaplaceConfig(lam=complex(lam))


def _sched() -> LimitSchedule:
    return LimitSchedule()


def run_limit_scan(kind: str, *, alpha: Optional[float] = None,
                   beta: Optional[float] = None,
                   x: Optional[complex] = None, z: Optional[complex] = None,
                   form: str = "plain",
                   sched: Optional[LimitSchedule] = None,
                   cfg: Optional[LaplaceConfig] = None) -> LimitReport:
    """Dispatch one named q->1 scan; shared by ``eval`` and ``scan``."""
    sched = sched if sched is not None else _sched()
    cfg = cfg if cfg is not None else LaplaceConfig(lam=_DEFAULT_LAMBDA)

    def need(cond: bool, what: str):
        if not cond:
            raise ArityError(f"scan {kind} requires {what}")

    if kind == "limitA":
        need(beta is not None and x is not None, "beta and x")
        return limit_theorem_A(beta, x, cfg=cfg, sched=sched)
    if kind == "limitB":
        need(alpha is not None and x is not None, "alpha and x")
        return limit_theorem_B(alpha, x, cfg=cfg, sched=sched)
    if kind == "theta-ratio":
        need(alpha is not None and beta is not None and z is not None,
             "alpha, beta and z")
        return limit_theta_ratio(alpha, beta, z, sched=sched, form=form)
    if kind == "qpoch-ratio":
        need(alpha is not None and z is not None, "alpha and z")
        return limit_qpoch_ratio(alpha, z, sched=sched)
    if kind == "linear-sum":
        need(x is not None, "x (alpha stays optional)")
        return limit_linear_sum_forms(alpha, x, sched=sched)
    raise ArityError(
        f"unknown scan kind '{kind}'; expected limitA, limitB, theta-ratio, "
        "qpoch-ratio or linear-sum")


# ------------------------------------------------------------- registry

def _impl_theta(a, opts):
    return theta(a["z"], _ctx(a["q"], opts)).value


def _impl_qpoch(a, opts):
    ctx = _ctx(a["q"], opts)
    if "n" in a:
        return qpoch_finite(a["a"], ctx, a["n"])
    return qpoch_infinite(a["a"], ctx).value


def _impl_psi(a, opts):
    upper = [a["a"]] if "a" in a else []
    lower = [a["b"]] if "b" in a else []
    return eval_bilateral_psi(upper, lower, _ctx(a["q"], opts), a["z"]).value


def _impl_phi(a, opts):
    upper = [a[k] for k in ("a", "b") if k in a]
    lower = [a["c"]] if "c" in a else []
    return eval_unilateral_phi(upper, lower, _ctx(a["q"], opts), a["z"]).value


def _impl_resumA(a, opts):
    return resummed_psiA(a["b"], _cfg(a, opts), _ctx(a["q"], opts), a["x"]).value


def _impl_resumB(a, opts):
    return resummed_psiB(a["a"], _cfg(a, opts), _ctx(a["q"], opts), a["x"]).value


def _impl_connA(a, opts):
    c = connection_coeff("A", {"b": a["b"]}, _cfg(a, opts), _ctx(a["q"], opts))
    return c.evaluate(a["x"])


def _impl_connB(a, opts):
    c = connection_coeff("B", {"a": a["a"]}, _cfg(a, opts), _ctx(a["q"], opts))
    return c.evaluate(a["x"])


def _impl_gammaq(a, opts):
    return q_gamma(a["z"], _ctx(a["q"], opts)).value


def _impl_eq(a, opts):
    return q_exponential(a["z"], _ctx(a["q"], opts)).value


def _impl_limit_scan(a, opts):
    cfg = _cfg(a, opts)
    rep = run_limit_scan(a["kind"], alpha=a.get("alpha"), beta=a.get("beta"),
                         x=a.get("x"), z=a.get("z"),
                         form=a.get("form", "plain"), cfg=cfg)
    if rep.extrapolated is not None:
        return rep.extrapolated
    return rep.values[-1]


def _fn(name, impl, *params):
    return FunctionSpec(name, tuple(params), impl)


_P = ParamSpec
_SCAN_KINDS = ("limitA", "limitB", "theta-ratio", "qpoch-ratio", "linear-sum")

FUNCTIONS: Dict[str, FunctionSpec] = {f.name: f for f in (
    _fn("theta", _impl_theta,
        _P("q", "real", True), _P("z", "complex", True)),
    _fn("qpoch", _impl_qpoch,
        _P("q", "real", True), _P("a", "complex", True), _P("n", "int")),
    _fn("psi", _impl_psi,
        _P("q", "real", True), _P("z", "complex", True),
        _P("a", "complex"), _P("b", "complex")),
    _fn("phi", _impl_phi,
        _P("q", "real", True), _P("z", "complex", True),
        _P("a", "complex"), _P("b", "complex"), _P("c", "complex")),
    _fn("resumA", _impl_resumA,
        _P("q", "real", True), _P("x", "complex", True),
        _P("b", "complex", True), _P("lambda", "complex")),
    _fn("resumB", _impl_resumB,
        _P("q", "real", True), _P("x", "complex", True),
        _P("a", "complex", True), _P("lambda", "complex")),
    _fn("connA", _impl_connA,
        _P("q", "real", True), _P("x", "complex", True),
        _P("b", "complex", True), _P("lambda", "complex")),
    _fn("connB", _impl_connB,
        _P("q", "real", True), _P("x", "complex", True),
        _P("a", "complex", True), _P("lambda", "complex")),
    _fn("gammaq", _impl_gammaq,
        _P("q", "real", True), _P("z", "complex", True)),
    _fn("eq", _impl_eq,
        _P("q", "real", True), _P("z", "complex", True)),
    _fn("limit-scan", _impl_limit_scan,
        _P("kind", "sym", True, _SCAN_KINDS),
        _P("alpha", "real"), _P("beta", "real"),
        _P("x", "complex"), _P("z", "complex"),
        _P("form", "sym", False, ("plain", "scaled")),
        _P("lambda", "complex")),
)}


def function_names() -> Tuple[str, ...]:
    return tuple(sorted(FUNCTIONS))


def _coerce(fn: str, spec: ParamSpec, node: Node, opts: EvalOptions):
    if isinstance(node, Call):
        node = Num(evaluate_expression(node, opts))
    if spec.kind == "sym":
        if not isinstance(node, Sym):
            raise ArityError(
                f"{fn}: parameter {spec.name} expects one of {spec.choices}")
        if node.name not in spec.choices:
            raise ArityError(
                f"{fn}: {spec.name}={node.name} is not one of {spec.choices}")
        return node.name
    if isinstance(node, Sym):
        raise ArityError(f"{fn}: parameter {spec.name} expects a number, "
                         f"got identifier '{node.name}'")
    v = node.value
    if spec.kind == "complex":
        return v
    if v.imag != 0:
        raise ArityError(f"{fn}: parameter {spec.name} must be real")
    if spec.kind == "real":
        return v.real
    if spec.kind == "int":
        if v.real != int(v.real):
            raise ArityError(f"{fn}: parameter {spec.name} must be an integer")
        return int(v.real)
    raise AssertionError(spec.kind)


def evaluate_expression(node: Call, opts: Optional[EvalOptions] = None) -> complex:
    """Evaluate a parsed call tree to a complex number."""
    opts = opts if opts is not None else EvalOptions()
    fn = FUNCTIONS.get(node.func)
    if fn is None:
        raise UnknownFunctionError(
            f"unknown function '{node.func}'; available: "
            + ", ".join(function_names()))
    bound = {}
    for key, val in node.args:
        spec = fn.param(key)
        if spec is None:
            raise UnknownParameterError(
                f"{node.func} takes no parameter '{key}'; accepted: "
                + ", ".join(p.name for p in fn.params))
        bound[key] = _coerce(node.func, spec, val, opts)
    for p in fn.params:
        if p.required and p.name not in bound:
            raise ArityError(f"{node.func} requires parameter {p.name}")
    return complex(fn.impl(bound, opts))
