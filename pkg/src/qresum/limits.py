"""Classical q -> 1-0 limits, realized as finite scans along a schedule.

Every limit statement handled here has the shape "expression(q) tends to a
classical target as q -> 1-0".  A LimitSchedule fixes the q grid (default
q_k = 1 - 2^-k, k = 4..10), each scan evaluates the q-expression on the
grid, compares against the classical target computed from the classical
special-function evaluators (never hard-coded constants), and reports per-q
relative errors, their monotonicity, and an optional first-order Richardson
extrapolation in h = 1-q.

Precision boundary: for arguments off the positive real axis the theta
evaluations cancel down to about exp(-arg(z)^2 / (2(1-q))) of their term
size, so in double precision the last schedule points degrade once
arg(z)^2/(2(1-q)) approaches 35.  Scans at complex arguments should stop
the schedule earlier; the per-q error sequence makes the breakdown visible.

Covered limits:
  * theta-quotient limits   theta(q^b z)/theta(q^a z) -> z^(a-b), and the
    (1-q)-rescaled variant with the (1-q)^(b-a) normalizer;
  * q-binomial ratio        (z q^a;q)_inf/(z;q)_inf -> (1-z)^-a;
  * even/odd linear splits of the q-binomial sum, which are exact at every
    q, together with their classical limiting identities;
  * the classical limits of the two resummation pipelines, via the same
    closed forms as the borel_laplace module.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .borel_laplace import LaplaceConfig, closedform_psiA, closedform_psiB
from .errors import BranchCutError, DivergenceDomainError, ZeroArgumentError
from .qcore import (
    QContext,
    classical_gamma,
    classical_hypergeometric,
    qpoch_infinite_scaled,
)
from .scaled import ScaledComplex
from .series_engine import eval_unilateral_phi

__all__ = [
    "LimitSchedule",
    "LimitReport",
    "limit_theta_ratio",
    "limit_qpoch_ratio",
    "limit_linear_sum_forms",
    "limit_theorem_A",
    "limit_theorem_B",
    "linear_split_rhs",
]

SCAN_MAX_TERMS = 50_000
# at the top of the default schedule (q;q)_inf needs ~4e4 certified factors


def _default_schedule() -> tuple[float, ...]:
    return tuple(1.0 - 2.0 ** (-k) for k in range(4, 11))


@dataclass(frozen=True)
class LimitSchedule:
    """q grid walking toward 1 from below, plus the extrapolation choice."""

    q_values: tuple[float, ...] = field(default_factory=_default_schedule)
    extrapolation: str = "richardson1"     # "none" | "richardson1"

    def __post_init__(self):
        object.__setattr__(self, "q_values", tuple(float(q) for q in self.q_values))
        if len(self.q_values) < 2:
            raise ValueError("schedule needs at least two q values")
        if any(not (0.0 < q < 1.0) for q in self.q_values):
            raise ValueError("schedule q values must lie in (0,1)")
        if any(b <= a for a, b in zip(self.q_values, self.q_values[1:])):
            raise ValueError("schedule must increase strictly toward 1")
        if self.extrapolation not in ("none", "richardson1"):
            raise ValueError("extrapolation must be 'none' or 'richardson1'")


@dataclass(frozen=True)
class LimitReport:
    """Scan outcome: per-q values and relative errors against the target.

    monotone is True iff the errors decrease strictly along the schedule.
    extrapolated/extrapolated_error hold the first-order Richardson value
    in h = 1-q when the schedule asks for it (valid because the schedule
    halves h at every step).  identity_errors carries the per-q exactness
    residuals for scans that verify a finite-q identity along the way.
    """

    name: str
    q_values: tuple[float, ...]
    values: tuple[complex, ...]
    target: complex
    errors: tuple[float, ...]
    monotone: bool
    extrapolated: Optional[complex]
    extrapolated_error: Optional[float]
    identity_errors: Optional[tuple[float, ...]] = None

    @classmethod
    def build(cls, name: str, sched: LimitSchedule,
              values: Sequence[complex], target: complex,
              identity_errors: Optional[Sequence[float]] = None) -> "LimitReport":
        values = tuple(complex(v) for v in values)
        t = complex(target)
        scale = max(abs(t), 1e-300)
        errors = tuple(abs(v - t) / scale for v in values)
        if any(not math.isfinite(e) for e in errors):
            raise ValueError(f"non-finite scan errors in {name}")
        monotone = all(e2 < e1 for e1, e2 in zip(errors, errors[1:]))
        extrapolated = None
        extrapolated_error = None
        if sched.extrapolation == "richardson1":
            # h halves along the default schedule, so the first-order
            # Richardson update is 2 v_k - v_{k-1}
            extrapolated = 2.0 * values[-1] - values[-2]
            extrapolated_error = abs(extrapolated - t) / scale
        return cls(name=name, q_values=sched.q_values, values=values,
                   target=t, errors=errors, monotone=monotone,
                   extrapolated=extrapolated,
                   extrapolated_error=extrapolated_error,
                   identity_errors=(tuple(identity_errors)
                                    if identity_errors is not None else None))


def _scan_ctx(q: float) -> QContext:
    return QContext(q, max_terms=SCAN_MAX_TERMS)


def _principal_power(z: complex, s: float) -> complex:
    """z^s on the principal branch."""
    if z == 0:
        raise ZeroArgumentError("0 cannot be raised to an arbitrary power here")
    return cmath.exp(s * cmath.log(z))


def _require_off_cut(z: complex, what: str) -> complex:
    z = complex(z)
    if z == 0:
        raise ZeroArgumentError(f"{what} must be nonzero")
    if abs(abs(math.atan2(z.imag, z.real)) - math.pi) < 1e-12:
        raise BranchCutError(
            f"{what}={z:g} sits on the branch cut arg = pi of the "
            "principal power")
    return z


def _theta(ctx: QContext, z: complex):
    # keep the scaled form: near q = 1 each theta factor alone overflows
    # float64, only the quotient is of order one
    from .qcore import theta_scaled
    return theta_scaled(z, ctx)[0]


def limit_theta_ratio(alpha: float, beta: float, z: complex,
                      sched: LimitSchedule = LimitSchedule(),
                      form: str = "plain") -> LimitReport:
    """Scan one of the two theta-quotient limits.

    form="plain":   theta(q^beta z)/theta(q^alpha z)            -> z^(alpha-beta)
    form="scaled":  theta(q^alpha z/(1-q))/theta(q^beta z/(1-q))
                    * (1-q)^(beta-alpha)                        -> z^(beta-alpha)
    """
    z = _require_off_cut(z, "z")
    if form not in ("plain", "scaled"):
        raise ValueError("form must be 'plain' or 'scaled'")
    values = []
    for q in sched.q_values:
        ctx = _scan_ctx(q)
        lnq = ctx.ln_q
        if form == "plain":
            num = _theta(ctx, math.exp(beta * lnq) * z)
            den = _theta(ctx, math.exp(alpha * lnq) * z)
            values.append((num / den).to_complex())
        else:
            h = 1.0 - q
            num = _theta(ctx, math.exp(alpha * lnq) * z / h)
            den = _theta(ctx, math.exp(beta * lnq) * z / h)
            scale = ScaledComplex.from_log((beta - alpha) * math.log(h))
            values.append((num / den * scale).to_complex())
    s = (alpha - beta) if form == "plain" else (beta - alpha)
    target = _principal_power(z, s)
    return LimitReport.build(f"theta-ratio[{form}]", sched, values, target)


def limit_qpoch_ratio(alpha: float, z: complex,
                      sched: LimitSchedule = LimitSchedule()) -> LimitReport:
    """Scan (z q^alpha;q)_inf / (z;q)_inf toward (1-z)^(-alpha), |z| < 1."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise DivergenceDomainError(
            f"the q-binomial ratio limit needs |z| < 1, got {abs(z):g}")
    values = []
    for q in sched.q_values:
        ctx = _scan_ctx(q)
        num = qpoch_infinite_scaled(z * math.exp(alpha * ctx.ln_q), ctx)[0]
        den = qpoch_infinite_scaled(z, ctx)[0]
        values.append((num / den).to_complex())
    target = _principal_power(1.0 - z, -alpha)
    return LimitReport.build("qpoch-ratio", sched, values, target)


# ----------------------------------------------------------------- lin forms


def linear_split_rhs(ctx: QContext, a: complex, x: complex) -> complex:
    """Even/odd split of the q-binomial sum: 2phi1(a,aq;q;q^2,x^2)
    + x (a,q^3;q^2)_inf/((a q^2,q;q^2)_inf) 2phi1(aq,a q^2;q^3;q^2,x^2).

    Equal to 1phi0(a;-;q,x) for |x| < 1; the coefficient is kept in its
    product form rather than its collapsed value (1-a)/(1-q) so the check
    against the direct sum stays a two-route comparison."""
    q = ctx.q
    ctx2 = QContext(q * q, max_terms=ctx.max_terms, tail_tol=ctx.tail_tol,
                    consecutive_small=ctx.consecutive_small)
    even = eval_unilateral_phi([a, a * q], [q], ctx2, x * x).value
    odd = eval_unilateral_phi([a * q, a * q * q], [q ** 3], ctx2, x * x).value
    coef = ((qpoch_infinite_scaled(a, ctx2)[0]
             * qpoch_infinite_scaled(q ** 3, ctx2)[0])
            / (qpoch_infinite_scaled(a * q * q, ctx2)[0]
               * qpoch_infinite_scaled(q, ctx2)[0])).to_complex()
    return even + x * coef * odd


def limit_linear_sum_forms(alpha: Optional[float], x: complex,
                           sched: LimitSchedule = LimitSchedule()) -> LimitReport:
    """Even/odd linear split of the q-binomial sum and its classical limit.

    alpha=None is the vanishing-parameter case: at each q the identity

        1phi0(0;-;q,w) = 2phi1(0,0;q;q^2,w^2)
                         + w (q^3;q^2)_inf/(q;q^2)_inf 2phi1(0,0;q^3;q^2,w^2)

    is verified at w = (1-q^2)x (exact at every q; residual reported in
    identity_errors) and the scanned left side tends to e^(2x).

    alpha given: the same split for a = q^alpha at fixed x, |x| < 1; the
    scan target is 1F0(alpha; x) = (1-x)^(-alpha).  In both cases the
    matching classical split identity is verified once via the classical
    evaluators.
    """
    x = complex(x)
    if x == 0:
        raise ZeroArgumentError("x must be nonzero")
    values = []
    identity_errors = []
    if alpha is None:
        for q in sched.q_values:
            ctx = _scan_ctx(q)
            w = (1.0 - q * q) * x
            lhs = eval_unilateral_phi([0.0], [], ctx, w).value
            rhs = linear_split_rhs(ctx, 0.0, w)
            identity_errors.append(abs(lhs - rhs) / max(abs(lhs), 1e-300))
            values.append(lhs)
        target = classical_hypergeometric("0F0", [], 2.0 * x).value
        # classical companion: e^{2x} = 0F1(-;1/2;x^2) + 2x 0F1(-;3/2;x^2)
        split = (classical_hypergeometric("0F1", [0.5], x * x).value
                 + 2.0 * x * classical_hypergeometric("0F1", [1.5], x * x).value)
        name = "linear-sum[a=0]"
    else:
        if abs(x) >= 1.0:
            raise DivergenceDomainError(
                f"the fixed-argument split needs |x| < 1, got {abs(x):g}")
        for q in sched.q_values:
            ctx = _scan_ctx(q)
            a = math.exp(alpha * ctx.ln_q)
            lhs = eval_unilateral_phi([a], [], ctx, x).value
            rhs = linear_split_rhs(ctx, a, x)
            identity_errors.append(abs(lhs - rhs) / max(abs(lhs), 1e-300))
            values.append(lhs)
        target = classical_hypergeometric("1F0", [alpha], x).value
        # classical companion: 1F0(alpha;x) = 2F1(a/2,a/2+1/2;1/2;x^2)
        #                       + alpha x 2F1(a/2+1/2,a/2+1;3/2;x^2)
        split = (classical_hypergeometric(
                     "2F1", [alpha / 2, alpha / 2 + 0.5, 0.5], x * x).value
                 + alpha * x * classical_hypergeometric(
                     "2F1", [alpha / 2 + 0.5, alpha / 2 + 1.0, 1.5], x * x).value)
        name = f"linear-sum[alpha={alpha:g}]"
    split_err = abs(split - target) / max(abs(target), 1e-300)
    if split_err > 1e-10:
        raise AssertionError(
            f"classical split identity failed ({split_err:g}) in {name}")
    return LimitReport.build(name, sched, values, target,
                             identity_errors=identity_errors)


# ------------------------------------------------------- pipeline limits


def limit_theorem_A(beta: float, x: complex, cfg: LaplaceConfig = LaplaceConfig(),
                    sched: LimitSchedule = LimitSchedule()) -> LimitReport:
    """Scan the variant-A resummation at (1-q)x with b = q^beta toward
    Gamma(beta) x^(1-beta) e^x, through the same closed form as the
    resummation module."""
    x = _require_off_cut(x, "x")
    values = []
    for q in sched.q_values:
        ctx = _scan_ctx(q)
        b = math.exp(beta * ctx.ln_q)
        values.append(closedform_psiA(b, cfg, ctx, (1.0 - q) * x).value)
    target = (classical_gamma(beta)
              * _principal_power(x, 1.0 - beta) * cmath.exp(x))
    return LimitReport.build(f"theorem-A[beta={beta:g}]", sched, values, target)


def limit_theorem_B(alpha: float, x: complex, cfg: LaplaceConfig = LaplaceConfig(),
                    sched: LimitSchedule = LimitSchedule()) -> LimitReport:
    """Scan the variant-B resummation at x/(1-q) with a = q^alpha toward
    Gamma(1-alpha) x^(-alpha) e^(1/x)."""
    x = _require_off_cut(x, "x")
    values = []
    for q in sched.q_values:
        ctx = _scan_ctx(q)
        a = math.exp(alpha * ctx.ln_q)
        values.append(closedform_psiB(a, cfg, ctx, x / (1.0 - q)).value)
    target = (classical_gamma(1.0 - alpha)
              * _principal_power(x, -alpha) * cmath.exp(1.0 / x))
    return LimitReport.build(f"theorem-B[alpha={alpha:g}]", sched, values, target)
