"""q-Borel and q-Laplace transforms of the first kind, and the resummation
pipelines built from them.

The q-Borel transform acts on coefficient families by a_n -> a_n q^{n(n-1)/2}
(applied for every integer index).  The q-Laplace transform is the bilateral
Jackson sum

    (L_{q,lam} phi)(x) = sum_{n in Z} phi(lam q^n) / theta_q(lam q^n / x),

truncated symmetrically at |n| <= n_window with independent certification of
both tails.  Composing the two yields convergent resummations of the two
divergent bilateral series handled here:

  variant A:  sum_n x^n / (b;q)_n          (vanishing upper parameter)
  variant B:  sum_n (a;q)_n (-1)^n q^{-n(n-1)/2} x^n

together with their closed forms and the elliptic connection coefficients
C_A, C_B relating the resummation to the theta-normalized solutions of the
underlying first-order q-difference equations.

Branch conventions: integer powers of complex numbers are exact (computed in
log space with the principal argument); no non-integer powers appear.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, replace
from typing import Callable, Mapping, Union

from .errors import (
    ParameterPoleError,
    PoleError,
    SpiralProximityError,
    TailNotConvergedError,
    ZeroArgumentError,
)
from .qcore import EvalResult, QContext, qpoch_infinite_scaled, theta_scaled
from .scaled import ScaledComplex
from .series_engine import FormalBilateralSeries, QSpiral, eval_unilateral_phi

__all__ = [
    "LaplaceConfig",
    "ConnectionCoefficient",
    "qborel_plus",
    "qlaplace_plus",
    "psi_A_value",
    "psi_B_value",
    "resummed_psiA",
    "resummed_psiB",
    "closedform_psiA",
    "closedform_psiB",
    "connection_coeff",
    "theta_solution_A",
    "theta_solution_B",
]

PhiValue = Union[EvalResult, ScaledComplex, complex]


@dataclass(frozen=True)
class LaplaceConfig:
    """Parameters of the truncated q-Laplace transform.

    lam        -- the Jackson-sum anchor; must stay off the spiral q^Z
                  (checked against each QContext at use time).  Named lam
                  because lambda is reserved in Python.
    n_window   -- symmetric truncation: indices n with |n| <= n_window.
    spiral_guard -- relative distance below which an evaluation point is
                  considered to sit on an excluded q-spiral.
    """

    lam: complex = 1.1
    n_window: int = 60
    spiral_guard: float = 1e-6

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        if self.lam == 0:
            raise ValueError("lam must be nonzero")
        if self.n_window < 1:
            raise ValueError("n_window must be a positive integer")
        if not (self.spiral_guard > 0):
            raise ValueError("spiral_guard must be positive")


def _check_config(cfg: LaplaceConfig, ctx: QContext) -> None:
    # lam on q^Z makes every node lam q^n collide with the theta zeros of
    # the transform kernel denominators
    if QSpiral(1.0).distance(cfg.lam, ctx.q) <= cfg.spiral_guard:
        raise SpiralProximityError(
            f"lam={cfg.lam:g} lies within {cfg.spiral_guard:g} of the "
            "spiral q^Z")
    if cfg.n_window > ctx.max_terms:
        raise ValueError(
            f"n_window={cfg.n_window} exceeds ctx.max_terms={ctx.max_terms}")


def _tri(n: int) -> int:
    return n * (n - 1) // 2


def _theta(ctx: QContext, z: complex) -> ScaledComplex:
    return theta_scaled(z, ctx)[0]


def _on_zero_spiral(z: complex, q: float) -> bool:
    """True when z sits numerically on -q^Z, the zero set of theta.

    There the series cancels below anything the summation can certify,
    so a denominator theta must count as vanished even when rounding
    leaves a nonzero residue."""
    return QSpiral(-1.0).distance(z, q) < 1e-12


def _qp(ctx: QContext, *args: complex) -> ScaledComplex:
    out = ScaledComplex.of(1.0)
    for a in args:
        out = out * qpoch_infinite_scaled(a, ctx)[0]
    return out


def _tight(ctx: QContext, k: int) -> QContext:
    """Context with tail_tol shared among k certified components, so the
    summed truncation error of a product stays within the original tol."""
    return replace(ctx, tail_tol=ctx.tail_tol / k)


def _as_scaled(v: PhiValue) -> ScaledComplex:
    if isinstance(v, ScaledComplex):
        return v
    if isinstance(v, EvalResult):
        return ScaledComplex.of(v.value)
    return ScaledComplex.of(complex(v))


# ----------------------------------------------------------------------
# the two transforms


def qborel_plus(s: FormalBilateralSeries) -> FormalBilateralSeries:
    """Coefficient map a_n -> a_n q^{n(n-1)/2} on a formal bilateral family.

    The transform is defined on power series; it extends coefficientwise to
    bilateral families, which is the form the resummation pipelines need.
    The q-power is attached in log scale so the output family stays exact
    far outside float range.
    """
    lnq = s.ctx.ln_q

    def fn(n: int) -> ScaledComplex:
        return s.coeff_scaled(n) * ScaledComplex.from_log(_tri(n) * lnq)

    return FormalBilateralSeries.generic(fn, s.ctx, params=dict(s.params))


def _certify_jackson_tail(term_at: Callable[[int], ScaledComplex],
                          indices, tol: float, win: int,
                          side: str) -> tuple[ScaledComplex, float, float, int]:
    """Sum term_at(n) over indices (an increasing-|n| walk of one tail),
    certifying the remainder like a geometric series.

    Returns (partial sum, remainder log-bound, max term log-magnitude,
    terms consumed).  Raises TailNotConverged when the window ends first.
    """
    S = ScaledComplex.of(0.0)
    maxa_log = -math.inf
    prev_log = None
    ratios: deque = deque(maxlen=win)
    small = 0
    count = 0
    last_log = -math.inf
    for n in indices:
        t = term_at(n)
        S = S + t
        count += 1
        t_log = t.log_abs()
        last_log = t_log
        maxa_log = max(maxa_log, t_log)
        if prev_log is not None:
            if t_log == -math.inf:
                ratios.append(0.0)
            elif prev_log == -math.inf:
                ratios.append(math.inf)
            else:
                ratios.append(math.exp(min(t_log - prev_log, 50.0)))
        prev_log = t_log
        scale_log = max(S.log_abs(), maxa_log)
        if scale_log > -math.inf:
            is_small = t_log <= math.log(tol) + scale_log
        else:
            is_small = t.is_zero()
        if is_small:
            small += 1
        else:
            small = 0
        if small >= win and len(ratios) == win:
            rb = max(ratios) * 1.0625
            if rb < 0.9375:
                rem_log = (last_log + math.log1p(rb / (1.0 - rb))
                           if last_log > -math.inf else -math.inf)
                # accept against the max-term scale, which the final error
                # normalization is guaranteed to dominate even when the two
                # tails cancel against each other
                if rem_log <= math.log(tol) + maxa_log or rem_log == -math.inf:
                    return S, rem_log, maxa_log, count
    raise TailNotConvergedError(
        f"{side} Jackson tail not certified within n_window={count - 1} "
        f"(tol {tol:g})")


def qlaplace_plus(phi: Callable[[complex], PhiValue], cfg: LaplaceConfig,
                  ctx: QContext, x: complex) -> EvalResult:
    """Truncated bilateral Jackson sum sum_n phi(lam q^n)/theta(lam q^n / x).

    Every kernel denominator is obtained from theta(lam/x) by the exact
    quasi-periodicity exponent rather than by re-summation:
        theta(lam q^n / x) = (lam/x)^{-n} q^{-n(n-1)/2} theta(lam/x),
    so the node weights stay exact in log scale for any n.  phi may return
    an EvalResult, a ScaledComplex (preferred for fast-growing integrands),
    or a plain complex.
    """
    q = ctx.q
    lnq = ctx.ln_q
    x = complex(x)
    if x == 0:
        raise ZeroArgumentError("qlaplace_plus needs x != 0")
    _check_config(cfg, ctx)
    lam = cfg.lam
    if QSpiral(-lam).distance(x, q) <= cfg.spiral_guard:
        raise SpiralProximityError(
            f"x={x:g} lies within {cfg.spiral_guard:g} of the spiral "
            "-lam q^Z where the kernel theta vanishes")

    w = lam / x
    th0 = _theta(_tight(ctx, 2), w)
    if th0.is_zero() or _on_zero_spiral(w, q):
        raise SpiralProximityError("theta(lam/x) vanished: x on -lam q^Z")
    la = math.log(abs(w))
    ph = math.atan2(w.imag, w.real)

    def term_at(n: int) -> ScaledComplex:
        node = lam * math.exp(n * lnq)
        if node == 0:
            raise TailNotConvergedError(
                "lam q^n underflowed before the positive tail certified")
        # 1/theta(lam q^n/x) = (lam/x)^n q^{n(n-1)/2} / theta(lam/x)
        weight = ScaledComplex.from_log(complex(n * la + _tri(n) * lnq,
                                                n * ph)) / th0
        return _as_scaled(phi(node)) * weight

    tol_half = ctx.tail_tol / 2.0
    win = ctx.consecutive_small
    S_pos, rem_pos_log, maxa_pos, n_pos = _certify_jackson_tail(
        term_at, range(0, cfg.n_window + 1), tol_half, win, "ascending")
    S_neg, rem_neg_log, maxa_neg, n_neg = _certify_jackson_tail(
        term_at, range(-1, -cfg.n_window - 1, -1), tol_half, win, "descending")

    S = S_pos + S_neg
    scale_log = max(S.log_abs(), maxa_pos, maxa_neg)
    if scale_log == -math.inf:
        err = 0.0
    else:
        err = (math.exp(min(rem_pos_log - scale_log, 50.0))
               + math.exp(min(rem_neg_log - scale_log, 50.0)))
    return EvalResult(value=S.to_complex(), err_estimate=err,
                      terms_pos=n_pos, terms_neg=n_neg)


# ----------------------------------------------------------------------
# the two Borel sums in closed form (entire up to explicit pole spirals)


def psi_A_value(b: complex, ctx: QContext, xi: complex) -> ScaledComplex:
    """Meromorphic continuation of sum_n q^{n(n-1)/2} xi^n / (b;q)_n:

        (q;q)_inf/(b;q)_inf * theta(xi)/theta(q xi/b) * E_q(q xi/b).

    Where the bilateral series converges (|xi| > |b|) the two routes agree;
    this form extends to every xi off the pole spiral -b q^Z.
    """
    b = complex(b)
    xi = complex(xi)
    if b == 0 or xi == 0:
        raise ZeroArgumentError("psi_A_value needs b != 0 and xi != 0")
    c = _tight(ctx, 5)
    den_b = qpoch_infinite_scaled(b, c)[0]
    if den_b.is_zero():
        raise ParameterPoleError(f"(b;q)_inf = 0 at b={b:g}")
    den_th = _theta(c, ctx.q * xi / b)
    if den_th.is_zero() or _on_zero_spiral(ctx.q * xi / b, ctx.q):
        raise PoleError(f"xi={xi:g} on the pole spiral -b q^Z")
    return (_qp(c, ctx.q) / den_b * _theta(c, xi) / den_th
            * qpoch_infinite_scaled(-ctx.q * xi / b, c)[0])


def psi_B_value(a: complex, ctx: QContext, xi: complex) -> ScaledComplex:
    """Meromorphic continuation of sum_n (a;q)_n (-xi)^n:

        (q;q)_inf/((q/a);q)_inf * theta(a xi)/theta(xi) * E_q(q/xi).

    Where the bilateral series converges (|xi| < 1) the routes agree; this
    form extends to every xi off the pole spiral -q^Z.
    """
    a = complex(a)
    xi = complex(xi)
    if a == 0 or xi == 0:
        raise ZeroArgumentError("psi_B_value needs a != 0 and xi != 0")
    c = _tight(ctx, 5)
    den_a = qpoch_infinite_scaled(ctx.q / a, c)[0]
    if den_a.is_zero():
        # only a in {q, q^2, ...} vanishes here; a = 1 is fine
        raise ParameterPoleError(f"((q/a);q)_inf = 0 at a={a:g}")
    den_th = _theta(c, xi)
    if den_th.is_zero() or _on_zero_spiral(xi, ctx.q):
        raise PoleError(f"xi={xi:g} on the pole spiral -q^Z")
    return (_qp(c, ctx.q) / den_a * _theta(c, a * xi) / den_th
            * qpoch_infinite_scaled(-ctx.q / xi, c)[0])


# ----------------------------------------------------------------------
# resummation pipelines and closed forms


def resummed_psiA(b: complex, cfg: LaplaceConfig, ctx: QContext,
                  x: complex) -> EvalResult:
    """Laplace-of-Borel resummation of variant A, evaluated through the
    truncated Jackson sum (the independent route; compare closedform_psiA).

    The Borel sum at each node is the variant-A closed form psi_A_value;
    the bilateral series route agrees with it wherever that series
    converges, but the nodes lam q^n leave its annulus for large n.
    """
    b = complex(b)
    return qlaplace_plus(lambda xi: psi_A_value(b, ctx, xi), cfg, ctx, x)


def resummed_psiB(a: complex, cfg: LaplaceConfig, ctx: QContext,
                  x: complex) -> EvalResult:
    """Variant-B resummation through the truncated Jackson sum."""
    a = complex(a)
    return qlaplace_plus(lambda xi: psi_B_value(a, ctx, xi), cfg, ctx, x)


def _one_phi_zero_zero(ctx: QContext, w: complex) -> tuple[ScaledComplex, float]:
    """1phi0(0;-;q,w) = sum w^n/(q;q)_n, continued by 1/(w;q)_inf when the
    series leaves its certified-ratio region.  Returns (value, rel err)."""
    if abs(w) <= 0.85:
        r = eval_unilateral_phi([0.0], [], ctx, w)
        return ScaledComplex.of(r.value), r.err_estimate
    prod, perr, _ = qpoch_infinite_scaled(w, ctx)
    if prod.is_zero():
        raise PoleError(f"1phi0(0;-;q,w) pole: w={w:g} on q^-N")
    return ScaledComplex.of(1.0) / prod, perr


def closedform_psiA(b: complex, cfg: LaplaceConfig, ctx: QContext,
                    x: complex) -> EvalResult:
    """Closed form of the variant-A resummation:

        (q;q)_inf/(b;q)_inf
        * theta(lam) theta(lam q/(b x)) / (theta(q lam/b) theta(lam/x))
        * 1phi0(0;-;q,x).

    Invariant under lam -> q lam (the four quasi-periodicity exponents
    cancel exactly).
    """
    q = ctx.q
    b = complex(b)
    x = complex(x)
    if b == 0:
        raise ZeroArgumentError("closedform_psiA needs b != 0")
    if x == 0:
        raise ZeroArgumentError("closedform_psiA needs x != 0")
    _check_config(cfg, ctx)
    lam = cfg.lam
    if QSpiral(-lam).distance(x, q) <= cfg.spiral_guard:
        raise SpiralProximityError(
            f"x={x:g} within {cfg.spiral_guard:g} of the spiral -lam q^Z")
    c = _tight(ctx, 8)
    den_b = qpoch_infinite_scaled(b, c)[0]
    if den_b.is_zero():
        raise ParameterPoleError(f"(b;q)_inf = 0 at b={b:g}")
    th_qlb = _theta(c, q * lam / b)
    th_lx = _theta(c, lam / x)
    if (th_qlb.is_zero() or th_lx.is_zero()
            or _on_zero_spiral(q * lam / b, q)
            or _on_zero_spiral(lam / x, q)):
        raise PoleError("theta denominator vanished in closedform_psiA")
    phi, phi_err = _one_phi_zero_zero(c, x)
    val = (_qp(c, q) / den_b
           * _theta(c, lam) * _theta(c, lam * q / (b * x))
           / th_qlb / th_lx * phi)
    err = min(ctx.tail_tol, 7.0 * c.tail_tol + phi_err)
    return EvalResult(value=val.to_complex(), err_estimate=err,
                      terms_pos=1, terms_neg=0)


def closedform_psiB(a: complex, cfg: LaplaceConfig, ctx: QContext,
                    x: complex) -> EvalResult:
    """Closed form of the variant-B resummation:

        (q;q)_inf/((q/a);q)_inf
        * theta(a lam) theta(a q x/lam) / (theta(lam) theta(q x/lam))
        * 1phi0(0;-;q,1/(a x)).

    Also invariant under lam -> q lam.
    """
    q = ctx.q
    a = complex(a)
    x = complex(x)
    if a == 0:
        raise ZeroArgumentError("closedform_psiB needs a != 0")
    if x == 0:
        raise ZeroArgumentError("closedform_psiB needs x != 0")
    _check_config(cfg, ctx)
    lam = cfg.lam
    if QSpiral(-lam).distance(x, q) <= cfg.spiral_guard:
        raise SpiralProximityError(
            f"x={x:g} within {cfg.spiral_guard:g} of the spiral -lam q^Z")
    c = _tight(ctx, 8)
    den_a = qpoch_infinite_scaled(q / a, c)[0]
    if den_a.is_zero():
        raise ParameterPoleError(f"((q/a);q)_inf = 0 at a={a:g}")
    th_lam = _theta(c, lam)
    th_qxl = _theta(c, q * x / lam)
    if (th_lam.is_zero() or th_qxl.is_zero()
            or _on_zero_spiral(lam, q)
            or _on_zero_spiral(q * x / lam, q)):
        raise PoleError("theta denominator vanished in closedform_psiB")
    phi, phi_err = _one_phi_zero_zero(c, 1.0 / (a * x))
    val = (_qp(c, q) / den_a
           * _theta(c, a * lam) * _theta(c, a * q * x / lam)
           / th_lam / th_qxl * phi)
    err = min(ctx.tail_tol, 7.0 * c.tail_tol + phi_err)
    return EvalResult(value=val.to_complex(), err_estimate=err,
                      terms_pos=1, terms_neg=0)


# ----------------------------------------------------------------------
# theta-normalized solutions and connection coefficients


def theta_solution_A(b: complex, ctx: QContext, x: complex) -> complex:
    """v~(x) = theta(b x)/theta(q x) * 1phi0(0;-;q,x): the solution of
    (b/q) u(qx) + (x-1) u(x) = 0 that the variant-A resummation factors
    through."""
    b = complex(b)
    x = complex(x)
    if b == 0 or x == 0:
        raise ZeroArgumentError("theta_solution_A needs b != 0, x != 0")
    c = _tight(ctx, 3)
    den = _theta(c, ctx.q * x)
    if den.is_zero() or _on_zero_spiral(ctx.q * x, ctx.q):
        raise PoleError(f"x={x:g} on the pole spiral -q^Z")
    phi, _ = _one_phi_zero_zero(c, x)
    return (_theta(c, b * x) / den * phi).to_complex()


def theta_solution_B(a: complex, ctx: QContext, x: complex) -> complex:
    """v^(x) = theta(a x)/theta(x) * 1phi0(0;-;q,1/(a x)): the solution of
    (1/q - a x) u(qx) + x u(x) = 0 that the variant-B resummation factors
    through."""
    a = complex(a)
    x = complex(x)
    if a == 0 or x == 0:
        raise ZeroArgumentError("theta_solution_B needs a != 0, x != 0")
    c = _tight(ctx, 3)
    den = _theta(c, x)
    if den.is_zero() or _on_zero_spiral(x, ctx.q):
        raise PoleError(f"x={x:g} on the pole spiral -q^Z")
    phi, _ = _one_phi_zero_zero(c, 1.0 / (a * x))
    return (_theta(c, a * x) / den * phi).to_complex()


@dataclass(frozen=True)
class ConnectionCoefficient:
    """Elliptic multiplier C with resummation = C(x) * theta-solution.

    q-periodic: C(q x) = C(x) for every admissible x (each of the three
    theta quotients picks up a quasi-periodicity factor and the three
    factors cancel exactly).
    """

    variant: str            # "A" or "B"
    param: complex          # b for variant A, a for variant B
    lam: complex
    ctx: QContext

    def evaluate(self, x: complex) -> complex:
        x = complex(x)
        if x == 0:
            raise ZeroArgumentError("connection coefficient needs x != 0")
        q = self.ctx.q
        lam = self.lam
        c = _tight(self.ctx, 8)
        if self.variant == "A":
            b = self.param
            den = (_qp(c, b) * _theta(c, q * lam / b)
                   * _theta(c, q * x / lam) * _theta(c, b * x))
            if den.is_zero() or any(
                    _on_zero_spiral(w, q)
                    for w in (q * lam / b, q * x / lam, b * x)):
                raise PoleError("denominator vanished in C_A")
            num = (_qp(c, q) * _theta(c, lam)
                   * _theta(c, b * x / lam) * _theta(c, q * x))
            return (num / den).to_complex()
        a = self.param
        den = (_qp(c, q / a) * _theta(c, lam)
               * _theta(c, q * x / lam) * _theta(c, a * x))
        if den.is_zero() or any(
                _on_zero_spiral(w, q)
                for w in (lam, q * x / lam, a * x)):
            raise PoleError("denominator vanished in C_B")
        num = (_qp(c, q) * _theta(c, a * lam)
               * _theta(c, a * q * x / lam) * _theta(c, x))
        return (num / den).to_complex()

    __call__ = evaluate


def connection_coeff(variant: str, params: Mapping[str, complex] | complex,
                     cfg: LaplaceConfig, ctx: QContext) -> ConnectionCoefficient:
    """Build C_A (params: {"b": ...}) or C_B (params: {"a": ...}).

    C_A(x) = (q;q)inf/(b;q)inf * theta(lam)/theta(q lam/b)
             * theta(b x/lam)/theta(q x/lam) * theta(q x)/theta(b x)
    C_B(x) = (q;q)inf/((q/a);q)inf * theta(a lam)/theta(lam)
             * theta(a q x/lam)/theta(q x/lam) * theta(x)/theta(a x)
    """
    variant = str(variant).upper()
    if variant not in ("A", "B"):
        raise ValueError(f"variant must be 'A' or 'B', got {variant!r}")
    key = "b" if variant == "A" else "a"
    if isinstance(params, Mapping):
        if key not in params:
            raise ValueError(f"variant {variant} needs params[{key!r}]")
        p = complex(params[key])
    else:
        p = complex(params)
    if p == 0:
        raise ZeroArgumentError(f"parameter {key} must be nonzero")
    _check_config(cfg, ctx)
    if variant == "A":
        if qpoch_infinite_scaled(p, ctx)[0].is_zero():
            raise ParameterPoleError(f"(b;q)_inf = 0 at b={p:g}")
    else:
        if qpoch_infinite_scaled(ctx.q / p, ctx)[0].is_zero():
            raise ParameterPoleError(f"((q/a);q)_inf = 0 at a={p:g}")
    return ConnectionCoefficient(variant=variant, param=p, lam=cfg.lam,
                                 ctx=ctx)
