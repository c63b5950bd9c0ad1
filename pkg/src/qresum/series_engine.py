"""Basic hypergeometric series evaluation and verification.

Unilateral r_phi_s and bilateral r_psi_s evaluators with convergence
domain enforcement, formal coefficient families for the divergent
bilateral series (which must never be summed numerically), q-difference
residual checks, and the Watson connection-formula verifier.

Series conventions
------------------
* r_phi_s(a1..ar; b1..bs; q, z) = sum_{n>=0} (a1..ar;q)_n /
  [(q;q)_n (b1..bs;q)_n] {(-1)^n q^{n(n-1)/2}}^{1+s-r} z^n.
* r_psi_s(a1..ar; b1..bs; q, z) = sum_{n in Z} (a1..ar;q)_n /
  (b1..bs;q)_n {(-1)^n q^{n(n-1)/2}}^{s-r} z^n.
* Bilateral convergence: divergent for all z != 0 when s < r; annulus
  |b1..bs / a1..ar| < |z| < 1 when r = s (any vanishing upper parameter
  makes the series divergent everywhere); |z| > |b1..bs / a1..ar| when
  s > r.

For the negative-index tail the coefficient ratio is computed in the
factor-paired form c_{-m}/c_{-m+1} = (-1)^{s-r} prod_b (q^m - b) /
prod_a (q^m - a), which stays bounded where the raw reciprocal
Pochhammer products overflow.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import (
    DivergenceDomainError,
    DomainOverlapEmptyError,
    ParameterPoleError,
    ZeroArgumentError,
)
from .qcore import EvalResult, QContext, _geom_sum, qpoch_infinite_scaled, theta_scaled
from .scaled import ScaledComplex

__all__ = [
    "SeriesKind",
    "FormalBilateralSeries",
    "QSpiral",
    "ConvergenceDomain",
    "QDifferenceEquation",
    "IdentityReport",
    "bilateral_domain",
    "eval_unilateral_phi",
    "eval_bilateral_psi",
    "qdiff_residual",
    "formal_recurrence_check",
    "watson_connection_check",
    "heine_equation",
    "degeneration_a_equation",
    "degeneration_b_equation",
    "one_psi_one_equation",
]


# ----------------------------------------------------------------------
# spirals and convergence domains

@dataclass(frozen=True)
class QSpiral:
    """The geometric spiral {base * q^k : k in Z}."""

    base: complex

    def __post_init__(self):
        if self.base == 0:
            raise ZeroArgumentError("spiral base must be nonzero")

    def distance(self, x: complex, q: float) -> float:
        """Relative distance min_k |x - base q^k| / |x| over the nearby k."""
        x = complex(x)
        if x == 0:
            return 1.0
        k = round(math.log(abs(x) / abs(self.base)) / math.log(q))
        ax = abs(x)
        best = math.inf
        for j in range(k - 3, k + 4):
            d = abs(x - self.base * q**j) / ax
            if d < best:
                best = d
        return best


@dataclass(frozen=True)
class ConvergenceDomain:
    """Open region where a series converges.

    kind: "disk" (|z| < r_out), "annulus" (r_in < |z| < r_out),
    "exterior" (|z| > r_in), "everywhere".  Zero is always excluded for
    bilateral series since negative powers appear.
    """

    kind: str
    r_in: float = 0.0
    r_out: float = math.inf
    excluded_spirals: tuple[QSpiral, ...] = ()

    def __post_init__(self):
        if self.kind not in ("disk", "annulus", "exterior", "everywhere"):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.kind == "annulus" and not self.r_in < self.r_out:
            raise ValueError("annulus requires r_in < r_out")

    def contains(self, z: complex) -> bool:
        az = abs(z)
        if self.kind == "disk":
            return 0 <= az < self.r_out
        if self.kind == "annulus":
            return self.r_in < az < self.r_out
        if self.kind == "exterior":
            return az > self.r_in
        return az > 0


def bilateral_domain(upper: Sequence[complex], lower: Sequence[complex]) -> ConvergenceDomain:
    """Convergence domain of r_psi_s, or DivergenceDomainError when the
    series diverges for every z != 0 (s < r, or r = s with a vanishing
    upper parameter)."""
    r, s = len(upper), len(lower)
    if s < r:
        raise DivergenceDomainError(
            f"{r}psi{s} diverges for every z != 0 (s < r); "
            "only a formal coefficient family can represent it")
    if r == s:
        if any(a == 0 for a in upper):
            raise DivergenceDomainError(
                f"{r}psi{s} with a vanishing upper parameter diverges "
                "everywhere; only a formal coefficient family can represent it")
        prod_b = 1.0
        for b in lower:
            prod_b *= abs(b)
        prod_a = 1.0
        for a in upper:
            prod_a *= abs(a)
        return ConvergenceDomain("annulus", prod_b / prod_a, 1.0)
    prod_b = 1.0
    for b in lower:
        prod_b *= abs(b)
    for a in upper:
        prod_b /= abs(a)
    return ConvergenceDomain("exterior", prod_b)


# ----------------------------------------------------------------------
# formal coefficient families

class SeriesKind(enum.Enum):
    ONE_PSI_ONE = "1psi1"
    ONE_PSI_ZERO = "1psi0"
    ZERO_PSI_ONE = "0psi1"
    GENERIC = "generic"


@dataclass
class FormalBilateralSeries:
    """Coefficient family n in Z -> c_n with a symbolic descriptor.

    Represents divergent bilateral series that must not be summed
    directly.  Coefficients are held as ScaledComplex because families
    like the 1psi0 one grow like q^{-n(n-1)/2} and leave float range
    within the index window.
    """

    kind: SeriesKind
    params: dict
    ctx: QContext
    _fn: Callable[[int], ScaledComplex] | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def one_psi_one(cls, a: complex, b: complex, ctx: QContext) -> "FormalBilateralSeries":
        return cls(SeriesKind.ONE_PSI_ONE, {"a": complex(a), "b": complex(b)}, ctx)

    @classmethod
    def one_psi_zero(cls, a: complex, ctx: QContext) -> "FormalBilateralSeries":
        return cls(SeriesKind.ONE_PSI_ZERO, {"a": complex(a)}, ctx)

    @classmethod
    def zero_psi_one(cls, b: complex, ctx: QContext) -> "FormalBilateralSeries":
        return cls(SeriesKind.ZERO_PSI_ONE, {"b": complex(b)}, ctx)

    @classmethod
    def generic(cls, fn: Callable[[int], ScaledComplex], ctx: QContext,
                params: dict | None = None) -> "FormalBilateralSeries":
        return cls(SeriesKind.GENERIC, dict(params or {}), ctx, _fn=fn)

    def _ratio_up(self, n: int) -> complex:
        """c_{n+1} / c_n."""
        q = self.ctx.q
        if self.kind is SeriesKind.ONE_PSI_ONE:
            a, b = self.params["a"], self.params["b"]
            den = 1.0 - b * q**n
            if den == 0:
                raise ParameterPoleError(f"lower parameter b={b} lies on q^-N")
            return (1.0 - a * q**n) / den
        if self.kind is SeriesKind.ZERO_PSI_ONE:
            b = self.params["b"]
            den = 1.0 - b * q**n
            if den == 0:
                raise ParameterPoleError(f"lower parameter b={b} lies on q^-N")
            return -(q**n) / den
        # ONE_PSI_ZERO: c_n = (a;q)_n (-1)^n q^{-n(n-1)/2}
        a = self.params["a"]
        return -(1.0 - a * q**n) * q ** float(-n)

    def _ratio_down(self, m: int) -> complex:
        """c_{-m} / c_{-m+1} in the factor-paired form (m >= 1)."""
        q = self.ctx.q
        if self.kind is SeriesKind.ONE_PSI_ONE:
            a, b = self.params["a"], self.params["b"]
            den = q**m - a
            if den == 0:
                raise ParameterPoleError(f"upper parameter a={a} lies on q^N")
            return (q**m - b) / den
        if self.kind is SeriesKind.ZERO_PSI_ONE:
            return self.params["b"] - q**m
        a = self.params["a"]
        den = q**m - a
        if den == 0:
            raise ParameterPoleError(f"upper parameter a={a} lies on q^N")
        return -1.0 / den

    def coeff_scaled(self, n: int) -> ScaledComplex:
        if n in self._cache:
            return self._cache[n]
        if self.kind is SeriesKind.GENERIC:
            v = self._fn(n)
            if not isinstance(v, ScaledComplex):
                v = ScaledComplex.of(v)
        elif n == 0:
            v = ScaledComplex.of(1.0)
        elif n > 0:
            v = self.coeff_scaled(n - 1) * self._ratio_up(n - 1)
        else:
            v = self.coeff_scaled(n + 1) * self._ratio_down(-n)
        self._cache[n] = v
        return v

    def coeff(self, n: int) -> complex:
        """Plain-complex coefficient; OverflowError when out of float range."""
        return self.coeff_scaled(n).to_complex()


# ----------------------------------------------------------------------
# evaluators

def _phi_domain_exponent(upper: Sequence[complex], lower: Sequence[complex]) -> int:
    return 1 + len(lower) - len(upper)


def eval_unilateral_phi(upper: Sequence[complex], lower: Sequence[complex],
                        ctx: QContext, z: complex) -> EvalResult:
    """r_phi_s(upper; lower; q, z) by term-recursive summation.

    Entire when s+1 > r; requires |z| < 1 when s+1 = r; rejected when
    s+1 < r (divergent for all z != 0).
    """
    q = ctx.q
    z = complex(z)
    e = _phi_domain_exponent(upper, lower)
    if e < 0 and z != 0:
        raise DivergenceDomainError(
            f"{len(upper)}phi{len(lower)} diverges for every z != 0")
    if e == 0 and abs(z) >= 1.0:
        raise DivergenceDomainError(
            f"{len(upper)}phi{len(lower)} requires |z| < 1, got |z|={abs(z):g}")
    for b in lower:
        # b on q^-N makes a term denominator vanish
        if b != 0 and abs(b) >= 1.0 - 1e-12:
            spiral = QSpiral(1.0)
            if spiral.distance(b, q) < 1e-10:
                raise ParameterPoleError(f"lower parameter {b} lies on q^-N")
    if z == 0:
        return EvalResult(1.0 + 0j, 0.0, 1, 0)

    def mult(n: int) -> complex:
        num = 1.0 + 0j
        for a in upper:
            num *= 1.0 - a * q**n
        den = 1.0 - q ** (n + 1)
        for b in lower:
            f = 1.0 - b * q**n
            if f == 0:
                raise ParameterPoleError(f"lower parameter {b} lies on q^-N")
            den *= f
        return z * num / den * (-(q**n)) ** e

    S, tail, n, maxa = _geom_sum(1.0 + 0j, mult, ctx.max_terms,
                                 ctx.tail_tol, ctx.consecutive_small)
    return EvalResult(S, tail / max(abs(S), maxa), n, 0)


def eval_bilateral_psi(upper: Sequence[complex], lower: Sequence[complex],
                       ctx: QContext, z: complex) -> EvalResult:
    """r_psi_s(upper; lower; q, z): symmetric two-tail summation with
    independent tail certification per direction."""
    q = ctx.q
    z = complex(z)
    dom = bilateral_domain(upper, lower)
    if z == 0:
        raise ZeroArgumentError("bilateral series need z != 0")
    if not dom.contains(z):
        raise DivergenceDomainError(
            f"|z|={abs(z):g} outside the {dom.kind} convergence domain "
            f"(r_in={dom.r_in:g}, r_out={dom.r_out:g})")
    sr = len(lower) - len(upper)

    def mult_pos(n: int) -> complex:
        num = 1.0 + 0j
        for a in upper:
            num *= 1.0 - a * q**n
        den = 1.0 + 0j
        for b in lower:
            f = 1.0 - b * q**n
            if f == 0:
                raise ParameterPoleError(f"lower parameter {b} lies on q^-N")
            den *= f
        return z * num / den * (-(q**n)) ** sr

    def ratio_down(m: int) -> complex:
        num = (-1.0) ** sr + 0j
        for b in lower:
            num *= q**m - b
        for a in upper:
            f = q**m - a
            if f == 0:
                raise ParameterPoleError(f"upper parameter {a} lies on q^N")
            num /= f
        return num / z

    def both_tails(tol: float):
        pos = _geom_sum(1.0 + 0j, mult_pos, ctx.max_terms, tol,
                        ctx.consecutive_small)
        neg = _geom_sum(ratio_down(1), lambda j: ratio_down(j + 2),
                        ctx.max_terms, tol, ctx.consecutive_small)
        return pos, neg

    (S_pos, tail_pos, n_pos, maxa_pos), \
        (S_neg, tail_neg, n_neg, maxa_neg) = both_tails(ctx.tail_tol)
    value = S_pos + S_neg
    # Each tail certifies against its own partial sum.  Near a zero of
    # the bilateral function the two tails cancel and those per-tail
    # certificates are loose relative to the assembled value, so re-sum
    # once with a proportionally tighter tolerance.  The 2^-45 floor
    # keeps the target reachable when the value sits below what the
    # cancellation can resolve in double precision.
    floor = math.ldexp(max(maxa_pos, maxa_neg), -45)
    if tail_pos + tail_neg > ctx.tail_tol * max(abs(value), floor):
        part = abs(S_pos) + abs(S_neg)
        tol2 = ctx.tail_tol * max(abs(value), floor) / (2.0 * part)
        tol2 = max(min(tol2, 0.5 * ctx.tail_tol), 1e-17)
        (S_pos, tail_pos, n_pos, maxa_pos), \
            (S_neg, tail_neg, n_neg, maxa_neg) = both_tails(tol2)
        value = S_pos + S_neg
        floor = math.ldexp(max(maxa_pos, maxa_neg), -45)
    err = (tail_pos + tail_neg) / max(abs(value), floor)
    return EvalResult(value, err, n_pos, n_neg)


# ----------------------------------------------------------------------
# q-difference equations and residuals

@dataclass(frozen=True)
class QDifferenceEquation:
    """p2(x) u(q^2 x) + p1(x) u(q x) + p0(x) u(x) = 0 with polynomial
    coefficients, stored as tuples of increasing powers of x; an empty
    tuple means the coefficient is identically zero."""

    p2: tuple
    p1: tuple
    p0: tuple
    name: str = ""

    def __post_init__(self):
        nonzero = sum(1 for p in (self.p2, self.p1, self.p0)
                      if any(c != 0 for c in p))
        if nonzero < 2:
            raise ValueError("need at least two nonzero coefficient functions")

    @staticmethod
    def _poly(p: tuple, x: complex) -> complex:
        acc = 0j
        for c in reversed(p):
            acc = acc * x + c
        return acc

    def coefficients_at(self, x: complex) -> tuple[complex, complex, complex]:
        return (self._poly(self.p2, x), self._poly(self.p1, x),
                self._poly(self.p0, x))


def heine_equation(a: complex, b: complex, c: complex, ctx: QContext) -> QDifferenceEquation:
    """(c - a b q x) u(q^2 x) - {c + q - (a+b) q x} u(q x) + q (1-x) u(x) = 0,
    the second-order equation satisfied by 2phi1(a,b;c;q,x)."""
    q = ctx.q
    return QDifferenceEquation(
        p2=(c, -a * b * q),
        p1=(-(c + q), (a + b) * q),
        p0=(q, -q),
        name="heine")


def one_psi_one_equation(a: complex, b: complex, ctx: QContext) -> QDifferenceEquation:
    """(b/q - a x) u(q x) + (x - 1) u(x) = 0, satisfied by 1psi1(a;b;q,x)."""
    q = ctx.q
    return QDifferenceEquation(p2=(), p1=(b / q, -a), p0=(-1.0, 1.0),
                               name="one_psi_one")


def degeneration_a_equation(b: complex, ctx: QContext) -> QDifferenceEquation:
    """(b/q) u(q x) + (x - 1) u(x) = 0: the a -> 0 degeneration.

    The first term carries the shifted argument q x; satisfied by the
    formal 1psi1(0;b;q,x) coefficients and by
    v~(x) = theta(bx)/theta(qx) 1phi0(0;-;q,x).
    """
    q = ctx.q
    return QDifferenceEquation(p2=(), p1=(b / q,), p0=(-1.0, 1.0),
                               name="degeneration_a")


def degeneration_b_equation(a: complex, ctx: QContext) -> QDifferenceEquation:
    """(1/q - a x) u(q x) + x u(x) = 0: the b -> infinity degeneration
    (after x -> b x); satisfied by the formal 1psi0(a;-;q,x) coefficients
    and by v^(x) = theta(ax)/theta(x) 1phi0(0;-;q,1/(ax))."""
    q = ctx.q
    return QDifferenceEquation(p2=(), p1=(1.0 / q, -a), p0=(0.0, 1.0),
                               name="degeneration_b")


def qdiff_residual(eq: QDifferenceEquation, u: Callable[[complex], complex],
                   ctx: QContext, x: complex) -> float:
    """Scale-free residual |p2(x)u(q^2 x) + p1(x)u(q x) + p0(x)u(x)| divided
    by the largest term magnitude; invariant under u -> c u."""
    q = ctx.q
    p2x, p1x, p0x = eq.coefficients_at(x)
    terms = []
    if any(c != 0 for c in eq.p2):
        terms.append(p2x * u(q * q * x))
    if any(c != 0 for c in eq.p1):
        terms.append(p1x * u(q * x))
    if any(c != 0 for c in eq.p0):
        terms.append(p0x * u(x))
    scale = max(abs(t) for t in terms)
    if scale == 0:
        return 0.0
    return abs(sum(terms)) / scale


# ----------------------------------------------------------------------
# identity reports

@dataclass(frozen=True)
class IdentityReport:
    """Outcome of checking a named identity on an evaluation grid."""

    name: str
    points: tuple
    errors: tuple
    tol: float
    max_error: float
    passed: bool

    @classmethod
    def build(cls, name: str, points: Sequence, errors: Sequence[float],
              tol: float) -> "IdentityReport":
        errors = tuple(float(e) for e in errors)
        mx = max(errors) if errors else 0.0
        ok = all(math.isfinite(e) for e in errors) and mx <= tol
        return cls(name, tuple(points), errors, tol, mx, ok)


def formal_recurrence_check(s: FormalBilateralSeries, eq: QDifferenceEquation,
                            n_range: range, tol: float = 1e-12) -> IdentityReport:
    """Check the coefficient recurrence the equation induces on c_n.

    Substituting u = sum c_n x^n into sum_i p_i(x) u(q^i x) = 0 gives, for
    the coefficient of x^m:  sum_i sum_j p_{ij} q^{i(m-j)} c_{m-j} = 0.
    Verified pointwise for every m in n_range, exactly to rounding.
    """
    q = s.ctx.q
    lnq = s.ctx.ln_q
    points = []
    errors = []
    for m in n_range:
        acc = ScaledComplex.of(0.0)
        scale_log = -math.inf
        for i, poly in ((2, eq.p2), (1, eq.p1), (0, eq.p0)):
            for j, pij in enumerate(poly):
                if pij == 0:
                    continue
                # q^{i(m-j)} carried in log scale: far out the window it
                # individually leaves float range
                term = (s.coeff_scaled(m - j) * pij
                        * ScaledComplex.from_log(i * (m - j) * lnq))
                acc = acc + term
                if not term.is_zero():
                    scale_log = max(scale_log, term.log_abs())
        if scale_log == -math.inf or acc.is_zero():
            err = 0.0
        else:
            err = math.exp(min(acc.log_abs() - scale_log, 50.0))
        points.append({"n": m})
        errors.append(err)
    return IdentityReport.build(f"recurrence[{eq.name}]", points, errors, tol)


# ----------------------------------------------------------------------
# Watson connection formula

def _qp(ctx: QContext, *args: complex) -> ScaledComplex:
    acc = ScaledComplex.of(1.0)
    for a in args:
        acc = acc * qpoch_infinite_scaled(a, ctx)[0]
    return acc


def watson_connection_check(a: complex, b: complex, c: complex,
                            ctx: QContext, x: complex,
                            tol: float = 1e-8) -> IdentityReport:
    """Connection formula between 2phi1(a,b;c;q,x) around the origin and
    the two solutions around infinity, checked where both sides converge:
    |x| < 1 and |c q/(a b x)| < 1."""
    q = ctx.q
    a, b, c, x = complex(a), complex(b), complex(c), complex(x)
    if a == 0 or b == 0 or x == 0:
        raise ZeroArgumentError("a, b, x must be nonzero")
    y = c * q / (a * b * x)
    if not (abs(x) < 1.0 and abs(y) < 1.0):
        raise DomainOverlapEmptyError(
            f"no common convergence region: |x|={abs(x):g}, |cq/abx|={abs(y):g}")
    if QSpiral(1.0).distance(b / a, q) < 1e-8:
        raise ParameterPoleError(
            "a/b on q^Z: the connection coefficient (b/a;q)_inf term vanishes")

    lhs = eval_unilateral_phi([a, b], [c], ctx, x).value

    def side(a1: complex, b1: complex) -> ScaledComplex:
        # coefficient quotients kept separate from the solution-at-infinity
        # prefactor on purpose: the exact cancellation between them is part
        # of what this check exercises
        coef = (_qp(ctx, b1, c / a1)
                / _qp(ctx, c, b1 / a1)
                * _qp(ctx, a1 * x, q / (a1 * x))
                / _qp(ctx, x, q / x)
                * _qp(ctx, x, q / x)
                / _qp(ctx, a1 * x, q / (a1 * x)))
        v = (_qp(ctx, a1 * x, q / (a1 * x)) / _qp(ctx, x, q / x)
             * eval_unilateral_phi([a1, a1 * q / c], [a1 * q / b1], ctx, y).value)
        return coef * v

    rhs = (side(a, b) + side(b, a)).to_complex()
    err = abs(lhs - rhs) / max(abs(lhs), 1e-300)
    point = {"a": a, "b": b, "c": c, "q": q, "x": x, "lhs": lhs, "rhs": rhs}
    return IdentityReport.build("watson", [point], [err], tol)
