"""Scalar q-special functions on a real base 0 < q < 1.

The module provides q-shifted factorials (finite, bilateral and infinite),
the bilateral Jacobi theta function with quasi-periodic argument reduction,
the q-exponential, the q-gamma function, and the classical gamma /
hypergeometric reference functions used as limit targets.

Values are plain ``complex``; working precision is float64.  Internal
variants returning :class:`~qresum.scaled.ScaledComplex` carry magnitudes
far outside float range, which products of theta factors need even when
the combined result is representable.

Conventions
-----------
* ``(a; q)_0 = 1``; for ``n >= 1`` the product ``(1-a)(1-aq)...(1-aq^{n-1})``;
  for ``n <= -1`` the reciprocal ``1/[(1-a/q)(1-a/q^2)...(1-aq^n)]``.
* ``theta_q(z) = sum_{n in Z} q^{n(n-1)/2} z^n``, equal to the triple
  product ``(q; q)_inf (-z; q)_inf (-q/z; q)_inf`` and quasi-periodic:
  ``theta_q(z q^k) = z^{-k} q^{-k(k-1)/2} theta_q(z)``.
* ``E_q(z) = sum_{n>=0} q^{n(n-1)/2} z^n / (q; q)_n = (-z; q)_inf``.
* ``gamma_q(z) = (q; q)_inf / (q^z; q)_inf * (1-q)^{1-z}``.

Powers use the principal branch with ``arg`` in (-pi, pi].
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .errors import (
    DivergenceDomainError,
    MaxTermsExceeded,
    ParameterPoleError,
    PoleError,
    ZeroArgumentError,
)
from .scaled import ScaledComplex

__all__ = [
    "QContext",
    "EvalResult",
    "qpoch_finite",
    "qpoch_infinite",
    "theta",
    "q_exponential",
    "q_gamma",
    "classical_gamma",
    "classical_hypergeometric",
    "one_minus_qpow",
]


@dataclass(frozen=True)
class QContext:
    """Evaluation policy: the base q plus truncation controls.

    tail_tol is the relative tail tolerance used by the stopping rule: a
    sum stops once `consecutive_small` successive terms fall below
    tail_tol times the partial sum and a geometric bound certifies the
    remainder below the same threshold.
    """

    q: float
    max_terms: int = 4000
    tail_tol: float = 1e-13
    consecutive_small: int = 5

    def __post_init__(self):
        if not (isinstance(self.q, float) and 0.0 < self.q < 1.0):
            raise ValueError(f"base q must be a real in (0, 1), got {self.q!r}")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")
        if not (0.0 < self.tail_tol < 1.0):
            raise ValueError("tail_tol must lie in (0, 1)")
        if self.consecutive_small < 1:
            raise ValueError("consecutive_small must be positive")

    @property
    def ln_q(self) -> float:
        return math.log(self.q)


@dataclass(frozen=True)
class EvalResult:
    """A numeric value with an error estimate and term counts.

    err_estimate bounds the relative error while the result carries
    relative precision; when a sum cancels to the rounding floor (e.g.
    theta at one of its zeros) it saturates instead of reporting false
    digits.  terms_pos / terms_neg count the terms consumed in the
    ascending / descending index directions.
    """

    value: complex
    err_estimate: float
    terms_pos: int
    terms_neg: int = 0


def _require_finite(name: str, z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


def one_minus_qpow(q: float, s: float) -> float:
    """1 - q**s computed without cancellation, for real exponents."""
    return -math.expm1(s * math.log(q))


# ----------------------------------------------------------------------
# summation helper

def _geom_sum(t0: complex, mult: Callable[[int], complex], max_terms: int,
              tol: float, win: int) -> tuple[complex, float, int, float]:
    """Sum t0 + t1 + ... with t_{k+1} = t_k * mult(k).

    Stops once `win` consecutive terms fall below tol*|partial sum| and the
    recent ratios certify a geometric tail below the same threshold.
    Returns (sum, absolute tail bound, terms used, largest |term|).
    """
    S = 0j
    t = complex(t0)
    k = 0
    maxa = 0.0
    small = 0
    ratios: deque[float] = deque(maxlen=win)
    while k < max_terms:
        S += t
        ta = abs(t)
        if ta > maxa:
            maxa = ta
        r = mult(k)
        t = t * r
        k += 1
        ratios.append(abs(r))
        scale = abs(S)
        if abs(t) <= tol * scale:
            small += 1
        else:
            small = 0
        if small >= win:
            rb = max(ratios) * 1.0625
            if rb < 0.9375:
                rem = abs(t) * (1.0 + rb / (1.0 - rb))
                if rem <= tol * scale:
                    return S, rem, k, maxa
    raise MaxTermsExceeded(
        f"series not certified after {max_terms} terms (tol {tol:g})")


# ----------------------------------------------------------------------
# q-shifted factorials

def qpoch_finite(a: complex, ctx: QContext, n: int) -> complex:
    """(a; q)_n for any integer n (empty product = 1).

    For n <= -1 a reciprocal factor 1 - a q^{-k} may vanish; that is a
    genuine pole of the symbol and raises ZeroDivisionError.
    """
    return qpoch_finite_scaled(a, ctx, n).to_complex()


def qpoch_finite_scaled(a: complex, ctx: QContext, n: int) -> ScaledComplex:
    a = _require_finite("a", a)
    q = ctx.q
    acc = ScaledComplex.of(1.0)
    if n == 0:
        return acc
    if n > 0:
        w = a
        for _ in range(n):
            acc = acc * (1.0 - w)
            w *= q
        return acc
    w = a
    for _ in range(-n):
        w /= q
        if not math.isfinite(abs(w)):
            raise OverflowError(
                f"(a;q)_n factor a*q^{n} exceeds float range; "
                "use the scaled recurrence instead")
        f = 1.0 - w
        if f == 0:
            raise ZeroDivisionError(
                f"(a;q)_n with n={n} has a vanishing reciprocal factor: "
                f"a*q^-k = 1 for a={a}, q={q}")
        acc = acc * f
    return 1.0 / acc


@lru_cache(maxsize=16384)
def _qpoch_infinite_cached(a: complex, ctx: QContext) -> tuple[ScaledComplex, float, int]:
    q = ctx.q
    tol = ctx.tail_tol
    m = 1.0 + 0j
    e = 0.0
    w = a
    k = 0
    while k < ctx.max_terms:
        f = 1.0 - w
        if f == 0:
            # an exact zero factor makes the whole product exactly zero
            return ScaledComplex(0j, 0.0), 0.0, k + 1
        m *= f
        k += 1
        w *= q
        am = abs(m)
        if am > 1e150 or am < 1e-150:
            e += math.log(am)
            m /= am
        aw = abs(w)
        if aw <= 0.25:
            # remaining log-magnitude is at most 2|w|/(1-q)
            bound = 2.0 * aw / (1.0 - q)
            if bound <= tol:
                return ScaledComplex(m, e), bound, k
    raise MaxTermsExceeded(
        f"(a;q)_inf not certified after {ctx.max_terms} factors "
        f"(|a|={abs(a):g}, q={q})")


def qpoch_infinite_scaled(a: complex, ctx: QContext) -> tuple[ScaledComplex, float, int]:
    """(a; q)_inf as a scaled value with (relative error bound, factor count)."""
    return _qpoch_infinite_cached(_require_finite("a", a), ctx)


def qpoch_infinite(a: complex, ctx: QContext) -> EvalResult:
    """(a; q)_inf = prod_{k>=0} (1 - a q^k)."""
    sc, err, k = qpoch_infinite_scaled(a, ctx)
    return EvalResult(sc.to_complex(), err, k, 0)


def qpoch_infinite_multi(ctx: QContext, *args: complex) -> EvalResult:
    """Product (a1, a2, ..., am; q)_inf of several infinite symbols."""
    acc = ScaledComplex.of(1.0)
    err = 0.0
    terms = 0
    for a in args:
        sc, e, k = qpoch_infinite_scaled(a, ctx)
        acc = acc * sc
        err += e
        terms += k
    return EvalResult(acc.to_complex(), err, terms, 0)


# ----------------------------------------------------------------------
# theta

@lru_cache(maxsize=16384)
def _theta_scaled_cached(z: complex, ctx: QContext) -> tuple[ScaledComplex, float, int, int]:
    q = ctx.q
    lnq = ctx.ln_q
    tol = ctx.tail_tol
    la = math.log(abs(z))
    k = math.floor(0.5 - la / lnq)
    # reduced argument with |zr| in [sqrt(q), 1/sqrt(q))
    klnq = k * lnq
    if -600.0 < klnq < 600.0:
        zr = z * (q ** k)
    else:
        zr = cmath.exp(complex(la + klnq, math.atan2(z.imag, z.real)))

    # Within ~1e-14 of the zero spiral -q^Z the sum is below rounding
    # resolution (the spiral points themselves carry eps), so the value
    # is exactly zero as far as double precision can say.
    if min(abs(zr + q ** j) for j in (-1, 0, 1)) < 1e-14 * abs(zr):
        return ScaledComplex.of(0.0), 0.0, 1, 1

    S = 1.0 + 0j
    maxa = 1.0
    tails = 0.0

    # Tails must certify against the evolving sum, not the largest term:
    # away from the positive real axis the terms cancel down to
    # ~exp((ln^2|zr| - arg(zr)^2)/(2 ln(1/q))) of their own size, and a
    # bound relative to the term scale would silently lose those digits.
    # The 2^-45 floor keeps termination when zr sits on a zero of theta,
    # where the true value is below what cancellation can resolve.
    def threshold() -> float:
        return 0.5 * tol * max(abs(S), math.ldexp(maxa, -45))

    # ascending: t_{n+1} = t_n * (zr q^n)
    t = 1.0 + 0j
    r = zr
    n_pos = 0
    while True:
        t = t * r
        S += t
        n_pos += 1
        ta = abs(t)
        if ta > maxa:
            maxa = ta
        r = r * q
        ra = abs(r)
        if ra < 1.0:
            rem = ta * ra / (1.0 - ra)
            if rem <= threshold():
                tails += rem
                break
        if n_pos >= ctx.max_terms:
            raise MaxTermsExceeded("theta ascending tail not certified")

    # descending: t_{n-1} = t_n * (q^{1-n} / zr), |ratio| <= sqrt(q) < 1
    t = 1.0 + 0j
    r = q / zr
    n_neg = 0
    while True:
        t = t * r
        S += t
        n_neg += 1
        ta = abs(t)
        if ta > maxa:
            maxa = ta
        r = r * q
        ra = abs(r)
        rem = ta * ra / (1.0 - ra)
        if rem <= threshold():
            tails += rem
            break
        if n_neg >= ctx.max_terms:
            raise MaxTermsExceeded("theta descending tail not certified")

    # truncation-only estimate, relative to the value; float rounding
    # (~n*eps*maxa/|S|) is not folded in
    err = tails / max(abs(S), math.ldexp(maxa, -45))

    kk = k * (k - 1) // 2
    w_re = k * la + kk * lnq
    w_im = k * math.atan2(z.imag, z.real)
    pref = ScaledComplex.from_log(complex(w_re, w_im))
    return pref * S, err, n_pos, n_neg


def theta_scaled(z: complex, ctx: QContext) -> tuple[ScaledComplex, float, int, int]:
    """theta_q(z) as a scaled value; safe for arguments of any magnitude."""
    z = _require_finite("z", z)
    if z == 0:
        raise ZeroArgumentError("theta argument must be nonzero")
    return _theta_scaled_cached(z, ctx)


def theta(z: complex, ctx: QContext) -> EvalResult:
    """Bilateral theta sum theta_q(z) = sum_{n in Z} q^{n(n-1)/2} z^n.

    The argument is reduced into the annulus sqrt(q) <= |z| < 1/sqrt(q)
    by the quasi-periodicity law, with the prefactor carried in log space;
    an unrepresentable prefactor raises OverflowError rather than
    returning inf.
    """
    sc, err, npos, nneg = theta_scaled(z, ctx)
    return EvalResult(sc.to_complex(), err, npos, nneg)


# ----------------------------------------------------------------------
# q-exponential and q-gamma

def q_exponential(z: complex, ctx: QContext) -> EvalResult:
    """E_q(z) = sum_{n>=0} q^{n(n-1)/2} z^n / (q; q)_n (entire in z)."""
    z = _require_finite("z", z)
    q = ctx.q
    if z == 0:
        return EvalResult(1.0 + 0j, 0.0, 1, 0)

    qpow = [1.0]  # q^k, advanced lazily

    def mult(k: int) -> complex:
        r = z * qpow[0] / (1.0 - qpow[0] * q)
        qpow[0] *= q
        return r

    S, tail, n, maxa = _geom_sum(1.0 + 0j, mult, ctx.max_terms,
                                 ctx.tail_tol, ctx.consecutive_small)
    return EvalResult(S, tail / max(abs(S), tail), n, 0)


def q_exponential_scaled(z: complex, ctx: QContext) -> tuple[ScaledComplex, float, int]:
    """E_q(z) through the product (-z; q)_inf; stable for large |z|."""
    z = _require_finite("z", z)
    return qpoch_infinite_scaled(-z, ctx)


_TWO_PI = 2.0 * math.pi


def q_gamma(z: complex, ctx: QContext) -> EvalResult:
    """gamma_q(z) = (q; q)_inf / (q^z; q)_inf * (1-q)^{1-z}.

    Poles sit where q^z hits 1/q^k, i.e. at the nonpositive integers
    (modulo the imaginary period of q^z); those raise PoleError.
    """
    z = _require_finite("z", z)
    q = ctx.q
    lnq = ctx.ln_q
    period = _TWO_PI / (-lnq)
    z0 = complex(z.real, z.imag - period * round(z.imag / period))
    nearest = round(z0.real)
    if nearest <= 0 and abs(z0 - nearest) < 1e-8:
        raise PoleError(f"q-gamma pole at nonpositive integer z={z}")
    num, e_num, k1 = qpoch_infinite_scaled(complex(q), ctx)
    den, e_den, k2 = qpoch_infinite_scaled(cmath.exp(z * lnq), ctx)
    pw = ScaledComplex.from_log((1.0 - z) * math.log1p(-q))
    value = num / den * pw
    err = e_num + e_den
    return EvalResult(value.to_complex(), err, k1 + k2, 0)


# ----------------------------------------------------------------------
# classical reference functions

# Lanczos approximation, g = 7, 9 coefficients
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def classical_gamma(z: complex) -> complex:
    """Gamma(z) for complex z via the Lanczos rational approximation with
    reflection for Re z < 0.5.  About 13 accurate digits on moderate
    arguments, which the limit checks rely on."""
    z = _require_finite("z", z)
    if z.imag == 0 and z.real == round(z.real) and z.real <= 0:
        raise PoleError(f"gamma pole at nonpositive integer {z.real:g}")
    if z.real < 0.5:
        # reflection: gamma(z) gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * classical_gamma(1.0 - z))
    w = z - 1.0
    x = _LANCZOS[0] + 0j
    for i in range(1, 9):
        x += _LANCZOS[i] / (w + i)
    t = w + 7.5
    return math.sqrt(2.0 * math.pi) * t ** (w + 0.5) * cmath.exp(-t) * x


_CLASSICAL_KINDS = {"0F0": 0, "0F1": 1, "1F0": 1, "2F1": 3}


def classical_hypergeometric(kind: str, params: Sequence[float],
                             z: complex) -> EvalResult:
    """Classical hypergeometric series 0F0, 0F1(;b;), 1F0(a;), 2F1(a,b;c;).

    1F0 and 2F1 require |z| < 1; 0F0 and 0F1 are entire.  Lower parameters
    at nonpositive integers are poles of the term denominators.
    """
    if kind not in _CLASSICAL_KINDS:
        raise ValueError(f"unknown hypergeometric kind {kind!r}")
    if len(params) != _CLASSICAL_KINDS[kind]:
        raise ValueError(
            f"{kind} takes {_CLASSICAL_KINDS[kind]} parameters, got {len(params)}")
    z = _require_finite("z", z)
    if kind in ("1F0", "2F1") and abs(z) >= 1.0:
        raise DivergenceDomainError(f"{kind} requires |z| < 1, got |z|={abs(z):g}")
    for low in {"0F1": params[:1], "2F1": params[2:]}.get(kind, ()):
        if low == round(low) and low <= 0:
            raise ParameterPoleError(
                f"lower parameter {low:g} is a nonpositive integer")
    if z == 0:
        return EvalResult(1.0 + 0j, 0.0, 1, 0)

    if kind == "0F0":
        def mult(k: int) -> complex:
            return z / (k + 1)
    elif kind == "0F1":
        b = params[0]

        def mult(k: int) -> complex:
            return z / ((k + 1) * (b + k))
    elif kind == "1F0":
        a = params[0]

        def mult(k: int) -> complex:
            return z * (a + k) / (k + 1)
    else:
        a, b, c = params

        def mult(k: int) -> complex:
            return z * (a + k) * (b + k) / ((k + 1) * (c + k))

    S, tail, n, maxa = _geom_sum(1.0 + 0j, mult, 100_000, 1e-15, 5)
    return EvalResult(S, tail / max(abs(S), tail), n, 0)
