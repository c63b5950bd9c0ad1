"""Named verification suites over the library's identities.

Each suite evaluates one identity family on a deterministic grid and
returns one row per grid point: the parameters, both sides, the relative
error, and a pass flag.  The command-line `verify` command and the
acceptance tests drive the same registry, so "the suite passes" means the
same thing everywhere.

Grids are sampled with fixed string seeds, so reports are reproducible
across runs and across worker counts; rejection sampling keeps points a
safe distance from every q-spiral of zeros and poles of the identity at
hand.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from random import Random
from typing import Callable, Mapping, Optional, Sequence

from .borel_laplace import (
    LaplaceConfig,
    closedform_psiA,
    closedform_psiB,
    connection_coeff,
    qlaplace_plus,
    resummed_psiA,
    resummed_psiB,
    theta_solution_A,
    theta_solution_B,
)
from .limits import (
    LimitSchedule,
    limit_linear_sum_forms,
    limit_qpoch_ratio,
    limit_theorem_A,
    limit_theorem_B,
    limit_theta_ratio,
    linear_split_rhs,
)
from .qcore import QContext, qpoch_finite, qpoch_infinite_scaled, theta_scaled
from .scaled import ScaledComplex
from .series_engine import (
    FormalBilateralSeries,
    QSpiral,
    degeneration_a_equation,
    degeneration_b_equation,
    eval_bilateral_psi,
    eval_unilateral_phi,
    formal_recurrence_check,
    heine_equation,
    one_psi_one_equation,
    qdiff_residual,
    watson_connection_check,
)

__all__ = ["CheckRow", "SuiteResult", "SUITES", "suite_names", "run_suite"]


@dataclass(frozen=True)
class CheckRow:
    """One verified grid point of one identity."""

    identity: str
    params: tuple[tuple[str, object], ...]
    lhs: complex
    rhs: complex
    rel_err: float
    passed: bool


@dataclass(frozen=True)
class SuiteResult:
    name: str
    tol: float
    rows: tuple[CheckRow, ...]
    passed: bool

    @classmethod
    def build(cls, name: str, tol: float, rows: Sequence[CheckRow]) -> "SuiteResult":
        rows = tuple(rows)
        return cls(name, tol, rows, bool(rows) and all(r.passed for r in rows))

    @property
    def max_rel_err(self) -> float:
        return max((r.rel_err for r in self.rows), default=0.0)


def _rel(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


def _row(identity: str, params: Sequence[tuple[str, object]],
         lhs: complex, rhs: complex, tol: float,
         rel: Optional[float] = None) -> CheckRow:
    r = _rel(lhs, rhs) if rel is None else rel
    ok = math.isfinite(r) and r <= tol
    return CheckRow(identity, tuple(params), complex(lhs), complex(rhs), r, ok)


def _collect(tasks: Sequence[Callable[[], CheckRow]], jobs: int) -> list[CheckRow]:
    """Run row tasks, optionally on a thread pool; order is task order
    either way, so reports do not depend on the worker count."""
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(lambda t: t(), tasks))
    return [t() for t in tasks]


def _ctx(q: float, max_terms: Optional[int]) -> QContext:
    return QContext(q, max_terms=max_terms) if max_terms else QContext(q)


def _off_spirals(x: complex, q: float, bases: Sequence[complex],
                 margin: float = 0.03) -> bool:
    return all(QSpiral(b).distance(x, q) > margin for b in bases)


def _sample(rng: Random, r_lo: float, r_hi: float,
            q: float, bases: Sequence[complex], margin: float = 0.03,
            arg_margin: float = 0.0) -> complex:
    """Random point with modulus in [r_lo, r_hi], rejected until it clears
    every listed q-spiral (and optionally a wedge around the negative axis)."""
    for _ in range(10_000):
        r = rng.uniform(r_lo, r_hi)
        phi = rng.uniform(-math.pi + arg_margin, math.pi - arg_margin)
        x = r * cmath.exp(1j * phi)
        if _off_spirals(x, q, bases, margin):
            return x
    raise RuntimeError("rejection sampling failed to find a safe point")


def _scaled_rel(u: ScaledComplex, v: ScaledComplex) -> float:
    d = u - v
    if d.is_zero():
        return 0.0
    scale = max(u.log_abs(), v.log_abs())
    if scale == -math.inf:
        return math.inf
    return math.exp(min(d.log_abs() - scale, 50.0))


def _tri(n: int) -> int:
    return n * (n - 1) // 2


# --------------------------------------------------------------- theta


_THETA_QS = (0.1, 0.3, 0.5, 0.7)


def _theta_grid(n_per_q: int) -> list[tuple[float, complex]]:
    pts = []
    for q in _THETA_QS:
        rng = Random(f"theta:{q}")
        lnq = math.log(q)
        for _ in range(n_per_q):
            # reduced annulus sqrt(q) < |z| < 1/sqrt(q), staying a wedge
            # away from the zero spiral -q^Z on the negative axis; the
            # series cancels to ~exp(-phi^2/(2 ln(1/q))) of its term
            # scale there, and past this margin rounding alone would
            # breach the 1e-12 comparison at q=0.7
            u = rng.uniform(-0.44, 0.44)
            r = math.exp(-u * lnq)
            phi = rng.uniform(-math.pi + 0.75, math.pi - 0.75)
            pts.append((q, r * cmath.exp(1j * phi)))
    return pts


def suite_theta_duality(tol: float = 1e-12, grid: str = "default",
                        max_terms: Optional[int] = None,
                        lam: Optional[complex] = None, jobs: int = 1) -> SuiteResult:
    """Triangular-sum route vs triple-product route for theta."""
    pts = _theta_grid(20 if grid == "default" else 5)

    def task(q: float, z: complex) -> Callable[[], CheckRow]:
        def go() -> CheckRow:
            ctx = _ctx(q, max_terms)
            series = theta_scaled(z, ctx)[0]
            prod = (qpoch_infinite_scaled(q, ctx)[0]
                    * qpoch_infinite_scaled(-z, ctx)[0]
                    * qpoch_infinite_scaled(-q / z, ctx)[0])
            return _row("theta-duality", [("q", q), ("z", z)],
                        series.to_complex(), prod.to_complex(), tol,
                        rel=_scaled_rel(series, prod))
        return go

    return SuiteResult.build("theta-duality", tol,
                             _collect([task(q, z) for q, z in pts], jobs))


def suite_theta_functional(tol: float = 1e-12, grid: str = "default",
                           max_terms: Optional[int] = None,
                           lam: Optional[complex] = None,
                           jobs: int = 1) -> SuiteResult:
    """Inversion z -> q/z and quasi-periodicity z -> z q^k, k in [-5,5]."""
    pts = _theta_grid(20 if grid == "default" else 5)

    def task(q: float, z: complex) -> Callable[[], CheckRow]:
        def go() -> CheckRow:
            ctx = _ctx(q, max_terms)
            lnq = ctx.ln_q
            th = theta_scaled(z, ctx)[0]
            worst = (th, theta_scaled(q / z, ctx)[0])
            worst_rel = _scaled_rel(*worst)
            for k in range(-5, 6):
                if k == 0:
                    continue
                lhs = theta_scaled(z * math.exp(k * lnq), ctx)[0]
                shift = ScaledComplex.from_log(-k * cmath.log(z) - _tri(k) * lnq)
                rhs = shift * th
                r = _scaled_rel(lhs, rhs)
                if r > worst_rel:
                    worst_rel, worst = r, (lhs, rhs)
            return _row("theta-functional", [("q", q), ("z", z)],
                        worst[0].to_complex(), worst[1].to_complex(), tol,
                        rel=worst_rel)
        return go

    return SuiteResult.build("theta-functional", tol,
                             _collect([task(q, z) for q, z in pts], jobs))


# ----------------------------------------------------------- bilateral sums


def suite_ramanujan(tol: float = 1e-10, grid: str = "default",
                    max_terms: Optional[int] = None,
                    lam: Optional[complex] = None, jobs: int = 1) -> SuiteResult:
    """Bilateral 1psi1 sum vs its product closed form, 100 random points."""
    n_points = 100 if grid == "default" else 12
    qs = (0.3, 0.5, 0.7)
    rng = Random("ramanujan")
    samples = []
    while len(samples) < n_points:
        q = qs[len(samples) % len(qs)]
        a = rng.uniform(0.35, 0.9) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        # a on {q^m} is a pole of (q/a;q)_inf in the closed form
        if min(abs(a - q ** m) for m in range(0, 9)) < 0.03:
            continue
        t = rng.uniform(0.08, 0.5)
        b = a * t * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        z = _sample(rng, max(1.25 * t, 0.15), 0.85, q, bases=(), margin=0.0)
        # a z near q^Z zeroes the (q/az;q)_inf numerator; both sides vanish
        # but the relative comparison loses its scale
        if not _off_spirals(a * z, q, (1.0,), 0.03):
            continue
        # several moderately small product factors can still compound to a
        # value orders below the series' term scale, pushing the rounding
        # floor of the cancelled two-tail sum above tol; skip those points
        ctx0 = _ctx(q, max_terms)
        mag = 0.0
        for w in (q, b / a, a * z, q / (a * z)):
            mag += qpoch_infinite_scaled(w, ctx0)[0].log_abs()
        for w in (b, q / a, z, b / (a * z)):
            mag -= qpoch_infinite_scaled(w, ctx0)[0].log_abs()
        if mag < math.log(1e-3):
            continue
        samples.append((q, a, b, z))

    def task(q, a, b, z) -> Callable[[], CheckRow]:
        def go() -> CheckRow:
            ctx = _ctx(q, max_terms)
            lhs = eval_bilateral_psi([a], [b], ctx, z).value
            num = (qpoch_infinite_scaled(q, ctx)[0]
                   * qpoch_infinite_scaled(b / a, ctx)[0]
                   * qpoch_infinite_scaled(a * z, ctx)[0]
                   * qpoch_infinite_scaled(q / (a * z), ctx)[0])
            den = (qpoch_infinite_scaled(b, ctx)[0]
                   * qpoch_infinite_scaled(q / a, ctx)[0]
                   * qpoch_infinite_scaled(z, ctx)[0]
                   * qpoch_infinite_scaled(b / (a * z), ctx)[0])
            rhs = (num / den).to_complex()
            return _row("ramanujan", [("q", q), ("a", a), ("b", b), ("z", z)],
                        lhs, rhs, tol)
        return go

    return SuiteResult.build("ramanujan", tol,
                             _collect([task(*s) for s in samples], jobs))


def suite_bilateral_lemma(tol: float = 1e-10, grid: str = "default",
                          max_terms: Optional[int] = None,
                          lam: Optional[complex] = None,
                          jobs: int = 1) -> SuiteResult:
    """Bilateral 0psi1 sum vs its theta/product closed form, |x| > |b|."""
    n_points = 30 if grid == "default" else 6
    qs = (0.3, 0.5, 0.7)
    rng = Random("bilateral-lemma")
    samples = []
    while len(samples) < n_points:
        q = qs[len(samples) % len(qs)]
        b = rng.uniform(0.1, 0.4) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        while True:
            # theta(-x) vanishes on x in q^Z, theta(-qx/b) on x in b q^Z
            x = _sample(rng, 1.35 * abs(b), 3.0, q, bases=(1.0, b), margin=0.04)
            # both theta arguments also cancel hardest when x (resp. x/b)
            # nears the positive real axis; keep a phase margin so the
            # rounding floor stays under the 1e-10 comparison
            pa = math.atan2(x.imag, x.real)
            d = pa - math.atan2(b.imag, b.real)
            d = (d + math.pi) % (2.0 * math.pi) - math.pi
            if abs(pa) >= 0.35 and abs(d) >= 0.35:
                break
        samples.append((q, b, x))

    def task(q, b, x) -> Callable[[], CheckRow]:
        def go() -> CheckRow:
            ctx = _ctx(q, max_terms)
            lhs = eval_bilateral_psi([], [b], ctx, x).value
            rhs = (qpoch_infinite_scaled(q, ctx)[0]
                   / qpoch_infinite_scaled(b, ctx)[0]
                   * theta_scaled(-x, ctx)[0]
                   / theta_scaled(-q * x / b, ctx)[0]
                   * qpoch_infinite_scaled(q * x / b, ctx)[0]).to_complex()
            return _row("bilateral-lemma", [("q", q), ("b", b), ("x", x)],
                        lhs, rhs, tol)
        return go

    return SuiteResult.build("bilateral-lemma", tol,
                             _collect([task(*s) for s in samples], jobs))


# ------------------------------------------------------------- pipelines


_PIPE_QS = (0.4, 0.5, 0.6)
_PIPE_PARAMS = (0.15, 0.2, 0.3)


def _pipe_lams(lam: Optional[complex]) -> tuple[complex, ...]:
    return (lam,) if lam is not None else (0.9, 1.1)


def _pipeline_A_points(q: float, b: float, lv: complex, n: int) -> list[complex]:
    rng = Random(f"pipeA:{q}:{b}:{lv}")
    # stay off the Laplace spiral -lam q^Z, the closed-form pole spiral
    # -lam q^Z (same set), and the numerator zero spiral -lam q^Z / b
    bases = (-lv, -lv / b, 1.0)
    return [_sample(rng, 0.15, 0.5, q, bases, 0.05) for _ in range(n)]


def _pipeline_B_points(q: float, a: float, lv: complex, n: int) -> list[complex]:
    rng = Random(f"pipeB:{q}:{a}:{lv}")
    bases = (-lv, -lv / a, -1.0, -1.0 / a)
    return [_sample(rng, 2.3 / a, 6.0 / a, q, bases, 0.05) for _ in range(n)]


def suite_pipelineA(tol: float = 1e-8, grid: str = "default",
                    max_terms: Optional[int] = None,
                    lam: Optional[complex] = None, jobs: int = 1) -> SuiteResult:
    """Discrete Borel-Laplace pipeline vs closed form, variant A."""
    full = grid == "default"
    qs = _PIPE_QS if full else (0.5,)
    bs = _PIPE_PARAMS if full else (0.2,)
    lams = _pipe_lams(lam)
    n_x = 10 if full else 3

    tasks = []
    for q in qs:
        for b in bs:
            for lv in lams:
                cfg = LaplaceConfig(lam=lv)
                for x in _pipeline_A_points(q, b, lv, n_x):
                    def go(q=q, b=b, lv=lv, cfg=cfg, x=x) -> CheckRow:
                        ctx = _ctx(q, max_terms)
                        lhs = resummed_psiA(b, cfg, ctx, x).value
                        rhs = closedform_psiA(b, cfg, ctx, x).value
                        return _row("pipelineA",
                                    [("q", q), ("b", b), ("lambda", lv), ("x", x)],
                                    lhs, rhs, tol)
                    tasks.append(go)
    return SuiteResult.build("pipelineA", tol, _collect(tasks, jobs))


def suite_pipelineB(tol: float = 1e-8, grid: str = "default",
                    max_terms: Optional[int] = None,
                    lam: Optional[complex] = None, jobs: int = 1) -> SuiteResult:
    """Discrete Borel-Laplace pipeline vs closed form, variant B."""
    full = grid == "default"
    qs = _PIPE_QS if full else (0.5,)
    pas = _PIPE_PARAMS if full else (0.2,)
    lams = _pipe_lams(lam)
    n_x = 10 if full else 3

    tasks = []
    for q in qs:
        for a in pas:
            for lv in lams:
                cfg = LaplaceConfig(lam=lv)
                for x in _pipeline_B_points(q, a, lv, n_x):
                    def go(q=q, a=a, lv=lv, cfg=cfg, x=x) -> CheckRow:
                        ctx = _ctx(q, max_terms)
                        lhs = resummed_psiB(a, cfg, ctx, x).value
                        rhs = closedform_psiB(a, cfg, ctx, x).value
                        return _row("pipelineB",
                                    [("q", q), ("a", a), ("lambda", lv), ("x", x)],
                                    lhs, rhs, tol)
                    tasks.append(go)
    return SuiteResult.build("pipelineB", tol, _collect(tasks, jobs))


def suite_ellipticity(tol: float = 1e-10, grid: str = "default",
                      max_terms: Optional[int] = None,
                      lam: Optional[complex] = None, jobs: int = 1) -> SuiteResult:
    """q-periodicity of both connection coefficients, and the factorizations
    closed form = coefficient * theta-solution, on the pipeline grids."""
    full = grid == "default"
    qs = _PIPE_QS if full else (0.5,)
    ps = _PIPE_PARAMS if full else (0.2,)
    lams = _pipe_lams(lam)
    n_x = 4 if full else 2

    tasks = []
    for q in qs:
        for p in ps:
            for lv in lams:
                cfg = LaplaceConfig(lam=lv)
                ca = connection_coeff("A", {"b": p}, cfg, _ctx(q, max_terms))
                cb = connection_coeff("B", {"a": p}, cfg, _ctx(q, max_terms))

                rng = Random(f"ellip:{q}:{p}:{lv}")
                xs_a = [_sample(rng, 0.2, 1.4, q,
                                (-lv, -lv / p, -1.0 / p, -1.0, 1.0), 0.04)
                        for _ in range(n_x)]
                xs_b = [_sample(rng, 2.3 / p, 6.0 / p, q,
                                (-lv, -lv / p, -1.0 / p, -1.0), 0.04)
                        for _ in range(n_x)]

                for x in xs_a:
                    def go_ea(q=q, p=p, lv=lv, ca=ca, x=x) -> CheckRow:
                        ratio = ca.evaluate(q * x) / ca.evaluate(x)
                        return _row("ellipticity-A",
                                    [("q", q), ("b", p), ("lambda", lv), ("x", x)],
                                    ratio, 1.0 + 0j, tol, rel=abs(ratio - 1.0))
                    def go_fa(q=q, p=p, lv=lv, cfg=cfg, ca=ca, x=x) -> CheckRow:
                        ctx = _ctx(q, max_terms)
                        lhs = closedform_psiA(p, cfg, ctx, x).value
                        rhs = ca.evaluate(x) * theta_solution_A(p, ctx, x)
                        return _row("factorization-A",
                                    [("q", q), ("b", p), ("lambda", lv), ("x", x)],
                                    lhs, rhs, tol)
                    tasks.append(go_ea)
                    tasks.append(go_fa)
                for x in xs_b:
                    def go_eb(q=q, p=p, lv=lv, cb=cb, x=x) -> CheckRow:
                        ratio = cb.evaluate(q * x) / cb.evaluate(x)
                        return _row("ellipticity-B",
                                    [("q", q), ("a", p), ("lambda", lv), ("x", x)],
                                    ratio, 1.0 + 0j, tol, rel=abs(ratio - 1.0))
                    def go_fb(q=q, p=p, lv=lv, cfg=cfg, cb=cb, x=x) -> CheckRow:
                        ctx = _ctx(q, max_terms)
                        lhs = closedform_psiB(p, cfg, ctx, x).value
                        rhs = cb.evaluate(x) * theta_solution_B(p, ctx, x)
                        return _row("factorization-B",
                                    [("q", q), ("a", p), ("lambda", lv), ("x", x)],
                                    lhs, rhs, tol)
                    tasks.append(go_eb)
                    tasks.append(go_fb)
    return SuiteResult.build("ellipticity", tol, _collect(tasks, jobs))


def suite_lambda_shift(tol: float = 1e-10, grid: str = "default",
                       max_terms: Optional[int] = None,
                       lam: Optional[complex] = None, jobs: int = 1) -> SuiteResult:
    """Closed forms are invariant when the Laplace base point moves
    lambda -> q lambda."""
    full = grid == "default"
    qs = _PIPE_QS if full else (0.5,)
    ps = (0.15, 0.3) if full else (0.2,)
    lv = complex(lam) if lam is not None else 1.1
    n_x = 3 if full else 2

    tasks = []
    for q in qs:
        for p in ps:
            cfg1 = LaplaceConfig(lam=lv)
            cfg2 = LaplaceConfig(lam=q * lv)
            rng = Random(f"lamshift:{q}:{p}")
            xs_a = [_sample(rng, 0.15, 0.5, q, (-lv, -lv / p, 1.0), 0.05)
                    for _ in range(n_x)]
            xs_b = [_sample(rng, 2.3 / p, 6.0 / p, q,
                            (-lv, -lv / p, -1.0, -1.0 / p), 0.05)
                    for _ in range(n_x)]
            for x in xs_a:
                def go_a(q=q, p=p, cfg1=cfg1, cfg2=cfg2, x=x) -> CheckRow:
                    ctx = _ctx(q, max_terms)
                    lhs = closedform_psiA(p, cfg1, ctx, x).value
                    rhs = closedform_psiA(p, cfg2, ctx, x).value
                    return _row("lambda-shift-A",
                                [("q", q), ("b", p), ("lambda", lv), ("x", x)],
                                lhs, rhs, tol)
                tasks.append(go_a)
            for x in xs_b:
                def go_b(q=q, p=p, cfg1=cfg1, cfg2=cfg2, x=x) -> CheckRow:
                    ctx = _ctx(q, max_terms)
                    lhs = closedform_psiB(p, cfg1, ctx, x).value
                    rhs = closedform_psiB(p, cfg2, ctx, x).value
                    return _row("lambda-shift-B",
                                [("q", q), ("a", p), ("lambda", lv), ("x", x)],
                                lhs, rhs, tol)
                tasks.append(go_b)
    return SuiteResult.build("lambda-shift", tol, _collect(tasks, jobs))


def suite_laplace_borel(tol: float = 1e-10, grid: str = "default",
                        max_terms: Optional[int] = None,
                        lam: Optional[complex] = None, jobs: int = 1) -> SuiteResult:
    """Laplace-after-Borel is the identity on a convergent power series.

    Model series: 1phi0(0;-;q,x) = sum x^n/(q;q)_n, whose Borel image is
    the entire q-exponential product (-xi;q)_inf.
    """
    full = grid == "default"
    qs = (0.5, 0.7) if full else (0.5,)
    lams = (lam,) if lam is not None else (0.9, 1.1, 1.7)
    # A negative real x sends every kernel theta toward its zero spiral;
    # at q=0.7 the Jackson sum then cancels by ~exp(-pi^2/(2 ln(1/q)))
    # ~ 1e-6 and its rounding floor crosses tol, so the negative-sector
    # point keeps a phase margin off the axis there.
    xs_by_q = {0.5: (0.3, -0.4, 0.2 + 0.3j, 0.6),
               0.7: (0.3, 0.4 * cmath.exp(2.54j), 0.2 + 0.3j, 0.6)}

    tasks = []
    for q in qs:
        xs = xs_by_q[q] if full else (0.3,)
        for lv in lams:
            # descending Jackson terms shrink like |x|^n; x=0.6 needs a
            # longer window than the default before the tail certifies
            cfg = LaplaceConfig(lam=lv, n_window=90)
            for x in xs:
                if not _off_spirals(x, q, (-lv,), 0.05):
                    continue
                def go(q=q, lv=lv, cfg=cfg, x=x) -> CheckRow:
                    ctx = _ctx(q, max_terms)
                    phi = lambda xi: qpoch_infinite_scaled(-xi, ctx)[0]
                    lhs = qlaplace_plus(phi, cfg, ctx, x).value
                    rhs = eval_unilateral_phi([0.0], [], ctx, x).value
                    return _row("laplace-borel",
                                [("q", q), ("lambda", lv), ("x", x)],
                                lhs, rhs, tol)
                tasks.append(go)
    return SuiteResult.build("laplace-borel", tol, _collect(tasks, jobs))


# ------------------------------------------------- residuals and recurrences


def suite_residuals(tol: float = 1e-10, grid: str = "default",
                    max_terms: Optional[int] = None,
                    lam: Optional[complex] = None, jobs: int = 1) -> SuiteResult:
    """Scale-free q-difference residuals for the three equations, plus the
    formal coefficient recurrences for |n| <= 40 (exact to rounding)."""
    tasks = []

    heine_pts = [(0.4, 0.3, 0.6, 0.5, x) for x in (0.3, -0.4, 0.2 + 0.4j, 0.5)]
    heine_pts += [(0.25, 0.65, 0.35, 0.6, x) for x in (0.35, -0.3)]
    for a, b, c, q, x in heine_pts:
        def go_h(a=a, b=b, c=c, q=q, x=x) -> CheckRow:
            ctx = _ctx(q, max_terms)
            u = lambda w: eval_unilateral_phi([a, b], [c], ctx, w).value
            res = qdiff_residual(heine_equation(a, b, c, ctx), u, ctx, x)
            return _row("residual-heine",
                        [("a", a), ("b", b), ("c", c), ("q", q), ("x", x)],
                        complex(res), 0j, tol, rel=res)
        tasks.append(go_h)

    for b, q, x in [(0.2, 0.5, 0.3), (0.2, 0.5, -0.35), (0.3, 0.5, 0.45),
                    (0.3, 0.4, 1.3)]:
        def go_a(b=b, q=q, x=x) -> CheckRow:
            ctx = _ctx(q, max_terms)
            u = lambda w: theta_solution_A(b, ctx, w)
            res = qdiff_residual(degeneration_a_equation(b, ctx), u, ctx, x)
            return _row("residual-degeneration-A",
                        [("b", b), ("q", q), ("x", x)],
                        complex(res), 0j, tol, rel=res)
        tasks.append(go_a)

    for a, q, x in [(0.6, 0.5, 4.0), (0.6, 0.5, 5.0 + 2.0j), (0.5, 0.5, 5.5)]:
        def go_b(a=a, q=q, x=x) -> CheckRow:
            ctx = _ctx(q, max_terms)
            u = lambda w: theta_solution_B(a, ctx, w)
            res = qdiff_residual(degeneration_b_equation(a, ctx), u, ctx, x)
            return _row("residual-degeneration-B",
                        [("a", a), ("q", q), ("x", x)],
                        complex(res), 0j, tol, rel=res)
        tasks.append(go_b)

    # formal coefficient recurrences: exact to rounding, so a fixed 1e-12
    # bar independent of the suite tolerance
    rec_tol = min(tol, 1e-12)

    def go_r1() -> CheckRow:
        ctx = _ctx(0.5, max_terms)
        s = FormalBilateralSeries.one_psi_one(0.8, 0.2, ctx)
        rep = formal_recurrence_check(s, one_psi_one_equation(0.8, 0.2, ctx),
                                      range(-40, 41))
        return _row("recurrence-1psi1", [("a", 0.8), ("b", 0.2), ("q", 0.5)],
                    complex(rep.max_error), 0j, rec_tol, rel=rep.max_error)

    def go_r2() -> CheckRow:
        ctx = _ctx(0.5, max_terms)
        s = FormalBilateralSeries.one_psi_one(0.0, 0.2, ctx)
        rep = formal_recurrence_check(s, degeneration_a_equation(0.2, ctx),
                                      range(-40, 41))
        return _row("recurrence-degeneration-A", [("b", 0.2), ("q", 0.5)],
                    complex(rep.max_error), 0j, rec_tol, rel=rep.max_error)

    def go_r3() -> CheckRow:
        ctx = _ctx(0.5, max_terms)
        s = FormalBilateralSeries.one_psi_zero(0.6, ctx)
        rep = formal_recurrence_check(s, degeneration_b_equation(0.6, ctx),
                                      range(-40, 41))
        return _row("recurrence-degeneration-B", [("a", 0.6), ("q", 0.5)],
                    complex(rep.max_error), 0j, rec_tol, rel=rep.max_error)

    def go_r4() -> CheckRow:
        ctx = _ctx(0.5, max_terms)
        a, b, c = 0.3, 0.7, 0.2

        def coeffs(n: int) -> ScaledComplex:
            if n < 0:
                return ScaledComplex.of(0.0)
            v = (qpoch_finite(a, ctx, n) * qpoch_finite(b, ctx, n)
                 / (qpoch_finite(c, ctx, n) * qpoch_finite(ctx.q, ctx, n)))
            return ScaledComplex.of(v)

        s = FormalBilateralSeries.generic(coeffs, ctx)
        rep = formal_recurrence_check(s, heine_equation(a, b, c, ctx),
                                      range(0, 41))
        return _row("recurrence-heine",
                    [("a", a), ("b", b), ("c", c), ("q", 0.5)],
                    complex(rep.max_error), 0j, rec_tol, rel=rep.max_error)

    tasks += [go_r1, go_r2, go_r3, go_r4]
    return SuiteResult.build("residuals", tol, _collect(tasks, jobs))


def suite_watson(tol: float = 1e-8, grid: str = "default",
                 max_terms: Optional[int] = None,
                 lam: Optional[complex] = None, jobs: int = 1) -> SuiteResult:
    """Connection formula for 2phi1 in the overlap of both domains."""
    a, b, c, q = 0.9, 0.85, 0.1, 0.5
    xs = (-0.85, -0.7, -0.6, -0.45, -0.3)

    def task(x: float) -> Callable[[], CheckRow]:
        def go() -> CheckRow:
            ctx = _ctx(q, max_terms)
            rep = watson_connection_check(a, b, c, ctx, x, tol)
            pt = rep.points[0]
            return _row("watson",
                        [("a", a), ("b", b), ("c", c), ("q", q), ("x", x)],
                        pt["lhs"], pt["rhs"], tol, rel=rep.errors[0])
        return go

    return SuiteResult.build("watson", tol, _collect([task(x) for x in xs], jobs))


def suite_linear_sums(tol: float = 1e-10, grid: str = "default",
                      max_terms: Optional[int] = None,
                      lam: Optional[complex] = None, jobs: int = 1) -> SuiteResult:
    """Even/odd split identities of the q-binomial sum at fixed q."""
    full = grid == "default"
    qs = (0.4, 0.6, 0.8)
    a_vals = (0.0, 0.3, 0.55) if full else (0.0, 0.3)
    xs = (0.2, 0.4, 0.6, 0.8, -0.45, 0.3 + 0.4j) if full else (0.4, -0.45)

    tasks = []
    for q in qs:
        for a in a_vals:
            for x in xs:
                def go(q=q, a=a, x=x) -> CheckRow:
                    ctx = _ctx(q, max_terms)
                    lhs = eval_unilateral_phi([a], [], ctx, x).value
                    rhs = linear_split_rhs(ctx, a, x)
                    return _row("linear-sum",
                                [("q", q), ("a", a), ("x", x)], lhs, rhs, tol)
                tasks.append(go)
    return SuiteResult.build("linear-sums", tol, _collect(tasks, jobs))


# ---------------------------------------------------------------- limits


def suite_limits(tol: float = 5e-2, grid: str = "default",
                 max_terms: Optional[int] = None,
                 lam: Optional[complex] = None, jobs: int = 1) -> SuiteResult:
    """All classical-limit scans on the default schedule.

    A row passes when the scan errors decrease strictly, the final error is
    below tol, and the Richardson-extrapolated error is below tol/5.
    """
    sched = LimitSchedule() if grid == "default" else LimitSchedule(
        q_values=tuple(1.0 - 2.0 ** (-k) for k in range(4, 8)))
    cfg = LaplaceConfig(lam=lam) if lam is not None else LaplaceConfig()

    def scan_row(identity: str, params, report) -> CheckRow:
        ok = (report.monotone
              and report.errors[-1] < tol
              and report.extrapolated_error is not None
              and report.extrapolated_error < tol / 5.0)
        if report.identity_errors is not None:
            ok = ok and all(e < 1e-10 for e in report.identity_errors)
        return CheckRow(identity, tuple(params),
                        report.values[-1], report.target,
                        report.errors[-1], ok)

    specs: list[tuple[str, tuple, Callable[[], object]]] = [
        ("limit-theta-ratio",
         (("alpha", 1.0), ("beta", 0.3), ("z", 1.5), ("form", "plain")),
         lambda: limit_theta_ratio(1.0, 0.3, 1.5, sched)),
        ("limit-theta-ratio",
         (("alpha", 0.4), ("beta", 1.2), ("z", 0.8), ("form", "scaled")),
         lambda: limit_theta_ratio(0.4, 1.2, 0.8, sched, form="scaled")),
        ("limit-qpoch-ratio", (("alpha", 0.7), ("z", 0.3)),
         lambda: limit_qpoch_ratio(0.7, 0.3, sched)),
        ("limit-linear-sum", (("alpha", 0.4), ("x", 0.3)),
         lambda: limit_linear_sum_forms(0.4, 0.3, sched)),
        ("limit-linear-sum", (("alpha", "none"), ("x", 0.3)),
         lambda: limit_linear_sum_forms(None, 0.3, sched)),
        ("limitA", (("beta", 1.0), ("x", 0.8)),
         lambda: limit_theorem_A(1.0, 0.8, cfg, sched)),
        ("limitA", (("beta", 0.5), ("x", 1.2)),
         lambda: limit_theorem_A(0.5, 1.2, cfg, sched)),
        ("limitA", (("beta", 2.0), ("x", 0.5)),
         lambda: limit_theorem_A(2.0, 0.5, cfg, sched)),
        ("limitB", (("alpha", 0.5), ("x", 1.5)),
         lambda: limit_theorem_B(0.5, 1.5, cfg, sched)),
        ("limitB", (("alpha", -1.0), ("x", 2.0)),
         lambda: limit_theorem_B(-1.0, 2.0, cfg, sched)),
    ]

    tasks = [(lambda name=name, params=params, fn=fn:
              scan_row(name, params, fn())) for name, params, fn in specs]
    return SuiteResult.build("limits", tol, _collect(tasks, jobs))


SUITES: Mapping[str, Callable[..., SuiteResult]] = {
    "theta-duality": suite_theta_duality,
    "theta-functional": suite_theta_functional,
    "ramanujan": suite_ramanujan,
    "bilateral-lemma": suite_bilateral_lemma,
    "pipelineA": suite_pipelineA,
    "pipelineB": suite_pipelineB,
    "ellipticity": suite_ellipticity,
    "lambda-shift": suite_lambda_shift,
    "laplace-borel": suite_laplace_borel,
    "residuals": suite_residuals,
    "watson": suite_watson,
    "linear-sums": suite_linear_sums,
    "limits": suite_limits,
}


def suite_names() -> tuple[str, ...]:
    return tuple(SUITES)


def run_suite(name: str, tol: Optional[float] = None, grid: str = "default",
              max_terms: Optional[int] = None, lam: Optional[complex] = None,
              jobs: int = 1) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    fn = SUITES[name]
    kw = dict(grid=grid, max_terms=max_terms, lam=lam, jobs=jobs)
    if tol is not None:
        kw["tol"] = tol
    return fn(**kw)
