"""Limit scans toward q = 1-0.

Targets are recomputed here with stdlib oracles (math.gamma, cmath.exp,
principal powers) so the module's classical evaluators are cross-checked
rather than trusted.
"""

import cmath
import math

import pytest

from qresum.errors import (
    BranchCutError,
    DivergenceDomainError,
    ZeroArgumentError,
)
from qresum.limits import (
    LimitReport,
    LimitSchedule,
    limit_linear_sum_forms,
    limit_qpoch_ratio,
    limit_theorem_A,
    limit_theorem_B,
    limit_theta_ratio,
)


def cpow(z, s):
    return cmath.exp(s * cmath.log(z))


def assert_good_scan(r: LimitReport, rich_bound=1e-2, final_bound=5e-2):
    assert r.monotone, f"{r.name}: errors not strictly decreasing: {r.errors}"
    assert r.errors[-1] < final_bound
    assert all(math.isfinite(e) for e in r.errors)
    assert r.extrapolated_error is not None
    assert r.extrapolated_error < rich_bound
    # first-order extrapolation must beat the raw scan clearly
    assert r.extrapolated_error * 5.0 <= r.errors[-1]


class TestSchedule:
    def test_default_grid(self):
        s = LimitSchedule()
        assert s.q_values == tuple(1.0 - 2.0 ** (-k) for k in range(4, 11))
        assert s.extrapolation == "richardson1"

    def test_validation(self):
        with pytest.raises(ValueError):
            LimitSchedule(q_values=(0.5,))
        with pytest.raises(ValueError):
            LimitSchedule(q_values=(0.5, 0.5))
        with pytest.raises(ValueError):
            LimitSchedule(q_values=(0.9, 0.6))
        with pytest.raises(ValueError):
            LimitSchedule(q_values=(0.5, 1.0))
        with pytest.raises(ValueError):
            LimitSchedule(q_values=(-0.1, 0.5))
        with pytest.raises(ValueError):
            LimitSchedule(extrapolation="richardson2")

    def test_extrapolation_none(self):
        r = limit_qpoch_ratio(0.7, 0.3, LimitSchedule(extrapolation="none"))
        assert r.extrapolated is None and r.extrapolated_error is None


class TestThetaRatio:
    def test_plain_generic_point(self):
        r = limit_theta_ratio(1.0, 0.3, 1.5)
        assert abs(r.target - 1.5 ** 0.7) < 1e-13
        assert_good_scan(r)

    def test_plain_equal_exponents_is_exact(self):
        # alpha = beta leaves the quotient identically 1 at every q
        r = limit_theta_ratio(0.7, 0.7, 2.0 + 1.0j)
        assert r.target == 1.0 + 0j
        assert all(e < 1e-12 for e in r.errors)

    def test_plain_complex_argument(self):
        # off the positive axis the theta series loses
        # exp(-arg(z)^2/(2(1-q))) digits to cancellation, so the scan
        # stops before the default schedule's top
        z = 1.2 + 0.3j
        sched = LimitSchedule(q_values=tuple(1 - 2.0 ** (-k)
                                             for k in range(4, 10)))
        r = limit_theta_ratio(0.9, 0.2, z, sched)
        assert abs(r.target - cpow(z, 0.7)) < 1e-13 * abs(r.target)
        assert_good_scan(r)

    def test_scaled_form_point(self):
        r = limit_theta_ratio(0.4, 1.2, 0.8, form="scaled")
        assert abs(r.target - 0.8 ** 0.8) < 1e-13
        assert_good_scan(r)

    def test_guards(self):
        with pytest.raises(BranchCutError):
            limit_theta_ratio(1.0, 0.3, -1.5)
        with pytest.raises(ZeroArgumentError):
            limit_theta_ratio(1.0, 0.3, 0.0)
        with pytest.raises(ValueError):
            limit_theta_ratio(1.0, 0.3, 1.5, form="middle")


class TestQPochRatio:
    def test_alpha_zero_is_exact(self):
        r = limit_qpoch_ratio(0.0, 0.5)
        assert r.target == 1.0 + 0j
        assert all(e < 1e-12 for e in r.errors)

    def test_alpha_one_telescopes(self):
        # (zq;q)_inf/(z;q)_inf = 1/(1-z) exactly, at every q
        r = limit_qpoch_ratio(1.0, 0.5)
        assert abs(r.target - 2.0) < 1e-13
        assert all(e < 1e-12 for e in r.errors)

    def test_generic_point(self):
        r = limit_qpoch_ratio(0.7, 0.3)
        assert abs(r.target - 0.7 ** -0.7) < 1e-13 * abs(r.target)
        assert_good_scan(r)

    def test_complex_argument(self):
        z = 0.4 + 0.3j
        r = limit_qpoch_ratio(-0.6, z)
        assert abs(r.target - cpow(1 - z, 0.6)) < 1e-13 * abs(r.target)
        assert_good_scan(r)

    def test_divergence_guard(self):
        with pytest.raises(DivergenceDomainError):
            limit_qpoch_ratio(0.7, 1.0)
        with pytest.raises(DivergenceDomainError):
            limit_qpoch_ratio(0.7, -1.3)


class TestLinearSumForms:
    def test_alpha_case(self):
        r = limit_linear_sum_forms(0.4, 0.3)
        assert abs(r.target - 0.7 ** -0.4) < 1e-12 * abs(r.target)
        assert r.identity_errors is not None
        assert all(e < 1e-10 for e in r.identity_errors)
        assert_good_scan(r)

    def test_vanishing_parameter_case(self):
        r = limit_linear_sum_forms(None, 0.3)
        assert abs(r.target - math.exp(0.6)) < 1e-12 * abs(r.target)
        assert all(e < 1e-10 for e in r.identity_errors)
        assert_good_scan(r)

    def test_vanishing_parameter_complex_argument(self):
        x = 0.25 + 0.2j
        r = limit_linear_sum_forms(None, x)
        assert abs(r.target - cmath.exp(2 * x)) < 1e-12 * abs(r.target)
        assert all(e < 1e-10 for e in r.identity_errors)
        assert_good_scan(r)

    def test_identity_holds_at_moderate_q(self):
        # the split is an identity at every fixed q, not only near 1
        sched = LimitSchedule(q_values=(0.4, 0.6, 0.8), extrapolation="none")
        for alpha in (None, 0.35):
            for x in (0.4, -0.3, 0.3 + 0.2j):
                r = limit_linear_sum_forms(alpha, x, sched)
                assert all(e < 1e-10 for e in r.identity_errors), (alpha, x)

    def test_guards(self):
        with pytest.raises(ZeroArgumentError):
            limit_linear_sum_forms(0.4, 0.0)
        with pytest.raises(DivergenceDomainError):
            limit_linear_sum_forms(0.4, 1.2)


class TestPipelineLimits:
    def test_theorem_A_points(self):
        for beta, x in [(1.0, 0.8), (0.5, 1.2), (2.0, 0.5)]:
            r = limit_theorem_A(beta, x)
            want = math.gamma(beta) * x ** (1.0 - beta) * math.exp(x)
            assert abs(r.target - want) < 1e-12 * abs(want), (beta, x)
            assert_good_scan(r)

    def test_theorem_B_points(self):
        for alpha, x in [(0.0, 2.0), (0.5, 1.5), (-1.0, 2.0)]:
            r = limit_theorem_B(alpha, x)
            want = math.gamma(1.0 - alpha) * x ** (-alpha) * math.exp(1.0 / x)
            assert abs(r.target - want) < 1e-12 * abs(want), (alpha, x)
            assert_good_scan(r)

    def test_theorem_A_complex_argument(self):
        # same cancellation boundary as the theta quotients: the closed
        # form divides two thetas that are each ~exp(-arg^2/(2(1-q)))
        x = 0.6 + 0.4j
        sched = LimitSchedule(q_values=tuple(1 - 2.0 ** (-k)
                                             for k in range(4, 8)))
        r = limit_theorem_A(0.8, x, sched=sched)
        want = math.gamma(0.8) * cpow(x, 0.2) * cmath.exp(x)
        assert abs(r.target - want) < 1e-12 * abs(want)
        assert_good_scan(r)

    def test_theorem_B_complex_argument(self):
        x = 1.5 + 0.9j
        sched = LimitSchedule(q_values=tuple(1 - 2.0 ** (-k)
                                             for k in range(4, 8)))
        r = limit_theorem_B(0.3, x, sched=sched)
        want = math.gamma(0.7) * cpow(x, -0.3) * cmath.exp(1.0 / x)
        assert abs(r.target - want) < 1e-12 * abs(want)
        assert_good_scan(r)

    def test_guards(self):
        with pytest.raises(BranchCutError):
            limit_theorem_A(0.5, -1.0)
        with pytest.raises(BranchCutError):
            limit_theorem_B(0.5, -2.0)
        with pytest.raises(ZeroArgumentError):
            limit_theorem_A(0.5, 0.0)


def test_report_shape():
    sched = LimitSchedule()
    r = limit_qpoch_ratio(0.7, 0.3, sched)
    assert r.q_values == sched.q_values
    assert len(r.values) == len(sched.q_values) == len(r.errors)
    assert isinstance(r.values[0], complex)
