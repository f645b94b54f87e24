import math

import numpy as np
import pytest

from erconn.errors import DomainError
from erconn.numerics import (
    UNDERFLOW_LOG_FLOOR,
    ProbabilityValue,
    lambert_w0,
    log_factorial,
    log_poisson_pmf,
    log_stable_bn,
    poisson_pmf_window,
    stable_bn,
)

# frozen offline with 60-digit arithmetic
LOG_PMF_100_100 = -3.2223569567543533
BN_1E6_1E_6 = 9.999995000006667e-07
X_AT_MINUS_HALF = -0.3032653298563167  # -0.5 * exp(-0.5)


class TestLogPoissonPmf:
    def test_trivial_unit_rate(self):
        assert log_poisson_pmf(0, 1.0) == pytest.approx(-1.0, abs=1e-15)
        assert log_poisson_pmf(1, 1.0) == pytest.approx(-1.0, abs=1e-15)

    def test_large_argument_against_frozen_oracle(self):
        got = log_poisson_pmf(100, 100.0)
        assert abs(got - LOG_PMF_100_100) <= 1e-12 * abs(LOG_PMF_100_100)

    @pytest.mark.parametrize("lam", [0.1, 1.0, 5.0])
    def test_pmf_sums_to_one(self, lam):
        s = math.fsum(math.exp(log_poisson_pmf(k, lam)) for k in range(201))
        assert 1.0 - 1e-12 <= s <= 1.0

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            log_poisson_pmf(1, 0.0)
        with pytest.raises(DomainError):
            log_poisson_pmf(1, -2.0)
        with pytest.raises(DomainError):
            log_poisson_pmf(-1, 1.0)
        with pytest.raises(DomainError):
            log_poisson_pmf(1, math.inf)

    def test_log_factorial_table_matches_lgamma(self):
        for k in [0, 1, 5, 170, 171, 500]:
            assert log_factorial(k) == pytest.approx(math.lgamma(k + 1), rel=1e-15)


class TestLambertW0:
    def test_endpoints(self):
        assert lambert_w0(0.0) == 0.0
        assert lambert_w0(-1.0 / math.e) == -1.0

    def test_forward_derived_point(self):
        assert lambert_w0(X_AT_MINUS_HALF) == pytest.approx(-0.5, abs=1e-12)

    def test_round_trip_1000_points(self):
        rng = np.random.default_rng(20240817)
        ws = rng.uniform(-1.0, 0.0, size=1000)
        worst = max(abs(lambert_w0(w * math.exp(w)) - w) for w in ws)
        assert worst <= 1e-12

    def test_residual_bound(self):
        for x in np.linspace(-1.0 / math.e + 1e-12, -1e-12, 400):
            w = lambert_w0(float(x))
            assert abs(w * math.exp(w) - x) <= 1e-14 * max(1.0, abs(x))

    def test_monotone_on_grid(self):
        xs = np.linspace(-1.0 / math.e, 0.0, 1500)
        ws = [lambert_w0(float(x)) for x in xs]
        assert all(b >= a for a, b in zip(ws, ws[1:]))

    def test_range(self):
        for x in np.linspace(-1.0 / math.e, 0.0, 97):
            assert -1.0 <= lambert_w0(float(x)) <= 0.0

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            lambert_w0(1e-9)
        with pytest.raises(DomainError):
            lambert_w0(-1.0 / math.e - 1e-12)
        with pytest.raises(DomainError):
            lambert_w0(math.nan)


class TestStableBn:
    def test_trivial(self):
        assert stable_bn(1, 0.5) == 0.5
        assert stable_bn(2, 1.0) == 0.75

    def test_tiny_ratio_against_frozen_oracle(self):
        got = stable_bn(10 ** 6, 1e-6)
        assert abs(got - BN_1E6_1E_6) <= 1e-13 * BN_1E6_1E_6

    def test_open_interval_and_monotone_in_c(self):
        # cap c where (1-c/n)^n stays representable; beyond that the double
        # value saturates to exactly 1.0
        for n in [2, 17, 400]:
            c_hi = 0.999 * n * (1.0 - math.exp(-600.0 / n))
            values = [stable_bn(n, c) for c in np.linspace(1e-9, c_hi, 50)]
            assert all(0.0 < v < 1.0 for v in values)
            assert all(b > a for a, b in zip(values, values[1:]))

    def test_domain_errors(self):
        for n, c in [(2, 0.0), (2, -1.0), (2, 2.0), (2, 3.0), (0, 0.5), (2.5, 1.0)]:
            with pytest.raises(DomainError):
                stable_bn(n, c)

    def test_log_form_consistency(self):
        for n, c in [(10, 0.5), (100, 3.0), (1000, 1e-5), (50, 30.0)]:
            assert math.exp(log_stable_bn(n, c)) == pytest.approx(
                stable_bn(n, c), rel=1e-13)

    def test_log_form_near_one(self):
        # b_n - 1 is far below double resolution here; only the log form sees it
        lb = log_stable_bn(200, 150.0)
        assert lb < 0.0
        assert lb == pytest.approx(-math.exp(200 * math.log1p(-0.75)), rel=1e-10)


class TestPoissonPmfWindow:
    @pytest.mark.parametrize("lam", [0.3, 3.0, 20.0, 250.0])
    def test_tail_bound_certifies_missing_mass(self, lam):
        pmf, tail = poisson_pmf_window(lam, 10 ** 9)
        missing = 1.0 - float(np.sum(pmf))
        assert -1e-12 <= missing <= tail
        assert tail < 1e-18

    def test_state_cap_cut_reports_no_error(self):
        pmf, tail = poisson_pmf_window(3.0, 5)
        assert pmf.size == 6
        assert tail == 0.0

    def test_log_space_branch_matches_logpmf(self):
        pmf, _ = poisson_pmf_window(700.0, 10 ** 9)
        assert float(np.sum(pmf)) == pytest.approx(1.0, abs=1e-12)
        for k in [0, 350, 700, 900]:
            assert pmf[k] == pytest.approx(
                math.exp(log_poisson_pmf(k, 700.0)), rel=1e-11)

    def test_matches_direct_pmf(self):
        pmf, _ = poisson_pmf_window(2.5, 10 ** 9)
        for k in [0, 1, 2, 7, 19]:
            assert pmf[k] == pytest.approx(
                math.exp(log_poisson_pmf(k, 2.5)), rel=1e-13)


class TestProbabilityValue:
    def test_log_linear_consistency_above_floor(self):
        for lv in np.linspace(-650.0, 0.0, 37):
            p = ProbabilityValue.from_log(float(lv))
            assert p.linear_value == pytest.approx(math.exp(lv), rel=1e-15)

    def test_underflow_floor(self):
        p = ProbabilityValue.from_log(-800.0)
        assert p.linear_value == 0.0
        assert p.log_value == -800.0
        q = ProbabilityValue.from_log(UNDERFLOW_LOG_FLOOR - 1.0)
        assert q.linear_value == 0.0

    def test_from_linear(self):
        p = ProbabilityValue.from_linear(0.25)
        assert p.log_value == pytest.approx(math.log(0.25), rel=1e-15)
        assert ProbabilityValue.from_linear(0.0).log_value == -math.inf
        assert float(ProbabilityValue.one()) == 1.0

    def test_bounds_enforced(self):
        with pytest.raises(DomainError):
            ProbabilityValue.from_linear(1.5)
        with pytest.raises(DomainError):
            ProbabilityValue.from_linear(-0.2)
        with pytest.raises(DomainError):
            ProbabilityValue.from_log(0.5)
        with pytest.raises(DomainError):
            ProbabilityValue.from_log(math.nan)

    def test_tiny_positive_log_clamps(self):
        p = ProbabilityValue.from_log(1e-12)
        assert p.log_value == 0.0
        assert p.linear_value == 1.0

    def test_error_bound_carried(self):
        p = ProbabilityValue.from_linear(0.5, error_bound=1e-9)
        assert p.error_bound == 1e-9
