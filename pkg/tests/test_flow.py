"""Tests for flow classification, Markovianity screening, and the measure."""

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dephase_lab.dynamics import dephasing_factor, dephasing_rate
from dephase_lab.flow import (
    FlowDirection,
    MarkovianCheck,
    MeasureResult,
    Stability,
    TemperatureClass,
    classify_long_time_flow,
    markovian_sufficient_check,
    non_markovianity_measure,
    transition_table,
)
from dephase_lab.spectral import BathSpec, SpectralModel

ZERO_T = BathSpec()


def in_backflow_window(alpha0, thermal):
    offset = 3.0 if thermal else 2.0
    return (alpha0 - offset) % 4.0 < 2.0 and alpha0 > offset


class TestClassification:
    @pytest.mark.parametrize("alpha0,theta,direction,index", [
        (2.5, 0.0, FlowDirection.BACK_FLOW, 0),
        (2.5, 1.0, FlowDirection.FORWARD_FLOW, None),
        (6.5, 0.0, FlowDirection.BACK_FLOW, 1),
        (7.5, 1.0, FlowDirection.BACK_FLOW, 1),
        (1.0, 0.0, FlowDirection.FORWARD_FLOW, None),
        (0.5, 0.0, FlowDirection.FORWARD_FLOW, None),
        (4.5, 0.1, FlowDirection.BACK_FLOW, 0),
        (4.5, 10.0, FlowDirection.BACK_FLOW, 0),
    ])
    def test_generic_windows(self, alpha0, theta, direction, index):
        c = classify_long_time_flow(SpectralModel(alpha0), BathSpec(theta=theta))
        assert c.direction is direction
        assert c.interval_index == index
        expected_class = TemperatureClass.POSITIVE if theta > 0 else TemperatureClass.ZERO
        assert c.temperature_class is expected_class
        assert c.leading_sign == (-1 if direction is FlowDirection.BACK_FLOW else 1)

    @pytest.mark.parametrize("alpha0,log_power,theta,direction", [
        (4.0, 2, 0.0, FlowDirection.BACK_FLOW),     # even boundary, log block
        (2.0, 2, 0.0, FlowDirection.FORWARD_FLOW),
        (4.0, 0, 0.0, FlowDirection.BACK_FLOW),     # even boundary, cutoff fallback
        (2.0, 0, 0.0, FlowDirection.FORWARD_FLOW),
        (3.0, 2, 1.0, FlowDirection.FORWARD_FLOW),  # odd thermal boundary
        (5.0, 2, 1.0, FlowDirection.BACK_FLOW),
        (3.0, 0, 1.0, FlowDirection.FORWARD_FLOW),
        (5.0, 0, 1.0, FlowDirection.BACK_FLOW),
    ])
    def test_boundary_resolution(self, alpha0, log_power, theta, direction):
        c = classify_long_time_flow(SpectralModel(alpha0, log_power=log_power),
                                    BathSpec(theta=theta))
        assert c.direction is direction
        assert c.regime in ("power-boundary", "power-fallback")

    def test_boundary_log_and_fallback_agree(self):
        # the surviving log-derivative coefficient and the cutoff fallback
        # must predict the same direction at each boundary
        for alpha0, theta in [(2.0, 0.0), (4.0, 0.0), (6.0, 0.0),
                              (3.0, 1.0), (5.0, 1.0), (7.0, 1.0)]:
            with_logs = classify_long_time_flow(
                SpectralModel(alpha0, log_power=2), BathSpec(theta=theta))
            plain = classify_long_time_flow(
                SpectralModel(alpha0), BathSpec(theta=theta))
            assert with_logs.direction is plain.direction

    def test_leading_coefficient_value(self):
        c = classify_long_time_flow(SpectralModel(2.5), ZERO_T)
        # sin(1.25 pi) Gamma(2.5) = -0.93999...
        assert c.leading_coefficient == pytest.approx(-0.9399856029866254, rel=1e-12)

    def test_sign_matches_numeric_rate(self):
        for alpha0, theta in [(1.5, 0.0), (2.5, 0.0), (3.5, 1.0), (5.5, 0.0)]:
            c = classify_long_time_flow(SpectralModel(alpha0), BathSpec(theta=theta))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                num = dephasing_rate(SpectralModel(alpha0), BathSpec(theta=theta),
                                     5e3).value
            assert math.copysign(1, num) == c.leading_sign

    def test_thermal_alpha0_zero_propagates(self):
        with pytest.raises(ValueError):
            classify_long_time_flow(SpectralModel(0.0), BathSpec(theta=1.0))


class TestMarkovianCheck:
    def test_ohmic_is_markovian(self):
        result = markovian_sufficient_check(SpectralModel(1.0), ZERO_T)
        assert result == MarkovianCheck(True, None)

    def test_super_ohmic_violates(self):
        ok, nu = markovian_sufficient_check(SpectralModel(3.0), ZERO_T)
        # Omega/nu = nu^2 e^-nu increases on (0, 2): the whole left band
        # violates, so the smallest scanned frequency is reported
        assert not ok
        assert nu < 1e-6

    def test_sub_ohmic_is_markovian(self):
        ok, nu = markovian_sufficient_check(SpectralModel(0.5), ZERO_T)
        assert ok and nu is None

    def test_thermal_bound_is_weaker(self):
        # csch term only enlarges the bound: zero-T pass implies thermal pass
        assert markovian_sufficient_check(SpectralModel(1.0), BathSpec(theta=1.0)).markovian
        assert not markovian_sufficient_check(SpectralModel(3.0), BathSpec(theta=1.0)).markovian

    def test_interior_violation_is_bisected(self):
        # grid starting inside the allowed band: the reported frequency is
        # the bisected left edge of the violating run
        grid = np.geomspace(2.5, 40.0, 120)
        ok, nu = markovian_sufficient_check(SpectralModel(3.0), ZERO_T, nu_grid=grid)
        # gap(nu) = e^-nu nu^2 (nu - 2) >= 0 for nu >= 2: no violation there
        assert ok and nu is None
        grid = np.geomspace(0.5, 40.0, 120)
        ok, nu = markovian_sufficient_check(SpectralModel(3.0), ZERO_T, nu_grid=grid)
        assert not ok
        assert nu == pytest.approx(0.5, rel=1e-9)  # first grid point violates

    def test_log_density_left_band(self):
        # nu^2 ln^2(nu) e^-nu: ratio still increasing near the origin
        ok, nu = markovian_sufficient_check(SpectralModel(2.0, log_power=2), ZERO_T)
        assert not ok
        assert nu is not None and nu > 0

    def test_overflow_guard_large_argument(self):
        # tiny theta drives 2 nu/theta into sinh overflow territory
        result = markovian_sufficient_check(SpectralModel(1.0), BathSpec(theta=1e-3))
        assert result.markovian


class TestMeasure:
    def test_single_interval_telescopes_to_exact_value(self):
        result = non_markovianity_measure(SpectralModel(3.0), ZERO_T)
        # Xi(tau) = 1 - (1 - tau^2)/(1 + tau^2)^2: rate changes sign at
        # sqrt(3), Xi(sqrt 3) = 9/8, plateau 1
        exact = math.exp(-1.0) - math.exp(-9.0 / 8.0)
        assert result.value == pytest.approx(exact, abs=1e-6)
        assert len(result.negative_intervals) == 1
        start, end = result.negative_intervals[0]
        assert start == pytest.approx(math.sqrt(3.0), rel=1e-9)
        assert end == result.truncation_tau == 1e4
        # the open tail is covered by the reported error bound
        assert abs(result.value - exact) <= result.error_estimate * 1.01

    def test_markovian_cases_measure_zero(self):
        for alpha0 in (0.5, 1.0):
            result = non_markovianity_measure(SpectralModel(alpha0), ZERO_T,
                                              truncation_tau=1e3)
            assert result.value == 0.0
            assert result.negative_intervals == ()

    def test_thermal_backflow_positive(self):
        result = non_markovianity_measure(SpectralModel(4.5), BathSpec(theta=1.0),
                                          truncation_tau=1e3)
        assert result.value > 0.01
        assert len(result.negative_intervals) == 1

    def test_telescoping_against_direct_quadrature(self):
        # int |gamma| e^-Xi over (sqrt3, 10) computed pointwise must agree
        # with the coherence-ratio increment
        model = SpectralModel(3.0)
        taus = np.linspace(math.sqrt(3.0), 10.0, 801)
        gammas = np.array([dephasing_rate(model, ZERO_T, t).value for t in taus])
        xis = np.array([dephasing_factor(model, ZERO_T, t).value for t in taus])
        direct = np.trapezoid(-gammas * np.exp(-xis), taus)
        telescoped = math.exp(-xis[-1]) - math.exp(-xis[0])
        assert direct == pytest.approx(telescoped, abs=1e-6)

    def test_invalid_truncation_raises(self):
        with pytest.raises(ValueError):
            non_markovianity_measure(SpectralModel(3.0), ZERO_T, truncation_tau=0.0)

    def test_value_non_negative_boundary_case(self):
        result = non_markovianity_measure(SpectralModel(4.0, log_power=2), ZERO_T,
                                          truncation_tau=1e3)
        assert result.value >= 0.0
        assert isinstance(result, MeasureResult)


class TestTransitionTable:
    @pytest.mark.parametrize("alpha0,zero,positive,stability", [
        (3.5, FlowDirection.BACK_FLOW, FlowDirection.BACK_FLOW, Stability.STABLE),
        (2.5, FlowDirection.BACK_FLOW, FlowDirection.FORWARD_FLOW, Stability.INVERTED),
        (1.2, FlowDirection.FORWARD_FLOW, FlowDirection.FORWARD_FLOW, Stability.STABLE),
        (4.5, FlowDirection.FORWARD_FLOW, FlowDirection.BACK_FLOW, Stability.INVERTED),
        (5.5, FlowDirection.FORWARD_FLOW, FlowDirection.FORWARD_FLOW, Stability.STABLE),
        (7.2, FlowDirection.BACK_FLOW, FlowDirection.BACK_FLOW, Stability.STABLE),
    ])
    def test_catalog(self, alpha0, zero, positive, stability):
        record = transition_table(alpha0)
        assert record.flow_at_zero_T is zero
        assert record.flow_at_positive_T is positive
        assert record.stability is stability

    def test_integer_boundary_raises(self):
        with pytest.raises(ValueError, match="classify_long_time_flow"):
            transition_table(3.0)

    def test_non_positive_raises(self):
        with pytest.raises(ValueError):
            transition_table(0.0)


@given(alpha0=st.floats(0.3, 4.0).filter(lambda a: min(abs(a - round(a)),
                                                       abs(a + 4 - round(a + 4))) > 0.05),
       theta=st.sampled_from([0.0, 1.0]))
@settings(max_examples=30, deadline=None)
def test_direction_follows_window_rule(alpha0, theta):
    bath = BathSpec(theta=theta)
    c1 = classify_long_time_flow(SpectralModel(alpha0), bath)
    expected = (FlowDirection.BACK_FLOW
                if in_backflow_window(alpha0, theta > 0)
                else FlowDirection.FORWARD_FLOW)
    assert c1.direction is expected
    # the direction is 4-periodic wherever the thermal coefficient keeps
    # its sign structure (above alpha0 = 1 the Gamma factor is positive;
    # below it the thermal window rule itself is not periodic)
    if theta == 0.0 or alpha0 > 1.0:
        c2 = classify_long_time_flow(SpectralModel(alpha0 + 4.0), bath)
        assert c1.direction is c2.direction
