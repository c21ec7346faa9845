"""Tests for the dephasing factor, rate and series evaluation.

Closed-form oracles (log_power = 0):

* rate:    int nu**(a-1) e**(-lam nu) sin(tau nu)
           = Gamma(a) sin(a atan(tau/lam)) / (lam**2+tau**2)**(a/2)
* factor, alpha0 = 3, lam = 1:   Xi = 1 - (1 - tau**2)/(1 + tau**2)**2
* factor, alpha0 = 1:            Xi = ln(1 + tau**2/lam**2) / 2

Thermal and log-corrected reference values were computed with 30-digit
mpmath quadrature (pole-split integration paths) and are frozen inline.
"""

import math
import os

import numpy as np
import pytest
from scipy.special import gamma as sp_gamma

from dephase_lab.dynamics import (
    SeriesResult,
    asymptotic_coherence,
    coherence_ratio,
    compute_series,
    dephasing_factor,
    dephasing_factor_residual,
    dephasing_rate,
)
from dephase_lab.spectral import BathSpec, MomentKind, SpectralFamily, SpectralModel, moment

ZERO_T = BathSpec(0.0)


def canonical(a0, p=0.0, lam=1.0, amp=1.0):
    return SpectralModel(alpha0=a0, log_power=p, cutoff=lam, amplitude=amp)


def rate_closed_form(a0, lam, tau):
    return sp_gamma(a0) * math.sin(a0 * math.atan2(tau, lam)) / (lam**2 + tau**2) ** (a0 / 2)


# ------------------------------------------------------------------- rate

@pytest.mark.parametrize("a0", [0.5, 1.0, 2.5, 4.0])
@pytest.mark.parametrize("lam", [0.5, 1.0])
@pytest.mark.parametrize("tau", [0.1, 1.0, 12.0, 300.0])
def test_rate_closed_form_zero_temperature(a0, lam, tau):
    res = dephasing_rate(canonical(a0, lam=lam), ZERO_T, tau)
    assert res.value == pytest.approx(rate_closed_form(a0, lam, tau), rel=1e-9)


def test_rate_amplitude_scaling():
    r1 = dephasing_rate(canonical(2.0), ZERO_T, 3.0)
    r2 = dephasing_rate(canonical(2.0, amp=4.5), ZERO_T, 3.0)
    assert r2.value == pytest.approx(4.5 * r1.value, rel=1e-12)


def test_rate_thermal_spot_value():
    # [frozen 30-digit quadrature] alpha0=2.5, lam=1, theta=1.3, tau=7
    res = dephasing_rate(canonical(2.5), BathSpec(1.3), 7.0)
    assert res.value == pytest.approx(0.050619646285727384, rel=1e-9)


def test_rate_general_log_spot_value():
    # [frozen 30-digit quadrature] alpha0=1.5, p=1.3, lam=1, tau=5
    m = SpectralModel(alpha0=1.5, log_power=1.3,
                      family=SpectralFamily.GENERAL_LOG)
    res = dephasing_rate(m, ZERO_T, 5.0)
    assert res.value == pytest.approx(0.20723918659577306, rel=1e-9)


def test_rate_canonical_log_squared_spot_value():
    # [frozen 30-digit quadrature, cross-checked against the second
    # exponent-derivative of the closed form] alpha0=1.5, p=2, tau=5
    res = dephasing_rate(canonical(1.5, p=2.0), ZERO_T, 5.0)
    assert res.value == pytest.approx(0.2659191611322721, rel=1e-9)


def test_rate_at_zero_time_vanishes():
    assert dephasing_rate(canonical(2.0), ZERO_T, 0.0).value == 0.0


def test_rate_thermal_alpha_zero_diverges():
    with pytest.raises(ValueError):
        dephasing_rate(canonical(0.0), BathSpec(1.0), 1.0)


def test_rate_thermal_conditional_convergence_warns():
    with pytest.warns(RuntimeWarning, match="conditionally"):
        res = dephasing_rate(canonical(0.5), BathSpec(1.0), 2.0)
    assert math.isfinite(res.value)


# ------------------------------------------------------------------- factor

@pytest.mark.parametrize("tau", [0.05, 0.7, 3.0, 40.0, 1e3])
def test_factor_closed_form_alpha3(tau):
    res = dephasing_factor(canonical(3.0), ZERO_T, tau)
    exact = 1.0 - (1.0 - tau**2) / (1.0 + tau**2) ** 2
    assert res.value == pytest.approx(exact, rel=1e-9)


@pytest.mark.parametrize("tau", [0.2, 2.0, 100.0])
@pytest.mark.parametrize("lam", [0.5, 2.0])
def test_factor_closed_form_alpha1(tau, lam):
    # Divergent-plateau regime: Xi grows logarithmically forever.
    res = dephasing_factor(canonical(1.0, lam=lam), ZERO_T, tau)
    exact = 0.5 * math.log1p(tau**2 / lam**2)
    assert res.value == pytest.approx(exact, rel=1e-9)


def test_factor_thermal_spot_value():
    # [frozen 30-digit quadrature] alpha0=2.5, lam=1, theta=1.3, tau=7
    res = dephasing_factor(canonical(2.5), BathSpec(1.3), 7.0)
    assert res.value == pytest.approx(1.931003044692496, rel=1e-9)


def test_factor_thermal_general_log_spot_value():
    # [frozen 30-digit quadrature] alpha0=2.2, p=-0.7, lam=0.8, theta=0.6, tau=3
    m = SpectralModel(alpha0=2.2, log_power=-0.7, cutoff=0.8,
                      family=SpectralFamily.GENERAL_LOG)
    res = dephasing_factor(m, BathSpec(0.6), 3.0)
    assert res.value == pytest.approx(1.1443423543451705, rel=1e-9)


def test_factor_at_zero_time_exactly_zero():
    res = dephasing_factor(canonical(2.5), ZERO_T, 0.0)
    assert res.value == 0.0
    assert res.error_estimate == 0.0


def test_factor_derivative_is_rate():
    # dXi/dtau = gamma/Delta, via central differences.
    m, bath = canonical(2.7, p=2.0, lam=0.8), BathSpec(0.9)
    for tau in [0.5, 2.0, 9.0]:
        h = 1e-5 * max(tau, 1.0)
        fd = (dephasing_factor(m, bath, tau + h).value
              - dephasing_factor(m, bath, tau - h).value) / (2 * h)
        rate = dephasing_rate(m, bath, tau).value
        assert fd == pytest.approx(rate, rel=3e-6)


def test_short_time_quadratic_law():
    # Xi -> (tau**2/2) int Omega_T dnu as tau -> 0.
    m, bath = canonical(2.5), BathSpec(1.7)
    m_coeff = moment(m, bath, MomentKind.LT).value  # scale = 1
    tau = 1e-3
    res = dephasing_factor(m, bath, tau)
    assert res.value == pytest.approx(0.5 * m_coeff * tau**2, rel=1e-5)


# ------------------------------------------------------------------- residual

def test_residual_matches_closed_form():
    # alpha0=3, lam=1: Xi - Xi(inf) = -(1 - tau**2)/(1 + tau**2)**2 with
    # Xi(inf) = 1; relative accuracy must survive tau = 1e3 where the
    # residual is ~1e-6.
    m = canonical(3.0)
    for tau in [5.0, 50.0, 1e3]:
        res = dephasing_factor_residual(m, ZERO_T, tau)
        exact = -(1.0 - tau**2) / (1.0 + tau**2) ** 2
        assert res.value == pytest.approx(exact, rel=1e-9)


def test_residual_requires_finite_plateau():
    with pytest.raises(ValueError):
        dephasing_factor_residual(canonical(1.0), ZERO_T, 5.0)


# ------------------------------------------------------------------- coherence

def test_coherence_ratio_and_plateau():
    m = canonical(3.0)
    tau = 2.0
    xi = 1.0 - (1.0 - tau**2) / (1.0 + tau**2) ** 2
    assert coherence_ratio(m, ZERO_T, tau) == pytest.approx(math.exp(-xi), rel=1e-9)
    # Xi(inf) = Gamma(alpha0-1) for lam = 1, p = 0: here Gamma(2) = 1.
    assert asymptotic_coherence(m, ZERO_T) == pytest.approx(math.exp(-1.0), rel=1e-9)
    assert asymptotic_coherence(canonical(1.0), ZERO_T) == 0.0


# ------------------------------------------------------------------- series

def test_compute_series_matches_pointwise():
    m, bath = canonical(3.0), ZERO_T
    taus = np.array([0.0, 0.5, 2.0, 10.0])
    series = compute_series(m, bath, taus)
    assert isinstance(series, SeriesResult)
    for i, tau in enumerate(taus):
        assert series.xi[i] == dephasing_factor(m, bath, float(tau)).value
        assert series.gamma_over_delta[i] == dephasing_rate(m, bath, float(tau)).value
    assert np.allclose(series.coherence_ratio, np.exp(-series.xi), rtol=1e-14)
    assert series.model == m and series.bath == bath


def test_compute_series_threaded_matches_sequential(monkeypatch):
    m, bath = canonical(2.5, p=2.0), BathSpec(0.8)
    taus = np.geomspace(0.1, 50.0, 8)
    seq = compute_series(m, bath, taus)
    monkeypatch.setenv("DEPHASE_LAB_THREADS", "4")
    par = compute_series(m, bath, taus)
    assert np.array_equal(seq.xi, par.xi)
    assert np.array_equal(seq.gamma_over_delta, par.gamma_over_delta)


def test_compute_series_invalid_thread_env(monkeypatch):
    monkeypatch.setenv("DEPHASE_LAB_THREADS", "many")
    with pytest.warns(RuntimeWarning, match="DEPHASE_LAB_THREADS"):
        compute_series(canonical(3.0), ZERO_T, [1.0])


def test_compute_series_validates_grid():
    with pytest.raises(ValueError):
        compute_series(canonical(3.0), ZERO_T, [])
    with pytest.raises(ValueError):
        compute_series(canonical(3.0), ZERO_T, [-1.0, 2.0])
