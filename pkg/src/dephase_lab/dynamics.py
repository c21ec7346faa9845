"""Exact pure-dephasing dynamics driven by a spectral density.

For a qubit dephasing under a bosonic reservoir the off-diagonal density
matrix element evolves as ``rho01(t) = rho01(0) exp(-Xi(t))``.  In reduced
variables ``tau = Delta t``, ``nu = omega / Delta``:

* dephasing factor   ``Xi(tau)  = int Omega_T(nu) (1 - cos(nu tau)) / nu**2 dnu``
* dephasing rate     ``gamma(tau)/Delta = int Omega_T(nu) sin(nu tau) / nu dnu``

with ``Omega_T = Omega coth(nu/theta)`` (``theta = 0``: zero temperature).
A negative rate means the coherence momentarily *recovers* -- information
flowing back from the reservoir.

When the plateau moment ``Xi(inf) = int Omega_T / nu**2`` is finite the
factor is evaluated as ``Xi(inf) - int Omega_T cos(nu tau) / nu**2``: the
cosine integral is obtained at full relative accuracy by the rotated
contour, so the small residual ``Xi - Xi(inf)`` never suffers the
catastrophic cancellation that forming ``1 - cos`` at large ``tau`` would
cause.  Regimes with a divergent plateau use the non-negative ``1 - cos``
kernel directly.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .quadrature import (
    IntegralValue,
    Kernel,
    QuadratureConfig,
    integrate_oscillatory,
)
from .spectral import (
    BathSpec,
    MomentKind,
    SpectralModel,
    coth,
    moment,
    omega_callable,
)

__all__ = [
    "SeriesResult",
    "dephasing_factor",
    "dephasing_factor_residual",
    "dephasing_rate",
    "coherence_ratio",
    "asymptotic_coherence",
    "compute_series",
]

THREADS_ENV_VAR = "DEPHASE_LAB_THREADS"


def _rate_envelope(model: SpectralModel, bath: BathSpec):
    omega = omega_callable(model)
    theta = bath.theta
    if theta == 0.0:
        return lambda z: omega(z) / z
    return lambda z: omega(z) * coth(z / theta) / z


def _factor_envelope(model: SpectralModel, bath: BathSpec):
    omega = omega_callable(model)
    theta = bath.theta
    if theta == 0.0:
        return lambda z: omega(z) / (z * z)
    return lambda z: omega(z) * coth(z / theta) / (z * z)


def _warn_if_conditionally_convergent(model: SpectralModel, bath: BathSpec) -> None:
    if bath.theta > 0.0 and model.alpha0 <= 1.0:
        warnings.warn(
            "thermal dephasing rate with alpha0 <= 1 is only conditionally "
            "convergent (the sine kernel regularises the infrared "
            "divergence); results remain well-defined",
            RuntimeWarning, stacklevel=3)


def dephasing_rate(model: SpectralModel, bath: BathSpec, tau: float,
                   config: QuadratureConfig | None = None) -> IntegralValue:
    """Dimensionless dephasing rate ``gamma(tau)/Delta``.

    Raises
    ------
    ValueError
        For ``theta > 0`` with ``alpha0 = 0``, where the rate integral
        diverges for every ``tau > 0``.
    """
    if bath.theta > 0.0 and model.alpha0 == 0.0:
        raise ValueError("thermal dephasing rate diverges for alpha0 = 0")
    _warn_if_conditionally_convergent(model, bath)
    return integrate_oscillatory(
        _rate_envelope(model, bath), Kernel.SIN, tau, config,
        decay_rate=model.cutoff)


def dephasing_factor(model: SpectralModel, bath: BathSpec, tau: float,
                     config: QuadratureConfig | None = None) -> IntegralValue:
    """Dephasing factor ``Xi(tau)`` (the coherence is ``exp(-Xi)``)."""
    if tau == 0.0:
        return IntegralValue(0.0, 0.0, 0, False)
    cfg = config or QuadratureConfig()
    plateau = moment(model, bath, MomentKind.SECOND_NEG, cfg)
    envelope = _factor_envelope(model, bath)
    if plateau.finite and tau > cfg.crossover_tau:
        cos_int = integrate_oscillatory(envelope, Kernel.COS, tau, cfg,
                                        decay_rate=model.cutoff)
        return IntegralValue(plateau.value - cos_int.value,
                             plateau.error_estimate + cos_int.error_estimate,
                             cos_int.intervals_used, cos_int.accelerated)
    return integrate_oscillatory(envelope, Kernel.ONE_MINUS_COS, tau, cfg,
                                 decay_rate=model.cutoff)


def dephasing_factor_residual(model: SpectralModel, bath: BathSpec, tau: float,
                              config: QuadratureConfig | None = None) -> IntegralValue:
    """Distance from the plateau, ``Xi(tau) - Xi(inf)`` (a negative number).

    Accurate in *relative* terms even when the residual is as small as
    ~1e-13, which direct subtraction of two Xi evaluations cannot deliver.

    Raises
    ------
    ValueError
        When the plateau moment diverges (``alpha0 <= 1`` at zero
        temperature, ``alpha0 <= 2`` at positive temperature).
    """
    cfg = config or QuadratureConfig()
    plateau = moment(model, bath, MomentKind.SECOND_NEG, cfg)
    if not plateau.finite:
        raise ValueError("Xi(inf) diverges for this model; the residual "
                         "is undefined")
    cos_int = integrate_oscillatory(
        _factor_envelope(model, bath), Kernel.COS, tau, cfg,
        decay_rate=model.cutoff)
    return IntegralValue(-cos_int.value, cos_int.error_estimate,
                         cos_int.intervals_used, cos_int.accelerated)


def coherence_ratio(model: SpectralModel, bath: BathSpec, tau: float,
                    config: QuadratureConfig | None = None) -> float:
    """Coherence retained at ``tau``: ``|rho01(tau)/rho01(0)| = exp(-Xi)``."""
    return math.exp(-dephasing_factor(model, bath, tau, config).value)


def asymptotic_coherence(model: SpectralModel, bath: BathSpec,
                         config: QuadratureConfig | None = None) -> float:
    """Coherence plateau ``exp(-Xi(inf))``; zero when ``Xi`` diverges."""
    plateau = moment(model, bath, MomentKind.SECOND_NEG, config)
    if not plateau.finite:
        return 0.0
    return math.exp(-plateau.value)


@dataclass(frozen=True)
class SeriesResult:
    """Dephasing dynamics sampled on a grid of reduced times.

    Attributes mirror the CSV columns written by the command line tool:
    ``tau``, ``xi``, ``gamma_over_delta``, ``coherence_ratio``, ``xi_err``,
    ``gamma_err``; the generating model and bath are attached.
    """

    tau: np.ndarray
    xi: np.ndarray
    gamma_over_delta: np.ndarray
    coherence_ratio: np.ndarray
    xi_err: np.ndarray
    gamma_err: np.ndarray
    model: SpectralModel
    bath: BathSpec


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        warnings.warn(f"ignoring non-integer {THREADS_ENV_VAR}={raw!r}",
                      RuntimeWarning, stacklevel=3)
        return 1
    return max(1, n)


def compute_series(model: SpectralModel, bath: BathSpec, tau_grid,
                   config: QuadratureConfig | None = None) -> SeriesResult:
    """Evaluate factor, rate and coherence on a grid of reduced times.

    The ``DEPHASE_LAB_THREADS`` environment variable caps the number of
    worker threads (default 1, sequential).
    """
    taus = np.asarray(tau_grid, dtype=float)
    if taus.ndim != 1 or taus.size == 0:
        raise ValueError("tau_grid must be a non-empty 1-D array")
    if np.any(taus < 0.0):
        raise ValueError("tau_grid must be non-negative")

    def point(tau):
        xi = dephasing_factor(model, bath, float(tau), config)
        rate = dephasing_rate(model, bath, float(tau), config)
        return xi.value, xi.error_estimate, rate.value, rate.error_estimate

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(point, taus))
    else:
        rows = [point(t) for t in taus]
    xi, xi_err, gamma, gamma_err = map(np.array, zip(*rows))
    return SeriesResult(
        tau=taus, xi=xi, gamma_over_delta=gamma,
        coherence_ratio=np.exp(-xi), xi_err=xi_err, gamma_err=gamma_err,
        model=model, bath=bath)
