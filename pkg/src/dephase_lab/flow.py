"""Information-flow classification and non-Markovianity quantification.

Negative dephasing rate means the coherence ratio ``exp(-Xi)`` is
momentarily increasing: information flows back from the reservoir to
the qubit.  The long-time direction follows from the sign of the
leading coefficient of the rate law; for power-law densities this
reduces to ``sign(sin(pi alpha0/2))`` at zero temperature (back-flow on
``2+4n < alpha0 < 4+4n``) and ``sign(cos(pi alpha0/2)/(1-alpha0))`` at
positive temperature (back-flow on ``3+4n < alpha0 < 5+4n``), with the
integer boundaries resolved by the log-derivative or cutoff-fallback
coefficients of :func:`dephase_lab.asymptotics.long_time_law`.

The accumulated back-flow is measured BLP-style as
``N = int_{gamma<0} |gamma| exp(-Xi) dtau``.  On a maximal interval
``(a, b)`` with negative rate the integrand is the exact derivative of
``exp(-Xi)``, so each contribution telescopes to
``exp(-Xi(b)) - exp(-Xi(a)) >= 0``; only the interval endpoints need to
be located numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .asymptotics import QUANTITY_RATE, long_time_law
from .dynamics import asymptotic_coherence, dephasing_factor, dephasing_rate
from .quadrature import QuadratureConfig
from .spectral import BathSpec, SpectralModel, eval_omega, omega_derivative

__all__ = [
    "FlowDirection",
    "TemperatureClass",
    "Stability",
    "FlowClassification",
    "MarkovianCheck",
    "MeasureResult",
    "TransitionRecord",
    "classify_long_time_flow",
    "markovian_sufficient_check",
    "non_markovianity_measure",
    "transition_table",
]


class FlowDirection(str, Enum):
    BACK_FLOW = "BackFlow"
    FORWARD_FLOW = "ForwardFlow"
    INDETERMINATE = "Indeterminate"


class TemperatureClass(str, Enum):
    ZERO = "Zero"
    POSITIVE = "Positive"


class Stability(str, Enum):
    STABLE = "Stable"
    INVERTED = "Inverted"


@dataclass(frozen=True)
class FlowClassification:
    """Predicted long-time flow direction with its governing coefficient.

    ``leading_sign`` is the sign of the leading long-time rate
    coefficient (-1 back-flow, +1 forward, 0 indeterminate);
    ``interval_index`` is the index ``n`` of the back-flow window the
    exponent falls in (None for forward flow); ``regime`` carries the
    tag of the asymptotic law that produced the coefficient.
    """

    direction: FlowDirection
    leading_sign: int
    regime: str
    interval_index: int | None
    temperature_class: TemperatureClass
    leading_coefficient: float


class MarkovianCheck(NamedTuple):
    markovian: bool
    first_violation: float | None


@dataclass(frozen=True)
class MeasureResult:
    """Accumulated back-flow ``N`` with the intervals that produced it.

    ``negative_intervals`` lists the maximal ``(tau_start, tau_end)``
    stretches with negative rate found below ``truncation_tau`` (an
    interval still open at the truncation is closed there, and the
    asymptotic tail bound is folded into ``error_estimate``).
    """

    value: float
    negative_intervals: tuple[tuple[float, float], ...]
    error_estimate: float
    truncation_tau: float


@dataclass(frozen=True)
class TransitionRecord:
    flow_at_zero_T: FlowDirection
    flow_at_positive_T: FlowDirection
    stability: Stability


def classify_long_time_flow(model: SpectralModel, bath: BathSpec,
                            config: QuadratureConfig | None = None) -> FlowClassification:
    """Direction of the long-time information flow from the rate law.

    The sign of the leading coefficient of the long-time dephasing rate
    decides the direction: negative rate ⇒ the coherence ratio recovers
    ⇒ back-flow.  Integer exponent boundaries are resolved by the same
    law (surviving log-derivative terms, or the next cutoff order for
    plain power laws); ``Indeterminate`` is returned only if the
    resulting coefficient vanishes exactly.
    """
    law = long_time_law(model, bath, QUANTITY_RATE, config)
    lead = law.leading
    thermal = bath.theta > 0.0
    temperature = TemperatureClass.POSITIVE if thermal else TemperatureClass.ZERO
    if lead is None or lead.coefficient == 0.0:
        return FlowClassification(FlowDirection.INDETERMINATE, 0, law.regime,
                                  None, temperature, 0.0)
    sign = 1 if lead.coefficient > 0 else -1
    if sign < 0:
        offset = 3.0 if thermal else 2.0
        index = max(0, math.floor((model.alpha0 - offset) / 4.0))
        direction = FlowDirection.BACK_FLOW
    else:
        index = None
        direction = FlowDirection.FORWARD_FLOW
    return FlowClassification(direction, sign, law.regime, index,
                              temperature, lead.coefficient)


def _markovian_gap(model: SpectralModel, bath: BathSpec, nu):
    """Slack of the sufficient condition: bound(nu) - Omega'(nu).

    Zero temperature: ``Omega' <= Omega/nu`` (the ratio ``Omega/nu`` is
    non-increasing).  Positive temperature the bound relaxes to
    ``(1/nu + (2/theta) csch(2 nu/theta)) Omega``.  Negative gap means
    the sufficient condition fails at that frequency.
    """
    nu = np.asarray(nu, dtype=float)
    omega = eval_omega(model, nu)
    bound = omega / nu
    if bath.theta > 0.0:
        x = 2.0 * nu / bath.theta
        csch = np.where(x > 350.0, 0.0, 1.0 / np.sinh(np.where(x > 350.0, 1.0, x)))
        bound = bound + (2.0 / bath.theta) * csch * omega
    return bound - omega_derivative(model, nu)


def markovian_sufficient_check(model: SpectralModel, bath: BathSpec,
                               nu_grid: np.ndarray | None = None) -> MarkovianCheck:
    """Screen the sufficient condition for Markovian (monotone) decay.

    Evaluates the closed-form derivative inequality on a log-dense grid
    (supplied or auto-built out to where the cutoff has extinguished the
    density) and bisects the first sign change.  A ``True`` verdict is
    sufficient for forward-only flow; ``False`` reports the smallest
    violating frequency found.
    """
    if nu_grid is None:
        nu_max = (60.0 + 10.0 * (model.alpha0 + max(model.log_power, 0.0))) / model.cutoff
        nu_grid = np.geomspace(1e-8, nu_max, 240)
    else:
        nu_grid = np.asarray(nu_grid, dtype=float)
    gap = _markovian_gap(model, bath, nu_grid)
    bad = np.flatnonzero(gap < 0.0)
    if bad.size == 0:
        return MarkovianCheck(True, None)
    first = bad[0]
    if first == 0:
        return MarkovianCheck(False, float(nu_grid[0]))
    root = brentq(lambda nu: _markovian_gap(model, bath, nu),
                  nu_grid[first - 1], nu_grid[first], rtol=1e-12)
    return MarkovianCheck(False, float(root))


def _coherence_at(model, bath, tau, config):
    report = dephasing_factor(model, bath, tau, config)
    value = math.exp(-report.value)
    return value, value * report.error_estimate


def non_markovianity_measure(model: SpectralModel, bath: BathSpec,
                             truncation_tau: float = 1e4,
                             config: QuadratureConfig | None = None) -> MeasureResult:
    """Accumulated information back-flow ``N = int_{gamma<0} |gamma| e^{-Xi}``.

    Sign changes of the rate are located by a 64-per-decade logarithmic
    scan over ``(1e-3, truncation_tau]`` refined by bisection; each
    maximal negative interval contributes the exact telescoped increment
    ``exp(-Xi(end)) - exp(-Xi(start))``.  An interval still open at the
    truncation is closed there and, when the long-time classification is
    back-flow, the remaining tail ``exp(-Xi(inf)) - exp(-Xi(truncation))``
    is added to ``error_estimate``.
    """
    if truncation_tau <= 0.0:
        raise ValueError("truncation_tau must be positive")
    decades = math.log10(truncation_tau) - math.log10(1e-3)
    count = max(2, int(64 * decades) + 1)
    taus = np.geomspace(1e-3, truncation_tau, count)
    rate = lambda tau: dephasing_rate(model, bath, tau, config).value  # noqa: E731
    values = np.array([rate(t) for t in taus])

    roots = []
    for i in range(len(taus) - 1):
        left, right = values[i], values[i + 1]
        if left == 0.0:
            continue
        if left * right < 0.0:
            roots.append(brentq(rate, taus[i], taus[i + 1], rtol=1e-12))

    # short-time rate is positive (quadratic onset of Xi), so negative
    # stretches are bounded by consecutive root pairs
    intervals = []
    open_start = None
    sign = 1.0 if values[0] > 0 else -1.0
    if sign < 0:  # pathological: already negative at the first scan point
        open_start = float(taus[0])
    for root in roots:
        if open_start is None:
            open_start = float(root)
        else:
            intervals.append((open_start, float(root)))
            open_start = None
    tail_open = open_start is not None
    if tail_open:
        intervals.append((open_start, float(truncation_tau)))

    value = 0.0
    error = 0.0
    for start, end in intervals:
        c_start, err_start = _coherence_at(model, bath, start, config)
        c_end, err_end = _coherence_at(model, bath, end, config)
        value += c_end - c_start
        error += err_start + err_end
    if tail_open:
        classification = classify_long_time_flow(model, bath, config)
        if classification.direction is FlowDirection.BACK_FLOW:
            c_trunc, _ = _coherence_at(model, bath, truncation_tau, config)
            error += abs(asymptotic_coherence(model, bath, config) - c_trunc)
    return MeasureResult(max(0.0, value), tuple(intervals), error,
                         float(truncation_tau))


def transition_table(alpha0: float) -> TransitionRecord:
    """Flow directions at zero and positive temperature for one exponent.

    Valid for non-integer exponents, where the direction depends on
    ``alpha0`` alone (any log power, any positive temperature).  The
    pattern is 4-periodic, and ``Stable`` means heating does not invert
    the direction.

    Raises
    ------
    ValueError
        At integer exponents, where the direction depends on the full
        model; classify with :func:`classify_long_time_flow` instead.
    """
    if alpha0 <= 0.0:
        raise ValueError("alpha0 must be positive")
    if abs(alpha0 - round(alpha0)) < 1e-12:
        raise ValueError(
            "integer exponent sits on an interval boundary; the direction "
            "depends on the log power — use classify_long_time_flow with "
            "the full model")
    model = SpectralModel(alpha0)
    zero = classify_long_time_flow(model, BathSpec())
    positive = classify_long_time_flow(model, BathSpec(theta=1.0))
    stability = (Stability.STABLE if zero.direction == positive.direction
                 else Stability.INVERTED)
    return TransitionRecord(zero.direction, positive.direction, stability)
