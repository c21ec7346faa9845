"""Numerical laboratory for exact qubit dephasing under Ohmic-like
reservoirs with logarithmic spectral perturbations.

The package evaluates the dephasing factor ``Xi(tau)`` and rate
``gamma(tau)/Delta`` of a pure-dephasing qubit exactly (adaptive
oscillatory quadrature, zero and finite temperature), derives the
matching long-time asymptotic laws from Mellin-type residue blocks,
classifies the long-time direction of information flow, and quantifies
accumulated back-flow.  The ``dephase-lab`` console script exposes the
same capabilities for reproducible CSV/JSON runs.
"""

from .quadrature import (Kernel, QuadratureConfig, IntegralValue,
                         integrate_tail, integrate_oscillatory)
from .spectral import (SpectralFamily, SpectralModel, BathSpec, MomentKind,
                       MomentReport, eval_omega, eval_omega_thermal,
                       omega_derivative, omega_callable, moment)
from .dynamics import (SeriesResult, dephasing_factor,
                       dephasing_factor_residual, dephasing_rate,
                       coherence_ratio, asymptotic_coherence, compute_series)
from .asymptotics import (QUANTITY_RATE, QUANTITY_FACTOR, AsymptoticTerm,
                          AsymptoticExpansion, long_time_law, short_time_law,
                          mellin_transform, mellin_coefficient_oracle)
from .flow import (FlowDirection, TemperatureClass, Stability,
                   FlowClassification, MarkovianCheck, MeasureResult,
                   TransitionRecord, classify_long_time_flow,
                   markovian_sufficient_check, non_markovianity_measure,
                   transition_table)
from .presets import PRESETS, preset_names, get_preset
from .cli import RunConfig

__version__ = "0.1.0"

__all__ = [
    "Kernel", "QuadratureConfig", "IntegralValue", "integrate_tail",
    "integrate_oscillatory",
    "SpectralFamily", "SpectralModel", "BathSpec", "MomentKind",
    "MomentReport", "eval_omega", "eval_omega_thermal", "omega_derivative",
    "omega_callable", "moment",
    "SeriesResult", "dephasing_factor", "dephasing_factor_residual",
    "dephasing_rate", "coherence_ratio", "asymptotic_coherence",
    "compute_series",
    "QUANTITY_RATE", "QUANTITY_FACTOR", "AsymptoticTerm",
    "AsymptoticExpansion", "long_time_law", "short_time_law",
    "mellin_transform", "mellin_coefficient_oracle",
    "FlowDirection", "TemperatureClass", "Stability", "FlowClassification",
    "MarkovianCheck", "MeasureResult", "TransitionRecord",
    "classify_long_time_flow", "markovian_sufficient_check",
    "non_markovianity_measure", "transition_table",
    "PRESETS", "preset_names", "get_preset",
    "RunConfig",
    "__version__",
]
