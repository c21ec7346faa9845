"""Ohmic-like spectral densities with logarithmic corrections.

A reservoir is described by a dimensionless spectral function
``Omega(nu) = J(nu * Delta) / Delta`` where ``J`` is the physical spectral
density, ``Delta`` the qubit level splitting and ``nu = omega / Delta``.
Two families are implemented:

* ``CANONICAL_EVEN_LOG``:  ``Omega = A nu**a0 exp(-lam nu) ln(nu)**p``
  with even natural ``p`` (so the density stays non-negative through the
  ``nu = 1`` node of the logarithm).
* ``GENERAL_LOG``:  ``Omega = A nu**a0 exp(-lam nu) ln(e + 1/nu)**p``
  with arbitrary real ``p``; near ``nu = 0`` the log factor behaves like
  ``(-ln nu)**p`` while remaining positive for every ``nu > 0``.

Thermal occupation enters through ``Omega_T = Omega coth(nu / theta)``
with ``theta = 2 k_B T / (hbar Delta)``; ``theta = 0`` is the zero
temperature limit ``coth -> 1``.

Both families extend to analytic functions on the right half-plane
(principal branches), which the oscillatory quadrature exploits; use
:func:`omega_callable` to obtain the analytic evaluator.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np

from .quadrature import QuadratureConfig, integrate_tail

__all__ = [
    "SpectralFamily",
    "SpectralModel",
    "BathSpec",
    "MomentKind",
    "MomentReport",
    "eval_omega",
    "eval_omega_thermal",
    "omega_derivative",
    "omega_callable",
    "moment",
]


class SpectralFamily(enum.Enum):
    """Supported spectral-density families."""

    CANONICAL_EVEN_LOG = "CanonicalEvenLog"
    GENERAL_LOG = "GeneralLog"


def _is_even_natural(x: float) -> bool:
    return x >= 0.0 and float(x).is_integer() and int(x) % 2 == 0


@dataclass(frozen=True)
class SpectralModel:
    """Dimensionless spectral density ``Omega(nu)``.

    Parameters
    ----------
    alpha0 : float
        Leading power-law exponent at small frequency (``>= 0``; the
        general-log family requires ``> 0``).
    log_power : float
        Power of the logarithmic correction.  Must be an even natural
        number for the canonical family; any real number for the
        general-log family.
    family : SpectralFamily
    cutoff : float
        Exponential cutoff rate ``lam`` (in units of the qubit splitting).
    amplitude : float
        Overall coupling amplitude ``A``.
    scale : float
        The qubit splitting ``Delta``; fixes physical units of moments.
    """

    alpha0: float
    log_power: float = 0.0
    family: SpectralFamily = SpectralFamily.CANONICAL_EVEN_LOG
    cutoff: float = 1.0
    amplitude: float = 1.0
    scale: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.family, SpectralFamily):
            raise ValueError(f"family must be a SpectralFamily, got {self.family!r}")
        if not (self.alpha0 >= 0.0 and math.isfinite(self.alpha0)):
            raise ValueError("alpha0 must be a finite non-negative real")
        if self.cutoff <= 0.0:
            raise ValueError("cutoff must be positive")
        if self.amplitude <= 0.0:
            raise ValueError("amplitude must be positive")
        if self.scale <= 0.0:
            raise ValueError("scale must be positive")
        if self.family is SpectralFamily.CANONICAL_EVEN_LOG:
            if not _is_even_natural(self.log_power):
                raise ValueError(
                    "the canonical family needs an even natural log_power "
                    f"(0, 2, 4, ...), got {self.log_power!r}")
            if self.alpha0 == 0.0 and self.log_power != 0.0:
                raise ValueError(
                    "alpha0 = 0 requires log_power = 0 (otherwise the "
                    "density diverges at zero frequency)")
        else:
            if self.alpha0 <= 0.0:
                raise ValueError("the general-log family requires alpha0 > 0")
            if not math.isfinite(self.log_power):
                raise ValueError("log_power must be finite")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["family"] = self.family.value
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "SpectralModel":
        d = dict(data)
        fam = d.get("family", SpectralFamily.CANONICAL_EVEN_LOG)
        if isinstance(fam, str):
            try:
                fam = SpectralFamily(fam)
            except ValueError as exc:
                raise ValueError(f"unknown spectral family {fam!r}") from exc
        d["family"] = fam
        return cls(**d)


@dataclass(frozen=True)
class BathSpec:
    """Reservoir temperature in reduced units ``theta = 2 k_B T / (hbar Delta)``."""

    theta: float = 0.0

    def __post_init__(self) -> None:
        if not (self.theta >= 0.0 and math.isfinite(self.theta)):
            raise ValueError("theta must be a finite non-negative real")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "BathSpec":
        return cls(**data)


class MomentKind(enum.Enum):
    """Reservoir moments controlling short- and long-time dynamics."""

    L0 = "L0"                            # int J dw              ~ scale**2
    LT = "LT"                            # int J coth dw         ~ scale**2
    FIRST_NEG = "FirstNegMoment"         # int (J/w) [coth] dw   ~ scale
    SECOND_NEG = "SecondNegMoment"       # int (J/w**2)[coth] dw ~ 1


@dataclass(frozen=True)
class MomentReport:
    """Value of a reservoir moment together with a finiteness verdict."""

    kind: MomentKind
    finite: bool
    value: float
    error_estimate: float


def omega_callable(model: SpectralModel):
    """Return the evaluator ``Omega(z)``, valid for ``Re z > 0``.

    The returned callable accepts real positive floats and complex numbers
    with positive real part (principal branches), enabling the
    rotated-contour quadrature path.
    """
    amp = model.amplitude
    a0 = model.alpha0
    lam = model.cutoff
    p = model.log_power
    if model.family is SpectralFamily.CANONICAL_EVEN_LOG:
        ip = int(p)

        def omega(z):
            return amp * z**a0 * np.exp(-lam * z) * np.log(z)**ip
    else:

        def omega(z):
            return amp * z**a0 * np.exp(-lam * z) * np.log(np.e + 1.0 / z)**p
    return omega


def eval_omega(model: SpectralModel, nu):
    """Evaluate ``Omega(nu)`` for real ``nu >= 0`` (scalar or array)."""
    arr = np.asarray(nu, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("nu must be non-negative")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.zeros_like(arr)
    pos = arr > 0.0
    if np.any(pos):
        f = omega_callable(model)
        with np.errstate(divide="ignore", under="ignore"):
            out[pos] = f(arr[pos])
    if np.any(~pos):
        # Limit at nu -> 0+: zero for alpha0 > 0, the bare amplitude for
        # the flat canonical density alpha0 = 0, p = 0.
        out[~pos] = model.amplitude if model.alpha0 == 0.0 else 0.0
    return float(out[0]) if scalar else out


def coth(x):
    """``coth(x)``, stable at small argument (Laurent guard below 1e-3).

    Accepts real scalars/arrays and complex scalars; used to continue the
    thermal factor ``coth(nu / theta)`` onto the rotated contour, where
    ``|coth(z)| <= coth(Re z)`` keeps it bounded for ``Re z > 0``.
    """
    if isinstance(x, complex):
        if abs(x) < 1e-3:
            return 1.0 / x + x / 3.0 - x**3 / 45.0
        return 1.0 / np.tanh(x)
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.empty_like(arr)
    small = np.abs(arr) < 1e-3
    xs = arr[small]
    with np.errstate(divide="ignore"):
        out[small] = 1.0 / xs + xs / 3.0 - xs**3 / 45.0
        out[~small] = 1.0 / np.tanh(arr[~small])
    return float(out[0]) if scalar else out


def eval_omega_thermal(model: SpectralModel, bath: BathSpec, nu):
    """Evaluate ``Omega_T(nu) = Omega(nu) coth(nu / theta)``.

    ``theta = 0`` returns the zero-temperature density unchanged.  At
    positive ``theta`` the value diverges like ``theta Omega(nu) / nu``
    as ``nu -> 0`` whenever ``alpha0 <= 1``; evaluation at ``nu = 0`` is
    rejected in that regime.
    """
    if bath.theta == 0.0:
        return eval_omega(model, nu)
    arr = np.asarray(nu, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("nu must be non-negative")
    if np.any(arr == 0.0) and model.alpha0 <= 1.0:
        raise ValueError("Omega_T diverges at nu = 0 for alpha0 <= 1")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = np.zeros_like(arr)
    pos = arr > 0.0
    out[pos] = eval_omega(model, arr[pos]) * coth(arr[pos] / bath.theta)
    return float(out[0]) if scalar else out


def omega_derivative(model: SpectralModel, nu):
    """Closed-form ``dOmega/dnu`` for real ``nu > 0`` (scalar or array)."""
    arr = np.asarray(nu, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("nu must be positive")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    om = eval_omega(model, arr)
    base = om * (model.alpha0 / arr - model.cutoff)
    p = model.log_power
    if p != 0.0:
        amp, a0, lam = model.amplitude, model.alpha0, model.cutoff
        if model.family is SpectralFamily.CANONICAL_EVEN_LOG:
            log_term = (amp * arr**(a0 - 1.0) * np.exp(-lam * arr)
                        * p * np.log(arr)**(int(p) - 1))
        else:
            ell = np.log(np.e + 1.0 / arr)
            log_term = -om * p / (ell * arr * (np.e * arr + 1.0))
        base = base + log_term
    return float(base[0]) if scalar else base


def _moment_finite(model: SpectralModel, theta: float, kind: MomentKind) -> bool:
    """Exact small-frequency convergence test for each moment."""
    a0 = model.alpha0
    thermal = theta > 0.0
    if kind is MomentKind.L0:
        return True
    if kind is MomentKind.LT:
        boundary = 0.0 if thermal else -1.0  # LT == L0 at theta = 0
    elif kind is MomentKind.FIRST_NEG:
        boundary = 1.0 if thermal else 0.0
    else:
        boundary = 2.0 if thermal else 1.0
    if a0 > boundary:
        return True
    if a0 < boundary:
        return False
    # Exactly at the boundary the integrand goes like L(nu)**p / nu where
    # L ~ -ln nu; the integral converges only for p < -1, reachable only
    # in the general-log family.
    return (model.family is SpectralFamily.GENERAL_LOG
            and model.log_power < -1.0)


def moment(model: SpectralModel, bath: BathSpec, kind: MomentKind | str,
           config: QuadratureConfig | None = None) -> MomentReport:
    """Compute a reservoir moment, with an analytic finiteness pre-check.

    ``L0 = int J dw`` and ``LT = int J coth dw`` scale as ``scale**2``;
    ``FirstNegMoment = int (J/w) coth dw`` scales as ``scale`` and
    ``SecondNegMoment = int (J/w**2) coth dw`` is dimensionless (it is
    the dephasing-factor plateau).  The ``coth`` factor applies at
    ``theta > 0``; ``L0`` never carries it.

    Divergent moments are reported as ``finite=False`` with ``value=inf``
    rather than raising, so callers can branch on the regime.
    """
    kind = MomentKind(kind)
    theta = bath.theta
    if not _moment_finite(model, theta, kind):
        return MomentReport(kind, False, math.inf, math.nan)
    f = omega_callable(model)
    if kind in (MomentKind.L0, MomentKind.LT):
        power, unit = 0.0, model.scale**2
    elif kind is MomentKind.FIRST_NEG:
        power, unit = 1.0, model.scale
    else:
        power, unit = 2.0, 1.0
    thermal = theta > 0.0 and kind is not MomentKind.L0

    def integrand(nu):
        val = f(nu) / nu**power
        if thermal:
            val = val * coth(nu / theta)
        return val

    res = integrate_tail(integrand, config, decay_rate=model.cutoff)
    return MomentReport(kind, True, unit * res.value, unit * res.error_estimate)
