"""Short- and long-time asymptotic laws for the dephasing quantities.

The long-time behaviour of the rate and factor integrals is governed by
the Mellin structure of the spectral density.  For an envelope behaving
like ``nu**(a-1) (-ln nu)**beta`` at small frequency,

    int_0^inf nu**(a-1) (-ln nu)**beta  phi(nu) sin(tau nu) dnu
        ~  tau**-a  sum_j  C(beta, j) (-1)**j  Hs^(j)(a)  ln(tau)**(beta-j)

with ``Hs(s) = sin(pi s/2) Gamma(s)`` (the cosine analogue uses
``Hc(s) = -cos(pi s/2) Gamma(s)``, signed so it feeds the dephasing
factor directly).  Everything in the long-time catalogue follows from
this single residue block:

* rate, theta = 0:        a = alpha0,  prefactor A
* rate, theta > 0:        a = alpha0 - 1,  prefactor theta A
  (``coth(nu/theta) = theta/nu + nu/(3 theta) - ...`` has no constant
  term, so the thermal route dominates and the next correction is
  smaller by ``tau**-2``)
* factor, theta = 0:      a = alpha0 - 1,  prefactor A, plus the plateau
* factor, theta > 0:      a = alpha0 - 2,  prefactor theta A, plus plateau

Special placements of ``a`` are handled exactly:

* ``Hs`` vanishes at even ``a >= 2`` and ``Hc`` at odd ``a >= 1``
  (*boundary* cases).  With a plain power law (``beta = 0``) the leading
  residue then comes from the next term of the exponential cutoff,
  ``-lam A`` at ``a + 1`` (*fallback*); with logarithmic corrections the
  ``j >= 1`` derivative terms survive at the same power of ``tau``.
* ``Hc`` has a genuine pole at ``a = 0``: the factor grows like
  ``prefactor ln(tau)**(beta+1) / (beta+1)`` (*log-pole*).
* ``Hs(0) = pi/2`` and ``Hc(-1) = pi/2`` are removable and evaluated
  exactly, covering the constant-rate and ballistic-growth rows.

Kernel derivatives are evaluated with 40-digit arithmetic on
pole-regularised product forms, so boundary coefficients come out exact
rather than as ``sin(pi k)``-sized floating noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp
import numpy as np
from scipy.special import binom

from .quadrature import QuadratureConfig
from .spectral import BathSpec, MomentKind, SpectralFamily, SpectralModel, moment

__all__ = [
    "QUANTITY_RATE",
    "QUANTITY_FACTOR",
    "AsymptoticTerm",
    "AsymptoticExpansion",
    "long_time_law",
    "short_time_law",
    "mellin_transform",
    "mellin_coefficient_oracle",
]

QUANTITY_RATE = "rate"        # gamma(tau)/Delta
QUANTITY_FACTOR = "factor"    # Xi(tau)

_MP_DPS = 40
_INTEGER_TOL = 1e-12


@dataclass(frozen=True)
class AsymptoticTerm:
    """One term ``coefficient * tau**tau_power * ln(tau)**log_power``."""

    coefficient: float
    tau_power: float
    log_power: float

    def evaluate(self, tau):
        t = np.asarray(tau, dtype=float)
        with np.errstate(invalid="ignore", divide="ignore"):
            val = self.coefficient * t**self.tau_power
            if self.log_power != 0.0:
                val = val * np.log(t)**self.log_power
        return float(val) if np.ndim(tau) == 0 else val


@dataclass(frozen=True)
class AsymptoticExpansion:
    """Asymptotic law ``constant + sum(terms)`` for one quantity.

    ``terms`` are ordered dominant-first (at ``tau -> inf`` for long-time
    laws, ``tau -> 0`` for short-time laws).  ``regime`` tags how the
    leading coefficient arose: ``power`` (generic residue block),
    ``power-boundary`` (leading kernel value vanishes, log-derivative
    terms survive), ``power-fallback`` (plain power law at a vanishing
    kernel value; next cutoff order taken), ``log-pole`` (merged pole,
    pure logarithmic growth) or ``short-time``.
    """

    quantity: str
    regime: str
    constant: float
    terms: tuple[AsymptoticTerm, ...]

    def evaluate(self, tau):
        t = np.asarray(tau, dtype=float)
        total = np.full(t.shape, self.constant, dtype=float)
        for term in self.terms:
            total = total + term.evaluate(t)
        return float(total) if np.ndim(tau) == 0 else total

    @property
    def leading(self) -> AsymptoticTerm | None:
        return self.terms[0] if self.terms else None


# --------------------------------------------------------------- kernels

def _hgamma_mp(s):
    """``sin(pi s/2) Gamma(s)`` as ``[sin(pi s/2)/s] Gamma(1+s)``, s > -1.

    The product form is regular at ``s = 0`` (value ``pi/2``), so
    derivatives near the origin are numerically clean.
    """
    if s == 0:
        return mp.pi / 2
    return (mp.sin(mp.pi * s / 2) / s) * mp.gamma(1 + s)


def _hxi_mp(s):
    """``-cos(pi s/2) Gamma(s)`` as ``-[cos(pi s/2)/(s+1)] Gamma(2+s)/s``.

    Valid for ``s > -2`` except the genuine pole at ``s = 0``; the zero
    of the cosine cancels the Gamma pole at ``s = -1`` (value ``pi/2``).
    """
    if s == -1:
        return mp.pi / 2
    return -(mp.cos(mp.pi * s / 2) / (s + 1)) * mp.gamma(2 + s) / s


@lru_cache(maxsize=4096)
def _h_derivative(kind: str, s0: float, order: int) -> float:
    """j-th derivative of the sine/cosine kernel at ``s0`` (40 digits)."""
    f = _hgamma_mp if kind == QUANTITY_RATE else _hxi_mp
    with mp.workdps(_MP_DPS):
        s = mp.mpf(s0)
        if order == 0:
            return float(f(s))
        return float(mp.diff(f, s, order))


def _near_integer(x: float):
    n = round(x)
    return abs(x - n) < _INTEGER_TOL, int(n)


def _kernel_vanishes(kind: str, n: int) -> bool:
    # sin(pi s/2) Gamma(s): zeros at even s >= 2 (at s <= 0 the Gamma
    # poles turn them into finite values).  -cos(pi s/2) Gamma(s): zeros
    # at odd s >= 1.
    if kind == QUANTITY_RATE:
        return n >= 2 and n % 2 == 0
    return n >= 1 and n % 2 == 1


def _is_natural(beta: float) -> bool:
    return beta >= 0.0 and abs(beta - round(beta)) < 1e-9


def _pole_block(prefactor, a, beta, kind, jmax, skip_leading):
    terms = []
    start = 1 if skip_leading else 0
    for j in range(start, jmax + 1):
        weight = binom(beta, j) if j > 0 else 1.0
        coeff = prefactor * weight * (-1.0)**j * _h_derivative(kind, a, j)
        if coeff == 0.0:
            continue
        terms.append(AsymptoticTerm(coeff, -a, beta - j))
    return terms


# --------------------------------------------------------------- laws

def long_time_law(model: SpectralModel, bath: BathSpec, quantity: str,
                  config: QuadratureConfig | None = None) -> AsymptoticExpansion:
    """Long-time expansion of the rate (``gamma/Delta``) or factor (``Xi``).

    For the factor the ``constant`` attribute carries the plateau
    ``Xi(inf)`` whenever it is finite (computed by quadrature); the terms
    then describe the approach to it.  Log-corrected densities emit the
    complete residue block (``log_power + 1`` terms) when the log power
    is a natural number, otherwise the leading pair.
    """
    if quantity not in (QUANTITY_RATE, QUANTITY_FACTOR):
        raise ValueError(f"unknown quantity {quantity!r}")
    a0, beta = model.alpha0, model.log_power
    thermal = bath.theta > 0.0
    if thermal:
        if quantity == QUANTITY_RATE and a0 == 0.0:
            raise ValueError("thermal dephasing rate diverges for alpha0 = 0")
        prefactor = bath.theta * model.amplitude
        a = a0 - 1.0 if quantity == QUANTITY_RATE else a0 - 2.0
    else:
        prefactor = model.amplitude
        a = a0 if quantity == QUANTITY_RATE else a0 - 1.0

    constant = 0.0
    if quantity == QUANTITY_FACTOR:
        plateau = moment(model, bath, MomentKind.SECOND_NEG, config)
        if plateau.finite:
            constant = plateau.value

    near_int, n = _near_integer(a)
    if near_int:
        a = float(n)

    if quantity == QUANTITY_FACTOR and near_int and n == 0:
        # Merged pole of the cosine kernel: pure logarithmic growth.
        term = AsymptoticTerm(prefactor / (beta + 1.0), 0.0, beta + 1.0)
        return AsymptoticExpansion(quantity, "log-pole", 0.0, (term,))

    if near_int and _kernel_vanishes(quantity, n):
        if beta == 0.0:
            # Plain power law at a vanishing kernel value: the residue is
            # carried by the next order of the exponential cutoff.
            terms = _pole_block(-model.cutoff * prefactor, a + 1.0, 0.0,
                                quantity, 0, False)
            return AsymptoticExpansion(quantity, "power-fallback", constant,
                                       tuple(terms))
        jmax = int(round(beta)) if _is_natural(beta) else 2
        terms = _pole_block(prefactor, a, beta, quantity, jmax, True)
        return AsymptoticExpansion(quantity, "power-boundary", constant,
                                   tuple(terms))

    jmax = int(round(beta)) if _is_natural(beta) else 1
    terms = _pole_block(prefactor, a, beta, quantity, jmax, False)
    return AsymptoticExpansion(quantity, "power", constant, tuple(terms))


def short_time_law(model: SpectralModel, bath: BathSpec, quantity: str,
                   config: QuadratureConfig | None = None) -> AsymptoticExpansion:
    """Initial behaviour: ``Xi ~ m tau**2 / 2`` and ``gamma/Delta ~ m tau``.

    The coefficient ``m = int Omega coth(nu/theta) dnu`` is the (reduced)
    thermal weight of the reservoir.

    Raises
    ------
    ValueError
        When that weight diverges (``alpha0 = 0`` at positive
        temperature), where no quadratic onset exists.
    """
    if quantity not in (QUANTITY_RATE, QUANTITY_FACTOR):
        raise ValueError(f"unknown quantity {quantity!r}")
    weight = moment(model, bath, MomentKind.LT, config)
    if not weight.finite:
        raise ValueError("short-time law undefined: the thermal weight "
                         "int Omega coth diverges")
    m = weight.value / model.scale**2
    if quantity == QUANTITY_RATE:
        term = AsymptoticTerm(m, 1.0, 0.0)
    else:
        term = AsymptoticTerm(0.5 * m, 2.0, 0.0)
    return AsymptoticExpansion(quantity, "short-time", 0.0, (term,))


# --------------------------------------------------------------- Mellin oracle

def _nearest_integer_distance(w) -> tuple[float, int]:
    re, im = float(mp.re(w)), float(mp.im(w))
    n = round(re)
    return math.hypot(re - n, im), n


def mellin_transform(model: SpectralModel, z) -> complex:
    """Closed-form Mellin transform ``int nu**(z-1) Omega(nu) dnu``.

    Available for the canonical family only:
    ``A (d/d alpha)**p [Gamma(z+alpha) lam**-(z+alpha)]`` at
    ``alpha = alpha0``, analytically continued in ``z``.  Raises within
    1e-6 of the poles ``z = -alpha0 - j``.
    """
    if model.family is not SpectralFamily.CANONICAL_EVEN_LOG:
        raise ValueError("closed-form Mellin transform requires the "
                         "canonical family")
    with mp.workdps(_MP_DPS):
        zz = mp.mpc(z)
        dist, n = _nearest_integer_distance(zz + model.alpha0)
        if n <= 0 and dist < 1e-6:
            raise ValueError("evaluation point within 1e-6 of a transform pole")
        lam = mp.mpf(model.cutoff)
        p = int(model.log_power)

        def g(t):
            return mp.gamma(zz + t) * mp.power(lam, -(zz + t))

        if p == 0:
            val = g(mp.mpf(model.alpha0))
        else:
            val = mp.diff(g, mp.mpf(model.alpha0), p)
        return complex(model.amplitude * val)


def mellin_coefficient_oracle(model: SpectralModel, s,
                              quantity: str = QUANTITY_RATE) -> complex:
    """Mellin-side coefficient function whose residues drive the laws.

    ``quantity='rate'``:   ``sin(pi s/2) Gamma(s) * M[Omega](-s)``
    ``quantity='factor'``: ``-cos(pi s/2) Gamma(s) * M[Omega](-1-s)``
    ``quantity='omega'``:  the bare transform ``M[Omega](s)``

    (zero-temperature forms; the thermal laws follow from these by the
    shift of the pole position and the ``theta`` prefactor).  Raises
    within 1e-6 of any pole of the product.
    """
    with mp.workdps(_MP_DPS):
        ss = mp.mpc(s)
        if quantity == "omega":
            return mellin_transform(model, complex(ss))
        dist, n = _nearest_integer_distance(ss)
        if quantity == QUANTITY_RATE:
            # kernel poles at negative odd integers
            if dist < 1e-6 and n <= -1 and n % 2 != 0:
                raise ValueError("within 1e-6 of a kernel pole")
            omega_hat = mellin_transform(model, complex(-ss))
            kernel = mp.sin(mp.pi * ss / 2) * mp.gamma(ss)
        elif quantity == QUANTITY_FACTOR:
            # kernel poles at zero and negative even integers
            if dist < 1e-6 and n <= 0 and n % 2 == 0:
                raise ValueError("within 1e-6 of a kernel pole")
            omega_hat = mellin_transform(model, complex(-1 - ss))
            kernel = -mp.cos(mp.pi * ss / 2) * mp.gamma(ss)
        else:
            raise ValueError(f"unknown quantity {quantity!r}")
        return complex(kernel) * omega_hat
