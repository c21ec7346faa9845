"""Named parameter presets for the bundled survey figures.

Every preset reproduces one curve of the six-panel numerical survey of
the density family ``Omega(nu) = nu**alpha * exp(-lam*nu) * ln(nu)**2``
at zero temperature.  Keys are ``fig<panel><letter>``; values are plain
keyword dictionaries understood by the command-line runner (and usable
directly as ``SpectralModel``/grid parameters).

Panels and their time windows:

* ``fig1*`` — coherence ratio on the linear window 0 <= tau <= 6
  (long-time plateaus).
* ``fig2*`` — dephasing factor, log window e^-3 <= tau <= e^5
  (short-time quadratic growth).
* ``fig3*`` — dephasing factor, log window e^(1/e) <= tau <= e^(e^5)
  (long-time logarithmic relaxation).
* ``fig4*`` — dephasing rate on 0 <= tau <= 9 (flow patterns).
* ``fig5*`` — dephasing rate on 0 <= tau <= 10 (short-time linear
  growth).
* ``fig6*`` — dephasing rate, log window e^(1/e) <= tau <= e^(e^2.6)
  (long-time logarithmic relaxation).
"""

from __future__ import annotations

import math

__all__ = ["PRESETS", "preset_names", "get_preset"]

_POINTS_LINEAR = 241
_POINTS_LOG = 201


def _linear(pairs, tau_stop, points=_POINTS_LINEAR):
    return {
        "log_power": 2,
        "theta": 0.0,
        "tau_start": 0.0,
        "tau_stop": tau_stop,
        "tau_points": points,
        "tau_spacing": "linear",
        "pairs": pairs,
    }


def _log(pairs, tau_start, tau_stop, points=_POINTS_LOG):
    return {
        "log_power": 2,
        "theta": 0.0,
        "tau_start": tau_start,
        "tau_stop": tau_stop,
        "tau_points": points,
        "tau_spacing": "log",
        "pairs": pairs,
    }


_PANELS = {
    "fig1": _linear([(1.6, 0.3), (1.6, 0.4), (1.6, 0.48), (1.6, 0.6),
                     (2.0, 0.8), (2.0, 1.0), (2.5, 1.2), (5.0, 2.0),
                     (5.0, 2.2), (3.0, 3.0)], tau_stop=6.0),
    "fig2": _log([(5.0, 15.0), (5.0, 10.0), (5.0, 7.0), (2.0, 22.0),
                  (1.5, 20.0), (1.5, 9.0), (10.0, 4.8), (10.0, 4.3),
                  (1.5, 1.0), (10.0, 3.4), (1.5, 0.4), (20.0, 6.1),
                  (1.5, 0.2), (20.0, 5.55)],
                 tau_start=math.exp(-3.0), tau_stop=math.exp(5.0)),
    "fig3": _log([(1.5, 1e4), (1.5, 0.01), (1.5, 1e-4), (2.5, 1e4),
                  (2.5, 1.0), (2.5, 0.02), (2.5, 1e-4), (6.0, 10.0),
                  (6.0, 0.8), (6.0, 0.1), (6.0, 0.01), (6.0, 1e-3),
                  (6.0, 2e-4), (6.0, 3e-5)],
                 tau_start=math.exp(math.exp(-1.0)),
                 tau_stop=math.exp(math.exp(5.0))),
    "fig4": _linear([(2.0, 1.1), (0.9, 40.0), (1.5, 3.0), (0.8, 27.0),
                     (1.3, 2.9), (1.3, 0.7), (0.8, 17.0), (1.1, 2.9),
                     (1.1, 1.2), (0.8, 10.0), (0.9, 4.8), (1.0, 0.7),
                     (0.7, 9.5), (0.8, 4.5), (2.0, 0.9)], tau_stop=9.0),
    "fig5": _linear([(1.5, 12.0), (1.5, 5.0), (0.8, 12.5), (0.7, 11.5),
                     (1.6, 1.9), (1.6, 1.7), (2.0, 1.6), (2.0, 1.5),
                     (1.4, 1.4), (1.4, 1.3), (0.8, 1.2), (1.3, 1.1),
                     (1.3, 1.0), (1.0, 0.8), (1.0, 0.5)], tau_stop=10.0),
    "fig6": _log([(1.0, 1e4), (1.0, 200.0), (1.0, 0.01), (10.0, 20.0),
                  (10.0, 4.0), (10.0, 0.01), (15.0, 5.0), (15.0, 2.0),
                  (15.0, 0.01), (20.0, 2.0), (20.0, 1.0), (20.0, 1e-3)],
                 tau_start=math.exp(math.exp(-1.0)),
                 tau_stop=math.exp(math.exp(2.6))),
}


def _build_presets():
    presets = {}
    for panel, cfg in _PANELS.items():
        for letter, (alpha0, cutoff) in zip("abcdefghijklmno", cfg["pairs"]):
            presets[f"{panel}{letter}"] = {
                "alpha0": alpha0,
                "cutoff": cutoff,
                "log_power": cfg["log_power"],
                "theta": cfg["theta"],
                "tau_start": cfg["tau_start"],
                "tau_stop": cfg["tau_stop"],
                "tau_points": cfg["tau_points"],
                "tau_spacing": cfg["tau_spacing"],
            }
    return presets


PRESETS = _build_presets()


def preset_names() -> list[str]:
    """Sorted names of all bundled presets."""
    return sorted(PRESETS)


def get_preset(name: str) -> dict:
    """Copy of one preset's parameter dictionary.

    Raises
    ------
    KeyError
        For unknown names; the message lists the available panels.
    """
    try:
        return dict(PRESETS[name])
    except KeyError:
        panels = sorted({name[:4] for name in PRESETS})
        raise KeyError(f"unknown preset {name!r}; panels: {', '.join(panels)} "
                       "(suffix letters a, b, c, ...)") from None
