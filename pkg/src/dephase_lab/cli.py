"""Command-line front end: series CSV emission, flow classification,
back-flow measurement, and numeric-vs-asymptotic comparison.

Configuration is resolved in precedence order: built-in defaults, then a
named ``--preset``, then a JSON ``--config`` file, then individual
flags.  The config file is a flat JSON object; recognised keys::

    alpha0        float   power-law exponent (>= 0)
    log_power     float   logarithmic power (even natural for the
                          canonical family, any real for "GeneralLog")
    family        str     "CanonicalEvenLog" | "GeneralLog"
    cutoff        float   exponential cutoff rate (> 0)
    amplitude     float   overall density amplitude (> 0)
    scale         float   frequency unit (> 0)
    theta         float   reduced temperature (>= 0)
    tau_start     float   first grid point
    tau_stop      float   last grid point
    tau_points    int     number of grid points (>= 1)
    tau_spacing   str     "linear" | "log"
    rel_tol       float   quadrature relative tolerance
    abs_tol       float   quadrature absolute floor
    quantity      str     "rate" | "factor" (compare-asymptotic)
    truncation_tau float  scan horizon for the measure
    out           str     output path

Exit codes: 0 success, 2 configuration error, 3 accuracy failure
(quadrature error estimates exceeding budget; flagged rows listed on
stderr), 4 indeterminate classification / empty asymptotic expansion.
The environment variable ``DEPHASE_LAB_THREADS`` caps worker threads
for series evaluation.  Output files are written atomically.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import warnings
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from .asymptotics import QUANTITY_FACTOR, QUANTITY_RATE, long_time_law
from .dynamics import compute_series, dephasing_factor, dephasing_rate
from .flow import FlowDirection, classify_long_time_flow, \
    markovian_sufficient_check, non_markovianity_measure
from .presets import get_preset, preset_names
from .quadrature import QuadratureConfig
from .spectral import BathSpec, SpectralFamily, SpectralModel

__all__ = ["RunConfig", "main", "cmd_series", "cmd_classify", "cmd_measure",
           "cmd_compare_asymptotic", "EXIT_OK", "EXIT_CONFIG",
           "EXIT_ACCURACY", "EXIT_INDETERMINATE"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ACCURACY = 3
EXIT_INDETERMINATE = 4

# rows whose quadrature error estimate exceeds this relative budget
# (with a tiny absolute floor) are flagged as accuracy failures
_ACCURACY_REL = 1e-6
_ACCURACY_ABS = 1e-12

CSV_HEADER = "tau,xi,gamma_over_delta,coherence_ratio,xi_err,gamma_err"
COMPARE_HEADER = "tau,numeric,asymptotic,rel_err"


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run parameters; validated by the module constructors."""

    alpha0: float = 1.0
    log_power: float = 0.0
    family: str = "CanonicalEvenLog"
    cutoff: float = 1.0
    amplitude: float = 1.0
    scale: float = 1.0
    theta: float = 0.0
    tau_start: float = 0.0
    tau_stop: float = 10.0
    tau_points: int = 101
    tau_spacing: str = "linear"
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    quantity: str = QUANTITY_RATE
    truncation_tau: float = 1e4
    out: str | None = None

    def __post_init__(self):
        self.model()
        self.bath()
        self.quadrature()
        if self.tau_spacing not in ("linear", "log"):
            raise ValueError("tau_spacing must be 'linear' or 'log'")
        if self.tau_points < 1:
            raise ValueError("tau_points must be at least 1")
        if self.tau_stop < self.tau_start:
            raise ValueError("tau_stop must not precede tau_start")
        if self.quantity not in (QUANTITY_RATE, QUANTITY_FACTOR):
            raise ValueError("quantity must be 'rate' or 'factor'")
        if self.truncation_tau <= 0.0:
            raise ValueError("truncation_tau must be positive")

    def model(self) -> SpectralModel:
        return SpectralModel(self.alpha0, log_power=self.log_power,
                             family=SpectralFamily(self.family),
                             cutoff=self.cutoff, amplitude=self.amplitude,
                             scale=self.scale)

    def bath(self) -> BathSpec:
        return BathSpec(theta=self.theta)

    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(rel_tol=self.rel_tol, abs_tol=self.abs_tol)

    def tau_grid(self) -> np.ndarray:
        if self.tau_points == 1:
            return np.array([self.tau_start], dtype=float)
        if self.tau_spacing == "log":
            if self.tau_start <= 0.0:
                raise ValueError("log spacing requires tau_start > 0")
            return np.geomspace(self.tau_start, self.tau_stop, self.tau_points)
        return np.linspace(self.tau_start, self.tau_stop, self.tau_points)

    def to_dict(self) -> dict:
        data = asdict(self)
        if data["out"] is None:
            del data["out"]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def _fmt(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        return repr(x)
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _row_inaccurate(value: float, err: float) -> bool:
    return err > max(_ACCURACY_ABS, _ACCURACY_REL * abs(value))


def cmd_series(config: RunConfig) -> int:
    """Evaluate the dephasing series on the grid and emit CSV."""
    series = compute_series(config.model(), config.bath(), config.tau_grid(),
                            config.quadrature())
    lines = [CSV_HEADER]
    flagged = []
    for i in range(len(series.tau)):
        xi, gamma = series.xi[i], series.gamma_over_delta[i]
        xi_err, gamma_err = series.xi_err[i], series.gamma_err[i]
        if _row_inaccurate(xi, xi_err) or _row_inaccurate(gamma, gamma_err):
            flagged.append(i)
        lines.append(",".join(_fmt(v) for v in (
            series.tau[i], xi, gamma, series.coherence_ratio[i],
            xi_err, gamma_err)))
    _write_text(config.out, "\n".join(lines) + "\n")
    if flagged:
        print(f"accuracy: {len(flagged)} rows exceeded the error budget "
              f"(first at tau={series.tau[flagged[0]]!r})", file=sys.stderr)
        return EXIT_ACCURACY
    return EXIT_OK


def cmd_classify(config: RunConfig) -> int:
    """Report the long-time flow classification as JSON."""
    result = classify_long_time_flow(config.model(), config.bath(),
                                     config.quadrature())
    report = {
        "direction": result.direction.value,
        "leading_sign": result.leading_sign,
        "regime": result.regime,
        "interval_index": result.interval_index,
        "temperature_class": result.temperature_class.value,
        "leading_coefficient": result.leading_coefficient,
    }
    _write_text(config.out, json.dumps(report, indent=2) + "\n")
    if result.direction is FlowDirection.INDETERMINATE:
        print("indeterminate: leading coefficient vanishes and no fallback "
              "applies", file=sys.stderr)
        return EXIT_INDETERMINATE
    return EXIT_OK


def cmd_measure(config: RunConfig) -> int:
    """Report the accumulated back-flow measure as JSON."""
    model, bath = config.model(), config.bath()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        result = non_markovianity_measure(model, bath, config.truncation_tau,
                                          config.quadrature())
        screen = markovian_sufficient_check(model, bath)
    report = {
        "measure": result.value,
        "negative_intervals": [list(pair) for pair in result.negative_intervals],
        "error_estimate": result.error_estimate,
        "truncation_tau": result.truncation_tau,
        "markovian_sufficient": screen.markovian,
        "first_violation": screen.first_violation,
    }
    _write_text(config.out, json.dumps(report, indent=2) + "\n")
    return EXIT_OK


def cmd_compare_asymptotic(config: RunConfig) -> int:
    """Tabulate numeric values against the long-time law as CSV."""
    model, bath = config.model(), config.bath()
    law = long_time_law(model, bath, config.quantity, config.quadrature())
    if not law.terms:
        print("empty asymptotic expansion for this model", file=sys.stderr)
        return EXIT_INDETERMINATE
    evaluate = dephasing_rate if config.quantity == QUANTITY_RATE else dephasing_factor
    lines = [COMPARE_HEADER]
    flagged = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for tau in config.tau_grid():
            numeric = evaluate(model, bath, float(tau), config.quadrature())
            asym = law.evaluate(float(tau))
            denom = max(abs(numeric.value), 1e-300)
            rel = abs(asym - numeric.value) / denom
            if _row_inaccurate(numeric.value, numeric.error_estimate):
                flagged.append(tau)
            lines.append(",".join(_fmt(v) for v in
                                  (tau, numeric.value, asym, rel)))
    _write_text(config.out, "\n".join(lines) + "\n")
    if flagged:
        print(f"accuracy: {len(flagged)} rows exceeded the error budget",
              file=sys.stderr)
        return EXIT_ACCURACY
    return EXIT_OK


_COMMANDS = {
    "series": cmd_series,
    "classify": cmd_classify,
    "measure": cmd_measure,
    "compare-asymptotic": cmd_compare_asymptotic,
}


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH",
                        help="JSON config file (see module docstring)")
    parser.add_argument("--preset", metavar="NAME",
                        help="named preset, e.g. fig1a (see presets module)")
    parser.add_argument("--out", metavar="PATH",
                        help="output file (default: stdout)")
    parser.add_argument("--theta", type=float, help="reduced temperature")
    parser.add_argument("--alpha", type=float, dest="alpha0",
                        help="power-law exponent")
    parser.add_argument("--log-power", type=float, dest="log_power",
                        help="logarithmic power")
    parser.add_argument("--cutoff", type=float, help="exponential cutoff rate")
    parser.add_argument("--tau-start", type=float, dest="tau_start")
    parser.add_argument("--tau-stop", type=float, dest="tau_stop")
    parser.add_argument("--tau-points", type=int, dest="tau_points")
    parser.add_argument("--tau-log", action="store_true", default=None,
                        dest="tau_log", help="use logarithmic tau spacing")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dephase-lab",
        description="Exact dephasing dynamics for Ohmic-like reservoirs "
                    "with logarithmic spectral perturbations.")
    sub = parser.add_subparsers(dest="command", required=True)
    descriptions = {
        "series": "evaluate tau, Xi, gamma/Delta, coherence ratio as CSV",
        "classify": "long-time information-flow direction",
        "measure": "accumulated back-flow (non-Markovianity measure)",
        "compare-asymptotic": "numeric vs asymptotic-law comparison CSV",
    }
    for name, blurb in descriptions.items():
        _add_common_flags(sub.add_parser(name, help=blurb))
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.preset is not None:
        try:
            data.update(get_preset(args.preset))
        except KeyError as exc:
            raise ValueError(str(exc.args[0])) from None
    if args.config is not None:
        with open(args.config) as handle:
            file_data = json.load(handle)
        if not isinstance(file_data, dict):
            raise ValueError("config file must hold a JSON object")
        data.update(file_data)
    for key in ("out", "theta", "alpha0", "log_power", "cutoff",
                "tau_start", "tau_stop", "tau_points"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    if args.tau_log:
        data["tau_spacing"] = "log"
    return RunConfig.from_dict(data)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _resolve_config(args)
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return _COMMANDS[args.command](config)


if __name__ == "__main__":
    sys.exit(main())
