"""Long-time asymptotic laws versus exact quadrature.

At late times the rate collapses onto ``tau**-a`` times a polynomial in
``ln(tau)`` whose coefficients come from residues of a Mellin-type
transform; the leading sign alone decides the direction of information
flow.  This script prints each law's terms for a few representative
models and tabulates the relative error of the full law against
quadrature over three decades, including a kernel-zero boundary case
where the naive leading coefficient vanishes and the first logarithmic
correction takes over.
"""

import numpy as np

from dephase_lab import (BathSpec, QUANTITY_FACTOR, QUANTITY_RATE,
                         SpectralModel, dephasing_factor, dephasing_rate,
                         long_time_law, short_time_law)

cases = [
    ("plain power law", SpectralModel(2.5), BathSpec()),
    ("log^2 perturbation", SpectralModel(1.5, log_power=2.0), BathSpec()),
    ("kernel-zero boundary", SpectralModel(4.0, log_power=2.0), BathSpec()),
    ("thermal, theta=1", SpectralModel(3.0, log_power=2.0), BathSpec(theta=1.0)),
]

for name, model, bath in cases:
    law = long_time_law(model, bath, QUANTITY_RATE)
    print(f"{name}  (alpha0={model.alpha0}, p={model.log_power}, "
          f"theta={bath.theta}) -- regime {law.regime}")
    for term in law.terms:
        print(f"    {term.coefficient:+.6e} * tau^{term.tau_power:g}"
              + (f" * ln(tau)^{term.log_power:g}" if term.log_power else ""))
    print(f"    {'tau':>8} {'quadrature':>14} {'law':>14} {'rel err':>10}")
    for tau in (1e2, 1e3, 1e4):
        exact = dephasing_rate(model, bath, tau).value
        approx = law.evaluate(tau)
        print(f"    {tau:8.0e} {exact:14.6e} {approx:14.6e} "
              f"{abs(approx / exact - 1.0):10.2e}")
    print()

print("the dephasing factor gets the same treatment plus a constant plateau:")
model, bath = SpectralModel(2.5), BathSpec()
law = long_time_law(model, bath, QUANTITY_FACTOR)
print(f"  Xi(tau) -> {law.constant:.6f} "
      f"{law.leading.coefficient:+.4e} * tau^{law.leading.tau_power:g} + ...")
for tau in (1e2, 1e4):
    print(f"  Xi({tau:.0e}) = {dephasing_factor(model, bath, tau).value:.10f}"
          f"   law: {law.evaluate(tau):.10f}")

print("\nat short times every model is universal: Xi ~ w tau^2/2, gamma ~ w tau")
st = short_time_law(model, bath, QUANTITY_RATE)
taus = np.geomspace(1e-4, 1e-3, 5)
rates = [dephasing_rate(model, bath, t).value for t in taus]
slope = np.polyfit(np.log(taus), np.log(rates), 1)[0]
print(f"  fitted slope over [1e-4, 1e-3]: {slope:.4f} (weight {st.leading.coefficient:.4f})")
