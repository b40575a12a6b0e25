"""Stationary phase for the rotation action on the plane.

The phase <x - R_theta x, xi> is critical on a set that is singular at the
fixed point x = 0.  The leading term still captures I(mu) up to an
O(mu^-2 log mu) remainder, which this script measures.

Run: python demos/stationary_phase_tour.py   (about 30 s)
"""
import numpy as np

from eqweyl.fitting import geometric_grid
from eqweyl.osc import (
    CriticalManifoldChart,
    OscProblem,
    leading_term,
    modulated_bump,
    mu_dependent_amplitude_study,
    nonstationary_bump,
    nonstationary_decay_study,
    oscillatory_integral,
    remainder_decay_study,
    standard_bump,
    transversal_hessian_det,
)

chart = CriticalManifoldChart()
print("transversal Hessian det at r=0.5, t=0.2:", transversal_hessian_det(chart, 0.5, 1.0, 0.2))

prob = OscProblem(standard_bump())
for mu in (8.0, 32.0, 128.0):
    I, L = oscillatory_integral(prob, mu), leading_term(prob, mu)
    print(f"mu={mu:6.1f}  I={I.value.real:.12f}  leading={L.value.real:.12f}  "
          f"mu*|I-L|={mu * abs(I.value - L.value):.3e}  nodes={I.nodes}")

study = remainder_decay_study(prob, geometric_grid(8, 128, 8))
print(f"remainder ~ mu^-beta: beta={study.fit.beta:.3f}; with one log factor beta={study.fit.beta_log:.3f}")

mod = mu_dependent_amplitude_study(OscProblem(modulated_bump(0.1)), geometric_grid(8, 128, 8))
print("normalized ratio for a modulated amplitude:", np.round(mod.ratios, 8), "slope", round(mod.ratio_slope, 3))

far = nonstationary_decay_study(OscProblem(nonstationary_bump()), geometric_grid(8, 64, 6))
print(f"support off the critical set: |I| ~ mu^-{far.exponent:.2f}")
