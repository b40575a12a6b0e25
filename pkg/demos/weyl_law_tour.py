"""Averaged equivariant counting on the three model manifolds.

For each model the averaged count over a slowly growing family of circle
characters is compared with the volume of the reduced space.

Run: python demos/weyl_law_tour.py
"""
from eqweyl.fitting import geometric_grid
from eqweyl.lie import GrowthFamily
from eqweyl.models import MODELS, chi, counting_function, geometric_leading_coefficient, spectrum_up_to
from eqweyl.weyl_law import run_weyl_law

m2 = MODELS["M2"]
print("first levels of", m2.alias)
for level in spectrum_up_to(m2, 12):
    print(f"  t={level.t:3d}", {ch.highest_weight[0]: k for ch, k in sorted(level.mults.items(), key=lambda kv: kv[0].highest_weight)})
print("N_chi0(100) on", m2.alias, "=", counting_function(m2, chi(0), 100.0))

fam = GrowthFamily(theta=0.05, C=1.0)
for name, model in MODELS.items():
    stop = 1e6 if name == "M3" else 1e7
    rep = run_weyl_law(model, fam, geometric_grid(1e3, stop))
    print(f"{name} ({model.alias}): exponent {rep.fitted_exponent:.4f} (predicted {rep.predicted_exponent}), "
          f"coefficient {rep.fitted_coefficient:.5f} vs {geometric_leading_coefficient(model):.5f}, "
          f"remainder exponent {rep.remainder_exponent:.3f} (bound {rep.remainder_threshold})")
