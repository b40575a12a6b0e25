"""Monte Carlo volume of the reduced spaces against their closed forms.

Run: python demos/reduced_volume_tour.py
"""
from eqweyl.models import MODELS, reduced_volume
from eqweyl.montecarlo import mc_reduced_volume

for name, model in MODELS.items():
    for n in (10**4, 10**5, 10**6):
        est = mc_reduced_volume(model, n, seed=1)
        z = (est.value - reduced_volume(model)) / est.std_error
        print(f"{name} n={n:>7d}: {est.value:.5f} +- {est.std_error:.5f} "
              f"(closed form {reduced_volume(model):.5f}, {z:+.2f} sigma)")
