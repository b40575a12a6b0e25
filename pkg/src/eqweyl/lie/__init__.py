"""Exact representation theory of small compact Lie groups."""
from .families import GrowthFamily, GrowthRateReport, dominant_weights_in_ball, enumerate_family, verify_growth_rate
from .reps import (
    TRIVIAL,
    IrrepClass,
    SubgroupSpec,
    alternating_sum,
    character_derivative_supnorm,
    character_eval,
    irrep,
    trivial_multiplicity_in_restriction,
    weight_multiplicities,
    weyl_dimension,
    weyl_integration_gram,
    weyl_quotient,
)
from .roots import RootSystem, a1, a1xa1, a2, product, root_system, torus

__all__ = [
    "GrowthFamily", "GrowthRateReport", "dominant_weights_in_ball", "enumerate_family",
    "verify_growth_rate", "TRIVIAL", "IrrepClass", "SubgroupSpec", "alternating_sum",
    "character_derivative_supnorm", "character_eval", "irrep",
    "trivial_multiplicity_in_restriction", "weight_multiplicities", "weyl_dimension",
    "weyl_integration_gram", "weyl_quotient", "RootSystem", "a1", "a1xa1", "a2",
    "product", "root_system", "torus",
]
