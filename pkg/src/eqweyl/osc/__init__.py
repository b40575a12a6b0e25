"""Oscillatory integrals of the planar rotation action and their stationary-phase expansion."""
from .amplitude import AmplitudeSpec, modulated_bump, nonstationary_bump, standard_bump
from .geometry import (
    CriticalManifoldChart,
    momentum_map,
    phase,
    transversal_hessian_det,
)
from .integral import OscProblem, QuadConfig, QuadResult, leading_term, oscillatory_integral, plain_integral
from .studies import (
    DecayStudy,
    ModulationStudy,
    RemainderFit,
    RemainderSeries,
    RemainderStudy,
    fit_remainder,
    mu_dependent_amplitude_study,
    nonstationary_decay_study,
    remainder_decay_study,
    remainder_series,
)

__all__ = [
    "AmplitudeSpec", "CriticalManifoldChart", "DecayStudy", "ModulationStudy", "OscProblem",
    "QuadConfig", "QuadResult", "RemainderFit", "RemainderSeries", "RemainderStudy",
    "fit_remainder", "leading_term", "modulated_bump", "momentum_map", "mu_dependent_amplitude_study",
    "nonstationary_bump", "nonstationary_decay_study", "oscillatory_integral", "phase",
    "plain_integral", "remainder_decay_study", "remainder_series", "standard_bump",
    "transversal_hessian_det",
]
