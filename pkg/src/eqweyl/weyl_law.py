"""Averaged equivariant counting functions and their asymptotic fits."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError, EmptyFamilyError, InsufficientDataError
from .fitting import PowerLawFit, fit_power_law, geometric_grid, running_max  # noqa: F401
from .lie import GrowthFamily, enumerate_family, trivial_multiplicity_in_restriction
from .models import EquivariantModel, geometric_leading_coefficient, predicted_exponent

DEFAULT_TOLERANCES = {
    "M1": {"exponent": 0.02, "coefficient": 0.02, "remainder": 0.15},
    "M2": {"exponent": 0.02, "coefficient": 0.05, "remainder": 0.15},
    "M3": {"exponent": 0.03, "coefficient": 0.05, "remainder": 0.15},
}


def snap_between_levels(model: EquivariantModel, lam: float) -> float:
    """Midpoint of the spectral gap containing ``lam``."""
    lo = model.level_floor(lam)
    if lo is None:
        return lam
    return 0.5 * (lo + model.level_after(lo))


def family_at(model: EquivariantModel, fam: GrowthFamily, lam: float) -> list:
    return [ch for ch in enumerate_family(fam, model.group, lam) if model.ghat_prime(ch)]


def averaged_counting(model: EquivariantModel, fam: GrowthFamily, lam: float) -> float:
    """``|W_lam|^{-1} sum_chi M_chi(lam) / [chi|H : 1]`` computed exactly."""
    members = family_at(model, fam, lam)
    if not members:
        raise EmptyFamilyError(f"family is empty at lambda = {lam}")
    total = Fraction(0)
    for ch in members:
        total += Fraction(model.counting(ch.highest_weight[0], lam),
                          trivial_multiplicity_in_restriction(ch, model.principal_isotropy))
    return float(total / len(members))


def remainder_threshold(model: EquivariantModel, theta: float) -> float:
    n, k, m = model.n, model.kappa, model.op_order_m
    return (n - k - 1) / m + theta * (2 * k + 3)


def remainder_envelope_fit(lams, remainders, floor=1e-9) -> PowerLawFit | None:
    """Power-law fit to the running maximum of ``|remainder|``.

    The remainder of a lattice count oscillates in sign, so its modulus has
    near-zeros that wreck a log fit.  An O-bound is a statement about the
    envelope, and the running maximum is the smallest non-decreasing one.
    Returns None when the remainder vanishes (below ``floor``) on the whole
    grid, which satisfies every upper bound.
    """
    env = running_max(remainders)
    keep = env > floor
    if not keep.any():
        return None
    if keep.sum() < 4:
        raise InsufficientDataError("remainder envelope has fewer than 4 points above the floor")
    return fit_power_law(np.asarray(lams, float)[keep], env[keep])


@dataclass
class WeylLawReport:
    model: str
    theta: float
    C: float
    lam_grid: list
    family_sizes: list
    averaged_counts: list
    fitted_exponent: float
    fitted_coefficient: float
    predicted_exponent: float
    predicted_coefficient: float
    remainder_fit: PowerLawFit | None
    remainder_threshold: float
    tolerances: dict
    passes: dict = field(default_factory=dict)

    @property
    def predicted(self) -> np.ndarray:
        return self.predicted_coefficient * np.asarray(self.lam_grid) ** self.predicted_exponent

    @property
    def residuals(self) -> np.ndarray:
        return np.asarray(self.averaged_counts) - self.predicted

    @property
    def remainder_exponent(self) -> float:
        return -math.inf if self.remainder_fit is None else self.remainder_fit.exponent

    def summary(self) -> list:
        """``(criterion, value, threshold, passed)`` tuples."""
        tol = self.tolerances
        return [
            ("exponent", self.fitted_exponent,
             f"{self.predicted_exponent}+-{tol['exponent']}", self.passes["exponent"]),
            ("coefficient", self.fitted_coefficient / self.predicted_coefficient - 1,
             f"+-{tol['coefficient']}", self.passes["coefficient"]),
            ("remainder", self.remainder_exponent,
             f"<={self.remainder_threshold + tol['remainder']:.6g}", self.passes["remainder"]),
        ]


def remainder_exponent_check(report: WeylLawReport, theta, kappa, m, n, Lambda, tol=0.15) -> bool:
    """One-sided check of the remainder growth exponent.

    ``Lambda`` only enters the bound through a power of ``log lambda``, which
    the one-sided tolerance absorbs; it is accepted for completeness.
    """
    threshold = (n - kappa - 1) / m + theta * (2 * kappa + 3)
    return report.remainder_exponent <= threshold + tol


def run_weyl_law(model: EquivariantModel, fam: GrowthFamily, lam_grid, tolerances=None) -> WeylLawReport:
    """Evaluate, fit and check the averaged counting function along a grid."""
    lam_grid = np.asarray(lam_grid, dtype=float)
    if lam_grid.size < 8 or np.any(np.diff(lam_grid) <= 0):
        raise DomainError("lam_grid must be increasing with at least 8 points")
    tol = dict(DEFAULT_TOLERANCES.get(model.name, DEFAULT_TOLERANCES["M1"]))
    tol.update(tolerances or {})

    lams, sizes, counts = [], [], []
    for lam in lam_grid:
        snapped = snap_between_levels(model, float(lam))
        if lams and snapped <= lams[-1]:
            continue  # two grid points in one spectral gap
        try:
            value = averaged_counting(model, fam, snapped)
        except EmptyFamilyError:
            continue
        lams.append(snapped)
        sizes.append(len(family_at(model, fam, snapped)))
        counts.append(value)
    if len(lams) < 4:
        raise InsufficientDataError("fewer than 4 usable grid points")

    fit = fit_power_law(lams, counts)
    p_exp = predicted_exponent(model)
    p_coef = geometric_leading_coefficient(model)
    remainder = np.asarray(counts) - p_coef * np.asarray(lams) ** p_exp
    rfit = remainder_envelope_fit(lams, remainder)
    threshold = remainder_threshold(model, fam.theta)
    report = WeylLawReport(
        model=model.name, theta=fam.theta, C=fam.C, lam_grid=lams, family_sizes=sizes,
        averaged_counts=counts, fitted_exponent=fit.exponent, fitted_coefficient=fit.coefficient,
        predicted_exponent=p_exp, predicted_coefficient=p_coef, remainder_fit=rfit,
        remainder_threshold=threshold, tolerances=tol,
    )
    report.passes = {
        "exponent": abs(fit.exponent - p_exp) <= tol["exponent"],
        "coefficient": abs(fit.coefficient / p_coef - 1) <= tol["coefficient"],
        "remainder": remainder_exponent_check(report, fam.theta, model.kappa, model.op_order_m,
                                              model.n, model.lambda_chain, tol["remainder"]),
    }
    return report
