"""Growth-rate families of irreducible representations."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import DomainError, FilterInconsistencyError
from ..fitting import PowerLawFit, fit_power_law
from .reps import (
    IrrepClass,
    SubgroupSpec,
    character_derivative_supnorm,
    irrep,
    trivial_multiplicity_in_restriction,
)
from .roots import RootSystem

# relative slack on the radius so that |Lambda| = C lam^theta is kept despite rounding
RADIUS_SLACK = 1e-12


def _all(_ch):
    return True


@dataclass(frozen=True)
class GrowthFamily:
    """``{chi in G' : |Lambda_chi| <= C lam^theta}``.

    ``ghat_prime_filter`` decides membership in the admissible subset ``G'``
    of the unitary dual (by default every irrep is admissible).
    """

    theta: float
    C: float
    ghat_prime_filter: Callable[[IrrepClass], bool] = _all

    def __post_init__(self):
        if self.theta < 0:
            raise DomainError("theta must be non-negative")
        if self.C <= 0:
            raise DomainError("C must be positive")

    def radius(self, lam: float) -> float:
        return self.C * lam**self.theta


def _sort_key(w):
    return (sum(abs(c) for c in w), w)


def dominant_weights_in_ball(rs: RootSystem, radius: float) -> list:
    """Dominant weights of norm at most ``radius``, graded-lexicographically ordered."""
    r2 = radius * radius * (1 + RADIUS_SLACK)
    ginv = np.linalg.inv(rs.gram_array)
    # |lam_i| <= R sqrt((G^{-1})_{ii}) on the ellipsoid lam^T G lam <= R^2
    bounds = [int(math.floor(radius * math.sqrt(ginv[i, i]) * (1 + RADIUS_SLACK))) for i in range(rs.rank)]
    semisimple = {i for a in rs.positive_roots for i, c in enumerate(a) if c}
    ranges = [range(0 if i in semisimple else -b, b + 1) for i, b in enumerate(bounds)]
    out = []
    for w in itertools.product(*ranges):
        if float(rs.pair(w, w)) <= r2 and rs.is_dominant(w):
            out.append(tuple(w))
    out.sort(key=_sort_key)
    return out


def enumerate_family(fam: GrowthFamily, rs: RootSystem, lam_level: float) -> list:
    """Members of the family at level ``lam_level`` in graded-lexicographic order."""
    if lam_level <= 0:
        raise DomainError("family level must be positive")
    members = (irrep(rs, w) for w in dominant_weights_in_ball(rs, fam.radius(lam_level)))
    return [ch for ch in members if fam.ghat_prime_filter(ch)]


@dataclass(frozen=True)
class GrowthRateReport:
    lam_grid: tuple
    max_ratios: tuple
    fit: PowerLawFit | None
    threshold: float
    passed: bool


def growth_ratio(ch: IrrepClass, h: SubgroupSpec, l: int) -> float:
    mult = trivial_multiplicity_in_restriction(ch, h)
    if mult < 1:
        raise FilterInconsistencyError(
            f"{ch.highest_weight} has no invariant vector under {h.describe()}")
    return character_derivative_supnorm(ch, l) / mult


def verify_growth_rate(fam, rs, h, l, lam_grid, tol=0.05) -> GrowthRateReport:
    """Fit the growth of ``max_chi ||D^l chi|| / [chi|H : 1]`` over a lambda grid.

    The family passes when the fitted log-log slope is at most ``theta * l + tol``.
    A ratio that is constant in lambda (all points equal) has slope zero by
    definition, which avoids fitting noise in the last digit.
    """
    lams, ratios = [], []
    for lam in lam_grid:
        fam_l = enumerate_family(fam, rs, lam)
        if not fam_l:
            continue
        lams.append(float(lam))
        ratios.append(max(growth_ratio(ch, h, l) for ch in fam_l))
    threshold = fam.theta * l
    if len(set(ratios)) == 1 and len(ratios) >= 4:
        fit = PowerLawFit(0.0, ratios[0], None, 0.0, len(ratios))
    else:
        fit = fit_power_law(lams, ratios)
    return GrowthRateReport(tuple(lams), tuple(ratios), fit, threshold,
                            fit.exponent <= threshold + tol)
