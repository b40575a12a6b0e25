"""Remainder studies: decay rate, mu-dependent amplitudes, non-stationary control."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, InsufficientDataError
from ..fitting import MIN_POINTS, PowerLawFit, above_noise_floor, fit_power_law
from .integral import OscProblem, leading_term, oscillatory_integral

NOISE_FACTOR = 10.0  # a remainder must exceed this many times the combined quadrature change
MU_RANGE = (8.0, 128.0)
RATIO_SLOPE_MAX = 0.1
NONSTATIONARY_MIN_EXPONENT = 4.0


@dataclass(frozen=True)
class RemainderSeries:
    """Per-point values of ``I``, the leading term and the quadrature metadata."""

    mu: np.ndarray
    integral: np.ndarray
    leading: np.ndarray
    achieved_tol: np.ndarray
    noise_floor: np.ndarray
    d5_supnorm: np.ndarray

    @property
    def remainder(self) -> np.ndarray:
        return np.abs(self.integral - self.leading)

    @property
    def resolved(self) -> np.ndarray:
        return above_noise_floor(self.remainder, self.noise_floor)


@dataclass(frozen=True)
class RemainderFit:
    """Fits of the remainder with the log power fixed to 1 and to 0."""

    with_log: PowerLawFit
    without_log: PowerLawFit
    flagged: np.ndarray

    @property
    def beta(self) -> float:
        return -self.without_log.exponent

    @property
    def beta_log(self) -> float:
        return -self.with_log.exponent

    @property
    def prefers_log(self) -> bool:
        return self.with_log.rms_residual < self.without_log.rms_residual


@dataclass(frozen=True)
class RemainderStudy:
    series: RemainderSeries
    fit: RemainderFit


@dataclass(frozen=True)
class ModulationStudy:
    series: RemainderSeries
    ratios: np.ndarray
    fitted_constant: float
    ratio_slope: float
    passed: bool


@dataclass(frozen=True)
class DecayStudy:
    mu: np.ndarray
    integral: np.ndarray
    achieved_tol: np.ndarray
    fit: PowerLawFit
    passed: bool

    @property
    def exponent(self) -> float:
        return -self.fit.exponent


def _check_grid(mu_grid, lo=MU_RANGE[0], hi=MU_RANGE[1], min_points=6):
    mu = np.asarray(mu_grid, dtype=float)
    if mu.ndim != 1 or mu.size < min_points:
        raise InsufficientDataError(f"need at least {min_points} mu values")
    if np.any(np.diff(mu) <= 0):
        raise DomainError("mu grid must be strictly increasing")
    if mu[0] < lo * (1 - 1e-12) or mu[-1] > hi * (1 + 1e-12):
        raise DomainError(f"mu grid must lie in [{lo}, {hi}]")
    return mu


def remainder_series(prob: OscProblem, mu_grid) -> RemainderSeries:
    """Evaluate ``I(mu)`` and the leading term on a grid, sequentially and deterministically."""
    mu = np.asarray(mu_grid, dtype=float)
    I, L, tol, floor, d5 = [], [], [], [], []
    for m in mu:
        ri = oscillatory_integral(prob, m)
        rl = leading_term(prob, m)
        I.append(ri.value)
        L.append(rl.value)
        tol.append(max(ri.achieved_tol, rl.achieved_tol))
        floor.append(NOISE_FACTOR * (ri.abs_change + rl.abs_change + prob.quad.atol))
        d5.append(prob.amplitude.derivative_supnorm(5, m))
    return RemainderSeries(mu, np.array(I), np.array(L), np.array(tol), np.array(floor), np.array(d5))


def fit_remainder(mu, remainder, noise_floor=0.0) -> RemainderFit:
    """Fit ``A mu^{-beta} (log mu)^gamma`` with ``gamma`` = 1 and ``gamma`` = 0.

    Points at or below the noise floor are flagged and excluded.
    """
    mu = np.asarray(mu, dtype=float)
    remainder = np.abs(np.asarray(remainder, dtype=float))
    keep = above_noise_floor(remainder, noise_floor)
    if keep.sum() < MIN_POINTS:
        raise InsufficientDataError("too few remainders above the quadrature noise floor")
    x, y = mu[keep], remainder[keep]
    return RemainderFit(fit_power_law(x, y, log_power=1.0), fit_power_law(x, y), ~keep)


def remainder_decay_study(prob: OscProblem, mu_grid) -> RemainderStudy:
    """Measure the decay of ``|I(mu) - leading_term(mu)|`` over ``mu`` in [8, 128]."""
    mu = _check_grid(mu_grid)
    s = remainder_series(prob, mu)
    return RemainderStudy(s, fit_remainder(s.mu, s.remainder, s.noise_floor))


def mu_dependent_amplitude_study(prob: OscProblem, mu_grid) -> ModulationStudy:
    """Check the remainder stays below ``C sup|D^5 a_mu| mu^{-2} log mu``.

    ``C`` is the smallest constant valid on the grid; boundedness is judged by
    the log-log slope of the normalized ratio.
    """
    vt = prob.amplitude.vartheta
    if not 0 <= vt < 1 / (2 * prob.kappa + 3):
        raise DomainError("modulation rate must lie in [0, 1/(2 kappa + 3))")
    mu = _check_grid(mu_grid)
    s = remainder_series(prob, mu)
    keep = s.resolved
    if keep.sum() < MIN_POINTS:
        raise InsufficientDataError("too few remainders above the quadrature noise floor")
    ratios = s.remainder / (s.d5_supnorm * s.mu ** -(prob.kappa + 1) * np.log(s.mu) ** (prob.lambda_chain - 1))
    slope = float(np.polyfit(np.log(mu[keep]), np.log(ratios[keep]), 1)[0])
    return ModulationStudy(s, ratios, float(ratios[keep].max()), slope, slope <= RATIO_SLOPE_MAX)


def nonstationary_decay_study(prob: OscProblem, mu_grid) -> DecayStudy:
    """Fit the decay of ``|I(mu)|`` for an amplitude supported off the critical set."""
    mu = _check_grid(mu_grid, hi=64.0, min_points=MIN_POINTS)
    res = [oscillatory_integral(prob, m) for m in mu]
    vals = np.array([r.value for r in res])
    floor = NOISE_FACTOR * np.array([r.abs_change + prob.quad.atol for r in res])
    keep = above_noise_floor(np.abs(vals), floor)
    if keep.sum() < MIN_POINTS:
        raise InsufficientDataError("too few values above the quadrature noise floor")
    fit = fit_power_law(mu[keep], np.abs(vals[keep]))
    return DecayStudy(mu, vals, np.array([r.achieved_tol for r in res]), fit,
                      -fit.exponent >= NONSTATIONARY_MIN_EXPONENT)
