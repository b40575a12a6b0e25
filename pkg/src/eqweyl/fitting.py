"""Log-space power-law fits used for every asymptotic exponent check.

A fit models ``y ~ A * x**p * (log x)**g`` by ordinary least squares on
``log y``.  The log exponent ``g`` is either absent, fixed by the caller, or
estimated as a third regressor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InsufficientDataError

MIN_POINTS = 4


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    coefficient: float
    log_exponent: float | None
    rms_residual: float
    points_used: int

    def predict(self, x):
        x = np.asarray(x, dtype=float)
        y = self.coefficient * x**self.exponent
        if self.log_exponent:
            y = y * np.log(x) ** self.log_exponent
        return y


def fit_power_law(x, y, with_log=False, log_power=None):
    """Least-squares fit of ``y = A x^p (log x)^g`` in log space.

    Parameters
    ----------
    x, y : array_like
        Abscissae (strictly increasing, positive) and positive ordinates.
    with_log : bool
        Estimate ``g`` as a free regressor on ``log log x``.
    log_power : float, optional
        Fix ``g`` instead of estimating it.  Mutually exclusive with
        ``with_log``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise DomainError("x and y must be 1-d arrays of equal length")
    if x.size < MIN_POINTS:
        raise InsufficientDataError(f"need at least {MIN_POINTS} points, got {x.size}")
    if np.any(np.diff(x) <= 0) or np.any(x <= 0):
        raise DomainError("x must be positive and strictly increasing")
    if np.any(y <= 0) or not np.all(np.isfinite(y)):
        raise DomainError("y must be positive and finite; filter noise-floor points first")
    if with_log and log_power is not None:
        raise DomainError("with_log and log_power are mutually exclusive")

    lx = np.log(x)
    ly = np.log(y)
    columns = [np.ones_like(lx), lx]
    if with_log or log_power:
        if np.any(x <= 1.0):
            raise DomainError("log factors need x > 1")
    if log_power:
        ly = ly - log_power * np.log(lx)
    if with_log:
        columns.append(np.log(lx))
    design = np.column_stack(columns)
    coef, *_ = np.linalg.lstsq(design, ly, rcond=None)
    resid = ly - design @ coef
    g = float(coef[2]) if with_log else (float(log_power) if log_power is not None else None)
    return PowerLawFit(
        exponent=float(coef[1]),
        coefficient=float(np.exp(coef[0])),
        log_exponent=g,
        rms_residual=float(np.sqrt(np.mean(resid**2))),
        points_used=int(x.size),
    )


def one_sided_exponent_check(fit, threshold, tol):
    """True iff ``fit.exponent <= threshold + tol`` (boundary inclusive)."""
    return fit.exponent <= threshold + tol


def above_noise_floor(y, floor):
    """Boolean mask of entries strictly above a (scalar or per-point) floor."""
    y = np.abs(np.asarray(y)).astype(float)
    return y > np.broadcast_to(np.asarray(floor, dtype=float), y.shape)


def running_max(y):
    """Non-decreasing envelope ``max_{j<=i} |y_j|``, the natural target for O-bounds."""
    return np.maximum.accumulate(np.abs(np.asarray(y, dtype=float)))


def geometric_grid(start: float, stop: float, per_decade: int = 16) -> np.ndarray:
    """Geometric grid from ``start`` to ``stop`` inclusive with ``per_decade`` points per decade."""
    if not (0 < start < stop):
        raise DomainError("grid needs 0 < start < stop")
    if per_decade < 1:
        raise DomainError("per_decade must be positive")
    n = max(2, int(round(math.log10(stop / start) * per_decade)) + 1)
    return np.geomspace(start, stop, n)
