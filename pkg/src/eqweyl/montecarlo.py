"""Monte-Carlo volume of the reduced unit cosphere bundle ``(Omega cap S*M) / G``.

For each chart point of ``M_reg / G`` a covector is drawn uniformly from the
cube ``[-1, 1]^n`` written in an orthonormal frame adapted to the orbit
(horizontal directions plus the unit generator).  A sample is accepted when
the horizontal part lies in the unit ball and the momentum ``J = <xi, X>``
satisfies ``|J| < w |X|``.  Dividing by the slab thickness and multiplying by
``n - kappa`` turns ball volume into sphere volume, so the weighted indicator
is an unbiased estimator of the reduced volume.

Random numbers come from counter-based Philox streams, one per fixed-size
batch and keyed by ``(seed, batch index)``, so batches can be evaluated in
any order or on separate workers and merged deterministically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalDegeneracyError
from .models import EquivariantModel, QuotientChart

BATCH = 1 << 16
SLAB = 0.5
FD_STEP = 1e-5
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    std_error: float
    samples: int
    seed: int


def _batch_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def horizontal_frame(chart: QuotientChart, y: np.ndarray):
    """Orthonormal horizontal frame, unit generator, generator norm and quotient density.

    Returns ``(Q, xhat, xnorm, density)`` with ``Q`` of shape ``(N, d, k)``.
    The density is the Gram determinant root of the chart tangent vectors
    after removing their component along the orbit.
    """
    y = np.atleast_2d(np.asarray(y, dtype=float))
    p = chart.lift(y)
    X = chart.generator(p)
    xnorm = np.linalg.norm(X, axis=1)
    if np.any(~np.isfinite(xnorm)) or np.any(xnorm <= DEGENERACY_TOL):
        raise NumericalDegeneracyError("orbit generator vanishes at a sampled chart point")
    xhat = X / xnorm[:, None]
    k = y.shape[1]
    tangents = []
    for i in range(k):
        step = np.zeros(k)
        step[i] = FD_STEP
        d = (chart.lift(y + step) - chart.lift(y - step)) / (2 * FD_STEP)
        d -= np.einsum("nd,nd->n", d, xhat)[:, None] * xhat
        tangents.append(d)
    T = np.stack(tangents, axis=2)  # (N, d, k)
    gram = np.einsum("ndi,ndj->nij", T, T)
    det = np.linalg.det(gram)
    # polar-type charts legitimately have density -> 0 on a null set; only an
    # (essentially) vanishing density at a sampled point is treated as degenerate
    if np.any(~np.isfinite(det)) or np.any(det <= DEGENERACY_TOL**2):
        raise NumericalDegeneracyError("chart Jacobian is singular at a sampled point")
    Q, _ = np.linalg.qr(T)
    return Q, xhat, xnorm, np.sqrt(det)


def _batch_moments(chart, n, kappa, size, rng, slab):
    lo = np.array([b[0] for b in chart.box])
    hi = np.array([b[1] for b in chart.box])
    k = len(chart.box)
    y = lo + (hi - lo) * rng.random((size, k))
    eta = rng.uniform(-1.0, 1.0, (size, k))
    zeta = rng.uniform(-1.0, 1.0, (size, kappa))
    Q, xhat, xnorm, dens = horizontal_frame(chart, y)
    xi = np.einsum("ndk,nk->nd", Q, eta) + zeta[:, :1] * xhat
    J = np.einsum("nd,nd->n", xi, xhat * xnorm[:, None])
    horiz = xi - np.einsum("nd,nd->n", xi, xhat)[:, None] * xhat
    accept = (np.einsum("nd,nd->n", horiz, horiz) <= 1.0) & (np.abs(J) < slab * xnorm)
    weight = (n - kappa) * chart.box_volume * 2.0**n / (2 * slab) ** kappa
    v = weight * dens * accept
    return math.fsum(v), math.fsum(v * v)


def mc_quotient_volume(chart, n, kappa, samples, seed, slab=SLAB) -> VolumeEstimate:
    if kappa != 1:
        raise DomainError("only circle actions are supported")
    if samples < 1000:
        raise DomainError("need at least 1000 samples")
    if n - kappa != len(chart.box):
        raise DomainError("chart dimension must equal n - kappa")
    s1, s2 = [], []
    done, index = 0, 0
    while done < samples:
        size = min(BATCH, samples - done)
        a, b = _batch_moments(chart, n, kappa, size, _batch_rng(seed, index), slab)
        s1.append(a)
        s2.append(b)
        done += size
        index += 1
    total, total2 = math.fsum(s1), math.fsum(s2)
    mean = total / samples
    var = max(total2 - samples * mean * mean, 0.0) / (samples - 1)
    return VolumeEstimate(mean, math.sqrt(var / samples), samples, seed)


def mc_reduced_volume(model: EquivariantModel, samples: int, seed: int) -> VolumeEstimate:
    """Unbiased Monte-Carlo estimate of the reduced volume with its standard error."""
    return mc_quotient_volume(model.chart, model.n, model.kappa, samples, seed)
