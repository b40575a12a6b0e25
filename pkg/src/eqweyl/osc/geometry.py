"""Phase, momentum map and the regular critical manifold of the planar rotation action.

Coordinates on ``T*U x S^1`` are ``(x1, x2, xi1, xi2, s)`` with ``theta = 2 pi s``;
the metric is Euclidean in these coordinates, which is the flat Sasaki metric
on ``T*R^2`` times the invariant circle metric of total length 1 (matching the
normalized Haar measure ``ds = d theta / 2 pi``).

The regular part of the critical set is ``{s = 0, x != 0, xi parallel to x}``,
parametrized by ``(r, phi, t) -> (r e_phi, t e_phi, 0)``.  At such a point
the Hessian of the phase has no ``xx``, ``xi xi`` or ``x xi`` block, and its
``s``-row is ``(2 pi J xi, -2 pi J x, 4 pi^2 <x, xi>)``.  In the orthonormal
normal frame ``{e_s, grad J / |grad J|}`` this gives the closed form
``det = -4 pi^2 (r^2 + t^2)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import FrameFormulaError, NumericalDegeneracyError

TWO_PI = 2 * np.pi
FD_STEP = 1e-4
HESSIAN_RTOL = 1e-6
DET_FLOOR = 1e-10


def _rot(theta, v):
    c, s = np.cos(theta), np.sin(theta)
    return np.stack([c * v[..., 0] - s * v[..., 1], s * v[..., 0] + c * v[..., 1]], axis=-1)


def _perp(v):
    return np.stack([-v[..., 1], v[..., 0]], axis=-1)


def phase(x, xi, theta):
    """``<x - R_theta x, xi>``, vectorized over leading axes."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    return np.sum((x - _rot(np.asarray(theta, float), x)) * xi, axis=-1)


def momentum_map(x, xi):
    """``J(x, xi) = <xi, J x>`` with ``J`` the quarter turn."""
    return np.sum(np.asarray(xi, float) * _perp(np.asarray(x, float)), axis=-1)


def phase_5(p):
    """Phase in the coordinates ``p = (x1, x2, xi1, xi2, s)``."""
    p = np.asarray(p, dtype=float)
    th = TWO_PI * p[..., 4]
    c, s = np.cos(th), np.sin(th)
    x1, x2, y1, y2 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    return (x1 - (c * x1 - s * x2)) * y1 + (x2 - (s * x1 + c * x2)) * y2


def phase_gradient(p):
    """Analytic gradient of :func:`phase_5`."""
    p = np.asarray(p, dtype=float)
    th = TWO_PI * p[..., 4]
    x, y = p[..., 0:2], p[..., 2:4]
    d = x - _rot(th, x)
    gx = y - _rot(-th, y)  # (I - R)^T y
    gs = -TWO_PI * np.sum(_rot(th, _perp(x)) * y, axis=-1)
    return np.concatenate([gx, d, gs[..., None]], axis=-1)


def fd_hessian(f, p, h=FD_STEP):
    """Central-difference Hessian with one Richardson step (steps ``h`` and ``h/2``)."""
    p = np.asarray(p, dtype=float)
    n = p.size

    def raw(step):
        H = np.empty((n, n))
        E = np.eye(n) * step
        for i in range(n):
            for j in range(i, n):
                v = (f(p + E[i] + E[j]) - f(p + E[i] - E[j]) - f(p - E[i] + E[j]) + f(p - E[i] - E[j])) / (4 * step * step)
                H[i, j] = H[j, i] = v
        return H

    return (4 * raw(h / 2) - raw(h)) / 3


@dataclass(frozen=True)
class CriticalManifoldChart:
    """Chart ``(r, phi, t)`` of the regular critical manifold with adapted frames."""

    codim: int = 2

    def point(self, r, phi, t):
        r, phi, t = np.broadcast_arrays(*(np.asarray(v, float) for v in (r, phi, t)))
        e = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        return np.concatenate([r[..., None] * e, t[..., None] * e, np.zeros(r.shape + (1,))], axis=-1)

    def tangent_vectors(self, r, phi, t):
        """Coordinate tangent vectors ``d/dr, d/dphi, d/dt`` as an array ``(..., 3, 5)``."""
        r, phi, t = np.broadcast_arrays(*(np.asarray(v, float) for v in (r, phi, t)))
        e = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        ep = _perp(e)
        z2 = np.zeros(r.shape + (2,))
        z1 = np.zeros(r.shape + (1,))
        dr = np.concatenate([e, z2, z1], axis=-1)
        dphi = np.concatenate([r[..., None] * ep, t[..., None] * ep, z1], axis=-1)
        dt = np.concatenate([z2, e, z1], axis=-1)
        return np.stack([dr, dphi, dt], axis=-2)

    def volume_density(self, r, phi, t):
        """Riemannian density of the chart: ``sqrt(det(T T^T))``."""
        T = self.tangent_vectors(r, phi, t)
        return np.sqrt(np.linalg.det(np.einsum("...ik,...jk->...ij", T, T)))

    def tangent_frame(self, r, phi, t):
        T = self.tangent_vectors(r, phi, t)
        return T / np.linalg.norm(T, axis=-1, keepdims=True)  # chart vectors are orthogonal

    def normal_frame(self, r, phi, t):
        """Orthonormal normal frame ``(e_s, grad J / |grad J|)`` as ``(..., 2, 5)``."""
        r, phi, t = np.broadcast_arrays(*(np.asarray(v, float) for v in (r, phi, t)))
        ep = _perp(np.stack([np.cos(phi), np.sin(phi)], axis=-1))
        rho = np.sqrt(r * r + t * t)[..., None]
        es = np.zeros(r.shape + (5,))
        es[..., 4] = 1.0
        n2 = np.concatenate([-t[..., None] * ep / rho, r[..., None] * ep / rho, np.zeros(r.shape + (1,))], axis=-1)
        return np.stack([es, n2], axis=-2)

    @staticmethod
    def closed_form_det(r, t):
        return -4 * np.pi**2 * (np.asarray(r, float) ** 2 + np.asarray(t, float) ** 2)


def hessian_in_frame(point, frame, h=FD_STEP):
    """Finite-difference Hessian of the phase restricted to the rows of ``frame``."""
    H = fd_hessian(phase_5, point, h)
    F = np.asarray(frame, float)
    return F @ H @ F.T


def transversal_hessian_det(chart: CriticalManifoldChart, r, phi, t) -> float:
    """Determinant of the phase Hessian on the normal space at chart point ``(r, phi, t)``.

    Computed by Richardson-extrapolated finite differences and by the closed
    form; raises :class:`FrameFormulaError` when they disagree beyond 1e-6
    relative and :class:`NumericalDegeneracyError` when it is below 1e-10.
    """
    closed = float(chart.closed_form_det(r, t))
    if abs(closed) < DET_FLOOR:
        raise NumericalDegeneracyError(f"transversal Hessian degenerate at r={r}, t={t}")
    H = hessian_in_frame(chart.point(r, phi, t), chart.normal_frame(r, phi, t))
    fd = float(np.linalg.det(H))
    if abs(fd - closed) > HESSIAN_RTOL * abs(closed):
        raise FrameFormulaError(f"finite-difference det {fd} vs closed form {closed}")
    return closed
