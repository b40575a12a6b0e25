"""Vectorized integer-order Bessel functions by Miller's backward recurrence."""
from __future__ import annotations

import math

import numpy as np

_RESCALE = 1e200


def bessel_table(qmax: int, z) -> np.ndarray:
    """``J_q(z)`` for ``q = 0..qmax`` on an array of non-negative ``z``.

    Returns an array of shape ``(qmax + 1,) + z.shape``.  The recurrence is
    started far enough above ``max(qmax, z)`` that the normalization
    ``J_0 + 2 sum_k J_{2k} = 1`` fixes the scale to near machine precision
    (absolute error below 1e-14 for ``qmax <= 80`` and ``z <= 300``).
    """
    z = np.asarray(z, dtype=float)
    if qmax < 0:
        raise ValueError("qmax must be non-negative")
    if np.any(z < 0):
        raise ValueError("z must be non-negative; use J_q(-z) = (-1)^q J_q(z)")
    zero = z == 0
    zs = np.where(zero, 1.0, z)
    zmax = float(zs.max(initial=1.0))
    start = int(math.ceil(max(qmax, zmax) + 10 * zmax ** (1 / 3) + 30))
    start += start % 2
    out = np.zeros((qmax + 1,) + z.shape)
    prev = np.zeros_like(zs)
    cur = np.full_like(zs, 1e-300)
    norm = np.zeros_like(zs)
    for k in range(start, 0, -1):
        nxt = (2 * k / zs) * cur - prev  # J_{k-1} up to scale
        prev, cur = cur, nxt
        if k - 1 <= qmax:
            out[k - 1] = cur
        if k - 1 > 0 and (k - 1) % 2 == 0:
            norm += 2 * cur
        big = np.abs(cur) > _RESCALE
        if big.any():
            cur[big] /= _RESCALE
            prev[big] /= _RESCALE
            norm[big] /= _RESCALE
            out[:, big] /= _RESCALE
    norm += cur
    out /= norm
    if zero.any():
        out[:, zero] = 0.0
        out[0, zero] = 1.0
    return out


def signed_order(table: np.ndarray, k: int) -> np.ndarray:
    """``J_k`` for any integer ``k`` from a table of non-negative orders."""
    return table[k] if k >= 0 else (-1) ** (-k) * table[-k]
