"""Separable bump amplitudes with certified derivative bounds.

The base profile is ``psi(s) = exp(-1 / (1 - s^2))`` on ``|s| < 1``.  Its
derivatives are ``psi^(j) = P_j(s) (1 - s^2)^(-2j) psi(s)`` with

    P_0 = 1,   P_{j+1} = P_j' q^2 + (4 j s q - 2 s) P_j,   q = 1 - s^2.

Sup-norms of ``psi^(j)`` are certified by interval branch and bound on
``[0, 1 - delta]`` (parity reduces to ``s >= 0``) plus an explicit tail
bound on ``[1 - delta, 1)``, where ``q^(-2j) e^(-1/q)`` is increasing.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..errors import DomainError

# certified upper bounds for sup |psi^(j)|, j = 0..7 (relative gap below 1e-6,
# rounded up in the last stored digit); regenerate with certified_bump_sup
BUMP_DERIVATIVE_SUP = (
    0.36787944118,
    0.79843032053,
    7.7497076300,
    186.40008304,
    8315.8983590,
    596358.35755,
    81474834.741,
    14548270684.6,
)

# modulation m(s) = (2 + cos s) / 3: sup |m| = 1, sup |m^(k)| = 1/3 for k >= 1
MODULATION_SUP = (1.0, 1 / 3)

STANDARD_THETA_PROFILE = ((-1, 0.25), (0, 0.5), (1, 0.25))  # (1 + cos theta) / 2

COORDINATES = ("x1", "x2", "xi1", "xi2")


def psi(s):
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1
    out[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
    return out


def modulation(s):
    return (2.0 + np.cos(s)) / 3.0


def bump_derivative_polynomials(jmax: int) -> list:
    """Integer coefficient lists (ascending powers) of ``P_0 .. P_jmax``."""
    polys = [[1]]
    for j in range(jmax):
        p = polys[-1]
        dp = [i * p[i] for i in range(1, len(p))] or [0]
        out = [0] * (len(p) + 4)
        q2 = [1, 0, -2, 0, 1]
        for i, a in enumerate(dp):
            for k, b in enumerate(q2):
                out[i + k] += a * b
        for i, a in enumerate(p):  # (4 j s q - 2 s) = (4j - 2) s - 4 j s^3
            out[i + 1] += (4 * j - 2) * a
            out[i + 3] += -4 * j * a
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        polys.append(out)
    return polys


def bump_derivative(j: int, s):
    """``psi^(j)(s)`` evaluated from the closed form."""
    c = bump_derivative_polynomials(j)[j]
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    m = np.abs(s) < 1
    q = 1 - s[m] ** 2
    out[m] = np.polyval(c[::-1], s[m]) * q ** (-2 * j) * np.exp(-1 / q)
    return out


def certified_bump_sup(j: int, rel: float = 1e-6, delta: str = "1e-3") -> tuple:
    """Certified enclosure ``(lower, upper)`` of ``sup |psi^(j)|``.

    Uses mpmath interval arithmetic with a mean-value form, which shrinks
    quadratically under bisection.
    """
    import mpmath
    from mpmath import iv, mpf

    polys = bump_derivative_polynomials(j + 1)
    iv.dps = 30
    mpmath.mp.dps = 30

    def horner(c, x):
        acc = c[-1] + 0 * x
        for a in reversed(c[:-1]):
            acc = acc * x + a
        return acc

    def f_iv(k, x):
        q = 1 - x * x
        return horner(polys[k], x) * q ** (-2 * k) * iv.exp(-1 / q)

    def f_pt(s):
        s = mpf(s)
        q = 1 - s * s
        return abs(horner(polys[j], s) * q ** (-2 * j) * mpmath.exp(-1 / q))

    def upper(a, b):
        x = iv.mpf([a, b])
        naive = f_iv(j, x)
        mid = (a + b) / 2
        w = (b - a) / 2
        mv = f_iv(j, iv.mpf(mid)) + f_iv(j + 1, x) * iv.mpf([-w, w])
        lo, hi = max(naive.a, mv.a), min(naive.b, mv.b)
        return max(abs(lo), abs(hi))

    d = mpf(delta)
    qmax = 2 * d - d * d
    if not qmax < mpf(1) / (2 * max(j, 1)):
        raise DomainError("tail window too wide for the monotonicity argument")
    tail = sum(abs(c) for c in polys[j]) * qmax ** (-2 * j) * mpmath.exp(-1 / qmax)
    end = 1 - d
    best = max(f_pt(end * k / 256) for k in range(257))
    heap = [(-upper(mpf(0), end), mpf(0), end)]
    while True:
        neg, a, b = heapq.heappop(heap)
        ub = -neg
        if ub <= best * (1 + rel):
            break
        m = (a + b) / 2
        best = max(best, f_pt(m))
        heapq.heappush(heap, (-upper(a, m), a, m))
        heapq.heappush(heap, (-upper(m, b), m, b))
    return float(best), float(max(ub, tail))


def trig_poly_sup(coeffs, k: int) -> float:
    """Bound ``sup |c^(k)|`` for ``c(theta) = sum c_n e^{i n theta}``."""
    return float(sum(abs(n) ** k * abs(c) for n, c in coeffs))


@dataclass(frozen=True)
class AmplitudeSpec:
    """Product bump in ``(x, xi)`` times a trigonometric profile in ``theta``.

    ``a_mu(x, xi, theta) = scale * psi_x(x) * psi_xi(xi) * c(theta) * b(mu^vartheta u)``
    where the last factor is present only when ``modulated`` names a coordinate
    ``u`` among ``x1, x2, xi1, xi2``.
    """

    x_center: tuple = (0.0, 0.0)
    x_radius: float = 1.0
    xi_center: tuple = (0.0, 0.0)
    xi_radius: float = 1.0
    theta_profile: tuple = STANDARD_THETA_PROFILE
    scale: float = 1.0
    modulated: str | None = None
    vartheta: float = 0.0

    def __post_init__(self):
        if self.x_radius <= 0 or self.xi_radius <= 0:
            raise DomainError("bump radii must be positive")
        if self.modulated is not None and self.modulated not in COORDINATES:
            raise DomainError(f"modulated coordinate must be one of {COORDINATES}")
        prof = self.profile
        if any(abs(c - np.conj(prof.get(-n, 0.0))) > 1e-15 for n, c in prof.items()):
            raise DomainError("theta profile coefficients must satisfy c_{-n} = conj(c_n)")
        if not 0 <= self.vartheta < 0.2:
            raise DomainError("vartheta must lie in [0, 1/5)")

    # support ------------------------------------------------------------------
    @property
    def x_box(self):
        return tuple((c - self.x_radius, c + self.x_radius) for c in self.x_center)

    @property
    def xi_box(self):
        return tuple((c - self.xi_radius, c + self.xi_radius) for c in self.xi_center)

    @property
    def profile(self) -> dict:
        return dict(self.theta_profile)

    def scaled(self, factor: float) -> "AmplitudeSpec":
        return AmplitudeSpec(self.x_center, self.x_radius, self.xi_center, self.xi_radius,
                             self.theta_profile, self.scale * factor, self.modulated, self.vartheta)

    # evaluation ---------------------------------------------------------------
    def _factor(self, which, mu):
        center = self.x_center if which == "x" else self.xi_center
        radius = self.x_radius if which == "x" else self.xi_radius
        names = ("x1", "x2") if which == "x" else ("xi1", "xi2")
        mod = names.index(self.modulated) if self.modulated in names else None
        freq = mu**self.vartheta if mod is not None else 0.0
        scale = self.scale if which == "x" else 1.0

        def f(u1, u2):
            v = psi((u1 - center[0]) / radius) * psi((u2 - center[1]) / radius)
            if mod is not None:
                v = v * modulation(freq * (u1, u2)[mod])
            return scale * v

        return f

    def x_factor(self, mu):
        return self._factor("x", mu)

    def xi_factor(self, mu):
        return self._factor("xi", mu)

    def theta_factor(self, theta):
        theta = np.asarray(theta, dtype=float)
        # Hermitian coefficients (checked at construction) give a real profile
        return sum(c * np.exp(1j * n * theta) for n, c in self.theta_profile).real

    def __call__(self, x, xi, theta, mu=1.0):
        x = np.asarray(x, float)
        xi = np.asarray(xi, float)
        return (self.x_factor(mu)(x[..., 0], x[..., 1]) * self.xi_factor(mu)(xi[..., 0], xi[..., 1])
                * self.theta_factor(theta))

    # certified derivative bounds ---------------------------------------------
    def _coordinate_sups(self, mu, lmax):
        """Per-coordinate bounds on ``sup |d^k f|`` for ``k = 0..lmax``."""
        if lmax >= len(BUMP_DERIVATIVE_SUP):
            raise DomainError(f"derivative order above {len(BUMP_DERIVATIVE_SUP) - 1} not tabulated")
        out = []
        for name in COORDINATES:
            R = self.x_radius if name.startswith("x") and not name.startswith("xi") else self.xi_radius
            base = [BUMP_DERIVATIVE_SUP[k] / R**k for k in range(lmax + 1)]
            if name == "x1" or name == "x2":
                base = [b * abs(self.scale) for b in base]
            if name == self.modulated:
                f = mu**self.vartheta
                mod = [MODULATION_SUP[0]] + [MODULATION_SUP[1]] * lmax
                base = [sum(math.comb(k, i) * base[i] * f ** (k - i) * mod[k - i] for i in range(k + 1))
                        for k in range(lmax + 1)]
            out.append(base)
        out.append([trig_poly_sup(self.theta_profile, k) if k else _profile_sup(self.theta_profile)
                    for k in range(lmax + 1)])
        return out

    def derivative_supnorm(self, l: int, mu: float = 1.0) -> float:
        """Certified bound on ``max_{|alpha| = l} sup |d^alpha a_mu|`` over ``(x1, x2, xi1, xi2, theta)``."""
        sups = self._coordinate_sups(mu, l)
        best = 0.0
        for alpha in _compositions(l, 5):
            best = max(best, math.prod(sups[i][k] for i, k in enumerate(alpha)))
        return best

    def derivative_supnorm_upto(self, l: int, mu: float = 1.0) -> float:
        return max(self.derivative_supnorm(k, mu) for k in range(l + 1))


def _profile_sup(coeffs):
    # exact maximum of |c(theta)| on a fine grid is not certified; use the
    # triangle inequality, which is attained for non-negative coefficients
    return float(sum(abs(c) for _, c in coeffs))


@lru_cache(maxsize=None)
def _compositions(total, parts):
    return tuple(c for c in itertools.product(range(total + 1), repeat=parts) if sum(c) == total)


def standard_bump() -> AmplitudeSpec:
    """Bump of radius 1 at the origin in ``x`` and ``xi`` with profile ``(1 + cos theta)/2``."""
    return AmplitudeSpec()


def nonstationary_bump() -> AmplitudeSpec:
    """Support kept away from the critical set: ``x`` near ``(1, 0)``, ``xi`` near ``(0, 1)``.

    On the support ``|J(x, xi)| >= 0.6 * 0.6 - 0.4 * 0.4 = 0.2`` and ``x != 0``,
    so the phase gradient is bounded away from zero.
    """
    return AmplitudeSpec(x_center=(1.0, 0.0), x_radius=0.4, xi_center=(0.0, 1.0), xi_radius=0.4)


def modulated_bump(vartheta: float, coordinate: str = "x1") -> AmplitudeSpec:
    return AmplitudeSpec(modulated=coordinate, vartheta=vartheta)
