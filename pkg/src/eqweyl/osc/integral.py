"""Evaluation of ``I(mu) = int e^{i mu Phi} a_mu dg dx dxi`` and of its leading term.

Two independent evaluators are provided.

``tensor``
    Gauss-Legendre nodes on the ``x`` and ``xi`` boxes and the periodic
    trapezoid rule in ``theta``.  Separability of the amplitude lets the
    ``xi`` sums factor, but the rule is otherwise the literal 5-d quadrature.

``modes`` (default)
    The ``theta`` integral is done exactly.  Writing ``x = r e_a``,
    ``xi = rho e_b``, the phase is ``mu r rho (cos(a - b) - cos(a + theta - b))``
    and two Jacobi-Anger expansions give

        I = 4 pi^2 sum_n c_n sum_q i^q int int r rho A_{-q}(r) B_q(rho)
                                     J_{q+n}(mu r rho) J_n(mu r rho) dr drho,

    with ``A_q``, ``B_q`` the angular Fourier modes of the ``x`` and ``xi``
    factors (computed by FFT) and ``c_n`` the ``theta`` profile.  The radial
    integrals use Gauss-Legendre rules on the radial extent of each box.

Both refine by doubling until successive values agree to ``rtol`` (or to the
absolute floor ``atol`` for values that are themselves tiny).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError, NumericalDegeneracyError, QuadratureError
from .amplitude import AmplitudeSpec
from .bessel import bessel_table, signed_order
from .geometry import DET_FLOOR, CriticalManifoldChart, transversal_hessian_det


@dataclass(frozen=True)
class QuadConfig:
    """Node counts, refinement ladder and tolerances.

    ``n_radial``/``n_angular`` seed the mode evaluator, ``n_box``/``n_theta``
    the tensor rule; every refinement multiplies them by ``refine_factor``.
    """

    n_radial: int = 64
    n_angular: int = 64
    n_box: int = 24
    n_theta: int = 48
    refine_factor: int = 2
    rtol: float = 1e-8
    atol: float = 1e-15
    max_refinements: int = 5
    block: int = 64
    hessian_checks: int = 16


@dataclass(frozen=True)
class OscProblem:
    """Planar rotation action on the disc ``|x| < chart_radius`` with a given amplitude."""

    amplitude: AmplitudeSpec
    quad: QuadConfig = field(default_factory=QuadConfig)
    chart_radius: float = 10.0
    kappa: int = 1
    lambda_chain: int = 2

    def __post_init__(self):
        # rotations preserve |x|, so the support condition g x in U reduces to this
        if _radial_extent(self.amplitude.x_box)[1] >= self.chart_radius:
            raise DomainError("amplitude x-support must lie inside the chart disc")

    @property
    def xi_box(self):
        return self.amplitude.xi_box


@dataclass(frozen=True)
class QuadResult:
    value: complex
    achieved_tol: float
    abs_change: float
    nodes: tuple
    iterates: tuple


def _radial_extent(box):
    (a0, a1), (b0, b1) = box
    dx = max(a0, 0.0, -a1)
    dy = max(b0, 0.0, -b1)
    far = max(math.hypot(x, y) for x in (a0, a1) for y in (b0, b1))
    return math.hypot(dx, dy), far


def _angular_halfwidth(box):
    """Half the angle subtended at the origin by a box (``pi`` if it contains the origin)."""
    (a0, a1), (b0, b1) = box
    if a0 <= 0 <= a1 and b0 <= 0 <= b1:
        return math.pi
    ang = np.unwrap(sorted(math.atan2(y, x) for x in (a0, a1) for y in (b0, b1)))
    # the subtended arc is the complement of the largest gap between corner angles
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
    return (2 * math.pi - gaps.max()) / 2


def angular_oversampling(amp: AmplitudeSpec) -> int:
    """Power-of-two factor so that angular nodes resolve the narrowest support sector."""
    width = min(_angular_halfwidth(amp.x_box), _angular_halfwidth(amp.xi_box))
    return 1 << max(0, math.ceil(math.log2(math.pi / width)))


def _gauss(lo, hi, n):
    u, w = np.polynomial.legendre.leggauss(n)
    return lo + (u + 1) * (hi - lo) / 2, w * (hi - lo) / 2


def _angular_modes(f, box, n_r, n_a):
    lo, hi = _radial_extent(box)
    r, w = _gauss(lo, hi, n_r)
    a = 2 * np.pi * np.arange(n_a) / n_a
    F = f(r[:, None] * np.cos(a)[None, :], r[:, None] * np.sin(a)[None, :])
    return r, w, np.fft.fft(F, axis=1) / n_a


def bessel_cutoff(zmax: float, eps: float = 1e-18) -> int:
    """Smallest order ``k`` with ``(zmax/2)^k / k! < eps``, a bound on ``|J_k(z)|`` for ``z <= zmax``."""
    if zmax <= 0:
        return 0
    k = max(1, math.ceil(zmax))
    while k * math.log(zmax / 2) - math.lgamma(k + 1) > math.log(eps):
        k += 1
    return k


def modes_value(prob: OscProblem, mu: float, n_r: int, n_a: int) -> complex:
    amp = prob.amplitude
    r, wr, A = _angular_modes(amp.x_factor(abs(mu)), amp.x_box, n_r, n_a)
    rho, wp, B = _angular_modes(amp.xi_factor(abs(mu)), amp.xi_box, n_r, n_a)
    profile = amp.profile
    nmax = max(abs(n) for n in profile)
    # modes beyond the Bessel cutoff multiply J_{q+n} below roundoff; the FFT size
    # still sets the accuracy of the retained modes
    Q = min(n_a // 2 - 1, bessel_cutoff(abs(mu) * r[-1] * rho[-1]) + nmax)
    sign = 1.0 if mu >= 0 else -1.0  # J_k(-z) = (-1)^k J_k(z)
    qs = np.arange(-Q, Q + 1)
    phase_q = (1j) ** qs * sign ** np.abs(qs)
    Aq = A[:, (-qs) % n_a]  # (n_r, 2Q+1)
    Bq = B[:, qs % n_a]
    total = 0.0 + 0.0j
    for start in range(0, n_r, prob.quad.block):
        sl = slice(start, start + prob.quad.block)
        z = abs(mu) * r[sl, None] * rho[None, :]
        T = bessel_table(Q + nmax, z)
        W = (wr[sl] * r[sl])[:, None] * (wp * rho)[None, :]
        for n, cn in profile.items():
            K = np.zeros(z.shape, dtype=complex)
            for k, q in enumerate(qs):
                K += phase_q[k] * np.outer(Aq[sl, k], Bq[:, k]) * signed_order(T, q + n)
            total += cn * np.sum(W * K * signed_order(T, n))
    return 4 * np.pi**2 * total


def tensor_value(prob: OscProblem, mu: float, n: int, n_theta: int) -> complex:
    amp = prob.amplitude
    (x1b, x2b), (y1b, y2b) = amp.x_box, amp.xi_box
    x1, w1 = _gauss(*x1b, n)
    x2, w2 = _gauss(*x2b, n)
    y1, v1 = _gauss(*y1b, n)
    y2, v2 = _gauss(*y2b, n)
    X1, X2 = np.meshgrid(x1, x2, indexing="ij")
    WX = np.outer(w1, w2) * amp.x_factor(mu)(X1, X2)
    # the xi factor is a product psi(xi1) psi(xi2) (possibly modulated in one coordinate)
    Y1, Y2 = np.meshgrid(y1, y2, indexing="ij")
    G = np.outer(v1, v2) * amp.xi_factor(mu)(Y1, Y2)
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    c = amp.theta_factor(th)
    total = 0.0 + 0.0j
    for k, t in enumerate(th):
        ct, st = math.cos(t), math.sin(t)
        d1 = X1 - (ct * X1 - st * X2)
        d2 = X2 - (st * X1 + ct * X2)
        E1 = np.exp(1j * mu * d1[..., None] * y1)  # (n, n, n)
        E2 = np.exp(1j * mu * d2[..., None] * y2)
        inner = np.sum(E1 * (E2 @ G.T), axis=-1)
        total += c[k] * np.sum(WX * inner)
    return total / n_theta


def _refine(evaluate, ladder, rtol, atol, what):
    values = []
    for nodes in ladder:
        values.append((nodes, evaluate(*nodes)))
        if len(values) >= 2:
            (_, v0), (_, v1) = values[-2], values[-1]
            change = abs(v1 - v0)
            if change <= max(rtol * abs(v1), atol):
                rel = change / abs(v1) if v1 != 0 else 0.0
                return QuadResult(v1, rel, change, nodes, (v0, v1))
    raise QuadratureError(f"{what} did not converge to rtol={rtol}",
                          iterates=[v for _, v in values[-2:]])


def oscillatory_integral(prob: OscProblem, mu: float, method: str = "modes") -> QuadResult:
    """Refined evaluation of the oscillatory integral at frequency ``mu`` (any sign)."""
    q = prob.quad
    f = q.refine_factor
    if method == "modes":
        over = angular_oversampling(prob.amplitude)
        ladder = [(q.n_radial * f**k, q.n_angular * over * f**k) for k in range(q.max_refinements + 1)]
        return _refine(lambda a, b: modes_value(prob, mu, a, b), ladder, q.rtol, q.atol, "mode quadrature")
    if method == "tensor":
        ladder = [(q.n_box * f**k, q.n_theta * f**k) for k in range(q.max_refinements + 1)]
        return _refine(lambda a, b: tensor_value(prob, mu, a, b), ladder, q.rtol, q.atol, "tensor quadrature")
    raise DomainError(f"unknown method {method!r}")


def plain_integral(amp: AmplitudeSpec, mu: float = 1.0, n: int = 200) -> complex:
    """``int a_mu dg dx dxi`` without the oscillatory factor (tensor Gauss rule)."""
    (x1b, x2b), (y1b, y2b) = amp.x_box, amp.xi_box
    x1, w1 = _gauss(*x1b, n)
    x2, w2 = _gauss(*x2b, n)
    y1, v1 = _gauss(*y1b, n)
    y2, v2 = _gauss(*y2b, n)
    X = np.sum(np.outer(w1, w2) * amp.x_factor(mu)(*np.meshgrid(x1, x2, indexing="ij")))
    Y = np.sum(np.outer(v1, v2) * amp.xi_factor(mu)(*np.meshgrid(y1, y2, indexing="ij")))
    return X * Y * amp.profile.get(0, 0.0)


# leading term -------------------------------------------------------------------
CHART = CriticalManifoldChart()


def _leading_value(prob, mu, n_r, n_t, n_phi, r_cut, check):
    amp = prob.amplitude
    r_lo, r_hi = _radial_extent(amp.x_box)
    r_lo = max(r_lo, r_cut)
    t_max = _radial_extent(amp.xi_box)[1]
    r, wr = _gauss(r_lo, r_hi, n_r)
    t, wt = _gauss(-t_max, t_max, n_t)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    R, T = np.meshgrid(r, t, indexing="ij")
    det = CHART.closed_form_det(R, T)
    if np.any(np.abs(det) < DET_FLOOR):
        raise NumericalDegeneracyError("transversal Hessian below 1e-10 at a quadrature node")
    fx, fxi = amp.x_factor(mu), amp.xi_factor(mu)
    c0 = amp.theta_factor(0.0)
    # rotations are isometries preserving the phase, so the ratio is phi-independent
    ratio = CHART.volume_density(R, 0.0, T) / np.sqrt(np.abs(det))
    total = 0.0
    for p in phi:
        e = (math.cos(p), math.sin(p))
        ax = fx(r * e[0], r * e[1])
        axi = fxi(t * e[0], t * e[1])
        total += np.einsum("i,j,ij->", wr * ax, wt * axi, ratio)
    if check:
        # spot-check the closed-form determinant against finite differences
        rng = np.random.default_rng(0)
        for _ in range(prob.quad.hessian_checks):
            transversal_hessian_det(CHART, rng.uniform(max(r_lo, 1e-2), r_hi), rng.uniform(0, 2 * np.pi),
                                    rng.uniform(-t_max, t_max))
    return (2 * np.pi / mu) ** prob.kappa * c0 * total * (2 * np.pi / n_phi)


def leading_term(prob: OscProblem, mu: float, r_cut: float = 0.0) -> QuadResult:
    """``(2 pi / mu) int_{Reg C} a_mu / |det Phi''_N|^{1/2}`` over the chart ``(r, phi, t)``.

    In this chart the induced density ``sqrt(r^2 + t^2)`` cancels against
    ``|det|^{1/2} = 2 pi sqrt(r^2 + t^2)``, so the integrand is bounded up
    to ``r = 0`` and an inner cutoff ``r_cut`` only removes an ``O(r_cut)``
    sliver.  Both factors are still evaluated numerically from the frames.
    """
    if mu == 0:
        raise DomainError("mu must be non-zero")
    q = prob.quad
    ladder = [(32 * 2**k, 32 * 2**k, 64 * 2**k) for k in range(q.max_refinements + 1)]
    first = [True]

    def ev(a, b, c):
        v = _leading_value(prob, mu, a, b, c, r_cut, first[0])
        first[0] = False
        return v

    return _refine(ev, ladder, q.rtol, q.atol, "leading-term quadrature")
