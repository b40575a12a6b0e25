"""Three circle actions with closed-form equivariant Laplace spectra.

All three use ``G = S^1`` (a rank-one torus), principal isotropy trivial and
every character admissible.  Eigenvalues are integers in the natural
normalization (2 pi periodic flat torus, unit spheres).  The weight label
``m`` of a character ``chi_m`` is the integer with ``chi_m(e^{is}) = e^{ims}``.

Derivation notes
----------------
circle-on-torus (M1)
    Eigenfunctions ``e^{i(k1 x1 + k2 x2)}`` with eigenvalue ``k1^2 + k2^2``;
    translation of ``x1`` acts on them by ``chi_{k1}``.  The action is free,
    so the isotropy-type chain has length 1.  ``M/G`` is a circle of length
    2 pi and the cosphere bundle of the quotient is two copies of it, so the
    reduced volume is ``4 pi``.
circle-on-sphere (M2)
    Spherical harmonics of degree ``l`` (eigenvalue ``l(l+1)``) split into
    one line for each ``|m| <= l`` under rotation about the axis.  The poles
    are fixed, so the isotropy types are ``{1} < S^1``: chain length 2.  The
    regular quotient is the open meridian of length pi, giving ``2 pi``.
hopf-circle (M3)
    Harmonic polynomials of bidegree ``(p, q)`` in ``(z, zbar)`` with
    ``p + q = l`` have eigenvalue ``l(l+2)`` on ``S^3``, dimension
    ``l + 1`` and weight ``p - q``.  The action is free; the quotient is the
    round sphere of radius 1/2 (area pi) and its cosphere bundle has volume
    ``2 pi * pi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt
from typing import Iterator

import numpy as np

from .errors import DomainError
from .lie import TRIVIAL, IrrepClass, SubgroupSpec, irrep, torus, trivial_multiplicity_in_restriction

CIRCLE = torus(1)


@dataclass(frozen=True)
class SpectralLevel:
    """Eigenvalue ``t`` with its isotypic multiplicities ``{chi: mult}``."""

    t: int
    mults: dict

    def total_dimension(self) -> int:
        return sum(ch.dim * m for ch, m in self.mults.items())


@dataclass(frozen=True)
class QuotientChart:
    """Lift of box coordinates on ``M_reg / G`` into an ambient Euclidean space.

    ``lift(y)`` maps ``(N, k)`` chart points to ``(N, d)`` points of ``M``;
    ``generator(p)`` returns the fundamental vector field of the circle action.
    The Riemannian metric on ``M`` is the one induced from the ambient space.
    """

    box: tuple
    lift: object
    generator: object

    @property
    def box_volume(self) -> float:
        return float(np.prod([hi - lo for lo, hi in self.box]))


class EquivariantModel:
    """A compact manifold with a circle action and an explicit equivariant spectrum."""

    name: str
    alias: str
    n: int
    op_order_m: int = 2
    kappa: int = 1
    lambda_chain: int
    principal_isotropy: SubgroupSpec = TRIVIAL
    group = CIRCLE
    reduced_volume_closed_form: float
    chart: QuotientChart

    def ghat_prime(self, ch: IrrepClass) -> bool:
        return trivial_multiplicity_in_restriction(ch, self.principal_isotropy) >= 1

    # subclasses supply the spectrum --------------------------------------
    def levels(self, lam: float) -> Iterator[tuple]:
        """Yield ``(t, {m: mult})`` for all levels ``t <= lam`` in increasing order."""
        raise NotImplementedError

    def counting(self, m: int, lam: float) -> int:
        """``sum_{t <= lam} mult_{chi_m}(t)`` in closed form."""
        raise NotImplementedError

    def eigenspace_dimension(self, t: int) -> int:
        raise NotImplementedError

    def level_floor(self, lam: float) -> int | None:
        """Largest eigenvalue ``<= lam`` (None below the spectrum)."""
        raise NotImplementedError

    def level_after(self, t: int) -> int:
        """Smallest eigenvalue ``> t``."""
        raise NotImplementedError

    def __repr__(self):
        return f"<{self.name} {self.alias}>"


def _is_sum_of_two_squares(t: int) -> bool:
    a = 0
    while 2 * a * a <= t:
        b2 = t - a * a
        b = isqrt(b2)
        if b * b == b2:
            return True
        a += 1
    return False


class CircleOnTorus(EquivariantModel):
    name = "M1"
    alias = "circle-on-torus"
    n = 2
    lambda_chain = 1
    reduced_volume_closed_form = 4 * math.pi
    chart = QuotientChart(
        box=((0.0, 2 * math.pi),),
        lift=lambda y: np.column_stack([np.zeros(len(y)), y[:, 0]]),
        generator=lambda p: np.column_stack([np.ones(len(p)), np.zeros(len(p))]),
    )

    def levels(self, lam):
        if lam < 0:
            return
        top = math.floor(lam)
        table = {}
        for k1 in range(-isqrt(top), isqrt(top) + 1):
            for k2 in range(-isqrt(top - k1 * k1), isqrt(top - k1 * k1) + 1):
                t = k1 * k1 + k2 * k2
                row = table.setdefault(t, {})
                row[k1] = row.get(k1, 0) + 1
        for t in sorted(table):
            yield t, dict(sorted(table[t].items()))

    def counting(self, m, lam):
        if lam < 0 or m * m > lam:
            return 0
        return 2 * isqrt(math.floor(lam) - m * m) + 1

    def eigenspace_dimension(self, t):
        return sum(1 for k1 in range(-isqrt(t), isqrt(t) + 1)
                   for k2 in (isqrt(t - k1 * k1),) if k2 * k2 == t - k1 * k1
                   for _ in ((0,) if k2 == 0 else (0, 1)))

    def level_floor(self, lam):
        if lam < 0:
            return None
        t = math.floor(lam)
        while not _is_sum_of_two_squares(t):
            t -= 1
        return t

    def level_after(self, t):
        t += 1
        while not _is_sum_of_two_squares(t):
            t += 1
        return t


def _sphere2_degree(lam):
    # largest l with l(l+1) <= lam
    return (isqrt(4 * math.floor(lam) + 1) - 1) // 2


class CircleOnSphere(EquivariantModel):
    name = "M2"
    alias = "circle-on-sphere"
    n = 2
    lambda_chain = 2
    reduced_volume_closed_form = 2 * math.pi

    @staticmethod
    def _lift(y):
        th = y[:, 0]
        return np.column_stack([np.sin(th), np.zeros_like(th), np.cos(th)])

    @staticmethod
    def _gen(p):
        return np.column_stack([-p[:, 1], p[:, 0], np.zeros(len(p))])

    chart = QuotientChart(box=((0.0, math.pi),), lift=_lift, generator=_gen)

    def levels(self, lam):
        if lam < 0:
            return
        for l in range(_sphere2_degree(lam) + 1):
            yield l * (l + 1), {m: 1 for m in range(-l, l + 1)}

    def counting(self, m, lam):
        if lam < 0:
            return 0
        return max(0, _sphere2_degree(lam) - abs(m) + 1)

    def eigenspace_dimension(self, t):
        l = _sphere2_degree(t)
        if l * (l + 1) != t:
            return 0
        return 2 * l + 1

    def level_floor(self, lam):
        if lam < 0:
            return None
        l = _sphere2_degree(lam)
        return l * (l + 1)

    def level_after(self, t):
        l = _sphere2_degree(t) + 1
        return l * (l + 1)


def _sphere3_degree(lam):
    # largest l with l(l+2) <= lam
    return isqrt(math.floor(lam) + 1) - 1


class HopfCircle(EquivariantModel):
    name = "M3"
    alias = "hopf-circle"
    n = 3
    lambda_chain = 1
    reduced_volume_closed_form = 2 * math.pi**2

    @staticmethod
    def _lift(y):
        th, ph = y[:, 0], y[:, 1]
        c, s = np.cos(th / 2), np.sin(th / 2)
        return np.column_stack([c, np.zeros_like(c), s * np.cos(ph), s * np.sin(ph)])

    @staticmethod
    def _gen(p):
        # multiplication by i on both complex coordinates
        return np.column_stack([-p[:, 1], p[:, 0], -p[:, 3], p[:, 2]])

    chart = QuotientChart(box=((0.0, math.pi), (0.0, 2 * math.pi)), lift=_lift, generator=_gen)

    def levels(self, lam):
        if lam < 0:
            return
        for l in range(_sphere3_degree(lam) + 1):
            yield l * (l + 2), {m: l + 1 for m in range(-l, l + 1, 2)}

    def counting(self, m, lam):
        if lam < 0:
            return 0
        L, a = _sphere3_degree(lam), abs(m)
        if L < a:
            return 0
        J = (L - a) // 2
        return (J + 1) * (a + 1) + J * (J + 1)

    def eigenspace_dimension(self, t):
        l = _sphere3_degree(t)
        if l * (l + 2) != t:
            return 0
        return (l + 1) ** 2

    def level_floor(self, lam):
        if lam < 0:
            return None
        l = _sphere3_degree(lam)
        return l * (l + 2)

    def level_after(self, t):
        l = _sphere3_degree(t) + 1
        return l * (l + 2)


MODELS = {m.name: m for m in (CircleOnTorus(), CircleOnSphere(), HopfCircle())}
_ALIASES = {m.alias: m for m in MODELS.values()}


def get_model(name: str) -> EquivariantModel:
    try:
        return MODELS.get(name) or _ALIASES[name]
    except KeyError:
        raise DomainError(f"unknown model {name!r}; choose from {sorted(MODELS) + sorted(_ALIASES)}") from None


def chi(m: int) -> IrrepClass:
    """The circle character ``chi_m``."""
    return irrep(CIRCLE, (int(m),))


def spectrum_up_to(model: EquivariantModel, lam: float) -> list:
    if lam < 0:
        raise DomainError("lam must be non-negative")
    return [SpectralLevel(t, {chi(m): k for m, k in row.items()}) for t, row in model.levels(lam)]


def counting_function(model: EquivariantModel, ch: IrrepClass, lam: float) -> int:
    if ch.root_system != model.group:
        raise DomainError("character does not belong to the model's group")
    return model.counting(ch.highest_weight[0], lam)


def reduced_volume(model: EquivariantModel) -> float:
    return model.reduced_volume_closed_form


def geometric_leading_coefficient(model: EquivariantModel) -> float:
    d = model.n - model.kappa
    return model.reduced_volume_closed_form / (d * (2 * math.pi) ** d)


def predicted_exponent(model: EquivariantModel) -> float:
    return (model.n - model.kappa) / model.op_order_m
