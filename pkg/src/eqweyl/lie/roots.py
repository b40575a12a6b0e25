"""Exact root data for tori and the rank-two semisimple types A1, A1xA1, A2.

Weights are integer vectors in the fundamental-weight basis (the character
lattice for torus factors).  All pairings use exact ``Fraction`` arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

import numpy as np

from ..errors import DomainError

Vector = tuple  # tuple of int or Fraction


def _mat(rows):
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def _pair(gram, a, b):
    return sum(a[i] * gram[i][j] * b[j] for i in range(len(a)) for j in range(len(b)))


@dataclass(frozen=True)
class RootSystem:
    """Root and weight data for a compact connected group of rank at most a few.

    Attributes
    ----------
    label : str
        Type string such as ``"A2"`` or ``"A1xT1"``.
    rank : int
    positive_roots : tuple of tuple of int
        Positive roots in weight coordinates.
    simple_roots : tuple of tuple of int
    gram : tuple of tuple of Fraction
        Invariant form on weights.  A1 is normalized so that the fundamental
        weight has unit length, which makes ``|k * omega| = k``.
    rho : tuple of Fraction
    weyl_group : tuple of integer matrices (tuples of rows)
        Acting on column vectors of weight coordinates.
    """

    label: str
    rank: int
    positive_roots: tuple
    simple_roots: tuple
    gram: tuple
    rho: tuple
    weyl_group: tuple

    # exact helpers -------------------------------------------------------
    def pair(self, a, b) -> Fraction:
        return _pair(self.gram, a, b)

    def norm(self, lam) -> float:
        return float(self.pair(lam, lam)) ** 0.5

    def coroot_pairing(self, lam, alpha) -> Fraction:
        """``2 (lam, alpha) / (alpha, alpha)``."""
        return 2 * self.pair(lam, alpha) / self.pair(alpha, alpha)

    @cached_property
    def _coroots(self):
        # coroot of alpha as a linear functional on weight coordinates
        out = []
        for alpha in self.positive_roots:
            aa = self.pair(alpha, alpha)
            cor = [2 * sum(self.gram[i][j] * alpha[j] for j in range(self.rank)) / aa
                   for i in range(self.rank)]
            out.append(tuple(int(c) if c.denominator == 1 else c for c in cor))
        return tuple(out)

    def is_dominant(self, lam) -> bool:
        lam = tuple(lam)
        if len(lam) != self.rank:
            return False
        for cor in self._coroots:
            c = sum(x * y for x, y in zip(cor, lam))
            if c < 0 or (isinstance(c, Fraction) and c.denominator != 1):
                return False
        return True

    def act(self, w, lam):
        return tuple(sum(w[i][j] * lam[j] for j in range(self.rank)) for i in range(self.rank))

    @property
    def is_torus(self) -> bool:
        return not self.positive_roots

    @property
    def gram_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.gram])

    def check_weight(self, lam):
        lam = tuple(lam)
        if len(lam) != self.rank or any(int(c) != c for c in lam):
            raise DomainError(f"{lam!r} is not an integral weight of {self.label}")
        return tuple(int(c) for c in lam)


def _weyl_closure(simple, gram, rank):
    """All products of simple reflections, by breadth-first closure."""
    eye = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    gens = []
    for a in simple:
        aa = _pair(gram, a, a)
        # s(lam) = lam - 2 (lam, a)/(a, a) a ;  (lam, a) = lam^T G a
        ga = [sum(gram[k][j] * a[j] for j in range(rank)) for k in range(rank)]
        m = [[Fraction(int(i == j)) - 2 * a[i] * ga[j] / aa for j in range(rank)] for i in range(rank)]
        if any(v.denominator != 1 for row in m for v in row):
            raise DomainError("reflection is not integral on the weight lattice")
        gens.append(tuple(tuple(int(v) for v in row) for row in m))
    group = [eye]
    seen = {eye}
    frontier = [eye]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                p = tuple(
                    tuple(sum(s[i][k] * w[k][j] for k in range(rank)) for j in range(rank))
                    for i in range(rank)
                )
                if p not in seen:
                    seen.add(p)
                    group.append(p)
                    nxt.append(p)
        frontier = nxt
    return tuple(group)


def _build(label, gram, simple, positive):
    rank = len(gram)
    gram = _mat(gram)
    simple = tuple(tuple(int(c) for c in a) for a in simple)
    positive = tuple(tuple(int(c) for c in a) for a in positive)
    rho = tuple(Fraction(sum(a[i] for a in positive), 2) for i in range(rank))
    return RootSystem(
        label=label,
        rank=rank,
        positive_roots=positive,
        simple_roots=simple,
        gram=gram,
        rho=rho,
        weyl_group=_weyl_closure(simple, gram, rank),
    )


def torus(k: int) -> RootSystem:
    if k < 1:
        raise DomainError("torus rank must be positive")
    eye = [[int(i == j) for j in range(k)] for i in range(k)]
    return _build(f"T{k}", eye, (), ())


def a1() -> RootSystem:
    return _build("A1", [[1]], [(2,)], [(2,)])


def a1xa1() -> RootSystem:
    return _build("A1xA1", [[1, 0], [0, 1]], [(2, 0), (0, 2)], [(2, 0), (0, 2)])


def a2() -> RootSystem:
    g = [[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]]
    return _build("A2", g, [(2, -1), (-1, 2)], [(2, -1), (-1, 2), (1, 1)])


def product(*systems: RootSystem) -> RootSystem:
    """Direct product with block-diagonal form; tori merge into one ``Tk`` suffix."""
    rank = sum(s.rank for s in systems)
    gram = [[Fraction(0)] * rank for _ in range(rank)]
    simple, positive, labels = [], [], []
    off = 0
    for s in systems:
        for i in range(s.rank):
            for j in range(s.rank):
                gram[off + i][off + j] = s.gram[i][j]
        pad = lambda a, o=off, r=s.rank: (0,) * o + tuple(a) + (0,) * (rank - o - r)
        simple += [pad(a) for a in s.simple_roots]
        positive += [pad(a) for a in s.positive_roots]
        labels.append(s.label)
        off += s.rank
    return _build("x".join(labels), gram, simple, positive)


_NAMED = {"A1": a1, "A1xA1": a1xa1, "A2": a2}


def root_system(label: str) -> RootSystem:
    """Parse labels like ``"A2"``, ``"T3"`` or ``"A1xT1"``."""
    parts = []
    rest = label
    for name in ("A1xA1", "A2", "A1"):
        if rest.startswith(name):
            parts.append(_NAMED[name]())
            rest = rest[len(name):].lstrip("x")
            break
    if rest:
        if not (rest.startswith("T") and rest[1:].isdigit()):
            raise DomainError(f"unsupported root system label {label!r}")
        parts.append(torus(int(rest[1:])))
    if not parts:
        raise DomainError(f"unsupported root system label {label!r}")
    return parts[0] if len(parts) == 1 else product(*parts)


SUPPORTED_LABELS = ("T1", "T2", "A1", "A1xA1", "A2", "A1xT1")
