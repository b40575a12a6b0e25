"""Irreducible characters: dimensions, weight tables, evaluation and restriction."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..errors import DomainError, InternalConsistencyError
from .roots import RootSystem


@dataclass(frozen=True)
class IrrepClass:
    """Irreducible representation labelled by its highest weight.

    ``weights`` and ``mults`` are parallel tuples sorted lexicographically.
    Equality and hashing use only the root system and the highest weight.
    """

    root_system: RootSystem
    highest_weight: tuple
    dim: int = field(compare=False)
    weights: tuple = field(compare=False, repr=False)
    mults: tuple = field(compare=False, repr=False)

    @property
    def weight_mults(self) -> dict:
        return dict(zip(self.weights, self.mults))

    @property
    def norm(self) -> float:
        return self.root_system.norm(self.highest_weight)

    def weight_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=float).reshape(len(self.weights), self.root_system.rank)

    def mult_array(self) -> np.ndarray:
        return np.array(self.mults, dtype=float)


def _require_dominant(rs, lam):
    lam = rs.check_weight(lam)
    if not rs.is_dominant(lam):
        raise DomainError(f"{lam} is not dominant for {rs.label}")
    return lam


def weyl_dimension(rs: RootSystem, lam) -> int:
    """Product over positive roots of ``(lam + rho, alpha) / (rho, alpha)``."""
    lam = _require_dominant(rs, lam)
    shifted = tuple(l + r for l, r in zip(lam, rs.rho))
    d = Fraction(1)
    for alpha in rs.positive_roots:
        d *= rs.pair(shifted, alpha) / rs.pair(rs.rho, alpha)
    if d.denominator != 1:
        raise InternalConsistencyError(f"non-integral dimension {d} for {lam}")
    return int(d)


def dominant_conjugate(rs: RootSystem, mu) -> tuple:
    for w in rs.weyl_group:
        v = rs.act(w, mu)
        if rs.is_dominant(v):
            return v
    raise InternalConsistencyError(f"no dominant conjugate found for {mu}")


def _solve_exact(a_cols, v):
    """Exact solution c of sum_i c_i a_i = v, or None when inconsistent."""
    n, s = len(v), len(a_cols)
    rows = [[Fraction(a_cols[j][i]) for j in range(s)] + [Fraction(v[i])] for i in range(n)]
    piv_row = 0
    pivots = []
    for col in range(s):
        p = next((r for r in range(piv_row, n) if rows[r][col] != 0), None)
        if p is None:
            continue
        rows[piv_row], rows[p] = rows[p], rows[piv_row]
        pv = rows[piv_row][col]
        rows[piv_row] = [x / pv for x in rows[piv_row]]
        for r in range(n):
            if r != piv_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[piv_row])]
        pivots.append(col)
        piv_row += 1
    if any(rows[r][s] != 0 for r in range(piv_row, n)):
        return None
    c = [Fraction(0)] * s
    for r, col in enumerate(pivots):
        c[col] = rows[r][s]
    return c


@lru_cache(maxsize=64)
def _root_coordinates(rs: RootSystem):
    """Integer matrix P and denominator d with ``c = P v / d`` solving ``sum c_i alpha_i = v``.

    Columns of the rank x rank identity are solved exactly once; a vector is
    in the root span iff reconstruction reproduces it.
    """
    cols = []
    for i in range(rs.rank):
        e = tuple(int(i == j) for j in range(rs.rank))
        c = _solve_exact(rs.simple_roots, e)
        cols.append(c)  # None when e is not in the span
    span = [i for i, c in enumerate(cols) if c is not None]
    d = math.lcm(*(x.denominator for i in span for x in cols[i])) if span else 1
    P = [[int(cols[j][i] * d) if cols[j] is not None else 0 for j in range(rs.rank)]
         for i in range(len(rs.simple_roots))]
    return P, d


def _in_positive_cone(rs, v) -> bool:
    """Is ``v`` a non-negative integer combination of simple roots?"""
    if not rs.simple_roots:
        return all(x == 0 for x in v)
    P, d = _root_coordinates(rs)
    c = [sum(p * x for p, x in zip(row, v)) for row in P]
    if any(x < 0 or x % d for x in c):
        return False
    c = [x // d for x in c]
    back = [sum(c[k] * a[i] for k, a in enumerate(rs.simple_roots)) for i in range(rs.rank)]
    return back == list(v)


@lru_cache(maxsize=4096)
def _freudenthal(rs: RootSystem, lam: tuple) -> tuple:
    # integer-scaled form: (a, b)_D = D (a, b) with D clearing all denominators
    den = math.lcm(*(v.denominator for row in rs.gram for v in row))
    g = [[int(v * den) for v in row] for row in rs.gram]
    rank = rs.rank

    def ip(a, b):
        return sum(a[i] * g[i][j] * b[j] for i in range(rank) for j in range(rank))

    # breadth-first descent from lam through simple-root subtraction
    depth = {lam: 0}
    order = [lam]
    i = 0
    while i < len(order):
        mu = order[i]
        i += 1
        for a in rs.simple_roots:
            nu = tuple(x - y for x, y in zip(mu, a))
            if nu in depth:
                continue
            dom = dominant_conjugate(rs, nu)
            if _in_positive_cone(rs, tuple(x - y for x, y in zip(lam, dom))):
                depth[nu] = depth[mu] + 1
                order.append(nu)
    order.sort(key=lambda m: depth[m])

    rho2 = [2 * r for r in rs.rho]  # integral
    rho2 = [int(r) for r in rho2]
    top = [2 * x + r for x, r in zip(lam, rho2)]
    top_n = ip(top, top)
    mult = {lam: 1}
    for mu in order[1:]:
        num = 0
        for a in rs.positive_roots:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                m = mult.get(nu)
                if m is None:
                    break
                num += m * ip(nu, a)
                k += 1
        shifted = [2 * x + r for x, r in zip(mu, rho2)]
        # the factor 4 from doubled vectors cancels against 2 * num * 4 / 4
        denom = top_n - ip(shifted, shifted)
        q = Fraction(8 * num, denom)
        if q.denominator != 1 or q < 0:
            raise InternalConsistencyError(f"Freudenthal step gave {q} at {mu}")
        if q:
            mult[mu] = int(q)
    items = sorted(mult.items())
    return tuple(k for k, _ in items), tuple(v for _, v in items)


def weight_multiplicities(rs: RootSystem, lam) -> dict:
    """Complete weight table of the irreducible representation with highest weight ``lam``."""
    lam = _require_dominant(rs, lam)
    weights, mults = _freudenthal(rs, lam)
    return dict(zip(weights, mults))


@lru_cache(maxsize=4096)
def _irrep_cached(rs, lam):
    weights, mults = _freudenthal(rs, lam)
    dim = weyl_dimension(rs, lam)
    if sum(mults) != dim:
        raise InternalConsistencyError(f"weight count {sum(mults)} != dimension {dim} for {lam}")
    return IrrepClass(rs, lam, dim, weights, mults)


def irrep(rs: RootSystem, lam) -> IrrepClass:
    """Build (and memoize) the irrep with highest weight ``lam``."""
    return _irrep_cached(rs, _require_dominant(rs, lam))


# evaluation -------------------------------------------------------------------
def _as_points(rs, X):
    X = np.asarray(X, dtype=float)
    if rs.rank == 1 and (X.ndim == 0 or X.shape[-1] != 1):
        X = X[..., None]
    if X.shape[-1] != rs.rank:
        raise DomainError(f"torus points need {rs.rank} coordinates")
    return X


def alternating_sum(rs: RootSystem, mu, X):
    """``sum_w det(w) t^(w mu)`` at ``t = exp X``; vectorized over leading axes of ``X``."""
    X = _as_points(rs, X)
    out = np.zeros(X.shape[:-1], dtype=complex)
    for w in rs.weyl_group:
        det = round(np.linalg.det(np.array(w, dtype=float)))
        v = np.array(rs.act(w, mu), dtype=float)
        out += det * np.exp(1j * (X @ v))
    return out


def character_eval(ch: IrrepClass, X):
    """``chi(exp X) = sum_mu m_mu e^{i <mu, X>}``."""
    X = _as_points(ch.root_system, X)
    return np.exp(1j * (X @ ch.weight_array().T)) @ ch.mult_array()


def weyl_quotient(ch: IrrepClass, X):
    """Character via the alternating-sum quotient; singular at non-regular points."""
    rs = ch.root_system
    X = _as_points(rs, X)
    shifted = tuple(int(a + b) for a, b in zip(ch.highest_weight, rs.rho))
    num = alternating_sum(rs, shifted, X)
    den = np.ones(X.shape[:-1], dtype=complex)
    for alpha in rs.positive_roots:
        den *= 2j * np.sin(0.5 * (X @ np.array(alpha, dtype=float)))
    return num / den


def unit_directions(rs: RootSystem, resolution: int = 720) -> np.ndarray:
    """Deterministic set of directions H with ``H^T G^{-1} H = 1``.

    ``<mu, H>`` then satisfies ``|<mu, H>| <= |mu|`` with equality when
    ``H`` is parallel to ``G mu``.
    """
    r = rs.rank
    if r == 1:
        u = np.array([[1.0], [-1.0]])
    elif r == 2:
        a = 2 * np.pi * np.arange(resolution) / resolution
        u = np.column_stack([np.cos(a), np.sin(a)])
    else:
        k = 8 if r <= 3 else 3
        grid = np.stack(np.meshgrid(*([np.arange(-k, k + 1)] * r), indexing="ij"), -1).reshape(-1, r)
        grid = grid[np.any(grid != 0, axis=1)].astype(float)
        u = grid / np.linalg.norm(grid, axis=1, keepdims=True)
    L = np.linalg.cholesky(rs.gram_array)
    return u @ L.T


def character_derivative_supnorm(ch: IrrepClass, l: int, directions=None) -> float:
    """``max_H sum_mu m_mu |<mu, H>|^l`` over unit directions of the torus.

    Bounds the sup-norm of the ``l``-th derivative of the character along
    one-parameter subgroups; ``l = 0`` gives the dimension.
    """
    if l < 0 or l > 12:
        raise DomainError("derivative order must lie in [0, 12]")
    if l == 0:
        return float(ch.dim)
    rs = ch.root_system
    H = unit_directions(rs) if directions is None else np.asarray(directions, float)
    W = ch.weight_array()
    if W.size and np.any(W):
        G = rs.gram_array
        extra = W @ G
        nrm = np.sqrt(np.einsum("ij,ij->i", extra, W))
        keep = nrm > 0
        H = np.vstack([H, extra[keep] / nrm[keep, None]])
    vals = np.abs(H @ W.T) ** l @ ch.mult_array()
    return float(vals.max())


# restriction to toral subgroups -----------------------------------------------
@dataclass(frozen=True)
class SubgroupSpec:
    """Closed subgroup of the maximal torus (or trivial).

    kind : ``"trivial"``, ``"subtorus"``, ``"cyclic"`` or ``"torus"``.
    spanning : integer vectors spanning the Lie algebra of a sub-torus.
    generator, order : cyclic subgroup generated by ``exp(2 pi generator / order)``.
    """

    kind: str = "trivial"
    spanning: tuple = ()
    generator: tuple = ()
    order: int = 1

    def __post_init__(self):
        if self.kind not in ("trivial", "subtorus", "cyclic", "torus"):
            raise DomainError(f"unknown subgroup kind {self.kind!r}")
        if self.kind == "subtorus":
            if not self.spanning:
                raise DomainError("sub-torus needs a spanning set")
            m = np.array(self.spanning, dtype=float)
            if np.linalg.matrix_rank(m) != len(self.spanning):
                raise DomainError("sub-torus spanning set is rank deficient")
        if self.kind == "cyclic" and (self.order < 1 or not self.generator):
            raise DomainError("cyclic subgroup needs a generator and order >= 1")

    def describe(self) -> str:
        if self.kind == "subtorus":
            return f"subtorus{list(map(list, self.spanning))}"
        if self.kind == "cyclic":
            return f"Z/{self.order}"
        return self.kind


TRIVIAL = SubgroupSpec("trivial")


def trivial_multiplicity_in_restriction(ch: IrrepClass, h: SubgroupSpec) -> int:
    """Multiplicity of the trivial representation in the restriction of ``ch`` to ``h``."""
    if h.kind == "trivial":
        return ch.dim
    if h.kind == "torus":
        return ch.weight_mults.get((0,) * ch.root_system.rank, 0)
    if h.kind == "subtorus":
        S = np.array(h.spanning, dtype=np.int64)
        if S.shape[1] != ch.root_system.rank:
            raise DomainError("spanning vectors have the wrong length")
        return int(sum(m for w, m in ch.weight_mults.items() if not np.any(S @ np.array(w))))
    # cyclic: exact residue count, cross-checked against the averaged character
    p = np.array(h.generator, dtype=np.int64)
    if p.shape != (ch.root_system.rank,):
        raise DomainError("generator has the wrong length")
    exact = sum(m for w, m in ch.weight_mults.items() if int(np.dot(w, p)) % h.order == 0)
    X = np.outer(np.arange(h.order), 2 * np.pi * p / h.order)
    avg = character_eval(ch, X).mean()
    if abs(avg - exact) > 1e-9 * max(1, ch.dim):
        raise InternalConsistencyError(f"averaged character {avg} is not the integer {exact}")
    return int(exact)


# Weyl integration ----------------------------------------------------------------
def weyl_integration_gram(irreps, grid: int | None = None) -> np.ndarray:
    """Matrix of ``int_G chi_i conj(chi_j) dg`` by the Weyl integration formula.

    The torus integral of ``chi_i conj(chi_j) |A(rho)|^2 / |W|`` is a trigonometric
    polynomial, so the periodic trapezoid rule is exact once the grid exceeds
    its bandwidth; ``grid`` defaults to the smallest such size.
    """
    irreps = list(irreps)
    if not irreps:
        return np.zeros((0, 0))
    rs = irreps[0].root_system
    if any(c.root_system != rs for c in irreps):
        raise DomainError("all irreps must share one root system")
    r = rs.rank
    wmax = max(int(np.abs(c.weight_array()).max(initial=0)) for c in irreps)
    rmax = max((abs(int(x)) for w in rs.weyl_group for x in rs.act(w, tuple(int(v) for v in rs.rho))), default=0)
    need = 2 * wmax + 2 * rmax + 1
    n = grid or int(2 ** math.ceil(math.log2(max(need, 8))))
    if n < need:
        raise DomainError(f"grid {n} below bandwidth {need}")
    # characters on the grid by inverse FFT of the weight table
    vals = np.empty((len(irreps), n**r), dtype=complex)
    for k, c in enumerate(irreps):
        table = np.zeros((n,) * r, dtype=complex)
        for w, m in zip(c.weights, c.mults):
            table[tuple(x % n for x in w)] += m
        vals[k] = (np.fft.ifftn(table) * n**r).ravel()
    axes = np.meshgrid(*([2 * np.pi * np.arange(n) / n] * r), indexing="ij")
    X = np.stack(axes, -1).reshape(-1, r)
    dens = np.abs(alternating_sum(rs, tuple(int(v) for v in rs.rho), X)) ** 2 / len(rs.weyl_group)
    return (vals * dens) @ vals.conj().T / n**r
