import itertools
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqweyl.errors import DomainError, NumericalDegeneracyError
from eqweyl.lie import SubgroupSpec, trivial_multiplicity_in_restriction
from eqweyl.models import (
    MODELS, QuotientChart, chi, counting_function, geometric_leading_coefficient, get_model,
    predicted_exponent, reduced_volume, spectrum_up_to,
)
from eqweyl.montecarlo import mc_quotient_volume, mc_reduced_volume

M1, M2, M3 = MODELS["M1"], MODELS["M2"], MODELS["M3"]


def as_table(levels):
    return [(lv.t, {c.highest_weight[0]: k for c, k in lv.mults.items()}) for lv in levels]


# brute-force oracles ------------------------------------------------------------
def lattice_oracle(lam):
    out = {}
    r = math.isqrt(int(lam))
    for k1, k2 in itertools.product(range(-r, r + 1), repeat=2):
        t = k1 * k1 + k2 * k2
        if t <= lam:
            out.setdefault(t, Counter())[k1] += 1
    return [(t, dict(out[t])) for t in sorted(out)]


def harmonic_weight_dims(l, nvars_pairs, extra_real):
    """Weight decomposition of harmonic polynomials of degree ``l``.

    Variables are ``nvars_pairs`` pairs ``(z_j, zbar_j)`` of weights (+1, -1)
    plus ``extra_real`` weight-zero real variables.  The Laplacian is
    ``4 sum d_z d_zbar + sum d_x^2``; it maps degree l onto degree l - 2
    preserving weight, and harmonic dimensions are kernel dimensions.
    """
    nv = 2 * nvars_pairs + extra_real

    def monos(d):
        return [e for e in itertools.product(range(d + 1), repeat=nv) if sum(e) == d]

    def weight(e):
        return sum(e[2 * j] - e[2 * j + 1] for j in range(nvars_pairs))

    src, dst = monos(l), monos(l - 2) if l >= 2 else []
    index = {e: i for i, e in enumerate(dst)}
    dims = {}
    for m in sorted({weight(e) for e in src}):
        cols = [e for e in src if weight(e) == m]
        rows = sorted({i for i in range(len(dst)) if weight(dst[i]) == m})
        rpos = {r: k for k, r in enumerate(rows)}
        A = np.zeros((len(rows), len(cols)))
        for c, e in enumerate(cols):
            for j in range(nvars_pairs):
                a, b = e[2 * j], e[2 * j + 1]
                if a and b:
                    f = list(e)
                    f[2 * j] -= 1
                    f[2 * j + 1] -= 1
                    A[rpos[index[tuple(f)]], c] += 4 * a * b
            for j in range(extra_real):
                k = 2 * nvars_pairs + j
                if e[k] >= 2:
                    f = list(e)
                    f[k] -= 2
                    A[rpos[index[tuple(f)]], c] += e[k] * (e[k] - 1)
        rank = np.linalg.matrix_rank(A) if A.size else 0
        dims[m] = len(cols) - rank
    return {m: d for m, d in dims.items() if d}


@pytest.mark.parametrize("lam", [0, 1, 2, 5, 25, 50.5, 130])
def test_m1_matches_lattice_enumeration(lam):
    assert as_table(spectrum_up_to(M1, lam)) == lattice_oracle(lam)


@pytest.mark.parametrize("l", range(0, 7))
def test_m2_matches_spherical_harmonics(l):
    levels = as_table(spectrum_up_to(M2, l * (l + 1)))
    assert levels[-1] == (l * (l + 1), harmonic_weight_dims(l, 1, 1))


@pytest.mark.parametrize("l", range(0, 7))
def test_m3_matches_harmonic_polynomials(l):
    levels = as_table(spectrum_up_to(M3, l * (l + 2)))
    assert levels[-1] == (l * (l + 2), harmonic_weight_dims(l, 2, 0))


def test_spectrum_examples():
    assert as_table(spectrum_up_to(M1, 0)) == [(0, {0: 1})]
    assert as_table(spectrum_up_to(M2, 2)) == [(0, {0: 1}), (2, {-1: 1, 0: 1, 1: 1})]
    assert as_table(spectrum_up_to(M3, 3)) == [(0, {0: 1}), (3, {-1: 2, 1: 2})]
    with pytest.raises(DomainError):
        spectrum_up_to(M1, -1)


@pytest.mark.parametrize("model", MODELS.values(), ids=lambda m: m.name)
def test_eigenspace_dimensions_and_order(model):
    levels = spectrum_up_to(model, 400)
    ts = [lv.t for lv in levels]
    assert ts == sorted(set(ts))
    for lv in levels:
        assert lv.total_dimension() == model.eigenspace_dimension(lv.t)
        for c, k in lv.mults.items():
            assert k >= 1 and trivial_multiplicity_in_restriction(c, model.principal_isotropy) >= 1
    classical = {"M1": lambda t: sum(1 for a in range(-30, 31) for b in range(-30, 31) if a * a + b * b == t),
                 "M2": lambda t: 2 * ((math.isqrt(4 * t + 1) - 1) // 2) + 1,
                 "M3": lambda t: (math.isqrt(t + 1)) ** 2}[model.name]
    for lv in levels:
        assert lv.total_dimension() == classical(lv.t)


def test_counting_examples():
    for model in MODELS.values():
        assert counting_function(model, chi(0), -0.5) == 0
    assert counting_function(M2, chi(0), 6.5) == 3
    assert counting_function(M2, chi(1), 2) == 1
    assert counting_function(M1, chi(0), 4) == 5


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["M1", "M2", "M3"]), st.integers(-12, 12), st.floats(0, 300))
def test_counting_closed_form_matches_cumulative_spectrum(name, m, lam):
    model = MODELS[name]
    cum = sum(lv.mults.get(chi(m), 0) for lv in spectrum_up_to(model, lam))
    assert counting_function(model, chi(m), lam) == cum
    assert counting_function(model, chi(m), lam + 3.7) >= cum


@pytest.mark.parametrize("model", MODELS.values(), ids=lambda m: m.name)
def test_counting_jumps_exactly_at_levels(model):
    levels = [lv.t for lv in spectrum_up_to(model, 200)]
    for t in levels[1:]:
        jump = counting_function(model, chi(0), t) - counting_function(model, chi(0), t - 1e-9)
        inside = sum(lv.mults.get(chi(0), 0) for lv in spectrum_up_to(model, t) if lv.t == t)
        assert jump == inside
        assert model.level_floor(t + 0.5) == t
    assert all(model.level_after(a) == b for a, b in zip(levels, levels[1:]))


def test_model_metadata():
    assert [m.lambda_chain for m in MODELS.values()] == [1, 2, 1]
    for m in MODELS.values():
        assert m.n - m.kappa >= 1 and m.principal_isotropy == SubgroupSpec("trivial")
    assert get_model("hopf-circle") is M3
    with pytest.raises(DomainError):
        get_model("M9")


@pytest.mark.parametrize("model,lam,expected_exponent", [(M1, 1e8, 0.5), (M2, 1e8, 0.5), (M3, 1e8, 1.0)])
def test_reduced_volume_back_solved_from_exact_counts(model, lam, expected_exponent):
    assert predicted_exponent(model) == expected_exponent
    ratio = counting_function(model, chi(0), lam) / lam**expected_exponent
    assert ratio == pytest.approx(geometric_leading_coefficient(model), rel=2e-3)


def test_leading_coefficient_values():
    assert geometric_leading_coefficient(M1) == pytest.approx(reduced_volume(M1) / (2 * math.pi))
    assert geometric_leading_coefficient(M2) == pytest.approx(reduced_volume(M2) / (2 * math.pi))
    assert geometric_leading_coefficient(M3) == pytest.approx(reduced_volume(M3) / (2 * (2 * math.pi) ** 2))


# Monte Carlo ------------------------------------------------------------------------
@pytest.mark.parametrize("model", MODELS.values(), ids=lambda m: m.name)
def test_mc_volume_within_three_sigma(model):
    est = mc_reduced_volume(model, 10**6, seed=20261016)
    assert abs(est.value - reduced_volume(model)) <= 3 * est.std_error


def test_mc_determinism_and_seed_dependence():
    a = mc_reduced_volume(M3, 50_000, seed=3)
    b = mc_reduced_volume(M3, 50_000, seed=3)
    c = mc_reduced_volume(M3, 50_000, seed=4)
    assert a == b and a.value != c.value


def test_mc_standard_error_scaling():
    ns = [10**4, 10**5, 10**6]
    errs = [mc_reduced_volume(M2, n, seed=11).std_error for n in ns]
    # three points: fit the slope directly (fit_power_law needs four)
    slope = np.polyfit(np.log(ns), np.log(errs), 1)[0]
    assert slope == pytest.approx(-0.5, abs=0.05)


def test_mc_degenerate_charts_raise():
    # a chart that moves along the orbit has zero horizontal Jacobian
    along_orbit = QuotientChart(
        box=((0.0, 1.0),),
        lift=lambda y: np.column_stack([y[:, 0], np.zeros(len(y))]),
        generator=lambda p: np.column_stack([np.ones(len(p)), np.zeros(len(p))]),
    )
    with pytest.raises(NumericalDegeneracyError):
        mc_quotient_volume(along_orbit, 2, 1, 2000, seed=0)
    fixed_point = QuotientChart(
        box=((0.0, 1.0),),
        lift=lambda y: np.column_stack([np.zeros(len(y)), y[:, 0]]),
        generator=lambda p: np.zeros((len(p), 2)),
    )
    with pytest.raises(NumericalDegeneracyError):
        mc_quotient_volume(fixed_point, 2, 1, 2000, seed=0)
    with pytest.raises(DomainError):
        mc_reduced_volume(M1, 999, seed=0)
