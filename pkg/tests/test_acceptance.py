"""Acceptance criteria 1-10, one PASS/FAIL summary line each.

Run alone with ``pytest tests/test_acceptance.py -v``; the summary lines are
repeated in the "acceptance criteria" section at the end of the session.
"""
import io
import itertools
import time

import numpy as np

from eqweyl.cli import main
from eqweyl.fitting import geometric_grid
from eqweyl.lie import (
    TRIVIAL,
    GrowthFamily,
    irrep,
    root_system,
    torus,
    verify_growth_rate,
    weight_multiplicities,
    weyl_dimension,
    weyl_integration_gram,
)
from eqweyl.lie.roots import SUPPORTED_LABELS
from eqweyl.models import MODELS, get_model, reduced_volume
from eqweyl.montecarlo import mc_reduced_volume
from eqweyl.osc import (
    OscProblem,
    modulated_bump,
    mu_dependent_amplitude_study,
    nonstationary_bump,
    nonstationary_decay_study,
    remainder_decay_study,
    standard_bump,
)
from eqweyl.weyl_law import run_weyl_law

MU_GRID = geometric_grid(8.0, 128.0, 8)  # 11 points
WEYL_GRID = geometric_grid(1e3, 1e7, 16)


def _weyl(name, stop, runtime_limit, criterion, label):
    t0 = time.perf_counter()
    rep = run_weyl_law(get_model(name), GrowthFamily(0.05, 1.0), geometric_grid(1e3, stop, 16))
    dt = time.perf_counter() - t0
    tol = rep.tolerances
    coef_err = rep.fitted_coefficient / rep.predicted_coefficient - 1
    checks = [rep.passes["exponent"], rep.passes["coefficient"], rep.passes["remainder"], dt < runtime_limit]
    value = (f"exponent={rep.fitted_exponent:.5f};coef_err={coef_err:.5f};"
             f"remainder_exp={rep.remainder_exponent:.4f};runtime={dt:.2f}s")
    threshold = (f"|exponent-{rep.predicted_exponent}|<={tol['exponent']};|coef_err|<={tol['coefficient']};"
                 f"remainder_exp<={rep.remainder_threshold + tol['remainder']:.4g};runtime<{runtime_limit}s")
    return criterion(label, value, threshold, all(checks))


def test_1_lie_core_exactness(criterion):
    t0 = time.perf_counter()
    mismatches, orth = 0, 0.0
    for label in SUPPORTED_LABELS:
        rs = root_system(label)
        weights = [w for w in itertools.product(range(-10, 11), repeat=rs.rank) if rs.is_dominant(w)]
        irs = [irrep(rs, w) for w in weights]
        mismatches += sum(weyl_dimension(rs, w) != sum(weight_multiplicities(rs, w).values()) for w in weights)
        orth = max(orth, float(np.abs(weyl_integration_gram(irs) - np.eye(len(irs))).max()))
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and orth <= 1e-6 and dt < 10
    assert criterion("lie_core_exactness", f"dim_mismatches={mismatches};orth_err={orth:.3e};runtime={dt:.2f}s",
                     "dim_mismatches=0;orth_err<=1e-6;runtime<10s", ok)


def test_2_weyl_law_free_surface(criterion):
    assert _weyl("M1", 1e7, 60, criterion, "weyl_law_M1")


def test_3_weyl_law_singular_surface(criterion):
    assert _weyl("M2", 1e7, 60, criterion, "weyl_law_M2")


def test_4_weyl_law_hopf(criterion):
    t0 = time.perf_counter()
    rep = run_weyl_law(get_model("M3"), GrowthFamily(0.05, 1.0), geometric_grid(1e3, 1e6, 16))
    dt = time.perf_counter() - t0
    coef_err = rep.fitted_coefficient / rep.predicted_coefficient - 1
    ok = abs(rep.fitted_exponent - 1.0) <= 0.03 and abs(coef_err) <= 0.05 and dt < 120
    assert criterion("weyl_law_M3", f"exponent={rep.fitted_exponent:.5f};coef_err={coef_err:.5f};runtime={dt:.2f}s",
                     "|exponent-1|<=0.03;|coef_err|<=0.05;runtime<120s", ok)


def test_5_stationary_phase_leading_term(criterion):
    t0 = time.perf_counter()
    study = remainder_decay_study(OscProblem(standard_bump()), MU_GRID)
    dt = time.perf_counter() - t0
    s = study.series
    scaled = s.mu * s.remainder
    worst_tol = float(s.achieved_tol.max())
    ok = (1.7 <= study.fit.beta <= 2.4 and worst_tol <= 1e-8 and bool(np.all(np.diff(scaled) < 0))
          and not study.fit.flagged.any() and dt < 600)
    value = (f"beta={study.fit.beta:.4f};beta_log={study.fit.beta_log:.4f};mu_rem_ratio={scaled[-1] / scaled[0]:.4f};"
             f"max_tol={worst_tol:.2e};runtime={dt:.1f}s")
    assert criterion("stationary_phase_remainder", value,
                     "beta_in[1.7,2.4];mu_rem_decreasing;max_tol<=1e-8;runtime<600s", ok)


def test_6_mu_dependent_amplitudes(criterion):
    t0 = time.perf_counter()
    slopes = {}
    for vt in (0.0, 0.1, 0.18):
        slopes[vt] = mu_dependent_amplitude_study(OscProblem(modulated_bump(vt)), MU_GRID).ratio_slope
    dt = time.perf_counter() - t0
    ok = all(v <= 0.1 for v in slopes.values()) and dt < 900
    value = ";".join(f"slope[{vt}]={s:.4f}" for vt, s in slopes.items()) + f";runtime={dt:.1f}s"
    assert criterion("mu_dependent_amplitude", value, "slope<=0.1;runtime<900s", ok)


def test_7_nonstationary_control(criterion):
    study = nonstationary_decay_study(OscProblem(nonstationary_bump()), geometric_grid(8.0, 64.0, 8))
    assert criterion("nonstationary_decay", f"{study.exponent:.4f}", ">=4", study.passed)


def test_8_volume_cross_check(criterion):
    parts, ok = [], True
    for name, model in MODELS.items():
        est = mc_reduced_volume(model, 10**6, seed=2024)
        z = (est.value - reduced_volume(model)) / est.std_error
        ok &= abs(z) <= 3
        parts.append(f"z[{name}]={z:.3f}")
    ns = np.array([10**4, 10**5, 10**6])
    errs = [mc_reduced_volume(get_model("M2"), int(n), seed=2024).std_error for n in ns]
    slope = float(np.polyfit(np.log(ns), np.log(errs), 1)[0])
    ok &= abs(slope + 0.5) <= 0.05
    parts.append(f"stderr_slope={slope:.4f}")
    assert criterion("volume_cross_check", ";".join(parts), "|z|<=3;stderr_slope=-0.5+-0.05", ok)


def test_9_growth_rate(criterion):
    fam = GrowthFamily(0.5, 1.0)
    grid = [float(k * k) for k in range(2, 16)]
    excess = []
    for l in range(6):
        rep = verify_growth_rate(fam, torus(2), TRIVIAL, l, grid)
        excess.append(rep.fit.exponent - rep.threshold)
    worst = max(excess)
    assert criterion("growth_rate", f"max_excess={worst:.4f}", "slope-theta*l<=0.05", worst <= 0.05)


def test_10_determinism(criterion, tmp_path):
    runs = [
        ["volumes", "--model", "M3", "--samples", "200000", "--seed", "99"],
        ["weyl-law", "--model", "M2", "--set", "grid.stop=1e5"],
        ["characters", "--root-system", "A2", "--max-coord", "4"],
        ["osc-remainder", "--amplitude", "nonstationary", "--set", "grid.stop=32", "--set", "grid.per_decade=6"],
    ]
    outputs = {}
    for tag in ("a", "b"):
        for argv in runs:
            buf = io.StringIO()
            main(argv + ["--out", str(tmp_path / tag)], out=buf)
            outputs.setdefault(argv[0], []).append(buf.getvalue())
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    same_files = all((tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes() for f in files)
    same_stdout = all(a == b for a, b in outputs.values())
    ok = same_files and same_stdout and len(files) == len(runs)
    assert criterion("determinism", f"identical_files={int(same_files) * len(files)}/{len(files)}",
                     f"{len(runs)}/{len(runs)}", ok)
