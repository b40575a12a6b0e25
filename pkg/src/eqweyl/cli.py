"""Command-line runner: ``eqweyl <weyl-law|osc-remainder|characters|volumes|models> [options]``.

Exit codes: 0 all criteria pass, 1 a criterion failed, 2 usage or config
error, 3 numerical failure (quadrature, degeneracy, consistency).
"""
from __future__ import annotations

import argparse
import itertools
import logging
import sys

import numpy as np

from . import csvio
from .config import ExperimentConfig, load_config, parse_assignment
from .errors import (
    ConfigError,
    DomainError,
    EqWeylError,
    FrameFormulaError,
    InsufficientDataError,
    InternalConsistencyError,
    NumericalDegeneracyError,
    QuadratureError,
)
from .fitting import geometric_grid
from .lie import TRIVIAL, GrowthFamily, irrep, root_system, trivial_multiplicity_in_restriction
from .lie import weight_multiplicities, weyl_dimension, weyl_integration_gram
from .models import MODELS, get_model, reduced_volume, spectrum_up_to
from .montecarlo import mc_reduced_volume
from .osc import (
    AmplitudeSpec,
    OscProblem,
    QuadConfig,
    fit_remainder,
    modulated_bump,
    nonstationary_bump,
    remainder_series,
    standard_bump,
)
from .weyl_law import run_weyl_law

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3
NUMERICAL_ERRORS = (QuadratureError, NumericalDegeneracyError, FrameFormulaError, InternalConsistencyError,
                    InsufficientDataError)
log = logging.getLogger("eqweyl")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"{self.prog}: error: {message}") from None


def _emit(lines, out):
    ok = True
    for name, value, threshold, passed in lines:
        print(csvio.summary_line(name, value, threshold, passed), file=out)
        ok &= bool(passed)
    return ok


# experiments ---------------------------------------------------------------------
def run_weyl_law_experiment(cfg: ExperimentConfig, out=sys.stdout, spectrum_lam=None) -> bool:
    model = get_model(cfg["model"])
    fam = GrowthFamily(cfg["family"]["theta"], cfg["family"]["C"], ghat_prime_filter=model.ghat_prime)
    g = cfg["grid"]
    report = run_weyl_law(model, fam, geometric_grid(g["start"], g["stop"], g["per_decade"]), cfg.get("tolerances"))
    path = csvio.write_table(cfg.output_dir / f"weyl_{model.name}.csv", "weyl", csvio.weyl_rows(report))
    log.info("wrote %s", path)
    if spectrum_lam is not None:
        sp = csvio.write_table(cfg.output_dir / f"spectra_{model.name}.csv", "spectra",
                               csvio.spectra_rows(model.name, spectrum_up_to(model, spectrum_lam)))
        log.info("wrote %s", sp)
    return _emit(report.summary(), out)


def _amplitude(spec: dict) -> AmplitudeSpec:
    kind = spec["kind"]
    if kind == "standard":
        return standard_bump()
    if kind == "nonstationary":
        return nonstationary_bump()
    if kind == "offcentre":
        return AmplitudeSpec(x_center=(0.6, 0.2), x_radius=0.5, xi_center=(0.3, 0.4), xi_radius=0.5)
    return modulated_bump(spec["vartheta"], spec.get("coordinate", "x1"))


def run_osc_experiment(cfg: ExperimentConfig, out=sys.stdout) -> bool:
    q = cfg["quad"]
    prob = OscProblem(_amplitude(cfg["amplitude"]),
                      QuadConfig(rtol=q["rtol"], atol=q["atol"], max_refinements=q["max_refinements"]))
    g, tol = cfg["grid"], cfg["tolerances"]
    mu = geometric_grid(g["start"], g["stop"], g["per_decade"])
    s = remainder_series(prob, mu)
    name = cfg["amplitude"]["kind"]
    path = csvio.write_table(cfg.output_dir / f"osc_{name}.csv", "osc", csvio.osc_rows(s))
    log.info("wrote %s", path)
    fit = fit_remainder(s.mu, s.remainder, s.noise_floor)
    scaled = s.mu * s.remainder
    lines = [
        ("remainder_beta", fit.beta, f"[{tol['beta_min']},{tol['beta_max']}]",
         tol["beta_min"] <= fit.beta <= tol["beta_max"]),
        ("achieved_tol", float(s.achieved_tol.max()), f"<={tol['achieved_tol']}",
         float(s.achieved_tol.max()) <= tol["achieved_tol"]),
        ("scaled_remainder_decreasing", float(scaled[-1] / scaled[0]), "<1", bool(np.all(np.diff(scaled) < 0))),
    ]
    if prob.amplitude.modulated:
        keep = s.resolved
        ratio = s.remainder / (s.d5_supnorm * s.mu**-2.0 * np.log(s.mu))
        slope = float(np.polyfit(np.log(s.mu[keep]), np.log(ratio[keep]), 1)[0])
        lines.append(("normalized_ratio_slope", slope, f"<={tol['ratio_slope']}", slope <= tol["ratio_slope"]))
    print(f"INFO beta_with_log={csvio.fmt(fit.beta_log)} prefers_log={csvio.fmt(fit.prefers_log)} "
          f"flagged={int(fit.flagged.sum())}", file=out)
    return _emit(lines, out)


def _weights_up_to(rs, k):
    rng = range(-k, k + 1)
    for w in itertools.product(rng, repeat=rs.rank):
        if rs.is_dominant(w):
            yield w


def run_characters_experiment(cfg: ExperimentConfig, out=sys.stdout) -> bool:
    rs = root_system(cfg["root_system"])
    weights = list(_weights_up_to(rs, cfg["max_coord"]))
    irs = [irrep(rs, w) for w in weights]
    mismatches = sum(weyl_dimension(rs, w) != sum(weight_multiplicities(rs, w).values()) for w in weights)
    mults = [trivial_multiplicity_in_restriction(ch, TRIVIAL) for ch in irs]
    path = csvio.write_table(cfg.output_dir / f"lie_{rs.label}.csv", "lie", csvio.lie_rows(irs, mults))
    log.info("wrote %s", path)
    G = weyl_integration_gram(irs)
    err = float(np.max(np.abs(G - np.eye(len(irs)))))
    tol = cfg["tolerances"]["orthogonality"]
    return _emit([("dimension_mismatches", mismatches, "0", mismatches == 0),
                  ("orthogonality_error", err, f"<={tol}", err <= tol)], out)


def run_volumes_experiment(cfg: ExperimentConfig, out=sys.stdout) -> bool:
    model = get_model(cfg["model"])
    est = mc_reduced_volume(model, cfg["samples"], cfg.seed)
    exact = reduced_volume(model)
    path = csvio.write_table(cfg.output_dir / f"volumes_{model.name}.csv", "volumes",
                             csvio.volume_rows(model.name, est, exact))
    log.info("wrote %s", path)
    z = abs(est.value - exact) / est.std_error
    k = cfg["tolerances"]["sigmas"]
    return _emit([("volume_sigmas", z, f"<={k}", z <= k)], out)


def list_models(out=sys.stdout) -> None:
    print("name  alias              n  m  kappa  Lambda  H        reduced_volume", file=out)
    for m in MODELS.values():
        print(f"{m.name:<5} {m.alias:<18} {m.n:<2} {m.op_order_m:<2} {m.kappa:<6} {m.lambda_chain:<7} "
              f"{m.principal_isotropy.kind:<8} {csvio.fmt(reduced_volume(m))}", file=out)


RUNNERS = {
    "weyl-law": run_weyl_law_experiment,
    "osc-remainder": run_osc_experiment,
    "characters": run_characters_experiment,
    "volumes": run_volumes_experiment,
}


# argument parsing -------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eqweyl", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log written files to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="YAML config file")
        sp.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config key, e.g. grid.stop=1e6 (repeatable)")
        sp.add_argument("--out", help="output directory (config key output_dir)")
        sp.add_argument("--seed", type=int)

    sp = sub.add_parser("weyl-law", help="averaged counting asymptotics for a model")
    common(sp)
    sp.add_argument("--model")
    sp.add_argument("--theta", type=float)
    sp.add_argument("--C", type=float)
    sp.add_argument("--spectrum", type=float, metavar="LAM", help="also export the spectrum up to LAM")

    sp = sub.add_parser("osc-remainder", help="stationary-phase remainder study")
    common(sp)
    sp.add_argument("--amplitude", choices=("standard", "nonstationary", "modulated", "offcentre"))
    sp.add_argument("--vartheta", type=float)

    sp = sub.add_parser("characters", help="dimension and orthogonality table")
    common(sp)
    sp.add_argument("--root-system")
    sp.add_argument("--max-coord", type=int)

    sp = sub.add_parser("volumes", help="Monte Carlo reduced volume")
    common(sp)
    sp.add_argument("--model")
    sp.add_argument("--samples", type=int)

    sub.add_parser("models", help="list model manifolds")
    return p


FLAG_KEYS = {
    "out": "output_dir", "seed": "seed", "model": "model", "theta": "family.theta", "C": "family.C",
    "amplitude": "amplitude.kind", "vartheta": "amplitude.vartheta", "root_system": "root_system",
    "max_coord": "max_coord", "samples": "samples",
}


def config_from_args(args) -> ExperimentConfig:
    overrides = [parse_assignment(s) for s in args.set]
    for attr, key in FLAG_KEYS.items():
        v = getattr(args, attr, None)
        if v is not None:
            overrides.append((key, v))
    return load_config(args.config, kind=args.command, overrides=overrides)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return EXIT_OK
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.command == "models":
        list_models(out)
        return EXIT_OK
    try:
        cfg = config_from_args(args)
        runner = RUNNERS[cfg.kind]
        ok = runner(cfg, out, args.spectrum) if cfg.kind == "weyl-law" else runner(cfg, out)
    except (ConfigError, DomainError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except EqWeylError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
