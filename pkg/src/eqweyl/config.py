"""Experiment configuration: a YAML key-value tree with validated defaults.

Every tolerance used by a PASS/FAIL decision lives here so thresholds are
auditable from the config file alone.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass
from pathlib import Path

import yaml

from .errors import ConfigError, DomainError
from .lie.roots import SUPPORTED_LABELS
from .models import get_model

KINDS = ("weyl-law", "osc-remainder", "characters", "volumes")
AMPLITUDES = ("standard", "nonstationary", "modulated", "offcentre")

DEFAULTS = {
    "weyl-law": {
        "model": "M1",
        "family": {"theta": 0.05, "C": 1.0},
        "grid": {"start": 1e3, "stop": 1e7, "per_decade": 16},
        "tolerances": None,  # per-model defaults from the estimator
    },
    "osc-remainder": {
        "amplitude": {"kind": "standard", "vartheta": 0.0},
        "grid": {"start": 8.0, "stop": 128.0, "per_decade": 8},
        "quad": {"rtol": 1e-8, "atol": 1e-15, "max_refinements": 5},
        "tolerances": {"beta_min": 1.7, "beta_max": 2.4, "achieved_tol": 1e-8, "ratio_slope": 0.1},
    },
    "characters": {
        "root_system": "A1",
        "max_coord": 10,
        "tolerances": {"orthogonality": 1e-6},
    },
    "volumes": {
        "model": "M1",
        "samples": 1_000_000,
        "tolerances": {"sigmas": 3.0},
    },
}
COMMON = {"seed": 12345, "output_dir": "out"}


def _merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in over.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _merge(out[k], v)
        else:
            out[k] = v
    return out


def set_dotted(tree: dict, dotted: str, value) -> None:
    """Assign ``tree[a][b][c] = value`` for ``dotted = "a.b.c"``."""
    keys = dotted.split(".")
    node = tree
    for k in keys[:-1]:
        if not isinstance(node.get(k), dict):
            node[k] = {}
        node = node[k]
    node[keys[-1]] = value


def parse_assignment(text: str):
    """``"a.b=value"`` -> ``("a.b", yaml-parsed value)``."""
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise ConfigError("--set", f"expected KEY=VALUE, got {text!r}")
    return key.strip(), yaml.safe_load(raw)


def _require(cond, field, msg):
    if not cond:
        raise ConfigError(field, msg)


def _number(tree, field, positive=False, integer=False):
    """Validate (and normalize in place) a numeric leaf given by a dotted path.

    YAML 1.1 reads ``1e6`` as a string, so numeric strings are converted.
    """
    *path, leaf = field.split(".")
    node = tree
    for k in path:
        node = node.get(k) if isinstance(node, dict) else None
    _require(isinstance(node, dict) and leaf in node, field, "missing")
    value = node[leaf]
    if isinstance(value, str):
        try:
            value = float(value)
        except ValueError:
            raise ConfigError(field, f"expected a number, got {value!r}") from None
        if integer and value.is_integer():
            value = int(value)
    ok_type = isinstance(value, int) if integer else isinstance(value, (int, float))
    _require(ok_type and not isinstance(value, bool), field,
             f"expected {'an integer' if integer else 'a number'}, got {value!r}")
    if positive:
        _require(value > 0, field, f"must be positive, got {value!r}")
    node[leaf] = value
    return value


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    tree: dict

    def __getitem__(self, key):
        return self.tree[key]

    def get(self, key, default=None):
        return self.tree.get(key, default)

    @property
    def seed(self) -> int:
        return self.tree["seed"]

    @property
    def output_dir(self) -> Path:
        return Path(self.tree["output_dir"])

    def to_yaml(self) -> str:
        return yaml.safe_dump({"kind": self.kind, **self.tree}, sort_keys=True)


def build_config(kind: str, tree: dict | None = None) -> ExperimentConfig:
    """Merge ``tree`` onto the defaults for ``kind`` and validate."""
    _require(kind in KINDS, "kind", f"must be one of {KINDS}, got {kind!r}")
    merged = _merge(_merge(COMMON, DEFAULTS[kind]), {k: v for k, v in (tree or {}).items() if k != "kind"})
    validate(kind, merged)
    return ExperimentConfig(kind, merged)


def load_config(path, kind: str | None = None, overrides=()) -> ExperimentConfig:
    """Read a YAML file, apply ``(dotted_key, value)`` overrides and validate."""
    try:
        text = Path(path).read_text(encoding="utf-8") if path else ""
    except OSError as exc:
        raise ConfigError("--config", f"cannot read {path}: {exc.strerror}") from None
    try:
        tree = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise ConfigError("<file>", f"invalid YAML: {exc}") from None
    _require(isinstance(tree, dict), "<file>", "top level must be a mapping")
    file_kind = tree.get("kind")
    if kind and file_kind and file_kind != kind:
        raise ConfigError("kind", f"config is for {file_kind!r}, not {kind!r}")
    kind = kind or file_kind
    for key, value in overrides:
        set_dotted(tree, key, value)
    return build_config(kind, tree)


def validate(kind: str, t: dict) -> None:
    _number(t, "seed", integer=True)
    _require(t["seed"] >= 0, "seed", "must be non-negative")
    _require(isinstance(t.get("output_dir"), str), "output_dir", "expected a path string")
    if "grid" in DEFAULTS[kind]:
        start = _number(t, "grid.start", positive=True)
        stop = _number(t, "grid.stop", positive=True)
        _number(t, "grid.per_decade", positive=True, integer=True)
        _require(start < stop, "grid.stop", f"must exceed grid.start ({start} >= {stop})")
    if kind == "weyl-law":
        try:
            model = get_model(t.get("model"))
        except DomainError as exc:
            raise ConfigError("model", str(exc)) from None
        theta = _number(t, "family.theta")
        _number(t, "family.C", positive=True)
        bound = 1 / ((2 * model.kappa + 3) * model.op_order_m)
        _require(0 <= theta < bound, "family.theta", f"must lie in [0, {bound:g}) for {model.name}, got {theta}")
        tol = t.get("tolerances")
        if tol is not None:
            _require(isinstance(tol, dict), "tolerances", "expected a mapping")
            for k in tol:
                _require(k in ("exponent", "coefficient", "remainder"), f"tolerances.{k}", "unknown tolerance")
                _number(t, f"tolerances.{k}", positive=True)
    elif kind == "osc-remainder":
        amp = t.get("amplitude")
        _require(isinstance(amp, dict) and amp.get("kind") in AMPLITUDES, "amplitude.kind",
                 f"must be one of {AMPLITUDES}")
        vt = _number(t, "amplitude.vartheta")
        _require(0 <= vt < 0.2, "amplitude.vartheta", f"must lie in [0, 0.2), got {vt}")
        _require(amp["kind"] == "modulated" or vt == 0, "amplitude.vartheta", "only modulated amplitudes take a rate")
        _number(t, "quad.rtol", positive=True)
        _number(t, "quad.atol")
        _number(t, "quad.max_refinements", positive=True, integer=True)
        for k in ("beta_min", "beta_max", "achieved_tol", "ratio_slope"):
            _number(t, f"tolerances.{k}")
        _require(t["grid"]["start"] >= 8 and t["grid"]["stop"] <= 128, "grid", "mu grid must lie in [8, 128]")
    elif kind == "characters":
        _require(t.get("root_system") in SUPPORTED_LABELS, "root_system", f"must be one of {SUPPORTED_LABELS}")
        mc = _number(t, "max_coord", integer=True)
        _require(0 <= mc <= 10, "max_coord", "must lie in [0, 10]")
        _number(t, "tolerances.orthogonality", positive=True)
    elif kind == "volumes":
        try:
            get_model(t.get("model"))
        except DomainError as exc:
            raise ConfigError("model", str(exc)) from None
        _number(t, "samples", positive=True, integer=True)
        _number(t, "tolerances.sigmas", positive=True)
