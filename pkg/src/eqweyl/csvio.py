"""CSV tables and the one-line PASS/FAIL summary protocol.

Floats are written with ``repr`` (shortest round-trip form), so identical
inputs give byte-identical files on every platform with IEEE doubles.
"""
from __future__ import annotations

import csv
import io
import math
from pathlib import Path

SCHEMAS = {
    "lie": ("root_system", "weight_coords", "dim", "restriction_mult"),
    "spectra": ("model", "t", "weight", "mult"),
    "volumes": ("model", "method", "value", "std_error", "seed", "samples"),
    "weyl": ("model", "theta", "C", "lambda", "family_size", "averaged_count", "predicted", "residual"),
    "osc": ("mu", "I_re", "I_im", "leading_re", "leading_im", "remainder_abs", "achieved_tol", "d5_supnorm"),
}


def fmt(v) -> str:
    """Deterministic text form of a cell value."""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (tuple, list)):
        return " ".join(fmt(x) for x in v)
    if hasattr(v, "item"):  # numpy scalar
        v = v.item()
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    return str(v)


def render(schema: str, rows) -> str:
    """CSV text for ``rows`` (sequences in schema column order)."""
    header = SCHEMAS[schema]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        row = tuple(row)
        if len(row) != len(header):
            raise ValueError(f"{schema} rows need {len(header)} columns, got {len(row)}")
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_table(path, schema: str, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render(schema, rows), encoding="utf-8")
    return path


def read_table(path) -> list:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def summary_line(criterion: str, value, threshold, passed: bool) -> str:
    """``PASS|FAIL criterion=<name> value=<v> threshold=<t>``."""
    return f"{'PASS' if passed else 'FAIL'} criterion={criterion} value={fmt(value)} threshold={threshold}"


# row builders ------------------------------------------------------------------
def lie_rows(irreps, restriction_mults):
    for ch, k in zip(irreps, restriction_mults):
        yield ch.root_system.label, ch.highest_weight, ch.dim, k


def spectra_rows(model_name, levels):
    for lev in levels:
        for ch, mult in sorted(lev.mults.items(), key=lambda kv: kv[0].highest_weight):
            yield model_name, lev.t, ch.highest_weight, mult


def volume_rows(model_name, estimate, closed_form):
    yield model_name, "closed_form", float(closed_form), 0.0, "", ""
    yield model_name, "monte_carlo", estimate.value, estimate.std_error, estimate.seed, estimate.samples


def weyl_rows(report):
    pred = report.predicted
    for lam, size, cnt, p in zip(report.lam_grid, report.family_sizes, report.averaged_counts, pred):
        yield report.model, report.theta, report.C, float(lam), size, float(cnt), float(p), float(cnt) - float(p)


def osc_rows(series):
    for k in range(series.mu.size):
        I, L = complex(series.integral[k]), complex(series.leading[k])
        yield (float(series.mu[k]), I.real, I.imag, L.real, L.imag, float(series.remainder[k]),
               float(series.achieved_tol[k]), float(series.d5_supnorm[k]))
