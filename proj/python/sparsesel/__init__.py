"""Python access to the sparsesel library."""

import json

from ._core import (
    EmptyEllipsoid,
    InvalidArgument,
    OutOfRange,
    a_asymptotic,
    active_count,
    fourier_coefficients,
    selection_target,
    solve_extremal_exact,
    solve_r_star,
    sparsity_index,
    threshold,
    weights,
)
from . import _core


def _config_text(config=None, **overrides):
    lines = [config] if config else []
    for key, value in overrides.items():
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        elif isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def run_risk(config=None, **overrides):
    """Risk report for a config text plus key = value overrides, as a dict."""
    return json.loads(_core._risk_json(_config_text(config, **overrides)))


def table1(config=None, **overrides):
    """CSV text with one row per (d, alpha) cell."""
    return _core._table1_csv(_config_text(config, **overrides))


def boundary(config=None, **overrides):
    return json.loads(_core._boundary_json(_config_text(config, **overrides)))


def phase_vector(d=500, k=1, beta=0.5, multipliers=(0.5, 1.2), replicates=50, seed=1):
    return json.loads(_core._phase_vector_json(d, k, beta, list(multipliers), replicates, seed))


__all__ = [
    "EmptyEllipsoid",
    "InvalidArgument",
    "OutOfRange",
    "a_asymptotic",
    "active_count",
    "boundary",
    "fourier_coefficients",
    "phase_vector",
    "run_risk",
    "selection_target",
    "solve_extremal_exact",
    "solve_r_star",
    "sparsity_index",
    "table1",
    "threshold",
    "weights",
]
