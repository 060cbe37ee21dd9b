# Copyright (c) 2026, QCS
# License: see license.txt

from qvortex.config import RunConfig
from qvortex.momentum_wave import MomentumWavefunctionKind
from qvortex.moments import (
    PositionMomentMode,
    momentum_moments_closed_form,
    momentum_moments_numeric,
    position_moments,
)
from qvortex.pulse import require_canonical

Kind = MomentumWavefunctionKind

# ──────────────────────────────────────────────────────────────
# REPORT ENTRY-POINT
# ──────────────────────────────────────────────────────────────
def execute(filters=None):
    config = filters or RunConfig()
    return get_columns(), get_data(config)

# ──────────────────────────────────────────────────────────────
# COLUMN DEFINITIONS
# ──────────────────────────────────────────────────────────────
def get_columns():
    return [
        {"label": "Row", "fieldname": "label", "fieldtype": "Data"},
        {"label": "Space", "fieldname": "space", "fieldtype": "Data"},
        {"label": "Time", "fieldname": "time", "fieldtype": "Float"},
        {"label": "Method", "fieldname": "method", "fieldtype": "Data"},
        {"label": "Norm", "fieldname": "norm", "fieldtype": "Float"},
        {"label": "Mean u", "fieldname": "mean_u", "fieldtype": "Float"},
        {"label": "Mean v", "fieldname": "mean_v", "fieldtype": "Float"},
        {"label": "Var u", "fieldname": "var_u", "fieldtype": "Float"},
        {"label": "Var v", "fieldname": "var_v", "fieldtype": "Float"},
    ]

# ──────────────────────────────────────────────────────────────
# DATA
# ──────────────────────────────────────────────────────────────
def get_data(config):
    """
    Momentum block: numeric moments of the exact and near-center forms and
    the closed-form dispersions. Position block: closed form and numeric.
    The last row holds the exact/near-center dispersion ratios in the
    var_u and var_v fields.
    """
    t, q = config.t, config.quadrature
    F0 = require_canonical(config.pulse, "the moment table").F0

    exact = momentum_moments_numeric(t, F0, q, Kind.EXACT_CLOSED_FORM)
    approx = momentum_moments_numeric(t, F0, q, Kind.NEAR_CENTER_APPROX)
    closed = momentum_moments_closed_form(t, F0)
    position_closed = position_moments(t, F0, PositionMomentMode.CLOSED_FORM, q)
    position_numeric = position_moments(t, F0, PositionMomentMode.NUMERIC, q)

    data = [
        dict(exact.as_dict(), label="momentum_exact"),
        dict(approx.as_dict(), label="momentum_approx"),
        dict(closed.as_dict(), label="momentum_closed_form"),
        dict(position_closed.as_dict(), label="position_closed_form"),
        dict(position_numeric.as_dict(), label="position_numeric"),
    ]
    data.append({
        "label": "ratio_exact_over_closed_form",
        "space": "k",
        "time": t,
        "method": "ratio",
        "norm": None,
        "mean_u": None,
        "mean_v": None,
        "var_u": exact.var_u / closed.var_u,
        "var_v": exact.var_v / closed.var_v,
    })
    return data
