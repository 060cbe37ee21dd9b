# Copyright (c) 2026, QCS
# License: see license.txt

from qvortex.config import RunConfig
from qvortex.field_sampler import Space
from qvortex.position_wave import line_cut, packet_width
from qvortex.pulse import require_canonical
from qvortex.vortex_finder import trace_trajectory

TRACKS = ("upper", "lower")

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
        {"label": "Row Type", "fieldname": "row_type", "fieldtype": "Data"},
        {"label": "Track", "fieldname": "track", "fieldtype": "Data"},
        {"label": "Time", "fieldname": "time", "fieldtype": "Float"},
        {"label": "x0", "fieldname": "u", "fieldtype": "Float"},
        {"label": "y0", "fieldname": "v", "fieldtype": "Float"},
        {"label": "Charge", "fieldname": "charge", "fieldtype": "Int"},
        {"label": "|psi| at center", "fieldname": "residual", "fieldtype": "Float"},
    ]

# ──────────────────────────────────────────────────────────────
# DATA
# ──────────────────────────────────────────────────────────────
def get_data(config):
    """
    One "center" row per traced vortex and time.

    In position space each center also gets two "cut" rows: |psi| along x
    through y0 and along y through x0, raw and normalized to their maximum.
    """
    pulse = require_canonical(config.pulse, "vortex tracks")
    descriptors = trace_trajectory(config.times, pulse, config.effective_kind, config.space)
    data = []
    for index, descriptor in enumerate(descriptors):
        track = TRACKS[index % len(TRACKS)]
        data.append(dict(descriptor.as_dict(), row_type="center", track=track))
        if config.space is Space.POSITION:
            data.extend(get_cuts(config, descriptor, track))
    return data


def get_cuts(config, descriptor, track):
    x0, y0 = descriptor.center
    t = descriptor.time
    span = config.output.cut_span or packet_width(t).a
    rows = []
    for axis, through, center in (("x", y0, x0), ("y", x0, y0)):
        coords, b, b_normalized = line_cut(axis, through, t, config.F0, center, span, config.output.cut_nodes)
        rows.append({
            "row_type": "cut",
            "track": track,
            "time": t,
            "axis": axis,
            "through": through,
            "coords": coords.tolist(),
            "b": b.tolist(),
            "b_normalized": b_normalized.tolist(),
        })
    return rows
