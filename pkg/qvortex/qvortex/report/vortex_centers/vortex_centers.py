# Copyright (c) 2026, QCS
# License: see license.txt

import numpy as np

from qvortex.config import RunConfig
from qvortex.exceptions import DegenerateZeroSet, NonConvergence
from qvortex.field_sampler import Space, wavefunction_grid
from qvortex.momentum_wave import MomentumWavefunctionKind
from qvortex.pulse import require_canonical
from qvortex.utils import get_logger
from qvortex.vortex_finder import find_zeros, momentum_centers_closed_form, position_centers, refine_zero

logger = get_logger(__name__)

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
        {"label": "Source", "fieldname": "source", "fieldtype": "Data"},
        {"label": "Space", "fieldname": "space", "fieldtype": "Data"},
        {"label": "Time", "fieldname": "time", "fieldtype": "Float"},
        {"label": "u", "fieldname": "u", "fieldtype": "Float"},
        {"label": "v", "fieldname": "v", "fieldtype": "Float"},
        {"label": "Charge", "fieldname": "charge", "fieldtype": "Int"},
        {"label": "|psi| at center", "fieldname": "residual", "fieldtype": "Float"},
        {"label": "Refined - closed form (u)", "fieldname": "delta_u", "fieldtype": "Float"},
        {"label": "Refined - closed form (v)", "fieldname": "delta_v", "fieldtype": "Float"},
    ]

# ──────────────────────────────────────────────────────────────
# DATA
# ──────────────────────────────────────────────────────────────
def get_data(config):
    """
    Closed-form centers first, then the numerically refined ones.

    - Seeds come from a plaquette scan of the configured grid, limited to
      the configured search region; the quadrature wavefunction is too
      slow to grid, so it is seeded from the closed-form centers instead.
    - Seeds that land on a nodal line or do not converge are skipped with
      a warning; seeds that converge onto the same zero give one row.
    - Each refined center carries its offset from the nearest closed form.
    """
    pulse = require_canonical(config.pulse, "closed-form centers")
    closed = get_closed_form(config)
    seeds = get_seeds(config, closed)
    kind = config.effective_kind
    cell = config.grid_spec().step

    data = [dict(d.as_dict(), source="closed_form", delta_u=0.0, delta_v=0.0) for d in closed]
    found = []
    for seed in seeds:
        try:
            refined = refine_zero(seed, config.t, pulse, kind, config.space)
        except (DegenerateZeroSet, NonConvergence) as exc:
            logger.warning("seed %s skipped: %s", tuple(seed), exc)
            continue
        if any(np.hypot(*np.subtract(d.center, refined.center)) < cell for d in found):
            continue
        found.append(refined)
        nearest = min(closed, key=lambda d: np.hypot(d.center[0] - refined.center[0], d.center[1] - refined.center[1]))
        data.append(dict(
            refined.as_dict(),
            source="refined",
            delta_u=refined.center[0] - nearest.center[0],
            delta_v=refined.center[1] - nearest.center[1],
        ))
    return data


def get_closed_form(config):
    if config.space is Space.MOMENTUM:
        return momentum_centers_closed_form(config.F0, config.t, config.effective_kind)
    return position_centers(config.F0, config.t, config.center_mode)


def get_seeds(config, closed):
    if config.effective_kind is MomentumWavefunctionKind.GENERIC_QUADRATURE:
        return [d.center for d in closed]
    grid = wavefunction_grid(config.effective_kind, config.grid_spec(), config.t, config.pulse, config.space)
    seeds = [seed.point for seed in find_zeros(grid, region=config.search)]
    if not seeds:
        logger.warning("plaquette scan found no vortices in the window; seeding from closed forms")
        return [d.center for d in closed]
    return seeds
