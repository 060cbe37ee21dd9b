# Copyright (c) 2026, QCS
# License: see license.txt

from qvortex.config import RunConfig
from qvortex.export import grid_columns
from qvortex.field_sampler import QUANTITIES
from qvortex.utils import get_logger

logger = get_logger(__name__)

# ──────────────────────────────────────────────────────────────
# REPORT ENTRY-POINT
# ──────────────────────────────────────────────────────────────
def execute(filters=None):
    """
    Script Report entry point. Returns (columns, data).

    - One grid of the requested quantity (density, phase, flux, velocity).
    - Data is a list of FieldGrid objects; the writer turns each into
      CSV and, where the quantity allows, a heatmap and a quiver.
    """
    config = filters or RunConfig()
    data = get_data(config)
    return get_columns(data[0]), data

# ──────────────────────────────────────────────────────────────
# COLUMN DEFINITIONS
# ──────────────────────────────────────────────────────────────
def get_columns(grid):
    columns = []
    for name in grid_columns(grid):
        fieldtype = "Check" if name == "flag" else "Float"
        columns.append({"label": name, "fieldname": name, "fieldtype": fieldtype})
    return columns

# ──────────────────────────────────────────────────────────────
# DATA
# ──────────────────────────────────────────────────────────────
def get_data(config):
    spec = config.grid_spec()
    sampler = QUANTITIES[config.quantity]
    options = {} if config.quantity == "phase" else {"region": config.search}
    grid = sampler(config.effective_kind, spec, config.t, config.pulse, config.space, **options)
    logger.info(
        "%s grid in %s space: t=%g F0=%g, window [%g, %g]x[%g, %g]",
        config.quantity, config.space.value, config.t, config.F0, spec.xmin, spec.xmax, spec.ymin, spec.ymax,
    )
    return [grid]
