# Copyright (c) 2026, QCS
# License: see license.txt

"""File writers: CSV grids and tables, PPM heatmaps, SVG quivers, JSON reports.

All writers are deterministic for a given input: floats go out with 17
significant digits and no timestamps are written.
"""

import json
import os

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from qvortex.exceptions import OutputError
from qvortex.utils import get_logger

logger = get_logger(__name__)

FLOAT_FORMAT = "%.17g"
LOG_RANGE = 20.0          # heatmap clip: peak - 20 in ln ρ
ARROW_CAP = 0.9           # arrow length in cells
QUIVER_ARROWS = 25        # arrows per axis
SVG_SIZE = 800
RK4_STEPS = 400


# ──────────────────────────────────────────────────────────────
# PLUMBING
# ──────────────────────────────────────────────────────────────
def ensure_dir(path):
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create output directory {path}: {exc.strerror}") from None
    if not os.access(path, os.W_OK):
        raise OutputError(f"output directory {path} is not writable")
    return path


def _open(path, mode="w"):
    try:
        if "b" in mode:
            return open(path, mode)
        return open(path, mode, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror}") from None


def _fmt(value):
    return FLOAT_FORMAT % value


def _tag(value):
    """Shortest round-trip text of a time for file names: 5 -> "5", 5.1 -> "5.1"."""
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


# ──────────────────────────────────────────────────────────────
# CSV
# ──────────────────────────────────────────────────────────────
def grid_columns(grid):
    """Column names of a grid CSV: u, v, one per scalar channel component, flag."""
    names = ["u", "v"]
    for name, values in grid.channels.items():
        if np.iscomplexobj(values):
            names += [f"{name}_re", f"{name}_im"]
        elif values.ndim == 3:
            names += [f"{name}_u", f"{name}_v"]
        else:
            names.append(name)
    if grid.flags is not None:
        names.append("flag")
    return names


def grid_table(grid):
    """Rows in node order, v fastest."""
    uu, vv = grid.spec.mesh()
    columns = [uu.ravel(), vv.ravel()]
    for values in grid.channels.values():
        if np.iscomplexobj(values):
            columns += [values.real.ravel(), values.imag.ravel()]
        elif values.ndim == 3:
            columns += [values[..., 0].ravel(), values[..., 1].ravel()]
        else:
            columns.append(values.ravel())
    if grid.flags is not None:
        columns.append(grid.flags.ravel().astype(float))
    return np.column_stack(columns)


def write_grid_csv(path, grid):
    with _open(path) as handle:
        handle.write(f"# {grid.space.value},{_fmt(grid.time)},{grid.quantity}\n")
        handle.write(",".join(grid_columns(grid)) + "\n")
        np.savetxt(handle, grid_table(grid), fmt=FLOAT_FORMAT, delimiter=",")
    logger.info("wrote %s (%dx%d %s)", path, grid.spec.nx, grid.spec.ny, grid.quantity)
    return path


def write_table_csv(path, header, rows):
    with _open(path) as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(str(cell) if isinstance(cell, (int, str)) else _fmt(cell) for cell in row) + "\n")
    logger.info("wrote %s (%d rows)", path, len(rows))
    return path


# ──────────────────────────────────────────────────────────────
# PPM
# ──────────────────────────────────────────────────────────────
_RAMP = np.array([
    [0, 0, 0],
    [128, 0, 0],
    [255, 64, 0],
    [255, 200, 0],
    [255, 255, 255],
], dtype=float)


def log_density_image(grid):
    """RGB array (ny, nx, 3) of ln ρ clipped at peak - 20, highest v on top."""
    if "ln_rho" in grid.channels:
        ln_rho = grid.channels["ln_rho"]
    else:
        with np.errstate(divide="ignore"):
            ln_rho = np.log(grid.channels["rho"])
    peak = np.nanmax(ln_rho)
    level = (np.clip(np.nan_to_num(ln_rho, nan=-np.inf), peak - LOG_RANGE, peak) - (peak - LOG_RANGE)) / LOG_RANGE
    stops = np.linspace(0.0, 1.0, len(_RAMP))
    rgb = np.stack([np.interp(level, stops, _RAMP[:, c]) for c in range(3)], axis=-1)
    return np.rint(rgb).astype(np.uint8).transpose(1, 0, 2)[::-1]


def write_ppm(path, grid):
    image = log_density_image(grid)
    height, width, _ = image.shape
    with _open(path, "wb") as handle:
        handle.write(f"P6\n{width} {height}\n255\n".encode("ascii"))
        handle.write(image.tobytes())
    logger.info("wrote %s", path)
    return path


# ──────────────────────────────────────────────────────────────
# SVG
# ──────────────────────────────────────────────────────────────
class _Canvas:
    def __init__(self, spec, size=SVG_SIZE):
        self.spec = spec
        self.size = size

    def __call__(self, u, v):
        s = self.spec
        px = (u - s.xmin) / (s.xmax - s.xmin) * self.size
        py = self.size - (v - s.ymin) / (s.ymax - s.ymin) * self.size
        return f"{px:.2f}", f"{py:.2f}"


def quiver_arrows(grid, per_axis=QUIVER_ARROWS):
    """(u, v, du, dv) of sub-sampled arrows, lengths capped at 0.9 arrow cell."""
    spec = grid.spec
    velocity = grid.channels["v"]
    stride_x, stride_y = max(1, spec.nx // per_axis), max(1, spec.ny // per_axis)
    u, v = spec.u[::stride_x], spec.v[::stride_y]
    field = velocity[::stride_x, ::stride_y]
    speed = np.hypot(field[..., 0], field[..., 1])
    peak = np.nanmax(speed) if np.any(np.isfinite(speed)) else 0.0
    cell = min(stride_x * (spec.xmax - spec.xmin) / (spec.nx - 1), stride_y * (spec.ymax - spec.ymin) / (spec.ny - 1))
    arrows = []
    for i in range(len(u)):
        for j in range(len(v)):
            if not np.isfinite(speed[i, j]) or peak == 0 or speed[i, j] == 0:
                continue
            length = ARROW_CAP * cell * speed[i, j] / peak
            direction = field[i, j] / speed[i, j]
            arrows.append((u[i], v[j], length * direction[0], length * direction[1]))
    return arrows


def streamline(interpolate, start, spec, step, n_steps=RK4_STEPS):
    """RK4 along the unit velocity direction; stops at the window edge or a core."""

    def direction(point):
        vel = interpolate(point)
        norm = np.hypot(*vel)
        if not np.isfinite(norm) or norm == 0:
            return None
        return vel / norm

    def rk4(p):
        stages = []
        for fraction in (0.0, 0.5, 0.5, 1.0):
            k = direction(p + fraction * step * stages[-1]) if stages else direction(p)
            if k is None:
                return None
            stages.append(k)
        k1, k2, k3, k4 = stages
        return p + step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    points = [np.asarray(start, dtype=float)]
    for _ in range(n_steps):
        nxt = rk4(points[-1])
        if nxt is None or not (spec.xmin <= nxt[0] <= spec.xmax and spec.ymin <= nxt[1] <= spec.ymax):
            break
        points.append(nxt)
    return points


def _interpolator(grid):
    spec = grid.spec
    velocity = grid.channels["v"]
    fu = RegularGridInterpolator((spec.u, spec.v), velocity[..., 0], bounds_error=False, fill_value=np.nan)
    fv = RegularGridInterpolator((spec.u, spec.v), velocity[..., 1], bounds_error=False, fill_value=np.nan)
    return lambda p: np.array([fu(p)[0], fv(p)[0]])


def streamline_seeds(spec, count):
    """Seeds on a circle of a quarter window around the window center."""
    cu, cv = 0.5 * (spec.xmin + spec.xmax), 0.5 * (spec.ymin + spec.ymax)
    radius = 0.25 * min(spec.xmax - spec.xmin, spec.ymax - spec.ymin)
    theta = 2 * np.pi * np.arange(count) / max(count, 1)
    return [(cu + radius * np.cos(th), cv + radius * np.sin(th)) for th in theta]


def write_svg_quiver(path, grid, streamlines=12):
    spec = grid.spec
    to_px = _Canvas(spec)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'<desc>{grid.space.value} space, t={_fmt(grid.time)}, window '
        f'[{_fmt(spec.xmin)}, {_fmt(spec.xmax)}]x[{_fmt(spec.ymin)}, {_fmt(spec.ymax)}]</desc>',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if streamlines:
        interpolate = _interpolator(grid)
        for seed in streamline_seeds(spec, streamlines):
            points = streamline(interpolate, seed, spec, step=0.5 * spec.step * max(1, spec.nx // 100))
            if len(points) > 1:
                coords = " ".join(",".join(to_px(*p)) for p in points)
                parts.append(f'<polyline class="streamline" points="{coords}" fill="none" stroke="#4a90d9" stroke-width="1"/>')
    for u, v, du, dv in quiver_arrows(grid):
        x1, y1 = to_px(u, v)
        x2, y2 = to_px(u + du, v + dv)
        parts.append(f'<line class="arrow" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="1"/>')
        parts.append(f'<circle cx="{x2}" cy="{y2}" r="1.5" fill="black"/>')
    for u, v in grid.flagged_nodes():
        cx, cy = to_px(u, v)
        parts.append(f'<circle class="singular" cx="{cx}" cy="{cy}" r="5" fill="none" stroke="red" stroke-width="2"/>')
    parts.append("</svg>")
    with _open(path) as handle:
        handle.write("\n".join(parts) + "\n")
    logger.info("wrote %s", path)
    return path


# ──────────────────────────────────────────────────────────────
# JSON
# ──────────────────────────────────────────────────────────────
def _finite(value):
    """Copy of a JSON payload with NaN and infinities replaced by null."""
    if isinstance(value, dict):
        return {key: _finite(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(item) for item in value]
    if isinstance(value, (float, np.floating)):
        return float(value) if np.isfinite(value) else None
    return value


def write_json(path, payload):
    """Strict JSON: non-finite floats are written as null."""
    with _open(path) as handle:
        json.dump(_finite(payload), handle, indent=2, allow_nan=False)
        handle.write("\n")
    logger.info("wrote %s", path)
    return path


# ──────────────────────────────────────────────────────────────
# REPORT WRITERS (registered in hooks.writers)
# ──────────────────────────────────────────────────────────────
def _stem(config, name):
    return f"{name}_{config.space.value}_t{_tag(config.t)}"


def write_field_report(columns, data, config):
    """One CSV per grid, plus the heatmap and quiver the quantity supports."""
    out = ensure_dir(config.output.dir)
    written = []
    for grid in data:
        stem = os.path.join(out, f"{grid.quantity}_{grid.space.value}_t{_tag(grid.time)}")
        if config.output.csv:
            written.append(write_grid_csv(stem + ".csv", grid))
        if config.output.ppm and ("ln_rho" in grid.channels or "rho" in grid.channels):
            written.append(write_ppm(stem + ".ppm", grid))
        if config.output.svg and "v" in grid.channels:
            written.append(write_svg_quiver(stem + ".svg", grid, config.output.streamlines))
    return written


def write_json_report(columns, data, config, name="report"):
    out = ensure_dir(config.output.dir)
    payload = {
        "columns": [c["fieldname"] for c in columns],
        "rows": data,
    }
    return [write_json(os.path.join(out, _stem(config, name) + ".json"), payload)]


def write_trace_report(columns, data, config):
    """Trajectory CSV (t, x0, y0, charge) and one line-cut CSV per time and axis."""
    out = ensure_dir(config.output.dir)
    trajectory = [row for row in data if row["row_type"] == "center"]
    written = [write_table_csv(
        os.path.join(out, f"trace_{config.space.value}.csv"),
        ["t", "x0", "y0", "charge"],
        [(row["time"], row["u"], row["v"], row["charge"]) for row in trajectory],
    )]
    for row in data:
        if row["row_type"] != "cut":
            continue
        written.append(write_table_csv(
            os.path.join(out, f"cut_{row['axis']}_t{_tag(row['time'])}_{row['track']}.csv"),
            ["coord", f"b_{row['axis']}", f"b_{row['axis']}_normalized"],
            list(zip(row["coords"], row["b"], row["b_normalized"])),
        ))
    return written


def write_centers_report(columns, data, config):
    return write_json_report(columns, data, config, name="centers")


def write_moments_report(columns, data, config):
    return write_json_report(columns, data, config, name="moments")
