# Copyright (c) 2026, QCS
# License: see license.txt

"""Run configuration: one JSON document, command-line flags on top.

Example::

    {
        "pulse": {"F0": 0.4},
        "space": "k",
        "kind": "exact",
        "quantity": "density",
        "t": 5.0,
        "grid": {"nx": 400, "ny": 400},
        "output": {"dir": "out", "ppm": true}
    }
"""

import json
from dataclasses import dataclass, field, fields, replace

from qvortex.exceptions import ConfigError, PreconditionError
from qvortex.field_sampler import DEFAULT_NODES, QUANTITIES, GridSpec, SearchRegion, Space, default_grid
from qvortex.momentum_wave import MomentumWavefunctionKind
from qvortex.pulse import PulseParams
from qvortex.quadrature import QuadratureSpec
from qvortex.vortex_finder import CenterMode

Kind = MomentumWavefunctionKind

WINDOW_KEYS = ("xmin", "xmax", "ymin", "ymax")


@dataclass(frozen=True)
class GridConfig:
    nx: int = DEFAULT_NODES
    ny: int = DEFAULT_NODES
    xmin: float = None
    xmax: float = None
    ymin: float = None
    ymax: float = None


@dataclass(frozen=True)
class OutputSpec:
    dir: str = "out"
    csv: bool = True
    ppm: bool = True
    svg: bool = True
    streamlines: int = 12
    cut_span: float = None      # half-length of trace line cuts; None: a(τ)
    cut_nodes: int = 401


@dataclass(frozen=True)
class RunConfig:
    pulse: PulseParams = field(default_factory=lambda: PulseParams(F0=0.4))
    kind: Kind = None           # None: "exact" in k space, "approx" in r space
    space: Space = Space.MOMENTUM
    quantity: str = "density"
    t: float = 5.0
    times: tuple = (5.0, 10.0)
    center_mode: CenterMode = CenterMode.EXACT_BRACKET_ROOT
    search: SearchRegion = SearchRegion.PRINCIPAL_LOBE
    grid: GridConfig = field(default_factory=GridConfig)
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    output: OutputSpec = field(default_factory=OutputSpec)

    @property
    def F0(self):
        return self.pulse.F0

    @property
    def effective_kind(self):
        if self.kind is not None:
            return self.kind
        return Kind.NEAR_CENTER_APPROX if self.space is Space.POSITION else Kind.EXACT_CLOSED_FORM

    def grid_spec(self, t=None):
        g = self.grid
        t = self.t if t is None else t
        if all(getattr(g, key) is None for key in WINDOW_KEYS):
            window = default_grid(self.space, t, self.F0, n=2)
            return GridSpec(window.xmin, window.xmax, window.ymin, window.ymax, g.nx, g.ny)
        return GridSpec(g.xmin, g.xmax, g.ymin, g.ymax, g.nx, g.ny)


# ──────────────────────────────────────────────────────────────
# PARSING
# ──────────────────────────────────────────────────────────────
def _check_keys(data, cls, path):
    if not isinstance(data, dict):
        raise ConfigError("expected an object", field=path or "<root>")
    known = {f.name for f in fields(cls)}
    for key in data:
        if key not in known:
            dotted = f"{path}.{key}" if path else key
            raise ConfigError(f"unknown key; expected one of {sorted(known)}", field=dotted)


def _number(value, path, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", field=path)
    if integer:
        if int(value) != value:
            raise ConfigError(f"expected an integer, got {value!r}", field=path)
        return int(value)
    return float(value)


def _build(cls, data, path, integers=(), booleans=()):
    _check_keys(data, cls, path)
    values = {}
    for key, value in data.items():
        dotted = f"{path}.{key}"
        if value is None:
            values[key] = None
        elif key in booleans:
            if not isinstance(value, bool):
                raise ConfigError(f"expected true or false, got {value!r}", field=dotted)
            values[key] = value
        elif key == "dir":
            if not isinstance(value, str):
                raise ConfigError(f"expected a path string, got {value!r}", field=dotted)
            values[key] = value
        else:
            values[key] = _number(value, dotted, integer=key in integers)
    try:
        return cls(**values)
    except PreconditionError as exc:
        raise ConfigError(str(exc), field=path) from None


def _enum(enum, value, path):
    try:
        return enum(value)
    except ValueError:
        raise ConfigError(f"expected one of {[e.value for e in enum]}, got {value!r}", field=path) from None


def config_from_dict(data):
    _check_keys(data, RunConfig, "")
    config = RunConfig()
    updates = {}
    if "pulse" in data:
        updates["pulse"] = _build(PulseParams, data["pulse"], "pulse")
    if "grid" in data:
        updates["grid"] = _build(GridConfig, data["grid"], "grid", integers=("nx", "ny"))
    if "quadrature" in data:
        updates["quadrature"] = _build(
            QuadratureSpec, data["quadrature"], "quadrature",
            integers=("n_radial", "n_angular", "n_time", "max_doublings"),
        )
    if "output" in data:
        updates["output"] = _build(
            OutputSpec, data["output"], "output",
            integers=("streamlines", "cut_nodes"), booleans=("csv", "ppm", "svg"),
        )
    if data.get("kind") is not None:
        updates["kind"] = _enum(Kind, data["kind"], "kind")
    if "space" in data:
        updates["space"] = _enum(Space, data["space"], "space")
    if "center_mode" in data:
        updates["center_mode"] = _enum(CenterMode, data["center_mode"], "center_mode")
    if "search" in data:
        updates["search"] = _enum(SearchRegion, data["search"], "search")
    if "quantity" in data:
        if data["quantity"] not in QUANTITIES:
            raise ConfigError(f"expected one of {sorted(QUANTITIES)}, got {data['quantity']!r}", field="quantity")
        updates["quantity"] = data["quantity"]
    if "t" in data:
        updates["t"] = _number(data["t"], "t")
    if "times" in data:
        updates["times"] = _times(data["times"], "times")
    return validate(replace(config, **updates))


def _times(value, path):
    if not isinstance(value, (list, tuple)):
        raise ConfigError(f"expected a list of times, got {value!r}", field=path)
    return tuple(_number(item, f"{path}[{i}]") for i, item in enumerate(value))


def validate(config):
    """Cross-field checks shared by the JSON path and flag overrides."""
    if config.space is Space.POSITION and config.effective_kind is not Kind.NEAR_CENTER_APPROX:
        raise ConfigError("position space needs kind 'approx'", field="kind")
    if config.effective_kind is not Kind.GENERIC_QUADRATURE and not config.pulse.is_canonical:
        raise ConfigError(
            f"kind '{config.effective_kind.value}' is a closed form of the canonical pulse "
            "(omega=pi, T=4, alpha=0); use kind 'quad' for other pulses",
            field="kind",
        )
    if config.t < 4:
        raise ConfigError(f"t must be >= 4 (after the pulse), got {config.t}", field="t")
    if not config.times:
        raise ConfigError("time list is empty", field="times")
    g = config.grid
    window = [getattr(g, key) for key in WINDOW_KEYS]
    if any(w is None for w in window) and not all(w is None for w in window):
        raise ConfigError("give all of xmin, xmax, ymin, ymax or none of them", field="grid")
    return config


def load_config(path):
    """Parse a JSON file into a RunConfig; syntax errors carry line and column."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", field=str(path)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return config_from_dict(data)


def apply_overrides(config, F0=None, t=None, times=None, space=None, kind=None, quantity=None, out=None,
                    search=None):
    """Command-line flags win over config keys."""
    updates = {}
    if F0 is not None:
        try:
            updates["pulse"] = replace(config.pulse, F0=F0)
        except PreconditionError as exc:
            raise ConfigError(str(exc), field="pulse.F0") from None
    if t is not None:
        updates["t"] = t
    if times is not None:
        updates["times"] = tuple(times)
    if space is not None:
        updates["space"] = _enum(Space, space, "space")
    if kind is not None:
        updates["kind"] = _enum(Kind, kind, "kind")
    if quantity is not None:
        if quantity not in QUANTITIES:
            raise ConfigError(f"expected one of {sorted(QUANTITIES)}, got {quantity!r}", field="quantity")
        updates["quantity"] = quantity
    if search is not None:
        updates["search"] = _enum(SearchRegion, search, "search")
    if out is not None:
        updates["output"] = replace(config.output, dir=out)
    return validate(replace(config, **updates))
