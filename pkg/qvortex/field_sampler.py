# Copyright (c) 2026, QCS
# License: see license.txt

"""Densities, phases, symmetric flux and velocity fields on rectangular grids.

Grids are stored with shape (nx, ny): the first index runs along u (kx or x),
the second along v, so flattening in C order gives rows with v varying
fastest.

Every wavefunction here takes ``(u, v, t, pulse)``. ``pulse`` is a
PulseParams or a bare F0, which means the canonical pulse; the closed forms
refuse any other pulse.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from qvortex.exceptions import PreconditionError, SingularNode
from qvortex.momentum_wave import (
    MomentumWavefunctionKind,
    grad_psi_approx,
    grad_psi_exact,
    psi_approx,
    psi_exact,
    psi_generic,
)
from qvortex.position_wave import grad_psi_pos, log_modulus_position, packet_width, phase_position, psi_pos
from qvortex.pulse import CANONICAL_T, PI, as_pulse, require_canonical
from qvortex.utils import get_logger, parallel_rows, wrap_phase

logger = get_logger(__name__)

Kind = MomentumWavefunctionKind

DEFAULT_NODES = 400
MOMENTUM_HALF_WIDTH = 4.0
DENSITY_FLOOR = 1e-24           # relative to the peak density
FD_STEP = 1e-5
QUAD_NODE_LIMIT = 10_000        # each quadrature node costs a few ms
LOBE_INNER = PI                 # k²+1 bounds of the principal lobe
LOBE_OUTER = 3 * PI


class Space(str, Enum):
    MOMENTUM = "k"
    POSITION = "r"


class SearchRegion(str, Enum):
    """Where windings and core flags are looked for.

    ``lobe`` keeps momentum space inside π < k²+1 < 3π: ψ vanishes on the
    whole rings k²+1 = π, 3π, 5π, which are nodal lines and not vortices.
    ``window`` scans every cell. Position space has no rings, so both
    behave the same there.
    """

    PRINCIPAL_LOBE = "lobe"
    WINDOW = "window"


# ──────────────────────────────────────────────────────────────
# GRID TYPES
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class GridSpec:
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    nx: int = DEFAULT_NODES
    ny: int = DEFAULT_NODES

    def __post_init__(self):
        if not self.xmax > self.xmin or not self.ymax > self.ymin:
            raise PreconditionError(f"empty grid window {self}")
        if self.nx < 2 or self.ny < 2:
            raise PreconditionError(f"grids need at least 2 nodes per axis, got {self.nx}x{self.ny}")

    @property
    def u(self):
        return np.linspace(self.xmin, self.xmax, self.nx)

    @property
    def v(self):
        return np.linspace(self.ymin, self.ymax, self.ny)

    @property
    def step(self):
        return min((self.xmax - self.xmin) / (self.nx - 1), (self.ymax - self.ymin) / (self.ny - 1))

    def mesh(self):
        return np.meshgrid(self.u, self.v, indexing="ij")


@dataclass
class FieldGrid:
    spec: GridSpec
    space: Space
    time: float
    quantity: str
    channels: dict = field(default_factory=dict)    # name -> (nx, ny) or (nx, ny, 2)
    flags: np.ndarray = None                         # (nx, ny) bool, singular nodes

    @property
    def payload(self):
        return next(iter(self.channels.values()))

    def flagged_nodes(self):
        if self.flags is None:
            return []
        u, v = self.spec.u, self.spec.v
        return [(float(u[i]), float(v[j])) for i, j in zip(*np.nonzero(self.flags))]


def default_grid(space, t=5.0, pulse=0.4, n=DEFAULT_NODES):
    """Figure windows: momentum ±4; position centered on the upper vortex, half-width 3a(τ)."""
    if Space(space) is Space.MOMENTUM:
        h = MOMENTUM_HALF_WIDTH
        return GridSpec(-h, h, -h, h, n, n)
    from qvortex.vortex_finder import CenterMode, position_centers

    upper = position_centers(as_pulse(pulse).F0, t, CenterMode.EXACT_BRACKET_ROOT)[0]
    x0, y0 = upper.center
    h = 3 * packet_width(t).a
    return GridSpec(x0 - h, x0 + h, y0 - h, y0 + h, n, n)


# ──────────────────────────────────────────────────────────────
# DISPATCH
# ──────────────────────────────────────────────────────────────
def _closed(function, what):
    def bound(u, v, t, pulse):
        return function(u, v, t, require_canonical(pulse, what).F0)

    return bound


def _generic(kx, ky, t, pulse):
    return psi_generic(kx, ky, t, as_pulse(pulse))


_MOMENTUM_FORMS = {
    Kind.EXACT_CLOSED_FORM: (_closed(psi_exact, "kind 'exact'"), _closed(grad_psi_exact, "kind 'exact'")),
    Kind.NEAR_CENTER_APPROX: (_closed(psi_approx, "kind 'approx'"), _closed(grad_psi_approx, "kind 'approx'")),
    Kind.GENERIC_QUADRATURE: (_generic, None),
}
_POSITION_FORMS = (_closed(psi_pos, "position space"), _closed(grad_psi_pos, "position space"))


def wavefunction(kind, space):
    """(ψ, ∇ψ) array functions for a kind/space combination; ∇ψ is None without a closed form."""
    kind, space = Kind(kind), Space(space)
    if space is Space.POSITION:
        if kind is not Kind.NEAR_CENTER_APPROX:
            raise PreconditionError("position space is available for the near-center form only (kind 'approx')")
        return _POSITION_FORMS
    return _MOMENTUM_FORMS[kind]


def carrier_phase(space, u, v, t, pulse=None):
    """(θ, ∂θ/∂u, ∂θ/∂v) of the fast radial phase e^{iθ} carried by ψ.

    Momentum space: θ = (T/4 - t/2)(kx²+ky²). Position space:
    θ = πτr²/(2a²). Dividing it out leaves the zeros in place and makes
    ψ·e^{-iθ} slowly varying near them.
    """
    if Space(space) is Space.MOMENTUM:
        period = CANONICAL_T if pulse is None else as_pulse(pulse).T
        rate = period / 4 - 0.5 * t
    else:
        width = packet_width(t)
        rate = PI * width.tau / (2 * width.a2)
    return rate * (u * u + v * v), 2 * rate * u, 2 * rate * v


def _check_quadrature_grid(spec):
    nodes = spec.nx * spec.ny
    if nodes > QUAD_NODE_LIMIT:
        raise PreconditionError(
            f"kind 'quad' evaluates a double quadrature per node; {spec.nx}x{spec.ny} = {nodes} nodes "
            f"exceeds {QUAD_NODE_LIMIT}, pass a smaller grid (e.g. nodes: 64)"
        )
    if np.any(np.isclose(spec.u, 0.0, rtol=0.0, atol=1e-15)) and np.any(np.isclose(spec.v, 0.0, rtol=0.0, atol=1e-15)):
        raise PreconditionError("kind 'quad' is undefined at k = 0; use an even node count so no node sits on the origin")
    logger.info("quadrature grid: %d nodes", nodes)


def sample_psi(kind, spec, t, pulse, space=Space.MOMENTUM):
    psi, _ = wavefunction(kind, space)
    if Kind(kind) is Kind.GENERIC_QUADRATURE:
        _check_quadrature_grid(spec)
    v = spec.v
    return parallel_rows(lambda xs: psi(xs[:, None], v[None, :], t, pulse), spec.u)


@lru_cache(maxsize=32)
def _peak(kind, space, t, pulse):
    psi, _ = wavefunction(kind, space)
    # even node counts keep the k = 0 node out, where the quadrature form is undefined
    n = 20 if kind is Kind.GENERIC_QUADRATURE else 80
    uu, vv = default_grid(space, t, pulse, n=n).mesh()
    return float(np.max(np.abs(psi(uu, vv, t, pulse)) ** 2))


def reference_peak(kind, space, t, pulse):
    """Peak density over the default window, sampled coarsely."""
    return _peak(Kind(kind), Space(space), float(t), as_pulse(pulse))


# ──────────────────────────────────────────────────────────────
# SEARCH REGION
# ──────────────────────────────────────────────────────────────
def search_nodes(spec, space, region=SearchRegion.PRINCIPAL_LOBE):
    """(nx, ny) bool mask of the nodes that may carry a core flag."""
    if Space(space) is Space.POSITION or SearchRegion(region) is SearchRegion.WINDOW:
        return np.ones((spec.nx, spec.ny), dtype=bool)
    uu, vv = spec.mesh()
    s = uu * uu + vv * vv + 1.0
    return (s > LOBE_INNER) & (s < LOBE_OUTER)


def search_cells(spec, space, region=SearchRegion.PRINCIPAL_LOBE):
    """(nx-1, ny-1) bool mask of the cells whose four corners are all searchable."""
    nodes = search_nodes(spec, space, region)
    return nodes[:-1, :-1] & nodes[1:, :-1] & nodes[1:, 1:] & nodes[:-1, 1:]


# ──────────────────────────────────────────────────────────────
# POINT OPERATIONS
# ──────────────────────────────────────────────────────────────
def wavefunction_gradient(kind, point, t, pulse, space=Space.MOMENTUM, method="analytic", h=FD_STEP):
    """(∂ψ/∂u, ∂ψ/∂v) at ``point``; ``method="central"`` uses central differences."""
    psi, grad = wavefunction(kind, space)
    u, v = point
    if method == "analytic" and grad is not None:
        du, dv = grad(u, v, t, pulse)
        return complex(du), complex(dv)
    du = (psi(u + h, v, t, pulse) - psi(u - h, v, t, pulse)) / (2 * h)
    dv = (psi(u, v + h, t, pulse) - psi(u, v - h, t, pulse)) / (2 * h)
    return complex(du), complex(dv)


def symmetric_flux(point, t, pulse, kind=Kind.EXACT_CLOSED_FORM, space=Space.MOMENTUM):
    """j = Im[ψ* ∇ψ]."""
    psi, _ = wavefunction(kind, space)
    value = complex(psi(point[0], point[1], t, pulse))
    du, dv = wavefunction_gradient(kind, point, t, pulse, space)
    conj = value.conjugate()
    return np.array([(conj * du).imag, (conj * dv).imag])


def velocity_field(point, t, pulse, kind=Kind.EXACT_CLOSED_FORM, space=Space.MOMENTUM,
                   floor=DENSITY_FLOOR, peak=None):
    """v = j/ρ; raises SingularNode when ρ is at or below ``floor`` × peak density."""
    psi, _ = wavefunction(kind, space)
    rho = abs(complex(psi(point[0], point[1], t, pulse))) ** 2
    peak = reference_peak(kind, space, t, pulse) if peak is None else peak
    if rho <= floor * peak:
        raise SingularNode(tuple(point), rho)
    return symmetric_flux(point, t, pulse, kind, space) / rho


def _ring(center, radius, n):
    theta = 2 * np.pi * np.arange(n) / n
    return theta, center[0] + radius * np.cos(theta), center[1] + radius * np.sin(theta)


def circulation(center, radius, t, pulse, kind=Kind.EXACT_CLOSED_FORM, space=Space.MOMENTUM, n=256):
    """∮ v·dl counterclockwise on a circle; 2π times the enclosed charge."""
    theta, us, vs = _ring(center, radius, n)
    total = 0.0
    for th, u, v in zip(theta, us, vs):
        vel = velocity_field((u, v), t, pulse, kind, space)
        total += radius * (-vel[0] * math.sin(th) + vel[1] * math.cos(th))
    return total * 2 * np.pi / n


def solenoidal_fraction(center, radius, t, pulse, kind=Kind.NEAR_CENTER_APPROX, space=Space.POSITION, n=64):
    """Mean |v_θ|/|v| on a circle: 1 for a purely circulating field."""
    theta, us, vs = _ring(center, radius, n)
    fractions = []
    for th, u, v in zip(theta, us, vs):
        vel = velocity_field((u, v), t, pulse, kind, space)
        azimuthal = -vel[0] * math.sin(th) + vel[1] * math.cos(th)
        fractions.append(abs(azimuthal) / math.hypot(vel[0], vel[1]))
    return float(np.mean(fractions))


def zero_nondegeneracy(kind, point, t, pulse, space=Space.MOMENTUM):
    """|Im(ψ_u* ψ_v)| / (|ψ_u||ψ_v|) at a zero: 1 for a clean vortex, 0 on a nodal line.

    Zero when either partial derivative vanishes.
    """
    du, dv = wavefunction_gradient(kind, point, t, pulse, space)
    scale = abs(du) * abs(dv)
    if scale == 0.0:
        return 0.0
    return abs((du.conjugate() * dv).imag) / scale


# ──────────────────────────────────────────────────────────────
# PLAQUETTES
# ──────────────────────────────────────────────────────────────
def plaquette_windings(values, noise_floor=0.0):
    """Phase winding (in units of 2π) of each grid cell, counterclockwise in (u, v).

    Cells whose four corners are all at or below ``noise_floor`` in modulus
    are reported as 0.
    """
    phase = np.angle(values)
    p00, p10 = phase[:-1, :-1], phase[1:, :-1]
    p11, p01 = phase[1:, 1:], phase[:-1, 1:]
    total = wrap_phase(p10 - p00) + wrap_phase(p11 - p10) + wrap_phase(p01 - p11) + wrap_phase(p00 - p01)
    winding = np.rint(total / (2 * np.pi)).astype(int)
    modulus = np.abs(values)
    corner_max = np.maximum.reduce([modulus[:-1, :-1], modulus[1:, :-1], modulus[1:, 1:], modulus[:-1, 1:]])
    winding[corner_max <= noise_floor] = 0
    return winding


def _core_flags(values, rho, floor, spec, space, region):
    nodes = search_nodes(spec, space, region)
    flags = (rho <= floor * rho.max()) & nodes
    windings = plaquette_windings(values)
    windings[~search_cells(spec, space, region)] = 0
    for i, j in zip(*np.nonzero(windings)):
        block = np.abs(values[i:i + 2, j:j + 2])
        di, dj = np.unravel_index(np.argmin(block), block.shape)
        flags[i + di, j + dj] = True
    return flags


# ──────────────────────────────────────────────────────────────
# GRID OPERATIONS
# ──────────────────────────────────────────────────────────────
def wavefunction_grid(kind, spec, t, pulse, space=Space.MOMENTUM):
    """Complex ψ per node, the input of the plaquette scan."""
    return FieldGrid(spec, Space(space), t, "psi", {"psi": sample_psi(kind, spec, t, pulse, space)})


def density_grid(kind, spec, t, pulse, space=Space.MOMENTUM, floor=DENSITY_FLOOR,
                 region=SearchRegion.PRINCIPAL_LOBE):
    """ρ = |ψ|² and ln ρ; vortex cores inside ``region`` are flagged."""
    values = sample_psi(kind, spec, t, pulse, space)
    rho = np.abs(values) ** 2
    if Space(space) is Space.POSITION:
        uu, vv = spec.mesh()
        ln_rho = 2 * log_modulus_position(uu, vv, t, require_canonical(pulse, "position space").F0)
    else:
        with np.errstate(divide="ignore"):
            ln_rho = np.log(rho)
    flags = _core_flags(values, rho, floor, spec, space, region)
    logger.info("density grid %dx%d in %s space: %d flagged nodes", spec.nx, spec.ny, Space(space).value, flags.sum())
    return FieldGrid(spec, Space(space), t, "density", {"rho": rho, "ln_rho": ln_rho}, flags)


def phase_grid(kind, spec, t, pulse, space=Space.MOMENTUM):
    """Principal-value phase arg ψ per node."""
    if Space(space) is Space.POSITION:
        uu, vv = spec.mesh()
        phase = phase_position(uu, vv, t, require_canonical(pulse, "position space").F0)
    else:
        phase = np.angle(sample_psi(kind, spec, t, pulse, space))
    phase = np.where(phase == -np.pi, np.pi, phase)
    return FieldGrid(spec, Space(space), t, "phase", {"phase": phase})


def _gradient_grid(kind, spec, t, pulse, space):
    psi, grad = wavefunction(kind, space)
    v = spec.v
    if grad is None:
        h = FD_STEP

        def grad(x, y, tt, p):
            return (
                (psi(x + h, y, tt, p) - psi(x - h, y, tt, p)) / (2 * h),
                (psi(x, y + h, tt, p) - psi(x, y - h, tt, p)) / (2 * h),
            )

    def rows(xs):
        du, dv = grad(xs[:, None], v[None, :], t, pulse)
        du, dv = np.broadcast_arrays(du, dv)
        return np.stack([du, dv], axis=-1)

    return parallel_rows(rows, spec.u)


def flux_grid(kind, spec, t, pulse, space=Space.MOMENTUM, region=SearchRegion.PRINCIPAL_LOBE):
    values = sample_psi(kind, spec, t, pulse, space)
    gradient = _gradient_grid(kind, spec, t, pulse, space)
    flux = np.imag(np.conj(values)[..., None] * gradient)
    flags = _core_flags(values, np.abs(values) ** 2, DENSITY_FLOOR, spec, space, region)
    return FieldGrid(spec, Space(space), t, "flux", {"j": flux}, flags)


def velocity_grid(kind, spec, t, pulse, space=Space.MOMENTUM, floor=DENSITY_FLOOR,
                  region=SearchRegion.PRINCIPAL_LOBE):
    """v = j/ρ per node; flagged core nodes carry NaN."""
    values = sample_psi(kind, spec, t, pulse, space)
    rho = np.abs(values) ** 2
    gradient = _gradient_grid(kind, spec, t, pulse, space)
    flags = _core_flags(values, rho, floor, spec, space, region)
    flux = np.imag(np.conj(values)[..., None] * gradient)
    with np.errstate(divide="ignore", invalid="ignore"):
        velocity = flux / rho[..., None]
    velocity[flags] = np.nan
    return FieldGrid(spec, Space(space), t, "velocity", {"v": velocity, "rho": rho}, flags)


QUANTITIES = {
    "density": density_grid,
    "phase": phase_grid,
    "flux": flux_grid,
    "velocity": velocity_grid,
}
