# Copyright (c) 2026, QCS
# License: see license.txt

"""Vortex centers: closed forms, plaquette seeds, Newton refinement and tracking.

Charges follow the velocity field: +1 circulates counterclockwise in the
(u, v) axes of the space.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from qvortex.exceptions import DegenerateZeroSet, NonConvergence, PreconditionError, TrackLost
from qvortex.field_sampler import (
    DEFAULT_NODES,
    MOMENTUM_HALF_WIDTH,
    SearchRegion,
    Space,
    carrier_phase,
    plaquette_windings,
    search_cells,
    wavefunction,
    wavefunction_gradient,
    zero_nondegeneracy,
)
from qvortex.momentum_wave import MomentumWavefunctionKind
from qvortex.position_wave import packet_width
from qvortex.pulse import K0, K0_SQ, PI, as_pulse
from qvortex.utils import get_logger, wrap_phase

logger = get_logger(__name__)

Kind = MomentumWavefunctionKind

NEWTON_MAX_ITER = 50
NEWTON_TOL = 1e-10
NEWTON_TRUST_CELLS = 10
NEWTON_BACKTRACKS = 10
NEWTON_STEP_FLOOR = 1e-12
NONDEGENERACY_MIN = 1e-6
WINDING_POINTS = 16
WINDING_CELLS = 2


class CenterMode(str, Enum):
    LEADING_DRIFT = "PaperApprox"
    EXACT_BRACKET_ROOT = "ExactBracketRoot"


@dataclass(frozen=True)
class VortexDescriptor:
    space: Space
    center: tuple
    charge: int
    time: float
    residual: float

    def __post_init__(self):
        if abs(self.charge) < 1:
            raise PreconditionError(f"vortex charge must be nonzero, got {self.charge}")

    def as_dict(self):
        return {
            "space": Space(self.space).value,
            "time": self.time,
            "u": self.center[0],
            "v": self.center[1],
            "charge": self.charge,
            "residual": self.residual,
        }


@dataclass(frozen=True)
class ZeroSeed:
    index: tuple        # lower-left node (i, j) of the cell
    point: tuple        # cell center (u, v)
    winding: int


# ──────────────────────────────────────────────────────────────
# CLOSED-FORM CENTERS
# ──────────────────────────────────────────────────────────────
def _residual(kind, space, point, t, F0):
    psi, _ = wavefunction(kind, space)
    return float(abs(psi(point[0], point[1], t, F0)))


def momentum_centers_closed_form(F0, t=5.0, kind=Kind.EXACT_CLOSED_FORM):
    """(0, ±√(2π-1)): upper charge +1, lower -1."""
    if F0 == 0:
        raise DegenerateZeroSet("at F0 = 0 the momentum zero set is the line kx = 0")
    if F0 < 0:
        raise PreconditionError(f"F0 must be >= 0, got {F0}")
    return [
        VortexDescriptor(Space.MOMENTUM, (0.0, sign * K0), sign, t, _residual(kind, Space.MOMENTUM, (0.0, sign * K0), t, F0))
        for sign in (1, -1)
    ]


def position_x0(F0):
    return F0 * (6 * PI - 4) / (3 * PI ** 3)


def position_centers(F0, t, mode=CenterMode.EXACT_BRACKET_ROOT):
    """Upper then lower vortex of the coordinate-space packet.

    LEADING_DRIFT keeps y0 = ±k0τ; EXACT_BRACKET_ROOT solves
    both parts of the polynomial factor exactly. At F0 = 0 the zero set is
    the line x = 0 and the returned points are the F0 → 0 limits.
    """
    if F0 < 0:
        raise PreconditionError(f"F0 must be >= 0, got {F0}")
    if not t > 4:
        raise PreconditionError(f"position centers need t > 4, got {t}")
    tau = packet_width(t).tau
    x0 = position_x0(F0)
    if CenterMode(mode) is CenterMode.LEADING_DRIFT:
        y0 = K0 * tau
    else:
        y0 = math.sqrt(K0_SQ * tau ** 2 + (8 * PI - 4) / PI ** 2 - x0 ** 2)
    return [
        VortexDescriptor(
            Space.POSITION, (x0, sign * y0), sign, t,
            _residual(Kind.NEAR_CENTER_APPROX, Space.POSITION, (x0, sign * y0), t, F0),
        )
        for sign in (1, -1)
    ]


def bracket_root_offset(F0, t):
    """Leading-order gap between the two y0 modes: ((8π-4)/π² - x0²)/(2k0τ)."""
    tau = packet_width(t).tau
    return ((8 * PI - 4) / PI ** 2 - position_x0(F0) ** 2) / (2 * K0 * tau)


# ──────────────────────────────────────────────────────────────
# SEEDS AND WINDING
# ──────────────────────────────────────────────────────────────
def find_zeros(grid, noise_floor=0.0, region=SearchRegion.PRINCIPAL_LOBE):
    """Cells of a complex ψ grid with nonzero phase winding inside ``region``."""
    values = grid.channels["psi"]
    windings = plaquette_windings(values, noise_floor)
    windings[~search_cells(grid.spec, grid.space, region)] = 0
    u, v = grid.spec.u, grid.spec.v
    seeds = []
    for i, j in zip(*np.nonzero(windings)):
        point = (0.5 * (u[i] + u[i + 1]), 0.5 * (v[j] + v[j + 1]))
        seeds.append(ZeroSeed((int(i), int(j)), (float(point[0]), float(point[1])), int(windings[i, j])))
    logger.info("plaquette scan: %d seeds", len(seeds))
    return seeds


def total_charge(items):
    return sum(getattr(item, "charge", getattr(item, "winding", 0)) for item in items)


def winding_number(center, radius, t, pulse, kind=Kind.EXACT_CLOSED_FORM, space=Space.MOMENTUM, n=WINDING_POINTS):
    """Phase winding of ψ on an n-point counterclockwise loop."""
    psi, _ = wavefunction(kind, space)
    theta = 2 * np.pi * np.arange(n + 1) / n
    us = center[0] + radius * np.cos(theta)
    vs = center[1] + radius * np.sin(theta)
    phase = np.angle(psi(us, vs, t, pulse))
    return int(np.rint(np.sum(wrap_phase(np.diff(phase))) / (2 * np.pi)))


def default_cell(space, t):
    if Space(space) is Space.MOMENTUM:
        return 2 * MOMENTUM_HALF_WIDTH / (DEFAULT_NODES - 1)
    return 6 * packet_width(t).a / (DEFAULT_NODES - 1)


# ──────────────────────────────────────────────────────────────
# NEWTON
# ──────────────────────────────────────────────────────────────
def _stripped(psi, space, point, t, pulse):
    """ψ·e^{-iθ} at ``point`` with the carrier phase θ divided out."""
    theta, _, _ = carrier_phase(space, point[0], point[1], t, pulse)
    return complex(psi(point[0], point[1], t, pulse)) * cmath.exp(-1j * theta)


def _stripped_jacobian(kind, space, point, value, t, pulse):
    """Real 2x2 Jacobian of ψ·e^{-iθ}; ``value`` is the stripped ψ at ``point``."""
    du, dv = wavefunction_gradient(kind, tuple(point), t, pulse, space)
    theta, theta_u, theta_v = carrier_phase(space, point[0], point[1], t, pulse)
    turn = cmath.exp(-1j * theta)
    fu = du * turn - 1j * value * theta_u
    fv = dv * turn - 1j * value * theta_v
    return np.array([[fu.real, fv.real], [fu.imag, fv.imag]])


def _line_search(psi, space, z, step, residual, t, pulse):
    """Halve ``step`` until the residual drops; None when it never does."""
    for _ in range(NEWTON_BACKTRACKS):
        trial = z + step
        value = _stripped(psi, space, trial, t, pulse)
        if abs(value) < residual:
            return trial, value, step
        step = 0.5 * step
    return None


def refine_zero(seed, t, pulse, kind=Kind.EXACT_CLOSED_FORM, space=Space.MOMENTUM,
                cell=None, tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER):
    """Newton on (Re f, Im f) for f = ψ·e^{-iθ}, the carrier-stripped wavefunction.

    Steps are capped at NEWTON_TRUST_CELLS grid cells and halved until the
    residual |ψ| drops. Converges once |ψ| < ``tol`` and the last step is
    at roundoff, or when no step can lower an already sub-``tol`` residual.
    A zero where ∂ψ/∂u and ∂ψ/∂v are parallel lies on a nodal line and
    raises DegenerateZeroSet. The charge is the winding on a 16-point loop
    of radius two cells.
    """
    pulse = as_pulse(pulse)
    if pulse.F0 == 0:
        raise DegenerateZeroSet("at F0 = 0 the zero set is a nodal line, not isolated points")
    psi, _ = wavefunction(kind, space)
    cell = cell or default_cell(space, t)
    start = tuple(getattr(seed, "point", seed))
    z = np.array(start, dtype=float)
    value = _stripped(psi, space, z, t, pulse)
    residual = abs(value)
    for iteration in range(1, max_iter + 1):
        if residual == 0.0:
            break
        jacobian = _stripped_jacobian(kind, space, z, value, t, pulse)
        try:
            step = np.linalg.solve(jacobian, [-value.real, -value.imag])
        except np.linalg.LinAlgError:
            raise DegenerateZeroSet(f"singular Jacobian at {tuple(z)}: zero is not isolated") from None
        length = float(np.hypot(*step))
        if length > NEWTON_TRUST_CELLS * cell:
            step *= NEWTON_TRUST_CELLS * cell / length
        accepted = _line_search(psi, space, z, step, residual, t, pulse)
        if accepted is None:
            if residual < tol:
                break
            raise NonConvergence(f"Newton stalled at {tuple(z)} with |psi| = {residual:.3e}", last=tuple(z), error=residual)
        z, value, step = accepted
        residual = abs(value)
        if residual < tol and np.hypot(*step) <= NEWTON_STEP_FLOOR * (1.0 + np.hypot(*z)):
            break
    else:
        raise NonConvergence(
            f"Newton did not converge in {max_iter} iterations from {start} (|psi| = {residual:.3e})",
            last=tuple(z), error=residual,
        )
    center = (float(z[0]), float(z[1]))
    if zero_nondegeneracy(kind, center, t, pulse, space) < NONDEGENERACY_MIN:
        raise DegenerateZeroSet(f"zero at {center} lies on a nodal line: the gradients of Re and Im psi are parallel")
    charge = winding_number(center, WINDING_CELLS * cell, t, pulse, kind, space)
    logger.debug("refined zero %s after %d steps, charge %d", center, iteration, charge)
    return VortexDescriptor(Space(space), center, charge, t, residual)


# ──────────────────────────────────────────────────────────────
# TRAJECTORIES
# ──────────────────────────────────────────────────────────────
def _drift(space, sign):
    return np.array([0.0, sign * K0]) if Space(space) is Space.POSITION else np.zeros(2)


def trace_trajectory(times, pulse, kind=Kind.NEAR_CENTER_APPROX, space=Space.POSITION):
    """Refined centers at each time, upper track first, linked by nearest neighbor.

    Predictions move each center by its drift (0, ±k0)·Δt in position space.
    Raises TrackLost when a refined center lands farther than a(τ) from its
    prediction.
    """
    times = [float(t) for t in times]
    if not times or any(t <= 4 for t in times):
        raise PreconditionError(f"trace times must all be > 4, got {times}")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise PreconditionError(f"trace times must be strictly ascending, got {times}")
    space = Space(space)
    pulse = as_pulse(pulse)
    F0 = pulse.F0
    if space is Space.POSITION:
        if F0 == 0:
            raise DegenerateZeroSet("at F0 = 0 the position zero set is the line x = 0")
        seeds = [d.center for d in position_centers(F0, times[0], CenterMode.LEADING_DRIFT)]
    else:
        seeds = [d.center for d in momentum_centers_closed_form(F0, times[0], kind)]

    history = []
    previous, previous_time = None, None
    for t in times:
        if previous is None:
            predictions = [np.array(seed) for seed in seeds]
        else:
            predictions = [
                np.array(d.center) + _drift(space, np.sign(d.center[1])) * (t - previous_time)
                for d in previous
            ]
        refined = [refine_zero(tuple(p), t, pulse, kind, space) for p in predictions]
        width = packet_width(t).a
        linked = []
        for prediction in predictions:
            nearest = min(refined, key=lambda d: np.hypot(*(np.array(d.center) - prediction)))
            jump = float(np.hypot(*(np.array(nearest.center) - prediction)))
            if jump > width:
                raise TrackLost(
                    f"vortex at t={t} landed {jump:.3g} from its prediction (packet width {width:.3g})",
                    last=nearest.center, error=jump,
                )
            linked.append(nearest)
        history.extend(linked)
        logger.info("t=%g: %s", t, ", ".join(f"({d.center[0]:.6g}, {d.center[1]:.6g}) q={d.charge}" for d in linked))
        previous, previous_time = linked, t
    return history


def trajectory_slope(track):
    """Least-squares dv/dt along one track's descriptors."""
    times = np.array([d.time for d in track])
    vs = np.array([d.center[1] for d in track])
    return float(np.polyfit(times, vs, 1)[0])
