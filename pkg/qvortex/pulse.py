# Copyright (c) 2026, QCS
# License: see license.txt

"""Shared domain types, constants and the ionizing pulse (atomic units)."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from qvortex.exceptions import PreconditionError

# ──────────────────────────────────────────────────────────────
# CONSTANTS
# ──────────────────────────────────────────────────────────────
PI = math.pi
K0_SQ = 2 * PI - 1               # k0² : sin(k²+1) and (k²+1)²-4π² vanish together
K0 = math.sqrt(K0_SQ)            # ≈ 2.29852

CANONICAL_OMEGA = PI
CANONICAL_T = 4.0
CANONICAL_ALPHA = 0.0
PACKET_ORIGIN = CANONICAL_T / 2  # τ = t - T/2


# ──────────────────────────────────────────────────────────────
# DOMAIN TYPES
# ──────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class PulseParams:
    F0: float
    omega: float = CANONICAL_OMEGA
    T: float = CANONICAL_T
    alpha: float = CANONICAL_ALPHA

    def __post_init__(self):
        if not self.F0 >= 0:
            raise PreconditionError(f"F0 must be >= 0, got {self.F0}")
        if not self.T > 0:
            raise PreconditionError(f"T must be > 0, got {self.T}")
        if not self.omega > 0:
            raise PreconditionError(f"omega must be > 0, got {self.omega}")

    @property
    def is_canonical(self):
        return (
            math.isclose(self.omega, CANONICAL_OMEGA, rel_tol=1e-12)
            and math.isclose(self.T, CANONICAL_T, rel_tol=1e-12)
            and self.alpha == CANONICAL_ALPHA
        )


def canonical_pulse(F0=0.4):
    """The pulse with closed-form wavefunctions: ω=π, T=4, α=0."""
    return PulseParams(F0=F0)


def as_pulse(pulse):
    """PulseParams unchanged; a bare field amplitude means the canonical pulse."""
    if isinstance(pulse, PulseParams):
        return pulse
    return canonical_pulse(float(pulse))


def require_canonical(pulse, what="closed forms"):
    pulse = as_pulse(pulse)
    if not pulse.is_canonical:
        raise PreconditionError(
            f"{what} need the canonical pulse (omega=pi, T=4, alpha=0), got "
            f"omega={pulse.omega}, T={pulse.T}, alpha={pulse.alpha}; use kind 'quad'"
        )
    return pulse


@dataclass(frozen=True)
class MomentumPoint:
    kx: float
    ky: float

    @classmethod
    def from_polar(cls, k, phi):
        return cls(k * math.cos(phi), k * math.sin(phi))

    @property
    def k(self):
        return math.hypot(self.kx, self.ky)

    @property
    def phi(self):
        return math.atan2(self.ky, self.kx)

    @property
    def energy(self):
        return 0.5 * (self.kx * self.kx + self.ky * self.ky)


@dataclass(frozen=True)
class PositionPoint:
    x: float
    y: float

    @classmethod
    def from_polar(cls, r, phi):
        return cls(r * math.cos(phi), r * math.sin(phi))

    @property
    def r(self):
        return math.hypot(self.x, self.y)

    @property
    def phi(self):
        return math.atan2(self.y, self.x)


# ──────────────────────────────────────────────────────────────
# PULSE
# ──────────────────────────────────────────────────────────────
def laser_field(t, p):
    """x-component of F(t): F0·cos(ωt-α) on the closed window [0, T], 0 elsewhere.

    Accepts scalars or arrays of times.
    """
    t = np.asarray(t, dtype=float)
    inside = (t >= 0) & (t <= p.T)
    value = np.where(inside, p.F0 * np.cos(p.omega * t - p.alpha), 0.0)
    return float(value) if value.ndim == 0 else value


def transition_frequency(k):
    """ω_k1 = (k²+1)/2, bound state to continuum."""
    k_arr = np.asarray(k, dtype=float)
    if np.any(k_arr < 0):
        raise PreconditionError(f"k must be >= 0, got {k}")
    value = 0.5 * (k_arr * k_arr + 1.0)
    return float(value) if value.ndim == 0 else value


def field_integral(t, p):
    """∫₀ᵗ F_x dt′ from the antiderivative."""
    if t <= 0:
        return 0.0
    upper = min(t, p.T)
    return p.F0 / p.omega * (math.sin(p.omega * upper - p.alpha) + math.sin(p.alpha))


def field_integral_numeric(t, p, tol=1e-13):
    if t <= 0:
        return 0.0
    upper = min(t, p.T)
    value, _ = quad(lambda s: laser_field(s, p), 0.0, upper, epsabs=tol, epsrel=tol, limit=200)
    return value
