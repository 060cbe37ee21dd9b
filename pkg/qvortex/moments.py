# Copyright (c) 2026, QCS
# License: see license.txt

"""Norms, mean values and dispersions of the photoelectron distributions.

Momentum integrals use the measure d²k/(2π), position integrals d²r.
Numeric values come from the polar rule in ``qvortex.quadrature``; the
closed forms hold for the near-center wavefunction.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from qvortex.exceptions import PreconditionError
from qvortex.momentum_wave import MomentumWavefunctionKind, _check_time
from qvortex.field_sampler import Space, wavefunction
from qvortex.position_wave import packet_width
from qvortex.pulse import K0, K0_SQ, PI, as_pulse
from qvortex.quadrature import QuadratureSpec, integrate_polar
from qvortex.utils import get_logger

logger = get_logger(__name__)

Kind = MomentumWavefunctionKind

MOMENTUM_CUTOFF_MARGIN = 8.0
POSITION_CUTOFF_WIDTHS = 6.0


class MomentMethod(str, Enum):
    NUMERIC = "NumericExact"
    CLOSED_FORM = "ClosedFormApprox"


class PositionMomentMode(str, Enum):
    NUMERIC = "Numeric"
    CLOSED_FORM = "ClosedForm"


@dataclass(frozen=True)
class MomentReport:
    mean_u: float
    mean_v: float
    var_u: float
    var_v: float
    norm: float
    method: MomentMethod
    space: Space = Space.MOMENTUM
    time: float = None

    def __post_init__(self):
        if self.var_u < 0 or self.var_v < 0:
            raise PreconditionError(f"negative dispersion ({self.var_u}, {self.var_v})")
        if not self.norm > 0:
            raise PreconditionError(f"norm must be > 0, got {self.norm}")

    def as_dict(self):
        return {
            "space": Space(self.space).value,
            "time": self.time,
            "method": MomentMethod(self.method).value,
            "norm": self.norm,
            "mean_u": self.mean_u,
            "mean_v": self.mean_v,
            "var_u": self.var_u,
            "var_v": self.var_v,
        }


# ──────────────────────────────────────────────────────────────
# NUMERIC
# ──────────────────────────────────────────────────────────────
def default_cutoff(space, t):
    if Space(space) is Space.MOMENTUM:
        return K0 + MOMENTUM_CUTOFF_MARGIN
    return POSITION_CUTOFF_WIDTHS * packet_width(t).a


def _measure(space):
    return 1 / (2 * PI) if Space(space) is Space.MOMENTUM else 1.0


def _raw_moments(kind, space, t, pulse, q, scale=1.0):
    """[N, ∫uρ, ∫vρ, ∫u²ρ, ∫v²ρ] in the space's measure."""
    psi, _ = wavefunction(kind, space)
    q = q.with_r_max(default_cutoff(space, t))
    weight = _measure(space)

    def integrand(u, v):
        rho = np.abs(scale * psi(u, v, t, pulse)) ** 2 * weight
        return np.stack([rho, u * rho, v * rho, u * u * rho, v * v * rho])

    return integrate_polar(integrand, q)


def _report(raw, method, space, t):
    norm, su, sv, suu, svv = (float(value) for value in raw)
    mean_u, mean_v = su / norm, sv / norm
    return MomentReport(
        mean_u=mean_u,
        mean_v=mean_v,
        var_u=max(suu / norm - mean_u ** 2, 0.0),
        var_v=max(svv / norm - mean_v ** 2, 0.0),
        norm=norm,
        method=method,
        space=Space(space),
        time=t,
    )


def momentum_moments_numeric(t, pulse, q=QuadratureSpec(), kind=Kind.EXACT_CLOSED_FORM):
    """⟨k⟩ and ⟨(Δk)²⟩ of |Ψ̃|² by quadrature.

    ``pulse`` may be any PulseParams for kind 'quad'; the closed forms need the canonical one.
    """
    _check_time(t)
    raw = _raw_moments(kind, Space.MOMENTUM, t, pulse, q)
    report = _report(raw, MomentMethod.NUMERIC, Space.MOMENTUM, t)
    logger.info("momentum moments (%s, t=%g, F0=%g): var=(%.6g, %.6g)", Kind(kind).value, t, as_pulse(pulse).F0, report.var_u, report.var_v)
    return report


def position_moments_numeric(t, F0, q=QuadratureSpec()):
    _check_time(t)
    raw = _raw_moments(Kind.NEAR_CENTER_APPROX, Space.POSITION, t, F0, q)
    return _report(raw, MomentMethod.NUMERIC, Space.POSITION, t)


# ──────────────────────────────────────────────────────────────
# CLOSED FORMS
# ──────────────────────────────────────────────────────────────
def momentum_dispersion_closed_form(F0):
    """(⟨(Δkx)²⟩, ⟨(Δky)²⟩) of the near-center form; (3π/4, π/4) without field."""
    field_term = F0 ** 2 * (4 - 8 * PI + 6 * PI ** 2)
    denominator = 9 * PI ** 5 + 2 * F0 ** 2 * (2 - 6 * PI + 5 * PI ** 2)
    return (
        PI / 4 * (27 * PI ** 5 + field_term) / denominator,
        PI / 4 * (9 * PI ** 5 + field_term) / denominator,
    )


def momentum_moments_closed_form(t, F0):
    var_kx, var_ky = momentum_dispersion_closed_form(F0)
    gamma2 = F0 ** 2 / (9 * PI ** 4)
    norm = PI ** 2 / 8 * (PI + 2 * gamma2 * (5 * PI ** 2 - 6 * PI + 2)) / (2 * PI) * math.exp(2 * K0_SQ / PI)
    return MomentReport(0.0, 0.0, var_kx, var_ky, norm, MomentMethod.CLOSED_FORM, Space.MOMENTUM, t)


def position_moments_closed_form(t, F0):
    """Leading-order ⟨x⟩, ⟨y⟩ and dispersions for large τ.

    ``norm`` is ∫|ψ|² d²r evaluated at F0 = 0, the leading term.
    """
    width = packet_width(t)
    tau = width.tau
    mean_x = -12 * K0_SQ * F0 / (9 * PI ** 5)
    # |ψ|² = e^{-2r²/a²}·9π⁶x²(4+π²τ²)/a⁶ at F0=0
    norm = 9 * PI ** 6 * (4 + PI ** 2 * tau ** 2) / width.a2 ** 3 * PI * width.a2 ** 2 / 8
    return MomentReport(
        mean_u=mean_x,
        mean_v=0.0,
        var_u=3 * PI * tau ** 2 / 4,
        var_v=PI * tau ** 2 / 4,
        norm=norm,
        method=MomentMethod.CLOSED_FORM,
        space=Space.POSITION,
        time=t,
    )


def position_moments(t, F0, mode=PositionMomentMode.CLOSED_FORM, q=QuadratureSpec()):
    if not t > 4:
        raise PreconditionError(f"position moments need t > 4, got {t}")
    if PositionMomentMode(mode) is PositionMomentMode.NUMERIC:
        return position_moments_numeric(t, F0, q)
    return position_moments_closed_form(t, F0)


# ──────────────────────────────────────────────────────────────
# NORMALIZATION
# ──────────────────────────────────────────────────────────────
def normalize(kind, t, pulse, q=QuadratureSpec(), space=Space.MOMENTUM):
    """Scale c with ∫|cψ|² dμ = 1."""
    _check_time(t)
    norm = float(_raw_moments(kind, space, t, pulse, q)[0])
    if not norm > 0:
        raise PreconditionError(f"wavefunction has zero norm (kind={Kind(kind).value}, t={t}, F0={as_pulse(pulse).F0})")
    return 1 / math.sqrt(norm)


def normalized_moments(kind, t, pulse, q=QuadratureSpec(), space=Space.MOMENTUM):
    """Moments after applying :func:`normalize`; the norm field is then 1 within tol."""
    scale = normalize(kind, t, pulse, q, space)
    return _report(_raw_moments(kind, space, t, pulse, q, scale=scale), MomentMethod.NUMERIC, space, t)


def angular_overlap(m, n, q=QuadratureSpec(), kind="cos"):
    """Trapezoid value of ∫₀^{2π} cos(mφ)·cos(nφ) dφ (``kind="cos"``) or sin(mφ)·cos(nφ)."""
    phi = 2 * np.pi * np.arange(q.n_angular) / q.n_angular
    first = np.cos(m * phi) if kind == "cos" else np.sin(m * phi)
    return float(np.sum(first * np.cos(n * phi)) * 2 * np.pi / q.n_angular)
