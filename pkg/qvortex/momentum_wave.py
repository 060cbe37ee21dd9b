# Copyright (c) 2026, QCS
# License: see license.txt

"""Photoelectron wavefunction in momentum space.

Three evaluation paths:

* the closed form for the canonical pulse (ω=π, T=4, α=0),
* its Gaussian × polynomial form near the vortex zeros,
* the generic second-order assembly from time integrals of the pulse.

Array functions (``psi_exact`` ...) take broadcastable ``kx, ky``; the
``psi_momentum_*`` wrappers take a MomentumPoint and return a complex.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from qvortex.exceptions import PreconditionError
from qvortex.pulse import K0_SQ, PI, CANONICAL_T, laser_field, transition_frequency
from qvortex.quadrature import QuadratureSpec, integrate_interval, _leggauss
from qvortex.utils import get_logger

logger = get_logger(__name__)

SQRT_2_OVER_PI = math.sqrt(2 / PI)
INV_SQRT_2PI = 1 / math.sqrt(2 * PI)


class MomentumWavefunctionKind(str, Enum):
    EXACT_CLOSED_FORM = "exact"
    NEAR_CENTER_APPROX = "approx"
    GENERIC_QUADRATURE = "quad"


@dataclass(frozen=True)
class AmplitudeSet:
    b1_m1: complex
    b2_m0: complex
    b2_m2: complex


# ──────────────────────────────────────────────────────────────
# HELPERS
# ──────────────────────────────────────────────────────────────
def _check_time(t):
    if np.any(np.asarray(t) < CANONICAL_T):
        raise PreconditionError(f"closed forms need t >= T = {CANONICAL_T}, got t={t}")


def _sinc(x):
    """sin(x)/x."""
    return np.sinc(np.asarray(x) / PI)


def _dsinc(x):
    """d/dx [sin(x)/x], with the series near 0."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-3
    safe = np.where(small, 1.0, x)
    exact = (safe * np.cos(safe) - np.sin(safe)) / (safe * safe)
    series = -x / 3 + x ** 3 / 30
    return np.where(small, series, exact)


def _phase_rate(t):
    # e^{ik² - iE_k t} = e^{i s (1 - t/2)}, s = k²
    return 1.0 - 0.5 * t


def taylor_factors():
    """Constants of the Gaussian factors around k0: (1/(8√2π^{5/2}), -1/(48√2π^{9/2}))."""
    return 1 / (8 * math.sqrt(2) * PI ** 2.5), -1 / (48 * math.sqrt(2) * PI ** 4.5)


def taylor_factor_values(k):
    """The two rational factors those constants approximate, evaluated at k."""
    u = k * k + 1
    return 1 / (u ** 1.5 * (k * k + 2 * PI + 1)), 1 / (u ** 2.5 * (u * u - 16 * PI ** 2))


def canonical_prefactor(F0):
    """Global constant A such that the generic assembly equals the closed form."""
    return -12 * SQRT_2_OVER_PI * F0 * cmath.exp(1j)


# ──────────────────────────────────────────────────────────────
# CLOSED FORM (canonical pulse)
# ──────────────────────────────────────────────────────────────
# Both removable rings are written through sinc factors:
#   sin(u)/(u²-4π²)              = S2/(u+2π)
#   sin(u)/((u²-4π²)(u²-16π²))   = (S4-S2)/(2π(u+2π)(u+4π))
#   sin(u)/(u²-16π²)             = S4/(u+4π)
# with u = k²+1, S2 = sinc(u-2π), S4 = sinc(u-4π).

def _exact_parts(s, F0):
    u = s + 1.0
    S2, S4 = _sinc(u - 2 * PI), _sinc(u - 4 * PI)
    dS2, dS4 = _dsinc(u - 2 * PI), _dsinc(u - 4 * PI)

    g1 = S2 / (u + 2 * PI)
    dg1 = dS2 / (u + 2 * PI) - S2 / (u + 2 * PI) ** 2

    N = 7 * u * u - 4 * PI ** 2
    Q = u * u * (u + 2 * PI) * (u + 4 * PI)
    dQ = 2 * u * (u + 2 * PI) * (u + 4 * PI) + u * u * (u + 4 * PI) + u * u * (u + 2 * PI)
    R = N / Q
    dR = (14 * u * Q - N * dQ) / (Q * Q)
    g2 = 1j * F0 / PI * R * (S4 - S2)
    dg2 = 1j * F0 / PI * (dR * (S4 - S2) + R * (dS4 - dS2))

    D3 = u * (u + 4 * PI)
    g3 = -2j * F0 * S4 / D3
    dg3 = -2j * F0 * (dS4 / D3 - S4 * (2 * u + 4 * PI) / (D3 * D3))
    return u, (g1, g2, g3), (dg1, dg2, dg3)


def psi_exact(kx, ky, t, F0, A=1.0):
    _check_time(t)
    kx, ky = np.asarray(kx, dtype=float), np.asarray(ky, dtype=float)
    s = kx * kx + ky * ky
    u, (g1, g2, g3), _ = _exact_parts(s, F0)
    prefactor = A * u ** -1.5 * np.exp(1j * _phase_rate(t) * s)
    return prefactor * (kx * g1 + kx * kx * g2 + g3)


def grad_psi_exact(kx, ky, t, F0, A=1.0):
    """(∂ψ/∂kx, ∂ψ/∂ky) of the closed form."""
    _check_time(t)
    kx, ky = np.asarray(kx, dtype=float), np.asarray(ky, dtype=float)
    s = kx * kx + ky * ky
    u, (g1, g2, g3), (dg1, dg2, dg3) = _exact_parts(s, F0)
    prefactor = A * u ** -1.5 * np.exp(1j * _phase_rate(t) * s)
    bracket = kx * g1 + kx * kx * g2 + g3
    d_s = prefactor * ((-1.5 / u + 1j * _phase_rate(t)) * bracket + kx * dg1 + kx * kx * dg2 + dg3)
    d_c = prefactor * (g1 + 2 * kx * g2)
    return 2 * kx * d_s + d_c, 2 * ky * d_s


# ──────────────────────────────────────────────────────────────
# NEAR-CENTER FORM
# ──────────────────────────────────────────────────────────────
def psi_approx(kx, ky, t, F0, A=1.0):
    _check_time(t)
    kx, ky = np.asarray(kx, dtype=float), np.asarray(ky, dtype=float)
    delta = kx * kx + ky * ky - K0_SQ
    envelope = A * np.exp(-delta / PI + 1j * _phase_rate(t) * (delta + K0_SQ))
    return envelope * (kx + 1j * F0 * delta / (3 * PI ** 2))


def grad_psi_approx(kx, ky, t, F0, A=1.0):
    _check_time(t)
    kx, ky = np.asarray(kx, dtype=float), np.asarray(ky, dtype=float)
    delta = kx * kx + ky * ky - K0_SQ
    gamma = F0 / (3 * PI ** 2)
    envelope = A * np.exp(-delta / PI + 1j * _phase_rate(t) * (delta + K0_SQ))
    poly = kx + 1j * gamma * delta
    d_s = envelope * ((-1 / PI + 1j * _phase_rate(t)) * poly + 1j * gamma)
    return 2 * kx * d_s + envelope, 2 * ky * d_s


# ──────────────────────────────────────────────────────────────
# GENERIC ASSEMBLY (any pulse)
# ──────────────────────────────────────────────────────────────
def _b1_prefactor(k):
    u = k * k + 1
    P = -3j * k / u ** 2.5
    dP = -3j * (1 - 4 * k * k) / u ** 3.5
    return P, dP


def _check_amplitude_args(k, t):
    if not k > 0:
        raise PreconditionError(f"amplitudes need k > 0 (1/k terms), got k={k}")
    if t < 0:
        raise PreconditionError(f"t must be >= 0, got {t}")


def amplitude_b1(k, t, p, q=QuadratureSpec()):
    """First-order m=1 amplitude: -3ik/(k²+1)^{5/2} ∫₀^min(t,T) F_x e^{iω_k1 t′} dt′."""
    _check_amplitude_args(k, t)
    omega = transition_frequency(k)
    P, _ = _b1_prefactor(k)
    integral = integrate_interval(
        lambda tp: laser_field(tp, p) * np.exp(1j * omega * tp), 0.0, min(t, p.T), q
    )
    return complex(P * integral)


def _inner_integrals(tp, omega, p, n):
    # G(t′) = ∫₀^t′ F e^{iωs} ds and K(t′) = ∫₀^t′ F (s - t′) e^{iωs} ds
    x, w = _leggauss(n)
    s = tp[:, None] * (x[None, :] + 1) / 2
    ws = tp[:, None] / 2 * w[None, :]
    Fe = laser_field(s, p) * np.exp(1j * omega * s)
    G = np.sum(ws * Fe, axis=1)
    K = np.sum(ws * Fe * (s - tp[:, None]), axis=1)
    return G, K


def amplitude_b2(k, t, p, q=QuadratureSpec()):
    """Second-order m=0 and m=2 amplitudes.

    ∂b1/∂k is taken analytically: the prefactor derivative times the time
    integral plus the prefactor times ∫ F (ik t′) e^{iω t′}.
    """
    _check_amplitude_args(k, t)
    omega = transition_frequency(k)
    P, dP = _b1_prefactor(k)
    plus, minus, drift = dP + P / k, dP - P / k, 1j * k * P

    def integrand(tp):
        G, K = _inner_integrals(tp, omega, p, len(tp))
        F = laser_field(tp, p)
        m0 = -1j * F * (plus * G + drift * K)
        m2 = 0.5j * F * (minus * G + drift * K)
        return np.stack([m0, m2], axis=-1)

    b2_m0, b2_m2 = integrate_interval(integrand, 0.0, min(t, p.T), q) if t > 0 else (0.0, 0.0)
    return complex(b2_m0), complex(b2_m2)


def amplitude_set(k, t, p, q=QuadratureSpec()):
    b2_m0, b2_m2 = amplitude_b2(k, t, p, q)
    return AmplitudeSet(b1_m1=amplitude_b1(k, t, p, q), b2_m0=b2_m0, b2_m2=b2_m2)


def psi_generic_point(kx, ky, t, pulse, q=QuadratureSpec()):
    k = math.hypot(kx, ky)
    amps = amplitude_set(k, t, pulse, q)
    cos_phi, sin_phi = kx / k, ky / k
    cos_2phi = cos_phi * cos_phi - sin_phi * sin_phi
    phase = cmath.exp(-0.5j * k * k * t)
    return phase * (
        -1j * SQRT_2_OVER_PI * amps.b1_m1 * cos_phi
        + INV_SQRT_2PI * amps.b2_m0
        - SQRT_2_OVER_PI * amps.b2_m2 * cos_2phi
    )


def psi_generic(kx, ky, t, pulse, q=QuadratureSpec()):
    kx, ky = np.broadcast_arrays(np.asarray(kx, dtype=float), np.asarray(ky, dtype=float))
    out = np.empty(kx.shape, dtype=complex)
    for index in np.ndindex(kx.shape):
        out[index] = psi_generic_point(float(kx[index]), float(ky[index]), t, pulse, q)
    return out


# ──────────────────────────────────────────────────────────────
# POINT OPERATIONS
# ──────────────────────────────────────────────────────────────
def psi_momentum_exact(p, t, F0, A=1.0):
    return complex(psi_exact(p.kx, p.ky, t, F0, A))


def psi_momentum_near_center(p, t, F0, A=1.0):
    return complex(psi_approx(p.kx, p.ky, t, F0, A))


def psi_momentum_generic(p, t, pulse, q=QuadratureSpec()):
    return psi_generic_point(p.kx, p.ky, t, pulse, q)
