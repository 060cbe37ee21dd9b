# Copyright (c) 2026, QCS
# License: see license.txt

"""Coordinate-space wave packet of the near-center momentum form."""

import math
from dataclasses import dataclass

import numpy as np

from qvortex.momentum_wave import psi_approx, _check_time
from qvortex.pulse import K0, K0_SQ, PI, PACKET_ORIGIN
from qvortex.quadrature import QuadratureSpec, integrate_polar


@dataclass(frozen=True)
class PacketWidth:
    tau: float
    a2: float

    @property
    def a(self):
        return math.sqrt(self.a2)


def packet_width(t):
    """τ = t - 2 and a²(τ) = (4 + π²τ²)/π."""
    tau = t - PACKET_ORIGIN
    return PacketWidth(tau=tau, a2=(4 + PI ** 2 * tau ** 2) / PI)


def _bracket(x, y, tau, F0):
    r2 = x * x + y * y
    re = F0 * (4 * (PI - 1) + PI ** 2 * (r2 - K0_SQ * tau ** 2)) - 6 * PI ** 3 * x
    im = PI * tau * (2 * F0 * (3 * PI - 2) - 3 * PI ** 3 * x)
    return re + 1j * im


def _envelope_exponent(x, y, width):
    r2 = x * x + y * y
    return -r2 / width.a2 + 1j * PI * r2 * width.tau / (2 * width.a2)


def psi_pos(x, y, t, F0, A=1.0):
    _check_time(t)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    width = packet_width(t)
    return A / width.a ** 3 * np.exp(_envelope_exponent(x, y, width)) * _bracket(x, y, width.tau, F0)


def log_modulus_position(x, y, t, F0, A=1.0):
    """ln|ψ| without forming the Gaussian; -inf at exact zeros."""
    _check_time(t)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    width = packet_width(t)
    with np.errstate(divide="ignore"):
        log_bracket = np.log(np.abs(_bracket(x, y, width.tau, F0)))
    return math.log(A) - 3 * math.log(width.a) - (x * x + y * y) / width.a2 + log_bracket


def phase_position(x, y, t, F0):
    _check_time(t)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    width = packet_width(t)
    total = PI * (x * x + y * y) * width.tau / (2 * width.a2) + np.angle(_bracket(x, y, width.tau, F0))
    return np.angle(np.exp(1j * total))


def grad_psi_pos(x, y, t, F0, A=1.0):
    _check_time(t)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    width = packet_width(t)
    tau = width.tau
    envelope = A / width.a ** 3 * np.exp(_envelope_exponent(x, y, width))
    bracket = _bracket(x, y, tau, F0)
    radial = (-2 + 1j * PI * tau) / width.a2
    dB_dx = 2 * F0 * PI ** 2 * x - 6 * PI ** 3 - 3j * PI ** 4 * tau
    dB_dy = 2 * F0 * PI ** 2 * y
    return envelope * (radial * x * bracket + dB_dx), envelope * (radial * y * bracket + dB_dy)


def psi_position(p, t, F0, A=1.0):
    return complex(psi_pos(p.x, p.y, t, F0, A))


# ──────────────────────────────────────────────────────────────
# PROFILES
# ──────────────────────────────────────────────────────────────
def line_cut(axis, through, t, F0, center, span, n=401):
    """|ψ| along a line: axis "x" gives b_x = |ψ(x, through)|, "y" gives b_y = |ψ(through, y)|.

    Returns (coordinates, b, b normalized to its maximum).
    """
    coords = np.linspace(center - span, center + span, n)
    if axis == "x":
        values = np.abs(psi_pos(coords, through, t, F0))
    elif axis == "y":
        values = np.abs(psi_pos(through, coords, t, F0))
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    peak = values.max()
    return coords, values, values / peak if peak > 0 else values


# ──────────────────────────────────────────────────────────────
# NUMERIC TRANSFORM
# ──────────────────────────────────────────────────────────────
TRANSFORM_QUADRATURE = QuadratureSpec(n_radial=256, n_angular=128, r_max=K0 + 8, tol=1e-7)


def fourier_transform_momentum(x, y, t, F0, q=TRANSFORM_QUADRATURE):
    """∫ Ψ̃(k) e^{ik·r} d²k/(2π)² of the near-center form, at the given points."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    x, y = np.broadcast_arrays(x, y)
    px, py = x.reshape(-1, 1, 1), y.reshape(-1, 1, 1)

    def integrand(kx, ky):
        return psi_approx(kx, ky, t, F0) * np.exp(1j * (kx * px + ky * py)) / (2 * PI) ** 2

    return integrate_polar(integrand, q).reshape(x.shape)
