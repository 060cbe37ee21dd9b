# Copyright (c) 2026, QCS
# License: see license.txt

"""Gauss–Legendre rules: adaptive 1-D time integrals and 2-D polar integrals.

Polar integrals use Gauss–Legendre in the radius times the uniform
trapezoid in the angle; the trapezoid is exact for trigonometric
polynomials of degree below ``n_angular``.
"""

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from qvortex.exceptions import PreconditionError, QuadratureNonConvergence
from qvortex.utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class QuadratureSpec:
    n_radial: int = 256
    n_angular: int = 64
    r_max: float = None          # None: the caller's space-specific default
    tol: float = 1e-5
    n_time: int = 32             # starting node count for time integrals
    time_tol: float = 1e-11
    max_doublings: int = 6

    def __post_init__(self):
        if self.n_radial < 1 or self.n_angular < 1 or self.n_time < 1:
            raise PreconditionError("node counts must be positive")
        if self.n_angular < 16:
            raise PreconditionError(f"n_angular must be >= 16, got {self.n_angular}")
        if self.r_max is not None and not self.r_max > 0:
            raise PreconditionError(f"r_max must be > 0, got {self.r_max}")
        if not self.tol > 0 or not self.time_tol > 0:
            raise PreconditionError("tolerances must be > 0")

    def with_r_max(self, r_max):
        return self if self.r_max is not None else replace(self, r_max=r_max)


# ──────────────────────────────────────────────────────────────
# RULES
# ──────────────────────────────────────────────────────────────
@lru_cache(maxsize=64)
def _leggauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def legendre_nodes(n, a, b):
    """Nodes and weights of the n-point Gauss–Legendre rule on [a, b]."""
    x, w = _leggauss(n)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * x, half * w


def polar_rule(q, r_max=None, n_radial=None):
    """Flattened polar nodes (u, v) and area weights for ∫∫ f r dr dφ."""
    r_max = r_max if r_max is not None else q.r_max
    n_radial = n_radial or q.n_radial
    r, wr = legendre_nodes(n_radial, 0.0, r_max)
    phi = 2 * np.pi * np.arange(q.n_angular) / q.n_angular
    rr, pp = np.meshgrid(r, phi, indexing="ij")
    weights = np.outer(wr * r, np.full(q.n_angular, 2 * np.pi / q.n_angular))
    return rr * np.cos(pp), rr * np.sin(pp), weights


# ──────────────────────────────────────────────────────────────
# INTEGRATORS
# ──────────────────────────────────────────────────────────────
def integrate_interval(f, a, b, q):
    """Adaptive Gauss–Legendre on [a, b]: double the node count until stable.

    ``f`` maps a node array of shape (n,) to values of shape (n, ...).
    Raises QuadratureNonConvergence with the achieved error.
    """
    if b <= a:
        return 0.0
    n = q.n_time
    x, w = legendre_nodes(n, a, b)
    previous = np.tensordot(w, f(x), axes=(0, 0))
    error = np.inf
    for _ in range(q.max_doublings):
        n *= 2
        x, w = legendre_nodes(n, a, b)
        values = f(x)
        current = np.tensordot(w, values, axes=(0, 0))
        scale = np.tensordot(w, np.abs(values), axes=(0, 0))
        error = float(np.max(np.abs(current - previous)))
        if error <= q.time_tol * max(float(np.max(scale)), np.finfo(float).tiny):
            logger.debug("interval [%g, %g] converged at n=%d (err %.2e)", a, b, n, error)
            return current
        previous = current
    raise QuadratureNonConvergence(
        f"time quadrature on [{a}, {b}] did not reach tol {q.time_tol}", last=previous, error=error
    )


def _polar_once(f, q, r_max, n_radial, center):
    u, v, weights = polar_rule(q, r_max=r_max, n_radial=n_radial)
    values = np.asarray(f(u + center[0], v + center[1]))
    integral = np.sum(values * weights, axis=(-2, -1))
    scale = np.sum(np.abs(values) * weights, axis=(-2, -1))
    return integral, scale


def integrate_polar(f, q, center=(0.0, 0.0), check=True):
    """∫∫ f(u, v) du dv over the disk of radius ``q.r_max`` around ``center``.

    ``f`` takes broadcast coordinate arrays and returns values of shape
    (..., n_radial, n_angular); several integrands may be stacked in the
    leading axes. With ``check``, the value is accepted only when the rule
    with twice the radial nodes and 1.5× the cutoff agrees within ``q.tol``.
    """
    if q.r_max is None:
        raise PreconditionError("QuadratureSpec.r_max must be set for polar integrals")
    coarse, _ = _polar_once(f, q, q.r_max, q.n_radial, center)
    if not check:
        return coarse
    fine, scale = _polar_once(f, q, 1.5 * q.r_max, 2 * q.n_radial, center)
    error = np.abs(fine - coarse)
    bound = q.tol * np.maximum(np.abs(scale), np.finfo(float).tiny)
    if np.any(error > bound):
        raise QuadratureNonConvergence(
            f"polar quadrature changed by {float(np.max(error / bound)) * q.tol:.2e} (relative) "
            f"on refinement; tol {q.tol}",
            last=fine,
            error=float(np.max(error)),
        )
    return fine
