import math

import numpy as np
import pytest

from qvortex.exceptions import PreconditionError, QuadratureNonConvergence
from qvortex.quadrature import QuadratureSpec, integrate_interval, integrate_polar, legendre_nodes, polar_rule


def test_legendre_nodes_integrate_polynomials_exactly():
    x, w = legendre_nodes(4, 0.0, 2.0)
    assert np.sum(w * x ** 5) == pytest.approx(2 ** 6 / 6, rel=1e-14)


def test_integrate_interval():
    q = QuadratureSpec()
    assert integrate_interval(np.cos, 0.0, math.pi / 2, q) == pytest.approx(1.0, rel=1e-12)
    assert integrate_interval(np.cos, 1.0, 1.0, q) == 0.0


def test_integrate_interval_stacked_values():
    q = QuadratureSpec()
    result = integrate_interval(lambda t: np.stack([t, t * t], axis=-1), 0.0, 3.0, q)
    assert result == pytest.approx([4.5, 9.0], rel=1e-12)


def test_integrate_interval_reports_non_convergence():
    q = QuadratureSpec(n_time=2, max_doublings=1)
    with pytest.raises(QuadratureNonConvergence) as info:
        integrate_interval(lambda t: np.cos(1e4 * t), 0.0, 10.0, q)
    assert info.value.error is not None
    assert info.value.last is not None


def test_polar_gaussian():
    q = QuadratureSpec(n_radial=64, r_max=8.0)
    assert integrate_polar(lambda u, v: np.exp(-(u * u + v * v)), q) == pytest.approx(math.pi, rel=1e-12)


def test_polar_rule_weights_sum_to_disk_area():
    q = QuadratureSpec(n_radial=32, n_angular=16, r_max=2.0)
    _, _, weights = polar_rule(q)
    assert weights.sum() == pytest.approx(4 * math.pi, rel=1e-13)


def test_polar_cutoff_too_small_is_rejected():
    q = QuadratureSpec(n_radial=64, r_max=1.0)
    with pytest.raises(QuadratureNonConvergence):
        integrate_polar(lambda u, v: np.exp(-(u * u + v * v) / 4), q)


def test_spec_validation():
    with pytest.raises(PreconditionError):
        QuadratureSpec(n_angular=8)
    with pytest.raises(PreconditionError):
        integrate_polar(lambda u, v: u, QuadratureSpec())
