import cmath
import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from qvortex.exceptions import PreconditionError
from qvortex.momentum_wave import (
    amplitude_b1,
    amplitude_b2,
    amplitude_set,
    canonical_prefactor,
    grad_psi_exact,
    psi_approx,
    psi_exact,
    psi_generic,
    psi_momentum_exact,
    psi_momentum_generic,
    psi_momentum_near_center,
    taylor_factor_values,
    taylor_factors,
)
from qvortex.pulse import K0, MomentumPoint, PulseParams, canonical_pulse, laser_field, transition_frequency

PI = math.pi


def _b1_oracle(k, F0):
    u = k * k + 1
    omega = u / 2
    P = -3j * k / u ** 2.5
    return P * F0 * 1j * omega * (cmath.exp(2j * u) - 1) / (PI ** 2 - omega ** 2)


def _b2_oracle(k, F0):
    u = k * k + 1
    w = u / 2
    P = -3j * k / u ** 2.5
    dP = -3j * (1 - 4 * k * k) / u ** 3.5
    E = cmath.exp(4j * w) - 1
    X = -F0 ** 2 * E / (w ** 2 - 4 * PI ** 2)
    Y = -1j * F0 ** 2 * E * (w ** 2 + 2 * PI ** 2) / (w * (w ** 2 - PI ** 2) * (w ** 2 - 4 * PI ** 2))
    m0 = -1j * ((dP + P / k) * X + 1j * k * P * Y)
    m2 = 0.5j * ((dP - P / k) * X + 1j * k * P * Y)
    return m0, m2


def _cquad(f, a, b):
    real, _ = quad(lambda s: f(s).real, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)
    imag, _ = quad(lambda s: f(s).imag, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)
    return complex(real, imag)


def _b1_adaptive(k, t, p):
    u = k * k + 1
    omega = transition_frequency(k)
    integral = _cquad(lambda s: laser_field(s, p) * cmath.exp(1j * omega * s), 0.0, min(t, p.T))
    return -3j * k / u ** 2.5 * integral


def _b2_adaptive(k, t, p):
    u = k * k + 1
    omega = transition_frequency(k)
    P = -3j * k / u ** 2.5
    dP = -3j * (1 - 4 * k * k) / u ** 3.5

    def inner(tp):
        G = _cquad(lambda s: laser_field(s, p) * cmath.exp(1j * omega * s), 0.0, tp)
        K = _cquad(lambda s: laser_field(s, p) * (s - tp) * cmath.exp(1j * omega * s), 0.0, tp)
        return G, K

    def m0(tp):
        G, K = inner(tp)
        return -1j * laser_field(tp, p) * ((dP + P / k) * G + 1j * k * P * K)

    def m2(tp):
        G, K = inner(tp)
        return 0.5j * laser_field(tp, p) * ((dP - P / k) * G + 1j * k * P * K)

    upper = min(t, p.T)
    return _cquad(m0, 0.0, upper), _cquad(m2, 0.0, upper)


# ──────────────────────────────────────────────────────────────
# CLOSED FORMS
# ──────────────────────────────────────────────────────────────
def test_exact_value_without_field():
    value = psi_momentum_exact(MomentumPoint(1.0, 0.0), 4.0, 0.0)
    assert value.real == pytest.approx(-0.0048959, abs=1e-6)
    assert value.imag == pytest.approx(0.0076249, abs=1e-6)


def test_exact_and_near_center_vanish_at_vortex_centers():
    for ky in (K0, -K0):
        assert abs(psi_momentum_exact(MomentumPoint(0.0, ky), 5.0, 0.4)) < 1e-15
        assert abs(psi_momentum_near_center(MomentumPoint(0.0, ky), 5.0, 0.4)) < 1e-15


def test_nodal_line_without_field():
    ky = np.linspace(-4, 4, 17)
    assert np.all(psi_exact(0.0, ky, 5.0, 0.0) == 0)


def test_near_center_modulus_on_kx_axis():
    assert abs(psi_momentum_near_center(MomentumPoint(K0, 0.0), 5.0, 0.4)) == pytest.approx(K0, rel=1e-12)


def test_mirror_symmetry():
    kx, ky = np.meshgrid(np.linspace(-3.5, 3.5, 9), np.linspace(0.2, 3.8, 7), indexing="ij")
    for psi in (psi_exact, psi_approx):
        assert np.allclose(psi(kx, -ky, 6.0, 0.4), psi(kx, ky, 6.0, 0.4), rtol=1e-13, atol=0)


def test_modulus_is_time_independent():
    kx, ky = np.meshgrid(np.linspace(-3, 3, 7), np.linspace(-3, 3, 7), indexing="ij")
    assert np.allclose(np.abs(psi_exact(kx, ky, 5.0, 0.4)), np.abs(psi_exact(kx, ky, 11.0, 0.4)), rtol=1e-12)


def test_removable_rings_are_finite():
    for s in (4 * PI - 1, 2 * PI - 1):
        k = math.sqrt(s)
        for kx, ky in ((k, 0.0), (k / math.sqrt(2), k / math.sqrt(2))):
            value = psi_exact(kx, ky, 5.0, 0.4)
            nearby = psi_exact(kx * (1 + 1e-7), ky * (1 + 1e-7), 5.0, 0.4)
            assert np.isfinite(value)
            assert abs(value - nearby) < 1e-4 * abs(value)
    du, dv = grad_psi_exact(math.sqrt(4 * PI - 1), 0.0, 5.0, 0.4)
    assert np.isfinite(du) and np.isfinite(dv)


def test_times_before_pulse_end_rejected():
    with pytest.raises(PreconditionError):
        psi_exact(1.0, 0.0, 3.9, 0.4)


def test_taylor_factor_identities():
    first, second = taylor_factor_values(K0)
    expected_first, expected_second = taylor_factors()
    assert first == pytest.approx(expected_first, rel=1e-12)
    assert second == pytest.approx(expected_second, rel=1e-12)


def test_near_center_matches_exact_close_to_vortex():
    scale = 8 * math.sqrt(2) * PI ** 2.5
    theta = np.linspace(0, 2 * PI, 24, endpoint=False)
    kx, ky = 0.05 * np.cos(theta), K0 + 0.05 * np.sin(theta)
    ratio = np.abs(psi_exact(kx, ky, 5.0, 0.4)) * scale / np.abs(psi_approx(kx, ky, 5.0, 0.4))
    assert np.all(np.abs(ratio - 1) < 0.05)


# ──────────────────────────────────────────────────────────────
# AMPLITUDES
# ──────────────────────────────────────────────────────────────
def test_amplitudes_vanish_trivially():
    p = canonical_pulse(0.4)
    assert amplitude_b1(1.0, 0.0, p) == 0
    assert amplitude_b2(1.0, 0.0, p) == (0, 0)
    off = canonical_pulse(0.0)
    assert amplitude_b1(1.7, 5.0, off) == 0
    assert amplitude_b2(1.7, 5.0, off) == (0, 0)


def test_amplitudes_reject_zero_momentum():
    with pytest.raises(PreconditionError):
        amplitude_b2(0.0, 5.0, canonical_pulse(0.4))


def test_first_order_amplitude_matches_antiderivative():
    for k in (1.0, 1.7, 3.1):
        assert abs(amplitude_b1(k, 5.0, canonical_pulse(0.4)) - _b1_oracle(k, 0.4)) < 1e-10


def test_second_order_amplitudes_match_double_integral():
    for k in (1.0, 2.0):
        m0, m2 = amplitude_b2(k, 5.0, canonical_pulse(0.4))
        o0, o2 = _b2_oracle(k, 0.4)
        assert abs(m0 - o0) < 1e-8
        assert abs(m2 - o2) < 1e-8


def test_amplitude_set_bundles_amplitudes():
    p = canonical_pulse(0.4)
    amps = amplitude_set(1.3, 6.0, p)
    assert amps.b1_m1 == amplitude_b1(1.3, 6.0, p)
    assert (amps.b2_m0, amps.b2_m2) == amplitude_b2(1.3, 6.0, p)


def test_generic_assembly_reproduces_closed_form():
    F0 = 0.4
    p = canonical_pulse(F0)
    points = [(-3.1, 0.7), (0.5, 2.0), (2.5, -1.0), (1.0, 0.0), (-0.4, -3.6), (3.2, 2.4)]
    kx = np.array([pt[0] for pt in points])
    ky = np.array([pt[1] for pt in points])
    generic = psi_generic(kx, ky, 5.0, p)
    exact = psi_exact(kx, ky, 5.0, F0, A=canonical_prefactor(F0))
    assert np.all(np.abs(generic - exact) < 1e-6 * np.abs(exact))


def test_generic_vanishes_without_field():
    p = PulseParams(F0=0.0)
    assert psi_momentum_generic(MomentumPoint.from_polar(1.5, PI / 2), 5.0, p) == pytest.approx(0, abs=1e-18)


def test_amplitudes_of_an_arbitrary_pulse_match_adaptive_quadrature():
    p = PulseParams(F0=0.4, omega=2.0, T=3.0, alpha=0.3)
    assert abs(amplitude_b1(1.2, 5.0, p) - _b1_adaptive(1.2, 5.0, p)) < 1e-9
    m0, m2 = amplitude_b2(1.2, 5.0, p)
    o0, o2 = _b2_adaptive(1.2, 5.0, p)
    assert abs(m0 - o0) < 1e-9
    assert abs(m2 - o2) < 1e-9


def test_generic_grid_reproduces_closed_form():
    F0 = 0.4
    axis = np.linspace(-4.0, 4.0, 10)
    kx, ky = np.meshgrid(axis, axis, indexing="ij")
    started = time.perf_counter()
    generic = psi_generic(kx, ky, 5.0, canonical_pulse(F0))
    elapsed = time.perf_counter() - started
    exact = psi_exact(kx, ky, 5.0, F0, A=canonical_prefactor(F0))
    assert np.max(np.abs(generic - exact)) < 1e-6 * np.max(np.abs(exact))
    assert elapsed < 10.0
