import math

import pytest

from qvortex.exceptions import PreconditionError, QuadratureNonConvergence
from qvortex.field_sampler import Space
from qvortex.momentum_wave import MomentumWavefunctionKind as Kind
from qvortex.moments import (
    MomentMethod,
    MomentReport,
    PositionMomentMode,
    angular_overlap,
    momentum_dispersion_closed_form,
    momentum_moments_closed_form,
    momentum_moments_numeric,
    normalize,
    normalized_moments,
    position_moments,
)
from qvortex.position_wave import packet_width
from qvortex.pulse import PulseParams
from qvortex.quadrature import QuadratureSpec

PI = math.pi


# ──────────────────────────────────────────────────────────────
# MOMENTUM
# ──────────────────────────────────────────────────────────────
def test_momentum_means_vanish():
    report = momentum_moments_numeric(5.0, 0.4)
    assert abs(report.mean_u) < 1e-8
    assert abs(report.mean_v) < 1e-8
    assert report.method is MomentMethod.NUMERIC


def test_exact_dispersion_exceeds_closed_form():
    exact = momentum_moments_numeric(5.0, 0.4)
    closed = momentum_moments_closed_form(5.0, 0.4)
    assert 1.10 <= exact.var_u / closed.var_u <= 1.30
    assert 1.10 <= exact.var_v / closed.var_v <= 1.30
    assert exact.var_u > exact.var_v


def test_closed_form_dispersion():
    assert momentum_dispersion_closed_form(0.0) == (pytest.approx(3 * PI / 4), pytest.approx(PI / 4))
    weak = momentum_dispersion_closed_form(0.4)
    assert weak == (pytest.approx(2.349062, rel=1e-5), pytest.approx(0.784175, rel=1e-5))
    # a weak field moves both dispersions by a few parts per thousand
    assert abs(weak[0] / (3 * PI / 4) - 1) < 5e-3
    assert abs(weak[1] / (PI / 4) - 1) < 5e-3
    assert weak[0] > weak[1]


def test_closed_form_moments_need_the_canonical_pulse():
    with pytest.raises(PreconditionError, match="canonical"):
        momentum_moments_numeric(5.0, PulseParams(0.4, omega=2.0))


@pytest.mark.parametrize("F0", [0.0, 0.4, 4.0])
def test_near_center_quadrature_matches_closed_form(F0):
    numeric = momentum_moments_numeric(5.0, F0, kind=Kind.NEAR_CENTER_APPROX)
    closed = momentum_moments_closed_form(5.0, F0)
    assert numeric.var_u == pytest.approx(closed.var_u, rel=1e-6)
    assert numeric.var_v == pytest.approx(closed.var_v, rel=1e-6)
    assert numeric.norm == pytest.approx(closed.norm, rel=1e-6)


def test_dispersion_is_time_independent():
    early = momentum_moments_numeric(5.0, 0.4)
    late = momentum_moments_numeric(9.0, 0.4)
    assert late.var_u == pytest.approx(early.var_u, rel=1e-9)
    assert late.var_v == pytest.approx(early.var_v, rel=1e-9)


def test_angular_overlaps():
    assert angular_overlap(2, 2) == pytest.approx(PI, rel=1e-12)
    assert angular_overlap(0, 0) == pytest.approx(2 * PI, rel=1e-12)
    assert angular_overlap(1, 3) == pytest.approx(0, abs=1e-12)
    assert angular_overlap(2, 2, kind="sin") == pytest.approx(0, abs=1e-12)


def test_cutoff_too_small_is_reported():
    with pytest.raises(QuadratureNonConvergence):
        momentum_moments_numeric(5.0, 0.4, QuadratureSpec(r_max=1.0))


def test_report_validation():
    with pytest.raises(PreconditionError):
        MomentReport(0.0, 0.0, -1.0, 1.0, 1.0, MomentMethod.NUMERIC)
    with pytest.raises(PreconditionError):
        MomentReport(0.0, 0.0, 1.0, 1.0, 0.0, MomentMethod.NUMERIC)


# ──────────────────────────────────────────────────────────────
# POSITION
# ──────────────────────────────────────────────────────────────
def test_position_closed_form_mean():
    report = position_moments(5.0, 0.4)
    assert report.mean_u == pytest.approx(-9.2076e-3, rel=1e-4)
    assert report.mean_v == 0.0
    assert report.space is Space.POSITION


def test_position_numeric_mean_scales_closed_form():
    closed = position_moments(5.0, 0.4, PositionMomentMode.CLOSED_FORM)
    numeric = position_moments(5.0, 0.4, PositionMomentMode.NUMERIC)
    assert numeric.mean_u == pytest.approx(PI ** 2 * closed.mean_u, rel=0.02)
    assert abs(numeric.mean_v) < 1e-8


@pytest.mark.parametrize("t", [5.0, 8.0, 12.0])
def test_position_spread_follows_packet_width(t):
    report = position_moments(t, 0.4)
    assert report.var_u + report.var_v == pytest.approx(packet_width(t).a2, rel=0.05)


def test_position_dispersion_without_field():
    a2 = packet_width(6.0).a2
    numeric = position_moments(6.0, 0.0, PositionMomentMode.NUMERIC)
    assert numeric.var_u == pytest.approx(3 * a2 / 4, rel=1e-6)
    assert numeric.var_v == pytest.approx(a2 / 4, rel=1e-6)
    assert numeric.norm == pytest.approx(position_moments(6.0, 0.0).norm, rel=1e-6)


def test_position_moments_need_time_after_pulse():
    with pytest.raises(PreconditionError):
        position_moments(4.0, 0.4)


# ──────────────────────────────────────────────────────────────
# NORMALIZATION
# ──────────────────────────────────────────────────────────────
def test_normalized_norm_is_one():
    report = normalized_moments(Kind.EXACT_CLOSED_FORM, 5.0, 0.4)
    assert report.norm == pytest.approx(1.0, rel=1e-10)


def test_normalization_is_time_independent():
    early = normalize(Kind.EXACT_CLOSED_FORM, 5.0, 0.4)
    late = normalize(Kind.EXACT_CLOSED_FORM, 10.0, 0.4)
    assert late == pytest.approx(early, rel=1e-10)


def test_normalization_keeps_moments():
    raw = momentum_moments_numeric(5.0, 0.4)
    scaled = normalized_moments(Kind.EXACT_CLOSED_FORM, 5.0, 0.4)
    assert scaled.var_u == pytest.approx(raw.var_u, rel=1e-10)
    assert scaled.var_v == pytest.approx(raw.var_v, rel=1e-10)


def test_normalization_in_position_space():
    report = normalized_moments(Kind.NEAR_CENTER_APPROX, 5.0, 0.4, space=Space.POSITION)
    assert report.norm == pytest.approx(1.0, rel=1e-10)
