import math

import pytest

from qvortex import vortex_finder
from qvortex.exceptions import DegenerateZeroSet, NonConvergence, PreconditionError, TrackLost
from qvortex.field_sampler import GridSpec, SearchRegion, Space, wavefunction_grid, zero_nondegeneracy
from qvortex.momentum_wave import MomentumWavefunctionKind as Kind
from qvortex.pulse import K0, PI
from qvortex.vortex_finder import (
    CenterMode,
    VortexDescriptor,
    bracket_root_offset,
    find_zeros,
    momentum_centers_closed_form,
    position_centers,
    refine_zero,
    total_charge,
    trace_trajectory,
    trajectory_slope,
    winding_number,
)


# ──────────────────────────────────────────────────────────────
# CLOSED FORMS
# ──────────────────────────────────────────────────────────────
def test_momentum_centers_closed_form():
    upper, lower = momentum_centers_closed_form(0.4)
    assert upper.center == (0.0, pytest.approx(2.29852, abs=1e-5))
    assert lower.center == (0.0, pytest.approx(-2.29852, abs=1e-5))
    assert (upper.charge, lower.charge) == (1, -1)
    assert upper.residual < 1e-15
    with pytest.raises(DegenerateZeroSet):
        momentum_centers_closed_form(0.0)


@pytest.mark.parametrize(
    "F0, t, x0, y0, digits",
    [(0.4, 5.0, 0.064, 7.05, 2), (0.4, 10.0, 0.064, 18.446, 3), (4.0, 5.0, 0.64, 7.02, 2)],
)
def test_position_centers_reported_values(F0, t, x0, y0, digits):
    upper, lower = position_centers(F0, t, CenterMode.EXACT_BRACKET_ROOT)
    assert round(upper.center[0], 3 if F0 < 1 else 2) == x0
    assert round(upper.center[1], digits) == y0
    assert round(lower.center[1], digits) == -y0
    assert (upper.charge, lower.charge) == (1, -1)


def test_position_centers_modes():
    drift = position_centers(0.4, 5.0, CenterMode.LEADING_DRIFT)[0]
    exact = position_centers(0.4, 5.0, CenterMode.EXACT_BRACKET_ROOT)[0]
    assert drift.center[1] == pytest.approx(3 * K0)
    assert drift.center[0] == exact.center[0]
    assert position_centers(0.0, 7.0)[0].center[0] == 0.0
    late = position_centers(0.4, 30.0, CenterMode.EXACT_BRACKET_ROOT)[0].center[1]
    late_drift = position_centers(0.4, 30.0, CenterMode.LEADING_DRIFT)[0].center[1]
    assert late - late_drift == pytest.approx(bracket_root_offset(0.4, 30.0), rel=1e-3)
    with pytest.raises(PreconditionError):
        position_centers(0.4, 4.0)


# ──────────────────────────────────────────────────────────────
# SEEDS
# ──────────────────────────────────────────────────────────────
def test_plaquette_scan_finds_two_momentum_vortices():
    grid = wavefunction_grid(Kind.EXACT_CLOSED_FORM, GridSpec(-4, 4, -4, 4, 400, 400), 5.0, 0.4)
    seeds = find_zeros(grid)
    assert len(seeds) == 2
    assert total_charge(seeds) == 0
    for seed in seeds:
        assert abs(seed.point[0]) < 0.03
        assert abs(abs(seed.point[1]) - K0) < 0.03


def test_plaquette_scan_without_vortices():
    grid = wavefunction_grid(Kind.EXACT_CLOSED_FORM, GridSpec(0.5, 4, -1, 1, 100, 100), 5.0, 0.4)
    assert find_zeros(grid) == []


def test_plaquette_scan_ignores_nodal_rings():
    # ψ vanishes on the whole ring k²+1 = 3π; only the lobe vortices survive
    grid = wavefunction_grid(Kind.EXACT_CLOSED_FORM, GridSpec(-4, 4, -4, 4, 120, 120), 5.0, 0.4)
    seeds = find_zeros(grid)
    assert len(seeds) == 2
    for seed in seeds:
        assert PI < seed.point[0] ** 2 + seed.point[1] ** 2 + 1 < 3 * PI


def test_window_scan_reaches_outer_ring_vortex():
    spec = GridSpec(1.0, 1.4, 3.0, 3.4, 41, 41)
    grid = wavefunction_grid(Kind.EXACT_CLOSED_FORM, spec, 5.0, 0.4)
    assert find_zeros(grid) == []
    seeds = find_zeros(grid, region=SearchRegion.WINDOW)
    assert len(seeds) == 1
    assert seeds[0].point[0] == pytest.approx(math.sqrt(4 * PI / 9), abs=0.02)
    assert seeds[0].point[1] == pytest.approx(math.sqrt(32 * PI / 9 - 1), abs=0.02)


def test_plaquette_scan_in_position_space():
    grid = wavefunction_grid(
        Kind.NEAR_CENTER_APPROX, GridSpec(-1.936, 2.064, 5.05, 9.05, 200, 200), 5.0, 0.4, Space.POSITION
    )
    seeds = find_zeros(grid)
    assert len(seeds) == 1
    assert seeds[0].winding == 1


# ──────────────────────────────────────────────────────────────
# REFINEMENT
# ──────────────────────────────────────────────────────────────
def test_refine_momentum_zero():
    vortex = refine_zero((0.1, 2.2), 5.0, 0.4)
    assert abs(vortex.center[0]) < 1e-10
    assert abs(vortex.center[1] - math.sqrt(2 * math.pi - 1)) < 1e-10
    assert vortex.residual < 1e-10
    assert vortex.charge == 1
    mirrored = refine_zero((0.1, -2.2), 5.0, 0.4)
    assert vortex.charge + mirrored.charge == 0


@pytest.mark.parametrize("F0, t", [(0.4, 5.0), (0.4, 10.0), (4.0, 5.0), (4.0, 10.0)])
def test_refine_position_zero_matches_bracket_root(F0, t):
    expected = position_centers(F0, t, CenterMode.EXACT_BRACKET_ROOT)[0]
    seed = (expected.center[0] + 0.05, expected.center[1] - 0.05)
    vortex = refine_zero(seed, t, F0, Kind.NEAR_CENTER_APPROX, Space.POSITION)
    assert vortex.center[0] == pytest.approx(expected.center[0], abs=1e-8)
    assert vortex.center[1] == pytest.approx(expected.center[1], abs=1e-8)
    assert vortex.charge == 1


def test_refine_from_reported_seed():
    vortex = refine_zero((0.1, 7.0), 5.0, 0.4, Kind.NEAR_CENTER_APPROX, Space.POSITION)
    expected = position_centers(0.4, 5.0)[0].center
    assert vortex.center == (pytest.approx(expected[0], abs=1e-8), pytest.approx(expected[1], abs=1e-8))


def test_winding_independent_of_loop_radius():
    cell = 8 / 399
    for cells in (2, 3, 4, 5, 6):
        assert winding_number((0.0, K0), cells * cell, 5.0, 0.4) == 1
        assert winding_number((0.0, -K0), cells * cell, 5.0, 0.4) == -1


def test_refine_reports_last_iterate():
    with pytest.raises(NonConvergence) as info:
        refine_zero((0.1, 2.2), 5.0, 0.4, max_iter=1)
    assert info.value.last is not None


def test_refine_converges_quickly_from_a_cell_away():
    vortex = refine_zero((0.1, 2.2), 5.0, 0.4, max_iter=15)
    assert vortex.center[1] == pytest.approx(K0, abs=1e-10)


def test_refine_outer_ring_vortex():
    vortex = refine_zero((1.2, 3.2), 5.0, 0.4)
    kx, ky = vortex.center
    assert kx * kx + ky * ky + 1 == pytest.approx(4 * PI, abs=1e-8)
    assert kx * kx == pytest.approx(4 * PI / 9, abs=1e-8)
    assert abs(vortex.charge) == 1


def test_refine_rejects_nodal_ring():
    ring_point = (0.5, math.sqrt(3 * PI - 1.25))
    with pytest.raises(DegenerateZeroSet):
        refine_zero(ring_point, 5.0, 0.4)


def test_zero_nondegeneracy():
    assert zero_nondegeneracy(Kind.EXACT_CLOSED_FORM, (0.5, math.sqrt(3 * PI - 1.25)), 5.0, 0.4) < 1e-6
    assert zero_nondegeneracy(Kind.EXACT_CLOSED_FORM, (0.0, K0), 5.0, 0.4) > 0.5


def test_refine_degenerate_line():
    with pytest.raises(DegenerateZeroSet):
        refine_zero((0.0, 7.0), 5.0, 0.0, Kind.NEAR_CENTER_APPROX, Space.POSITION)


# ──────────────────────────────────────────────────────────────
# TRAJECTORIES
# ──────────────────────────────────────────────────────────────
def test_trace_matches_reported_centers():
    upper_5, lower_5, upper_10, lower_10 = trace_trajectory([5.0, 10.0], 0.4)
    assert round(upper_5.center[1], 2) == 7.05
    assert round(lower_5.center[1], 2) == -7.05
    assert round(upper_10.center[1], 3) == 18.446
    assert round(lower_10.center[1], 3) == -18.446
    for vortex in (upper_5, lower_5, upper_10, lower_10):
        assert round(vortex.center[0], 3) == 0.064


def test_trace_slope_approaches_k0():
    history = trace_trajectory([8.0, 9.0, 10.0, 11.0, 12.0], 0.4)
    upper = history[0::2]
    lower = history[1::2]
    assert trajectory_slope(upper) == pytest.approx(K0, rel=0.02)
    assert trajectory_slope(lower) == pytest.approx(-K0, rel=0.02)


def test_momentum_centers_do_not_move():
    history = trace_trajectory([5.0, 8.0], 0.4, Kind.EXACT_CLOSED_FORM, Space.MOMENTUM)
    assert history[0].center[1] == pytest.approx(history[2].center[1], abs=1e-10)
    assert history[1].center[1] == pytest.approx(history[3].center[1], abs=1e-10)


@pytest.mark.parametrize("times", [[], [10.0, 5.0], [4.0, 5.0]])
def test_trace_rejects_bad_time_lists(times):
    with pytest.raises(PreconditionError):
        trace_trajectory(times, 0.4)


def test_trace_without_field_is_degenerate():
    with pytest.raises(DegenerateZeroSet):
        trace_trajectory([5.0, 10.0], 0.0)


def test_trace_loses_a_track_that_jumps(monkeypatch):
    def far_away(seed, t, pulse, kind, space):
        return VortexDescriptor(Space(space), (seed[0] + 5.0, seed[1]), 1 if seed[1] > 0 else -1, t, 0.0)

    monkeypatch.setattr(vortex_finder, "refine_zero", far_away)
    with pytest.raises(TrackLost) as info:
        trace_trajectory([5.0, 10.0], 0.4)
    assert info.value.error == pytest.approx(5.0)
