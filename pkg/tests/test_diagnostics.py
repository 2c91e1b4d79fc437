"""Energies, cubic fields, quasilinear coefficient, and run monitors."""

import numpy as np
import pytest

from vortexwaves.diagnostics import (cubic_fields, cubic_residuals,
                                     energy_Es, energy_lagrangian,
                                     longtime_monitors, quasilinear_at,
                                     record_for)
from vortexwaves.evolution import build_initial_data, make_scaled_state
from vortexwaves.grid import PeriodicGrid
from vortexwaves.vortices import SymmetricPair

from conftest import fitted_slope


@pytest.fixture
def grid():
    return PeriodicGrid(128)


def test_rest_state_all_zero(grid):
    st = build_initial_data(grid)
    assert energy_lagrangian(st) == 0.0
    e_s, comp = energy_Es(st)
    assert e_s == 0.0 and comp == 0.0
    g_c, g_d = cubic_fields(st)
    assert np.max(np.abs(g_c)) < 1e-14
    assert np.max(np.abs(g_d)) < 1e-14
    assert np.max(np.abs(quasilinear_at(st))) < 1e-12


def test_energies_nonnegative_and_quadratic(grid):
    eps_list = (1e-3, 5e-4, 2.5e-4)
    e_vals, es_vals = [], []
    for eps in eps_list:
        st = make_scaled_state(grid, eps, wave_modes=((4, 1.0),),
                               velocity_modes=((5, 0.7),))
        e = energy_lagrangian(st)
        e_s, _ = energy_Es(st)
        assert e >= 0.0 and e_s >= 0.0
        e_vals.append(e)
        es_vals.append(e_s)
    assert fitted_slope(eps_list, e_vals) == pytest.approx(2.0, abs=0.1)
    assert fitted_slope(eps_list, es_vals) == pytest.approx(2.0, abs=0.1)


def test_energy_comparison_identity_is_higher_order(grid):
    st = make_scaled_state(grid, 1e-3, wave_modes=((4, 1.0), (6, 0.5j)),
                           velocity_modes=((5, 0.7),))
    e_s, comp = energy_Es(st)
    assert abs(e_s - comp) < 1e-6 * max(e_s, comp) + 1e-14


def test_cubic_fields_scale_cubically(grid):
    eps_list = (1e-3, 5e-4, 2.5e-4)
    gc_vals = []
    for eps in eps_list:
        st = make_scaled_state(grid, eps, wave_modes=((4, 1.0),),
                               velocity_modes=((5, 0.7),))
        gc, _ = cubic_residuals(st)
        gc_vals.append(gc)
    assert fitted_slope(eps_list, gc_vals) >= 2.7


def test_vortex_source_tracks_vortices(grid):
    pair = SymmetricPair(x=0.05, y=-2.5, lam=-0.05)
    st = build_initial_data(grid, vortices=pair.to_vortex_set())
    _, g_d = cubic_fields(st)
    assert np.max(np.abs(g_d)) > 1e-8     # vortex source present
    rec = record_for(st, x0=pair.x)
    assert rec.d_P == pytest.approx(0.1, abs=1e-6)
    assert rec.x_ratio == pytest.approx(1.0)


def test_longtime_monitors_flag_violations():
    times = np.array([0.0, 10.0, 20.0])
    ok = longtime_monitors(times, [1.0, 1.1, 0.9],
                           1.2 + 0.08 * times, -1.2 - 0.08 * times,
                           [(1e-4,) * 3] * 3, eps=1e-3, lam=-0.01,
                           x0=0.01)
    assert ok.passed and ok.applicable
    bad = longtime_monitors(times, [1.0, 3.0, 0.9],
                            1.2 + 0.08 * times, -1.2 - 0.08 * times,
                            [(1e-4,) * 3] * 3, eps=1e-3, lam=-0.01,
                            x0=0.01)
    assert not bad.passed
    assert not bad.checks["x_ratio"]
    assert bad.first_violation == 10.0
