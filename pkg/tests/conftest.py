"""Shared fixtures: the long-horizon vortex-pair run and the
irrotational scaling family, both expensive and reused across tests."""

import numpy as np
import pytest

from vortexwaves.diagnostics import energy_Es, record_for
from vortexwaves.evolution import evolve, make_scaled_state
from vortexwaves.grid import PeriodicGrid
from vortexwaves.presets import preset
from vortexwaves.runner import initial_state


@pytest.fixture(scope="session")
def longtime_run():
    """Full pair-longtime preset run with per-step diagnostics history."""
    config = preset("pair-longtime")
    state = initial_state(config)
    evo = config.evolution_config()
    hist = {"t": [], "x_ratio": [], "d_I": [], "y": [], "triple": [],
            "E": [], "sym": [], "taylor_margin": []}

    def record(st):
        rec = record_for(st, s=config.sobolev_order, x0=config.x0,
                         with_at_over_a=False)
        hist["t"].append(st.t)
        hist["x_ratio"].append(rec.x_ratio)
        hist["d_I"].append(rec.d_I)
        hist["y"].append(float(st.vortices.positions[0].imag))
        hist["triple"].append(rec.sobolev_triple)
        hist["E"].append(rec.E_lagrangian)
        hist["sym"].append(rec.symmetry_residual)
        hist["taylor_margin"].append(rec.taylor_margin)

    record(state)
    final = evolve(state, evo, observer=lambda i, st: record(st))
    hist = {k: np.asarray(v) for k, v in hist.items()}
    return config, hist, final


@pytest.fixture(scope="session")
def scaling_family():
    """Constrained wave states over eps in {1e-3, 5e-4, 2.5e-4}."""
    grid = PeriodicGrid(256)
    eps_list = (1e-3, 5e-4, 2.5e-4)
    states = [make_scaled_state(grid, eps,
                                wave_modes=((6, 1.0), (9, 0.5j)),
                                velocity_modes=((7, 0.8),))
              for eps in eps_list]
    return grid, eps_list, states


def fitted_slope(eps_list, values):
    return float(np.polyfit(np.log(eps_list), np.log(values), 1)[0])
