"""Taylor-sign analysis: closed forms, quadrature paths, grid engine,
sweeps, and the sufficient criterion."""

import numpy as np
import pytest

from vortexwaves.curve import CurveTrace
from vortexwaves.grid import PeriodicGrid
from vortexwaves.taylor import (DEGENERATE, FAILED, STRONG,
                                TaylorInputError, a1_flat_closed_form,
                                a1_flat_general, a1_flat_quadrature,
                                a1_general, a1_pair_closed,
                                a1_single_vortex_closed, classify,
                                strong_taylor_criterion, sweep_pair,
                                sweep_single_vortex)
from vortexwaves.vortices import SymmetricPair, VortexSet


def test_single_vortex_closed_form_values():
    val, cls = a1_single_vortex_closed(0.0, -1.0)
    assert val == 1.0 and cls == STRONG
    # exactly at threshold
    lam_c = -np.sqrt(8.0 * np.pi ** 2 / 3.0)
    val, cls = a1_single_vortex_closed(lam_c, -1.0)
    assert abs(val) < 1e-12 and cls == DEGENERATE
    val, cls = a1_single_vortex_closed(2.0 * lam_c, -1.0)
    assert val < 0 and cls == FAILED


def test_single_vortex_depth_validation():
    with pytest.raises(TaylorInputError):
        a1_single_vortex_closed(1.0, 0.5)


def test_pair_reduces_at_x_equals_depth():
    lam, d = -3.0, 1.7
    got = a1_pair_closed(lam, d, -d)
    want = 1.0 - lam ** 2 / (16.0 * np.pi ** 2 * d ** 3)
    assert np.isclose(got, want, rtol=1e-13)


def test_closed_form_vs_quadrature_single():
    lam = -np.sqrt(20.0)
    vortices = VortexSet.build([-1.0j], [lam])
    pts = np.array([-0.5, 0.0, 0.8])
    closed = a1_flat_closed_form(pts, vortices, vortex_velocities=[0.0])
    quad = a1_flat_quadrature(pts, vortices, vortex_velocities=[0.0])
    assert np.max(np.abs(closed - quad)) < 1e-8


def test_grid_engine_matches_closed_form():
    # periodized grid evaluation approaches the real-line closed form
    # for a deep, well-resolved vortex pair
    grid = PeriodicGrid(1024)
    pair = SymmetricPair(x=1.0, y=-1.0, lam=-2.0).to_vortex_set()
    report = a1_flat_general(grid, pair)
    i0 = np.argmin(np.abs(grid.alpha))
    closed = a1_flat_closed_form(np.array([0.0]), pair)[0]
    assert abs(report.samples[i0] - closed) < 2e-3


def test_classify_bands():
    assert classify(0.5) == STRONG
    assert classify(-0.5) == FAILED
    assert classify(1e-12) == DEGENERATE


def test_sweep_single_brackets_threshold():
    ratios = np.linspace(8.0, 30.0, 100)
    rows = sweep_single_vortex(ratios)
    vals = np.array([r[3] for r in rows])
    i = int(np.flatnonzero(np.diff(np.sign(vals)))[0])
    assert ratios[i] < 8.0 * np.pi ** 2 / 3.0 < ratios[i + 1]


def test_sweep_pair_brackets_threshold():
    ratios = np.linspace(100.0, 220.0, 120)
    rows = sweep_pair(ratios, x=1.0, y=-1.0)
    vals = np.array([r[3] for r in rows])
    i = int(np.flatnonzero(np.diff(np.sign(vals)))[0])
    assert ratios[i] < 16.0 * np.pi ** 2 < ratios[i + 1]


def test_strong_criterion_on_calm_pair():
    grid = PeriodicGrid(256)
    curve = CurveTrace.build(grid, grid.alpha.astype(complex))
    pair = SymmetricPair(x=0.01, y=-1.2, lam=-0.01).to_vortex_set()
    satisfied, margin = strong_taylor_criterion(curve, pair)
    assert satisfied and margin > 0
