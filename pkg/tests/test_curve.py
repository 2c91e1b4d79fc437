"""Curve traces and the chord-arc constants."""

import numpy as np
import pytest

from vortexwaves.curve import (ChordArcError, CurveTrace,
                               chord_arc_constants,
                               periodized_point_distance)
from vortexwaves.grid import PeriodicGrid


def test_flat_curve_constants():
    grid = PeriodicGrid(64)
    curve = CurveTrace.build(grid, grid.alpha.astype(complex))
    c1, c2 = curve.chord_arc
    assert np.isclose(c1, 1.0, atol=1e-12)
    assert np.isclose(c2, 1.0, atol=1e-12)
    assert curve.is_flat


def test_gentle_bump_constants_bracket_one():
    grid = PeriodicGrid(128)
    zeta = grid.alpha + 0.1j * np.sin(np.pi * grid.alpha / grid.L)
    curve = CurveTrace.build(grid, zeta.astype(complex))
    c1, c2 = curve.chord_arc
    assert c1 <= 1.0 <= c2
    assert c1 > 0.9


def test_pinching_curve_rejected():
    grid = PeriodicGrid(128)
    # large horizontal displacement folds the curve over itself
    zeta = grid.alpha + 6.0 * np.sin(np.pi * 8 * grid.alpha / grid.L)
    with pytest.raises(ChordArcError):
        CurveTrace.build(grid, zeta.astype(complex), chord_arc_floor=0.5)


def test_periodized_point_distance_wraps():
    grid = PeriodicGrid(64)
    z = grid.alpha.astype(complex)
    w = (2.0 * grid.L - 1.0) - 1.0j      # close to alpha = -1 mod 2L
    d = periodized_point_distance(grid, z, w)
    assert d < 1.5


def test_chord_arc_constants_match_trace():
    grid = PeriodicGrid(64)
    zeta = grid.alpha + 0.05j * np.cos(np.pi * grid.alpha / grid.L)
    curve = CurveTrace.build(grid, zeta.astype(complex))
    c1, c2 = chord_arc_constants(grid, curve.z)
    assert np.isclose(c1, curve.chord_arc[0])
    assert np.isclose(c2, curve.chord_arc[1])
