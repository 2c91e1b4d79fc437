"""Curve operators: Hilbert transform, projections, solves, interior
Cauchy evaluation."""

import numpy as np
import pytest

from vortexwaves.curve import CurveTrace
from vortexwaves.grid import PeriodicGrid
from vortexwaves.singular import (CurveOperators, NearBoundaryError,
                                  cot_kernel)
from vortexwaves.spectral import flat_hilbert, l2_norm


@pytest.fixture
def flat(request):
    grid = PeriodicGrid(256)
    curve = CurveTrace.build(grid, grid.alpha.astype(complex))
    return grid, curve, CurveOperators(curve)


@pytest.fixture
def bumped():
    grid = PeriodicGrid(256)
    zeta = grid.alpha + 0.03j * np.sin(np.pi * grid.alpha / grid.L) \
        + 0.02 * np.cos(2.0 * np.pi * grid.alpha / grid.L)
    curve = CurveTrace.build(grid, zeta.astype(complex))
    return grid, curve, CurveOperators(curve)


def test_flat_curve_matches_flat_hilbert(flat):
    grid, curve, ops = flat
    k = np.pi * 4 / grid.L
    f = np.exp(1j * k * grid.alpha) + 0.5 * np.exp(-2j * k * grid.alpha)
    got = ops.hilbert(f)
    want = flat_hilbert(f, grid=grid)
    assert np.max(np.abs(got - want)) < 1e-11


def test_holomorphic_trace_is_fixed(bumped):
    grid, curve, ops = bumped
    # e^{-ik zeta} extends holomorphically below the curve for k > 0
    k = np.pi * 3 / grid.L
    f = np.exp(-1j * k * curve.z)
    assert l2_norm(ops.project_minus(f), grid=grid) < 1e-10
    assert np.max(np.abs(ops.project_holomorphic(f) - f)) < 1e-10


def test_project_holomorphic_kills_constants(bumped):
    grid, curve, ops = bumped
    out = ops.project_holomorphic(np.full(grid.n, 2.0 + 1.0j))
    assert np.max(np.abs(out)) < 1e-12


def test_project_holomorphic_idempotent(bumped):
    grid, curve, ops = bumped
    rng = np.random.default_rng(7)
    f = rng.standard_normal(grid.n) + 1j * rng.standard_normal(grid.n)
    once = ops.project_holomorphic(f)
    twice = ops.project_holomorphic(once)
    assert np.max(np.abs(twice - once)) < 1e-9
    # the projected trace satisfies the class constraint
    assert l2_norm(ops.project_minus(once), grid=grid) < 1e-9


def test_commutator_annihilates_constants(bumped):
    grid, curve, ops = bumped
    f = np.full(grid.n, 3.0 + 0.0j)
    h = np.sin(np.pi * grid.alpha / grid.L)
    assert np.max(np.abs(ops.commutator(f, h))) < 1e-13


def test_second_kind_solve_roundtrip(bumped):
    grid, curve, ops = bumped
    rng = np.random.default_rng(3)
    f = rng.standard_normal(grid.n)
    for kind in ("I-K", "I+K", "I+K*"):
        x = ops.solve_second_kind(kind, f)
        mat = ops._system(kind)
        assert np.max(np.abs(mat @ x - f)) < 1e-10


def test_cauchy_interior_reproduces_holomorphic(bumped):
    grid, curve, ops = bumped
    k = np.pi * 2 / grid.L
    density = np.exp(-1j * k * curve.z) + 1.5
    w = 1.0 - 2.0j
    got = ops.cauchy_interior(density, w)
    want = np.exp(-1j * k * w) + 1.5
    assert abs(got - want) < 1e-9


def test_cauchy_interior_refuses_near_and_above(bumped):
    grid, curve, ops = bumped
    density = np.ones(grid.n, dtype=complex)
    with pytest.raises(NearBoundaryError):
        ops.cauchy_interior(density, 0.0 - 1e-4j)
    with pytest.raises(NearBoundaryError):
        ops.cauchy_interior(density, 0.0 + 1.0j)


def test_cot_kernel_periodicity():
    L = 16.0 * np.pi
    dz = 3.7 - 0.4j
    assert np.isclose(cot_kernel(dz, L), cot_kernel(dz + 2 * L, L))
