"""Acceptance gate: the thirteen headline criteria.

Each test prints one PASS/FAIL line; run with `pytest -v -s
tests/test_acceptance.py` to see them inline.
"""

import numpy as np
import pytest

from vortexwaves.diagnostics import (energy_Es, longtime_monitors,
                                     quasilinear_at, record_for,
                                     _stage_for)
from vortexwaves.evolution import (EvolutionConfig, compute_A, compute_b,
                                   evolve, make_scaled_state, step,
                                   symmetry_residual)
from vortexwaves.grid import PeriodicGrid
from vortexwaves.curve import CurveTrace
from vortexwaves.singular import CurveOperators
from vortexwaves.spectral import (fourier_derivative, l2_norm,
                                  real_line_quadrature, sobolev_norm)
from vortexwaves.taylor import (DEGENERATE, FAILED, STRONG,
                                a1_flat_quadrature, a1_general,
                                a1_pair_closed, a1_single_vortex_closed,
                                sweep_pair, sweep_single_vortex)
from vortexwaves.vortices import SymmetricPair, VortexSet, vortex_kernel

from conftest import fitted_slope


def _report(num, ok, detail):
    print("ACCEPTANCE %2d: %s  (%s)" % (num, "PASS" if ok else "FAIL",
                                        detail))
    assert ok, "criterion %d: %s" % (num, detail)


def test_criterion_01_residue_oracle():
    got = real_line_quadrature(lambda b: 1.0 / ((b + 1j) * (b - 2j)),
                               n=512)
    err = abs(got - 2.0 * np.pi / 3.0)
    _report(1, err <= 1e-8, "residue error %.3g" % err)


def test_criterion_02_holomorphic_projection():
    grid = PeriodicGrid(1024)
    errs = []
    for bump in (0.0, 0.01):
        zeta = grid.alpha + 1j * bump * np.sin(grid.alpha * np.pi / grid.L)
        curve = CurveTrace.build(grid, zeta.astype(complex))
        ops = CurveOperators(curve)
        v = vortex_kernel(curve.z - (-1.2j), grid.L)
        errs.append(l2_norm(ops.project_minus(v) - 2.0 * v, grid=grid))
    err = max(errs)
    _report(2, err <= 1e-6, "projection residual %.3g" % err)


def test_criterion_03_single_vortex_threshold():
    y = -1.0
    errs = []
    flips = []
    for ratio in np.linspace(8.0, 30.0, 100):
        lam = -np.sqrt(ratio * abs(y) ** 3)
        closed, cls = a1_single_vortex_closed(lam, y)
        vortices = VortexSet.build([1j * y], [lam])
        quad = a1_flat_quadrature(np.array([0.0]), vortices,
                                  vortex_velocities=[0.0])[0]
        errs.append(abs(quad - closed))
        flips.append((ratio, cls))
    err = max(errs)
    threshold = 8.0 * np.pi ** 2 / 3.0
    consistent = all((cls == STRONG) == (r < threshold)
                     for r, cls in flips if abs(r - threshold) > 1e-9)
    lam_c = -np.sqrt(threshold)
    _, cls_c = a1_single_vortex_closed(lam_c, y)
    ok = err <= 1e-6 and consistent and cls_c == DEGENERATE
    _report(3, ok, "path err %.3g, flip at 8pi^2/3, degenerate band %s"
            % (err, cls_c))


def test_criterion_04_pair_threshold():
    y = -1.0
    x = abs(y)
    errs = []
    for ratio in np.linspace(100.0, 220.0, 50):
        lam = -np.sqrt(ratio * abs(y) ** 3)
        closed = a1_pair_closed(lam, x, y)
        reduced = 1.0 - lam ** 2 / (16.0 * np.pi ** 2 * abs(y) ** 3)
        errs.append(abs(closed - reduced))
    for ratio in (120.0, 160.0, 200.0):
        lam = -np.sqrt(ratio * abs(y) ** 3)
        pair = SymmetricPair(x=x, y=y, lam=lam).to_vortex_set()
        quad = a1_flat_quadrature(np.array([0.0]), pair)[0]
        errs.append(abs(quad - a1_pair_closed(lam, x, y)))
    err = max(errs)
    ratios = np.linspace(100.0, 220.0, 50)
    rows = sweep_pair(ratios, x=x, y=y)
    vals = np.array([r[3] for r in rows])
    i = int(np.flatnonzero(np.diff(np.sign(vals)))[0])
    lo, hi = ratios[i], ratios[i + 1]
    brackets = lo < 16.0 * np.pi ** 2 < hi
    _report(4, err <= 1e-6 and brackets,
            "reduction err %.3g, bracket [%.2f, %.2f] contains 16pi^2"
            % (err, lo, hi))


def test_criterion_05_irrotational_lower_bound():
    grid = PeriodicGrid(128)
    rng = np.random.default_rng(12345)
    band = grid.n // 6
    worst = np.inf
    for _ in range(500):
        c = (rng.standard_normal(band)
             + 1j * rng.standard_normal(band)) * 1e-3
        zt_bar = np.zeros(grid.n, dtype=complex)
        for m in range(1, band + 1):
            k = np.pi * m / grid.L
            zt_bar += c[m - 1] * np.exp(-1j * k * grid.alpha)
        worst = min(worst, a1_general(grid, np.conj(zt_bar)).infimum)
    _report(5, worst >= 1.0 - 1e-6, "min A1 = %.9f" % worst)


def _dispersion_error(grid, m):
    k = np.pi * m / grid.L
    omega = np.sqrt(k)
    period = 2.0 * np.pi / omega
    st = make_scaled_state(grid, 1e-5, wave_modes=((m, 1.0),),
                           velocity_modes=((m, 1j * omega),))
    cfg = EvolutionConfig(dt=period / 64.0, t_end=10.0 * period,
                          d_i_floor=0.0, d_p_floor=0.0)
    coeff0 = np.fft.fft(np.conj(st.zeta) - grid.alpha) / grid.n
    phases, times = [], []

    def observer(i, s):
        c = np.fft.fft(np.conj(s.zeta) - grid.alpha) / grid.n
        phases.append(np.angle(c[-m] / coeff0[-m]))
        times.append(s.t)

    evolve(st, cfg, observer=observer)
    slope = np.polyfit(times, np.unwrap(phases), 1)[0]
    return abs(abs(slope) - omega) / omega


def test_criterion_06_dispersion():
    grid = PeriodicGrid(128)
    errs = [_dispersion_error(grid, 16), _dispersion_error(grid, 32)]
    _report(6, max(errs) <= 0.01,
            "rel err %.3g (k=1), %.3g (k=2)" % tuple(errs))


def test_criterion_07_rk4_order():
    grid = PeriodicGrid(128)
    st = make_scaled_state(grid, 0.02, wave_modes=((2, 1.0), (3, 0.5j)),
                           velocity_modes=((2, 0.5),))
    T = 1.0

    def run(dt):
        cfg = EvolutionConfig(dt=dt, t_end=T, d_i_floor=0.0,
                              d_p_floor=0.0)
        return evolve(st, cfg)

    ref = run(T / 160).zeta
    e1 = np.max(np.abs(run(T / 10).zeta - ref))
    e2 = np.max(np.abs(run(T / 20).zeta - ref))
    ratio = e1 / e2
    _report(7, 12.0 <= ratio <= 20.0, "error ratio %.2f" % ratio)


def test_criterion_08_scaling_exponents(scaling_family):
    grid, eps_list, states = scaling_family
    a_norm, b_norm, gc_norm = [], [], []
    from vortexwaves.diagnostics import cubic_fields
    for st in states:
        A, _ = compute_A(st)
        a_norm.append(np.max(np.abs(A - 1.0)))
        b_norm.append(np.max(np.abs(compute_b(st))))
        g_c, _ = cubic_fields(st)
        gc_norm.append(sobolev_norm(g_c, 4.0, grid=grid))
    sa = fitted_slope(eps_list, a_norm)
    sb = fitted_slope(eps_list, b_norm)
    sc = fitted_slope(eps_list, gc_norm)
    ok = sa >= 1.8 and sb >= 1.8 and sc >= 2.7
    _report(8, ok, "slopes A-1: %.2f, b: %.2f, G_c: %.2f" % (sa, sb, sc))


def test_criterion_09_key_control(longtime_run):
    config, hist, final = longtime_run
    report = longtime_monitors(hist["t"], hist["x_ratio"], hist["d_I"],
                               hist["y"], hist["triple"],
                               eps=config.eps, lam=config.lam,
                               x0=config.x0)
    ok = (final.t >= 50.0 - 1e-9 and report.checks["x_ratio"]
          and report.checks["d_I_growth"]
          and report.checks["downward_speed"])
    _report(9, ok, "t_end %.1f, %s" % (final.t, report))


def test_criterion_10_bootstrap_bounds(longtime_run):
    config, hist, final = longtime_run
    peak = float(np.max(hist["triple"]))
    ok = peak <= 5.0 * config.eps
    _report(10, ok, "max Sobolev triple %.3g vs 5 eps = %.3g"
            % (peak, 5.0 * config.eps))


def test_criterion_11_symmetry(longtime_run):
    # enforcement off: short pair run
    config = longtime_run[0]
    grid = PeriodicGrid(256)
    pair = SymmetricPair(x=config.x0, y=config.y0, lam=config.lam)
    from vortexwaves.evolution import build_initial_data
    g = np.zeros(grid.n)
    for m, amp in config.wave_amplitudes:
        g += amp * np.sin(np.pi * m / grid.L * grid.alpha)
    st = build_initial_data(grid, g=g, vortices=pair.to_vortex_set())
    cfg = EvolutionConfig(dt=0.1, t_end=5.0, enforce_symmetry=False)
    residuals = []

    def observer(i, s):
        residuals.append(symmetry_residual(s.grid, s.zeta, s.u,
                                           s.vortices))

    evolve(st, cfg, observer=observer)
    off_peak = max(residuals)
    on_peak = float(np.max(longtime_run[1]["sym"]))
    ok = off_peak <= 1e-9 and on_peak <= 1e-12
    _report(11, ok, "residual %.3g off, %.3g on" % (off_peak, on_peak))


def test_criterion_12_at_consistency():
    grid = PeriodicGrid(512)
    pair = SymmetricPair(x=0.05, y=-1.0, lam=-0.05)
    base = make_scaled_state(grid, 1e-3,
                             wave_modes=((2, 1.0), (3, 0.5)),
                             vortices=pair.to_vortex_set(),
                             velocity_modes=((2, 0.5),))
    h = 0.002
    cfg = EvolutionConfig(dt=h, t_end=10 * h, d_i_floor=0.1,
                          d_p_floor=0.01)
    s0 = base
    s1 = step(s0, cfg)
    s2 = step(s1, cfg)

    def script_a(s):
        stage = _stage_for(s, None)
        return stage, stage.A.real * np.abs(stage.curve.z_alpha)

    _, a0 = script_a(s0)
    stage1, a1 = script_a(s1)
    _, a2 = script_a(s2)
    dt_a = (a2 - a0) / (2.0 * h) \
        + stage1.b.real * fourier_derivative(a1, 1, grid=grid).real
    u_a = fourier_derivative(s1.u, 1, grid=grid)
    p_fd = dt_a - a1 * np.real(u_a / stage1.curve.z_alpha)
    p = quasilinear_at(s1, stage1)
    rel = np.max(np.abs(p - p_fd)) / np.max(np.abs(p_fd))
    _report(12, rel <= 1e-4, "rel err %.3g at h = dt = %.3g" % (rel, h))


def test_criterion_13_energy_sanity(longtime_run, scaling_family):
    # positivity on every accepted step of every preset
    from vortexwaves.presets import preset
    from vortexwaves.runner import initial_state
    from vortexwaves.diagnostics import energy_lagrangian

    rest = initial_state(preset("rest"))
    cfg = preset("rest").evolution_config()
    energies = [energy_lagrangian(rest)]
    evolve(rest, cfg,
           observer=lambda i, s: energies.append(energy_lagrangian(s)))
    e_min = min(min(energies), float(np.min(longtime_run[1]["E"])))
    # discrepancy scaling
    grid, eps_list, states = scaling_family
    gaps = []
    for st in states:
        e_s, comp = energy_Es(st, 4)
        gaps.append(abs(e_s - comp))
    slope = fitted_slope(eps_list, gaps)
    ok = e_min >= -1e-12 and slope >= 2.7
    _report(13, ok, "min E %.3g, |E_s - comparison| exponent %.2f"
            % (e_min, slope))
