"""Simulation driver, Taylor-sweep driver, and verification batteries.

This is the plumbing layer behind the command line: it turns a
ScenarioConfig into initial data, runs the stepper with per-step
diagnostics, and writes the versioned output artifacts (diagnostics
CSV, interface snapshots, status file, checkpoint).
"""

import csv
import json
import os

import numpy as np

from .curve import CurveTrace
from .diagnostics import record_for
from .evolution import (EvolutionHalt, SurfaceState, build_initial_data,
                        evolve, load_checkpoint, save_checkpoint)
from .presets import CONFIG_SCHEMA, ConfigError, ScenarioConfig
from .taylor import a1_pair_closed, a1_single_vortex_closed, classify
from .vortices import SymmetricPair, VortexSet

DIAG_SCHEMA = "vortexwaves-diagnostics-v1"
SNAPSHOT_SCHEMA = "vortexwaves-snapshots-v1"
STATUS_SCHEMA = "vortexwaves-status-v1"
SWEEP_SCHEMA = "vortexwaves-taylor-sweep-v1"

DIAG_COLUMNS = ("t", "E", "E_s", "d_I", "d_P", "x_ratio", "taylor_margin",
                "C1", "C2", "sym_residual", "Gc_norm", "Gd_norm")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_HALT = 3
EXIT_IO = 4


def initial_state(config: ScenarioConfig):
    """Build the t = 0 state described by a ScenarioConfig."""
    from .grid import PeriodicGrid

    grid = PeriodicGrid(config.n, config.half_period)
    g = np.zeros(grid.n)
    for m, amp in config.wave_amplitudes:
        g += amp * np.sin(np.pi * m / grid.L * grid.alpha)
    if config.vortex_kind == "pair":
        vortices = SymmetricPair(x=config.x0, y=config.y0,
                                 lam=config.lam).to_vortex_set()
        return build_initial_data(grid, g=g, vortices=vortices,
                                  chord_arc_floor=config.chord_arc_floor)
    if config.vortex_kind == "single":
        # a lone vortex is not mirror symmetric; build the compatible
        # state directly with Fr = 0 and u = conj(q)
        vortices = VortexSet.build([1j * config.y0], [config.lam])
        curve = CurveTrace.build(grid, grid.alpha.astype(complex),
                                 chord_arc_floor=config.chord_arc_floor)
        u = np.conj(vortices.surface_field(curve.z, grid.L))
        return SurfaceState(0.0, curve, u, vortices)
    return build_initial_data(grid, g=g,
                              chord_arc_floor=config.chord_arc_floor)


def _fmt(x):
    return "%.17g" % float(x)


def _diag_row(record):
    c1, c2 = record.chord_arc
    gc, gd = record.cubic_residuals
    vals = (record.t, record.E_lagrangian, record.E_s, record.d_I,
            record.d_P, record.x_ratio, record.taylor_margin, c1, c2,
            record.symmetry_residual, gc, gd)
    return [_fmt(v) for v in vals]


def _snapshot(state):
    return {"t": float(state.t),
            "alpha": [float(a) for a in state.grid.alpha],
            "re": [float(v) for v in state.zeta.real],
            "im": [float(v) for v in state.zeta.imag]}


def _write_status(out_dir, status, t, detail=""):
    with open(os.path.join(out_dir, "status.json"), "w") as fh:
        json.dump({"schema": STATUS_SCHEMA, "status": status,
                   "t": float(t), "detail": detail}, fh, indent=1)


class _RunLog:
    """Accumulates diagnostics rows and snapshots during a run."""

    def __init__(self, config, x0):
        self.config = config
        self.x0 = x0
        self.rows = []
        self.snapshots = []
        self.norm_growth = False

    def observe(self, state, force=False):
        cfg = self.config
        step_index = int(round((state.t) / cfg.dt))
        if force or step_index % cfg.diag_cadence == 0:
            rec = record_for(state, s=cfg.sobolev_order, x0=self.x0,
                             with_at_over_a=False)
            self.rows.append(_diag_row(rec))
            if cfg.eps > 0 and max(rec.sobolev_triple) > 5.0 * cfg.eps:
                self.norm_growth = True
        if force or step_index % cfg.snapshot_cadence == 0:
            self.snapshots.append(_snapshot(state))


def _flush(out_dir, log):
    diag_path = os.path.join(out_dir, "diagnostics.csv")
    with open(diag_path, "w", newline="") as fh:
        fh.write("# %s\n" % DIAG_SCHEMA)
        writer = csv.writer(fh)
        writer.writerow(DIAG_COLUMNS)
        writer.writerows(log.rows)
    with open(os.path.join(out_dir, "snapshots.json"), "w") as fh:
        json.dump({"schema": SNAPSHOT_SCHEMA, "snapshots": log.snapshots},
                  fh)


def _screen_initial(state, evo):
    """t = 0 screening: floors and Taylor sign before any stepping."""
    from .evolution import (TAYLOR_SIGN_FAILED, _check_floors,
                            evaluate_stage)

    _check_floors(state.curve, state.vortices, evo, state.t)
    stage = evaluate_stage(state.curve, state.u, state.vortices, evo)
    if stage.taylor_margin <= evo.taylor_floor:
        raise EvolutionHalt(TAYLOR_SIGN_FAILED, state.t,
                            "min A|zeta_alpha| = %.4g" % stage.taylor_margin)


def run_simulation(config, out_dir, until=None):
    """Run one scenario; write artifacts into out_dir; return exit code."""
    os.makedirs(out_dir, exist_ok=True)
    config.save(os.path.join(out_dir, "config.json"))
    x0 = config.x0 if config.vortex_kind == "pair" else None
    evo = config.evolution_config(until=until)
    log = _RunLog(config, x0)
    last = [None]
    try:
        state = initial_state(config)
        last[0] = state
        _screen_initial(state, evo)
        log.observe(state, force=True)

        def observer(i, st):
            last[0] = st
            log.observe(st)

        final = evolve(state, evo, observer=observer)
        status, code, detail = "completed", EXIT_OK, ""
    except EvolutionHalt as halt:
        final = last[0]
        status, code, detail = halt.status, EXIT_HALT, halt.detail
    except (ValueError, ConfigError) as exc:
        _write_status(out_dir, "config_error", 0.0, str(exc))
        return EXIT_CONFIG
    if log.norm_growth:
        detail = (detail + "; " if detail else "") + "norm_growth observed"
    _flush(out_dir, log)
    _write_status(out_dir, status, final.t if final is not None else 0.0,
                  detail)
    if final is not None:
        save_checkpoint(os.path.join(out_dir, "checkpoint.json"), final)
    return code


def resume_simulation(out_dir, until=None):
    """Continue a checkpointed run in place; append to its artifacts."""
    config = ScenarioConfig.load(os.path.join(out_dir, "config.json"))
    state, _ = load_checkpoint(os.path.join(out_dir, "checkpoint.json"),
                               chord_arc_floor=config.chord_arc_floor)
    target = config.t_end if until is None else float(until)
    if target <= state.t:
        return EXIT_OK
    x0 = config.x0 if config.vortex_kind == "pair" else None
    evo = config.evolution_config(until=target)
    log = _RunLog(config, x0)
    try:
        last = [state]

        def observer(i, st):
            last[0] = st
            log.observe(st)

        final = evolve(state, evo, observer=observer)
        status, code, detail = "completed", EXIT_OK, ""
    except EvolutionHalt as halt:
        final = last[0]
        status, code, detail = halt.status, EXIT_HALT, halt.detail
    diag_path = os.path.join(out_dir, "diagnostics.csv")
    with open(diag_path, "a", newline="") as fh:
        csv.writer(fh).writerows(log.rows)
    _flush_snapshots_append(out_dir, log)
    _write_status(out_dir, status, final.t, detail)
    save_checkpoint(os.path.join(out_dir, "checkpoint.json"), final)
    return code


def _flush_snapshots_append(out_dir, log):
    snap_path = os.path.join(out_dir, "snapshots.json")
    old = []
    if os.path.exists(snap_path):
        with open(snap_path) as fh:
            old = json.load(fh)["snapshots"]
    seen = {s["t"] for s in old}
    snaps = old + [s for s in log.snapshots if s["t"] not in seen]
    with open(snap_path, "w") as fh:
        json.dump({"schema": SNAPSHOT_SCHEMA, "snapshots": snaps}, fh)


# -- Taylor sweep -------------------------------------------------------

def run_taylor_sweep(out_path, kind="single", ratios=(), x=1.0, y=-1.0):
    """Classify Taylor-sign stability over a grid of lam^2/|y|^3 ratios.

    Writes rows (lam, x, y, a1, classification); an empty ratio grid
    produces a header-only file.
    """
    from .taylor import sweep_pair, sweep_single_vortex

    if kind == "single":
        rows = sweep_single_vortex(np.asarray(ratios, dtype=float), y=y)
    elif kind == "pair":
        rows = sweep_pair(np.asarray(ratios, dtype=float), x=x, y=y)
    else:
        raise ConfigError("sweep kind must be 'single' or 'pair'")
    with open(out_path, "w", newline="") as fh:
        fh.write("# %s\n" % SWEEP_SCHEMA)
        writer = csv.writer(fh)
        writer.writerow(("lam", "x", "y", "a1", "classification"))
        for lam, xx, yy, a1, cls in rows:
            writer.writerow([_fmt(lam), _fmt(xx), _fmt(yy), _fmt(a1), cls])
    return EXIT_OK


# -- verification batteries ---------------------------------------------

def _battery_quadrature():
    from .spectral import real_line_quadrature

    # integral of 1/((b - w1)(b - conj(w2))) with w1 = -i, w2 = -2i
    got = real_line_quadrature(lambda b: 1.0 / ((b + 1j) * (b - 2j)), n=512)
    expect = 2.0 * np.pi / 3.0
    err = abs(got - expect)
    return err <= 1e-8, "residue error %.3g" % err


def _battery_projections():
    from .grid import PeriodicGrid
    from .singular import CurveOperators
    from .vortices import vortex_kernel

    grid = PeriodicGrid(1024)
    errs = []
    for bump in (0.0, 0.01):
        zeta = grid.alpha + 1j * bump * np.sin(grid.alpha * np.pi / grid.L)
        curve = CurveTrace.build(grid, zeta.astype(complex))
        ops = CurveOperators(curve)
        v = vortex_kernel(curve.z - (-1.2j), grid.L)
        res = ops.project_minus(v) - 2.0 * v
        from .spectral import l2_norm
        errs.append(l2_norm(res, grid=grid))
    err = max(errs)
    return err <= 1e-6, "projection residual %.3g" % err


def _battery_dispersion():
    from .grid import PeriodicGrid
    from .evolution import EvolutionConfig, make_scaled_state, evolve

    grid = PeriodicGrid(128)
    m = 32                                  # k = 2
    k = np.pi * m / grid.L
    omega = np.sqrt(k)
    period = 2.0 * np.pi / omega
    # right-moving linear wave: velocity amplitude i omega per unit height
    st = make_scaled_state(grid, 1e-5, wave_modes=((m, 1.0),),
                           velocity_modes=((m, 1j * omega),))
    dt = period / 64.0
    cfg = EvolutionConfig(dt=dt, t_end=2.0 * period, d_i_floor=0.0,
                          d_p_floor=0.0)
    coeff0 = np.fft.fft(np.conj(st.zeta) - grid.alpha) / grid.n
    phases = []
    times = []

    def observer(i, s):
        c = np.fft.fft(np.conj(s.zeta) - grid.alpha) / grid.n
        phases.append(np.angle(c[-m] / coeff0[-m]))
        times.append(s.t)

    evolve(st, cfg, observer=observer)
    unwrapped = np.unwrap(phases)
    slope = np.polyfit(times, unwrapped, 1)[0]
    rel = abs(abs(slope) - omega) / omega
    return rel <= 0.01, "dispersion rel err %.3g" % rel


def _battery_scaling():
    from .grid import PeriodicGrid
    from .evolution import make_scaled_state, compute_A, compute_b

    grid = PeriodicGrid(128)
    eps_list = (1e-3, 5e-4, 2.5e-4)
    a_norm, b_norm = [], []
    for eps in eps_list:
        st = make_scaled_state(grid, eps, wave_modes=((3, 1.0), (5, 0.5)))
        A, _ = compute_A(st)
        a_norm.append(np.max(np.abs(A - 1.0)))
        b_norm.append(np.max(np.abs(compute_b(st))))
    x = np.log(eps_list)
    sa = np.polyfit(x, np.log(a_norm), 1)[0]
    sb = np.polyfit(x, np.log(b_norm), 1)[0]
    ok = sa >= 1.8 and sb >= 1.8
    return ok, "slopes A-1: %.2f, b: %.2f" % (sa, sb)


BATTERIES = {
    "quadrature": _battery_quadrature,
    "projections": _battery_projections,
    "dispersion": _battery_dispersion,
    "scaling": _battery_scaling,
}


def verify_suite(selector="all", stream=None):
    """Run verification batteries; print a pass/fail table; 0 iff all pass.

    Selector 'all' runs every battery.  The full acceptance gate (long
    runs included) lives in the pytest suite; these batteries are the
    fast oracle and property checks.
    """
    import sys

    stream = stream or sys.stdout
    if selector == "all":
        names = list(BATTERIES)
    elif selector in BATTERIES:
        names = [selector]
    else:
        print("unknown selector %r; available: %s"
              % (selector, sorted(BATTERIES) + ["all"]), file=stream)
        return EXIT_CONFIG
    failed = False
    for name in names:
        ok, detail = BATTERIES[name]()
        failed = failed or not ok
        print("%-12s %s  (%s)" % (name, "PASS" if ok else "FAIL", detail),
              file=stream)
    return EXIT_OK if not failed else 1
