"""Energies, cubic-structure residuals, and long-time monitors.

Two energies are tracked.  The Lagrangian-label energy

    E = sum_k  int |z_a|^{-2k+1} / |D_t^2 zeta + i| |d_a^k conj(D_t^2 zeta)|^2
             + Re int i d_a(D^k Fr) conj(D^k Fr),        D = d_a / zeta_a,

is nonnegative because its second summand is a boundary form of an
interior Dirichlet integral.  Labels are identified with the flattened
parametrization, which is exact on flat curves and O(wave slope)
otherwise; runs using it are near-flat by assumption.

The flattened energy tracks theta = (I - H)(zeta - conj(zeta)) and
sigma = (I - H) D_t theta, whose evolution (D_t^2 - i A d_a) theta =
G_c + G_d has a cubic irrotational part G_c and a vortex part G_d; the
same fields feed cubic_residuals.  Material derivatives of derivative
chains use D_t d_a g = d_a D_t g - b_a d_a g, and the commutation
[D_t, H] f = [u, H](d_a f / zeta_a).
"""

from dataclasses import dataclass, field

import numpy as np

from .evolution import evaluate_stage, EvolutionConfig
from .grid import as_values
from .singular import CurveOperators
from .spectral import fourier_derivative, half_derivative, sobolev_norm
from .vortices import vortex_acceleration, vortex_kernel_cube, \
    vortex_kernel_sq

S_DEFAULT = 4
S_MAX = 6


class TaylorFloorError(RuntimeError):
    pass


@dataclass
class DiagnosticsRecord:
    """One output row of a simulation's diagnostics stream."""

    t: float
    E_lagrangian: float
    E_s: float
    sobolev_triple: tuple   # (|zeta_a - 1|_{H^s}, |Fr|_{H^{s+1/2}}, |D_t Fr|_{H^s})
    d_I: float
    d_P: float
    x_ratio: float
    taylor_margin: float
    chord_arc: tuple
    symmetry_residual: float
    cubic_residuals: tuple  # (|G_c|_{H^s}, |G_d|_{H^s})
    at_over_a_sup: float


def _check_s(s):
    if not (isinstance(s, (int, np.integer)) and 0 <= s <= S_MAX):
        raise ValueError("s must be an integer in 0..%d" % S_MAX)


def _stage_for(state, stage):
    if stage is None:
        stage = evaluate_stage(
            state.curve, state.u, state.vortices,
            EvolutionConfig(dt=1.0, t_end=1.0, chord_arc_floor=0.01,
                            d_i_floor=0.0, d_p_floor=0.0))
    return stage


def energy_lagrangian(state, s=S_DEFAULT, stage=None, taylor_floor=1e-10,
                      positivity_tol=1e-12):
    """Nonnegative Lagrangian-label energy of order s."""
    _check_s(s)
    stage = _stage_for(state, stage)
    grid = state.grid
    za = stage.curve.z_alpha
    speed = np.abs(za)
    amag = np.abs(stage.dtt + 1j)
    if np.min(amag) <= taylor_floor:
        raise TaylorFloorError(
            "|D_t^2 zeta + i| reached %.3g" % float(np.min(amag)))
    ut = np.conj(stage.dtt)
    f = stage.F_trace
    scale = 1.0 + float(np.max(np.abs(f)) ** 2 + np.max(np.abs(ut)) ** 2)
    total = 0.0
    dk_ut = ut
    dk_f = f
    for k in range(s + 1):
        if k > 0:
            dk_ut = fourier_derivative(dk_ut, 1, grid=grid)
            dk_f = fourier_derivative(dk_f, 1, grid=grid) / za
        kinetic = grid.integrate(
            speed ** (-2 * k + 1) / amag * np.abs(dk_ut) ** 2).real
        dirichlet = grid.integrate(
            1j * fourier_derivative(dk_f, 1, grid=grid) * np.conj(dk_f)).real
        if dirichlet < -positivity_tol * scale:
            raise AssertionError(
                "Dirichlet summand k=%d negative: %.3g" % (k, dirichlet))
        total += kinetic + max(dirichlet, 0.0)
    return total


def _holomorphic_pair_bracket(ops, f_bar, g):
    """[f_bar, H(1/zeta_a) + conj-H(1/conj(zeta_a))] g."""
    za = ops.curve.z_alpha

    def both(h):
        return ops.hilbert(h / za) + np.conj(ops.hilbert(np.conj(h) / za))

    return f_bar * both(g) - both(f_bar * g)


def _dt_q(state, stage):
    """D_t q = sum_j lambda_j i/(2 pi) V2(zeta - z_j)(u - zdot_j)."""
    out = np.zeros(state.grid.n, dtype=complex)
    z = state.curve.z
    L = state.grid.L
    for zj, lam, zd in zip(state.vortices.positions,
                           state.vortices.strengths, stage.zdots):
        out += lam * 1j / (2.0 * np.pi) \
            * vortex_kernel_sq(z - zj, L) * (state.u - zd)
    return out


def cubic_fields(state, stage=None):
    """(G_c, G_d) sample arrays of the theta evolution equation."""
    stage = _stage_for(state, stage)
    ops = stage.ops
    grid = state.grid
    curve = stage.curve
    u = state.u
    f_bar = np.conj(stage.F_trace)
    q_bar = np.conj(stage.q)
    f_bar_a = fourier_derivative(f_bar, 1, grid=grid)
    q_bar_a = fourier_derivative(q_bar, 1, grid=grid)
    g_c = -2.0 * _holomorphic_pair_bracket(ops, f_bar, f_bar_a) \
        + ops.squared_difference_integral(
            u, curve.z_alpha - np.conj(curve.z_alpha))
    g_d = -2.0 * ops.commutator(q_bar, f_bar_a / curve.z_alpha) \
        - 2.0 * ops.commutator(f_bar, q_bar_a / curve.z_alpha) \
        - 2.0 * ops.commutator(q_bar, q_bar_a / curve.z_alpha) \
        - 4.0 * _dt_q(state, stage)
    return g_c, g_d


def cubic_residuals(state, s=S_DEFAULT, stage=None):
    """(|G_c|_{H^s}, |G_d|_{H^s})."""
    _check_s(s)
    g_c, g_d = cubic_fields(state, stage)
    return (sobolev_norm(g_c, float(s), grid=state.grid),
            sobolev_norm(g_d, float(s), grid=state.grid))


def _theta_sigma(state, stage):
    """theta, D_t theta, sigma, D_t sigma on the current state."""
    ops = stage.ops
    grid = state.grid
    curve = stage.curve
    u = state.u
    za = curve.z_alpha
    raw = curve.z - np.conj(curve.z)
    raw_dt = u - np.conj(u)
    theta = ops.project_minus(raw)
    dt_theta = ops.project_minus(raw_dt) \
        - ops.commutator(u, fourier_derivative(raw, 1, grid=grid) / za)
    sigma = ops.project_minus(dt_theta)
    g_c, g_d = cubic_fields(state, stage)
    dt2_theta = g_c + g_d \
        + 1j * stage.A * fourier_derivative(theta, 1, grid=grid)
    dt_sigma = ops.project_minus(dt2_theta) \
        - ops.commutator(u, fourier_derivative(dt_theta, 1, grid=grid) / za)
    return theta, dt_theta, sigma, dt_sigma


def _derivative_sum_norm(grid, f, s):
    """Sobolev norm in the derivative-sum convention,
    (sum_{j=0}^s ||d_a^j f||_2^2)^{1/2}; this is the convention under
    which the energy comparison identity closes at cubic order."""
    coeff = np.fft.fft(as_values(f)) / grid.n
    k = np.abs(grid.wavenumbers)
    weight = sum(k ** (2 * j) for j in range(int(s) + 1))
    return float(np.sqrt(2.0 * grid.L * np.sum(weight * np.abs(coeff) ** 2)))


def _chain_energy(grid, ops, u, za, b_a, A, g, dtg, s):
    """sum_k int |D_t g_k|^2 / A + Re i int g_k conj(d_a g_k),
    g_k = (I - H) d_a^k g, with the material-derivative chain rule."""
    total = 0.0
    cur, cur_dt = g, dtg
    for k in range(s + 1):
        if k > 0:
            nxt = fourier_derivative(cur, 1, grid=grid)
            cur_dt = fourier_derivative(cur_dt, 1, grid=grid) - b_a * nxt
            cur = nxt
        g_k = ops.project_minus(cur)
        dt_g_k = ops.project_minus(cur_dt) \
            - ops.commutator(u, fourier_derivative(cur, 1, grid=grid) / za)
        total += grid.integrate(np.abs(dt_g_k) ** 2 / A).real
        total += grid.integrate(
            1j * g_k * np.conj(fourier_derivative(g_k, 1, grid=grid))).real
    return total


def energy_Es(state, s=S_DEFAULT, stage=None):
    """(flattened energy E_s, its quadratic comparison quantity)."""
    _check_s(s)
    stage = _stage_for(state, stage)
    if np.min(stage.A.real) <= 0:
        raise TaylorFloorError("A reached %.3g" % float(np.min(stage.A.real)))
    grid = state.grid
    ops = stage.ops
    za = stage.curve.z_alpha
    b_a = fourier_derivative(stage.b, 1, grid=grid)
    theta, dt_theta, sigma, dt_sigma = _theta_sigma(state, stage)
    total = _chain_energy(grid, ops, state.u, za, b_a, stage.A.real,
                          theta, dt_theta, s)
    total += _chain_energy(grid, ops, state.u, za, b_a, stage.A.real,
                           sigma, dt_sigma, s)
    comparison = 4.0 * (
        _derivative_sum_norm(grid, dt_theta, s) ** 2
        + _derivative_sum_norm(grid, dt_sigma, s) ** 2
        + _derivative_sum_norm(grid, half_derivative(theta, grid=grid), s) ** 2
        + _derivative_sum_norm(grid, half_derivative(sigma, grid=grid), s) ** 2)
    return total, comparison


def quasilinear_at(state, stage=None, eps_near=2.0):
    """a_t |z_alpha| samples from the quasilinearized momentum equation.

    Solves (I + K*) P = Re{(i zeta_a/|zeta_a|)(g1 + g2)} where g1
    carries the wave-wave commutators and g2 the vortex source (it
    contains the vortex accelerations).
    """
    stage = _stage_for(state, stage)
    ops = stage.ops
    grid = state.grid
    curve = stage.curve
    u = state.u
    za = curve.z_alpha
    dtt = stage.dtt
    u_bar_a = fourier_derivative(np.conj(u), 1, grid=grid)
    dtt_bar_a = fourier_derivative(np.conj(dtt), 1, grid=grid)
    g1 = 2.0 * ops.commutator(dtt, u_bar_a / za) \
        + 2.0 * ops.commutator(u, dtt_bar_a / za) \
        - ops.squared_difference_integral(u, u_bar_a)
    g2 = np.zeros(grid.n, dtype=complex)
    if state.vortices.count:
        zddots = vortex_acceleration(curve, u, dtt, state.vortices,
                                     stage.zdots, ops=ops, eps_near=eps_near)
        for zj, lam, zd, zdd in zip(state.vortices.positions,
                                    state.vortices.strengths,
                                    stage.zdots, zddots):
            dz = curve.z - zj
            g2 += (1j / np.pi) * lam * (
                (2.0 * dtt + 1j - zdd) * vortex_kernel_sq(dz, grid.L)
                - 2.0 * (u - zd) ** 2 * vortex_kernel_cube(dz, grid.L))
    rhs = ((1j * za / np.abs(za)) * (g1 + g2)).real
    return ops.solve_second_kind("I+K*", rhs)


def record_for(state, s=S_DEFAULT, stage=None, x0=None,
               with_at_over_a=True):
    """Assemble a DiagnosticsRecord for one state."""
    from .evolution import symmetry_residual
    from .vortices import separations

    stage = _stage_for(state, stage)
    grid = state.grid
    d_i, d_p = separations(stage.curve, state.vortices)
    if x0 is not None and state.vortices.count:
        x_ratio = float(np.max(state.vortices.positions.real)) / x0
    else:
        x_ratio = 1.0
    g_c, g_d = cubic_fields(state, stage)
    triple = (
        sobolev_norm(stage.curve.z_alpha - 1.0, float(s), grid=grid),
        sobolev_norm(stage.F_trace, s + 0.5, grid=grid),
        sobolev_norm(np.conj(stage.dtt) - _dt_q(state, stage), float(s),
                     grid=grid))
    e_s, _ = energy_Es(state, s=s, stage=stage)
    amag = np.abs(stage.dtt + 1j)
    if with_at_over_a:
        at_sup = float(np.max(np.abs(quasilinear_at(state, stage) / amag)))
    else:
        at_sup = float("nan")
    return DiagnosticsRecord(
        t=state.t,
        E_lagrangian=energy_lagrangian(state, s=s, stage=stage),
        E_s=e_s,
        sobolev_triple=triple,
        d_I=d_i,
        d_P=d_p,
        x_ratio=x_ratio,
        taylor_margin=stage.taylor_margin,
        chord_arc=stage.curve.chord_arc,
        symmetry_residual=symmetry_residual(
            grid, state.zeta, state.u, state.vortices),
        cubic_residuals=(sobolev_norm(g_c, float(s), grid=grid),
                         sobolev_norm(g_d, float(s), grid=grid)),
        at_over_a_sup=at_sup,
    )


@dataclass
class MonitorReport:
    """Outcome of the long-time theorem monitors."""

    applicable: bool
    passed: bool
    checks: dict = field(default_factory=dict)
    first_violation: float = float("nan")

    def __str__(self):
        head = "applicable" if self.applicable else "not applicable"
        body = ", ".join("%s=%s" % (k, "ok" if v else "FAIL")
                         for k, v in self.checks.items())
        return "monitors (%s): %s" % (head, body)


def longtime_monitors(times, x_ratios, d_is, y_positions, triples,
                      eps, lam, x0, applicable=True, grid_tol=5e-3):
    """Evaluate the vortex-pair long-time predictions on a run history.

    Checks, per output time: x(t)/x(0) in [1/2, 2]; d_I(t) >= 1 +
    rate*t - grid_tol with rate = |lam|/(20 pi x0); mean downward
    vortex speed <= -rate; and the 5 eps bootstrap bound on the
    Sobolev triple.
    """
    times = np.asarray(times, dtype=float)
    x_ratios = np.asarray(x_ratios, dtype=float)
    d_is = np.asarray(d_is, dtype=float)
    y_positions = np.asarray(y_positions, dtype=float)
    rate = abs(lam) / (20.0 * np.pi * x0)
    checks = {}
    violations = []

    ok = (x_ratios >= 0.5) & (x_ratios <= 2.0)
    checks["x_ratio"] = bool(np.all(ok))
    if not checks["x_ratio"]:
        violations.append(times[np.argmin(ok)])

    bound = 1.0 + rate * times - grid_tol
    ok = d_is >= bound
    checks["d_I_growth"] = bool(np.all(ok))
    if not checks["d_I_growth"]:
        violations.append(times[np.argmin(ok)])

    elapsed = times - times[0]
    later = elapsed > 0
    if np.any(later):
        ydot_avg = (y_positions[later] - y_positions[0]) / elapsed[later]
        ok = ydot_avg <= -rate * (1.0 - 1e-6) + grid_tol / elapsed[later]
        checks["downward_speed"] = bool(np.all(ok))
        if not checks["downward_speed"]:
            violations.append(times[later][np.argmin(ok)])

    trip = np.asarray(triples, dtype=float)
    ok = np.all(trip <= 5.0 * eps, axis=1)
    checks["bootstrap_5eps"] = bool(np.all(ok))
    if not checks["bootstrap_5eps"]:
        violations.append(times[np.argmin(ok)])

    passed = applicable and all(checks.values())
    first = min(violations) if violations else float("nan")
    return MonitorReport(applicable, passed, checks, first)
