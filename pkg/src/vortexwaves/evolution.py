"""Closed time evolution of the surface-vortex system.

State is (zeta, u = D_t zeta, z_j) in the flattened coordinates where
conj(zeta) - alpha is the trace of a function holomorphic in the fluid.
The momentum equation D_t^2 zeta - i A zeta_alpha = -i closes once the
advection speed b and the coefficient A are recovered from second-kind
solves on the curve:

    (I - H) b = -[u, H]((conj(zeta_a) - 1)/zeta_a)
                - (i/pi) sum_j lambda_j V(zeta - z_j),
    (I - H) A = 1 + i [u, H](d_a Fr / zeta_a)
                + i [D_t^2 zeta, H]((conj(zeta_a) - 1)/zeta_a)
                - (I - H)(1/2 pi) sum_j lambda_j (u - zdot_j)
                  V2(zeta - z_j),

with Fr = conj(u) - q the holomorphic-velocity trace.  A and D_t^2 zeta
= i A zeta_alpha - i determine each other; the circularity is resolved
by Picard iteration from A = 1, which converges fast in the small-data
regime because A - 1 is quadratically small.

Stepping is classical RK4 on (zeta, u, z_j) with d_t zeta = u - b
zeta_a and d_t u = (i A zeta_a - i) - b d_a u.  The holomorphicity
constraints on conj(zeta) - alpha and Fr are not preserved exactly by
the integrator, so each step ends with a projection of both onto the
holomorphic class (cadence configurable); spurious growth of the
complementary modes is what the projection removes.
"""

import json
from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from .curve import ChordArcError, CurveTrace
from .grid import GridFunction, PeriodicGrid, as_values
from .singular import CurveOperators, NearBoundaryError, SolveError
from .spectral import dealiased_product, fourier_derivative, l2_norm
from .vortices import (VortexSet, vortex_kernel_sq, vortex_velocity)

TAYLOR_SIGN_FAILED = "taylor_sign_failed"
CHORD_ARC_FAILED = "chord_arc_failed"
VORTEX_SEPARATION_FAILED = "vortex_separation_failed"
NORM_GROWTH = "norm_growth"  # reported by monitors, never halts a step

HALT_STATUSES = (TAYLOR_SIGN_FAILED, CHORD_ARC_FAILED,
                 VORTEX_SEPARATION_FAILED, NORM_GROWTH)

CHECKPOINT_SCHEMA = "vortexwaves-checkpoint-v1"


class EvolutionHalt(RuntimeError):
    """Terminal halt naming which blow-up alternative fired."""

    def __init__(self, status, t, detail=""):
        self.status = status
        self.t = t
        self.detail = detail
        super().__init__("%s at t=%.6g%s"
                         % (status, t, (": " + detail) if detail else ""))


class InitialDataError(ValueError):
    pass


@dataclass(frozen=True)
class EvolutionConfig:
    """Stepping parameters; gravity and density are fixed to 1."""

    dt: float
    t_end: float
    a_tol: float = 1e-12
    a_max_iter: int = 50
    projection_cadence: int = 1
    enforce_symmetry: bool = False
    chord_arc_floor: float = 0.1
    taylor_floor: float = 0.0
    d_i_floor: float = 0.2
    d_p_floor: float = 0.01
    eps_near: float = 2.0

    def __post_init__(self):
        if not (self.dt > 0 and self.t_end >= 0):
            raise ValueError("dt must be positive and t_end nonnegative")
        if not (self.a_tol > 0 and self.a_max_iter >= 1):
            raise ValueError("A-iteration tolerance and budget must be positive")
        if self.projection_cadence < 0:
            raise ValueError("projection cadence must be >= 0 (0 disables)")


@dataclass(frozen=True)
class SurfaceState:
    """Immutable snapshot (t, zeta, D_t zeta, vortices) on one grid."""

    t: float
    curve: CurveTrace
    u: np.ndarray
    vortices: VortexSet

    @classmethod
    def build(cls, grid, zeta, u, vortices=None, t=0.0,
              chord_arc_floor=0.05):
        if vortices is None:
            vortices = VortexSet.empty()
        curve = CurveTrace.build(grid, as_values(zeta),
                                 chord_arc_floor=chord_arc_floor)
        return cls(float(t), curve, grid.coerce(as_values(u)), vortices)

    @property
    def grid(self):
        return self.curve.grid

    @property
    def zeta(self):
        return self.curve.z

    @cached_property
    def q(self):
        """Vortex part of conj(D_t zeta) on the curve."""
        return self.vortices.surface_field(self.curve.z, self.grid.L)

    @cached_property
    def F_trace(self):
        """Trace of the holomorphic velocity: Fr = conj(u) - q."""
        return np.conj(self.u) - self.q

    def constraint_residuals(self, ops=None):
        """(||(I-H)(conj(zeta)-alpha)||_2, ||(I-H)Fr||_2)."""
        if ops is None:
            ops = CurveOperators(self.curve)
        xi_bar = np.conj(self.curve.z) - self.grid.alpha
        return (l2_norm(ops.project_minus(xi_bar), grid=self.grid),
                l2_norm(ops.project_minus(self.F_trace), grid=self.grid))


@dataclass
class StageData:
    """Everything recovered from one state evaluation, shared by the
    stepper and the diagnostics."""

    ops: CurveOperators
    q: np.ndarray
    F_trace: np.ndarray
    zdots: np.ndarray
    b: np.ndarray          # real
    A: np.ndarray          # real
    dtt: np.ndarray        # D_t^2 zeta = i A zeta_alpha - i
    a_iterations: int

    @property
    def curve(self):
        return self.ops.curve

    @property
    def taylor_margin(self):
        """min over the grid of A |zeta_alpha| = min |D_t^2 zeta + i|."""
        return float(np.min(self.A.real * np.abs(self.curve.z_alpha)))


def _xi_ratio(curve):
    return (np.conj(curve.z_alpha) - 1.0) / curve.z_alpha


def _vortex_sq_field(curve, u, vortices, zdots):
    """(1/2 pi) sum_j lambda_j (u - zdot_j) V2(zeta - z_j)."""
    out = np.zeros(curve.grid.n, dtype=complex)
    for zj, lam, zd in zip(vortices.positions, vortices.strengths, zdots):
        out += lam / (2.0 * np.pi) * (u - zd) \
            * vortex_kernel_sq(curve.z - zj, curve.grid.L)
    return out


def evaluate_stage(curve, u, vortices, config):
    """Recover (q, Fr, zdots, b, A, D_t^2 zeta) on one state.

    The b and A systems share the same I - K matrix, so one LU
    factorization serves the b solve and every Picard pass of the A
    solve.
    """
    ops = CurveOperators(curve)
    grid = curve.grid
    u = np.asarray(u, dtype=complex)
    q = vortices.surface_field(curve.z, grid.L)
    Fr = np.conj(u) - q
    zdots = vortex_velocity(curve, u, vortices, ops=ops,
                            eps_near=config.eps_near)
    xi_r = _xi_ratio(curve)

    # -(i/pi) sum lambda_j V(zeta - z_j) = 2 q
    rhs_b = -ops.commutator(u, xi_r) + 2.0 * q
    b = ops.solve_second_kind("I-Kr", rhs_b)

    dF = fourier_derivative(Fr, 1, grid=grid) / curve.z_alpha
    fixed = 1.0 + 1j * ops.commutator(u, dF) \
        - ops.project_minus(_vortex_sq_field(curve, u, vortices, zdots))
    A = np.ones(grid.n)
    iterations = 0
    for iterations in range(1, config.a_max_iter + 1):
        dtt = 1j * A * curve.z_alpha - 1j
        A_new = ops.solve_second_kind(
            "I-Kr", fixed + 1j * ops.commutator(dtt, xi_r))
        delta = float(np.max(np.abs(A_new - A)))
        A = A_new
        if delta <= config.a_tol:
            break
    else:
        raise SolveError(
            "A iteration did not converge in %d passes (last delta %.3g)"
            % (config.a_max_iter, delta))
    dtt = 1j * A * curve.z_alpha - 1j
    return StageData(ops, q, Fr, zdots, b, A, dtt, iterations)


def compute_b(state, config=None):
    """Advection speed b of the flattened coordinates (real samples)."""
    config = config or _probe_config(state)
    stage = evaluate_stage(state.curve, state.u, state.vortices, config)
    return stage.b


def compute_A(state, config=None):
    """(A samples, Picard iteration count)."""
    config = config or _probe_config(state)
    stage = evaluate_stage(state.curve, state.u, state.vortices, config)
    return stage.A, stage.a_iterations


def compute_Dt_b(state, config=None, stage=None):
    """Material derivative of b from its five-term second-kind system."""
    config = config or _probe_config(state)
    if stage is None:
        stage = evaluate_stage(state.curve, state.u, state.vortices, config)
    ops = stage.ops
    curve = stage.curve
    grid = curve.grid
    u = state.u
    xi_r = _xi_ratio(curve)
    b_a = fourier_derivative(stage.b, 1, grid=grid)
    u_bar_a = fourier_derivative(np.conj(u), 1, grid=grid)
    rhs = ops.commutator(u, b_a / curve.z_alpha) \
        - ops.commutator(stage.dtt, xi_r) \
        - ops.commutator(u, u_bar_a / curve.z_alpha) \
        + ops.squared_difference_integral(u, np.conj(curve.z_alpha) - 1.0) \
        + 2j * _vortex_sq_field(curve, u, state.vortices, stage.zdots)
    return ops.solve_second_kind("I-Kr", rhs)


def _probe_config(state):
    """Loose config for one-off operator evaluations on a given state."""
    return EvolutionConfig(dt=1.0, t_end=1.0, chord_arc_floor=0.01,
                           d_i_floor=0.0, d_p_floor=0.0)


# -- stepping -----------------------------------------------------------

def _check_floors(curve, vortices, config, t):
    from .vortices import separations

    d_i, d_p = separations(curve, vortices)
    if d_i < config.d_i_floor or d_p < config.d_p_floor:
        raise EvolutionHalt(
            VORTEX_SEPARATION_FAILED, t,
            "d_I=%.4g d_P=%.4g floors (%.3g, %.3g)"
            % (d_i, d_p, config.d_i_floor, config.d_p_floor))


def _rhs(grid, zeta, u, vortices, config, t, stage=None):
    try:
        curve = CurveTrace.build(grid, zeta,
                                 chord_arc_floor=config.chord_arc_floor)
    except ChordArcError as exc:
        raise EvolutionHalt(CHORD_ARC_FAILED, t, str(exc)) from exc
    if stage is None:
        try:
            stage = evaluate_stage(curve, u, vortices, config)
        except NearBoundaryError as exc:
            raise EvolutionHalt(VORTEX_SEPARATION_FAILED, t, str(exc)) from exc
    if stage.taylor_margin <= config.taylor_floor:
        raise EvolutionHalt(
            TAYLOR_SIGN_FAILED, t,
            "min A|zeta_alpha| = %.4g" % stage.taylor_margin)
    d_zeta = u - dealiased_product(grid, stage.b, curve.z_alpha)
    d_u = stage.dtt - dealiased_product(
        grid, stage.b, fourier_derivative(u, 1, grid=grid))
    return d_zeta, d_u, stage.zdots, stage


def _mirror(values):
    """Samples of f(-alpha) on the grid (alpha_0 = -L uses periodicity)."""
    v = np.asarray(values)
    return np.roll(v[::-1], 1)


def symmetry_residual(grid, zeta, u, vortices):
    """Max deviation from the mirror symmetry of the symmetric-pair class:
    zeta(-a) = -conj(zeta(a)), u(-a) = -conj(u(a)), vortex set closed
    under z -> -conj(z)."""
    xi = zeta - grid.alpha
    res = float(np.max(np.abs(_mirror(xi) + np.conj(xi))))
    res = max(res, float(np.max(np.abs(_mirror(u) + np.conj(u)))))
    if vortices.count:
        d = vortices.positions[:, None] + np.conj(vortices.positions)[None, :]
        d = d - 2.0 * grid.L * np.round(d.real / (2.0 * grid.L))
        res = max(res, float(np.max(np.min(np.abs(d), axis=0))))
        # the mirror partner must carry the opposite strength
        partner = np.argmin(np.abs(d), axis=0)
        res = max(res, float(np.max(np.abs(
            vortices.strengths[partner] + vortices.strengths))))
    return res


def symmetrize(grid, zeta, u, vortices):
    """Average a state with its mirror image (exact symmetry enforcement)."""
    xi = zeta - grid.alpha
    xi = 0.5 * (xi - np.conj(_mirror(xi)))
    u = 0.5 * (u - np.conj(_mirror(u)))
    pos = vortices.positions.copy()
    if vortices.count:
        d = pos[:, None] + np.conj(pos)[None, :]
        d = d - 2.0 * grid.L * np.round(d.real / (2.0 * grid.L))
        partner = np.argmin(np.abs(d), axis=0)
        pos = 0.5 * (pos - np.conj(pos[partner]))
    return grid.alpha + xi, u, vortices.with_positions(pos)


def project_state(grid, zeta, u, vortices, config):
    """Re-impose holomorphicity of conj(zeta) - alpha and of Fr."""
    curve = CurveTrace.build(grid, zeta,
                             chord_arc_floor=config.chord_arc_floor)
    ops = CurveOperators(curve)
    xi_bar = np.conj(zeta) - grid.alpha
    zeta = grid.alpha + np.conj(ops.project_holomorphic(xi_bar))
    curve = CurveTrace.build(grid, zeta,
                             chord_arc_floor=config.chord_arc_floor)
    ops = CurveOperators(curve)
    q = vortices.surface_field(curve.z, grid.L)
    Fr = ops.project_holomorphic(np.conj(u) - q)
    return zeta, np.conj(Fr + q)


def step(state, config, project=True):
    """One RK4 step; raises EvolutionHalt when a floor fires."""
    grid = state.grid
    _check_floors(state.curve, state.vortices, config, state.t)
    z0, u0, p0 = state.zeta, state.u, state.vortices.positions
    dt = config.dt

    k1z, k1u, k1p, _ = _rhs(grid, z0, u0, state.vortices, config, state.t)
    vort = state.vortices
    k2z, k2u, k2p, _ = _rhs(
        grid, z0 + 0.5 * dt * k1z, u0 + 0.5 * dt * k1u,
        vort.with_positions(p0 + 0.5 * dt * k1p), config, state.t)
    k3z, k3u, k3p, _ = _rhs(
        grid, z0 + 0.5 * dt * k2z, u0 + 0.5 * dt * k2u,
        vort.with_positions(p0 + 0.5 * dt * k2p), config, state.t)
    k4z, k4u, k4p, _ = _rhs(
        grid, z0 + dt * k3z, u0 + dt * k3u,
        vort.with_positions(p0 + dt * k3p), config, state.t)

    zeta = z0 + (dt / 6.0) * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
    u = u0 + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
    pos = p0 + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
    vortices = vort.with_positions(pos)
    t = state.t + dt

    try:
        if project:
            zeta, u = project_state(grid, zeta, u, vortices, config)
        if config.enforce_symmetry:
            zeta, u, vortices = symmetrize(grid, zeta, u, vortices)
        return SurfaceState.build(grid, zeta, u, vortices, t=t,
                                  chord_arc_floor=config.chord_arc_floor)
    except ChordArcError as exc:
        raise EvolutionHalt(CHORD_ARC_FAILED, t, str(exc)) from exc


def evolve(state, config, observer=None):
    """Step until t_end; calls observer(step_index, state, stage=None)
    after each accepted step.  Returns the final state."""
    i = 0
    n_steps = int(round((config.t_end - state.t) / config.dt))
    for i in range(n_steps):
        cadence = config.projection_cadence
        project = cadence > 0 and (i + 1) % cadence == 0
        state = step(state, config, project=project)
        if observer is not None:
            observer(i + 1, state)
    return state


# -- initial data -------------------------------------------------------

def build_initial_data(grid, g=None, vortices=None, zeta0=None,
                       chord_arc_floor=0.05, parity_tol=1e-10,
                       compatibility_tol=1e-8):
    """Symmetric initial state from a free real odd function g.

    The velocity trace is conj(u) = (1/2)(I + H0) g + q, which makes Fr
    holomorphic by construction and gives Re u odd / Im u even when g
    is odd and the curve and vortex set are mirror symmetric.
    """
    if vortices is None:
        vortices = VortexSet.empty()
    if zeta0 is None:
        zeta0 = grid.alpha.astype(complex)
    zeta0 = grid.coerce(as_values(zeta0))
    xi = zeta0 - grid.alpha
    if np.max(np.abs(_mirror(xi) + np.conj(xi))) > parity_tol:
        raise InitialDataError(
            "curve parity violated: need Re(zeta-alpha) odd, Im even")
    if g is None:
        g = np.zeros(grid.n)
    g = as_values(g)
    if np.max(np.abs(g.imag)) > parity_tol:
        raise InitialDataError("g must be real")
    g = g.real
    if np.max(np.abs(_mirror(g) + g)) > parity_tol:
        raise InitialDataError("g must be odd")
    if vortices.count:
        if symmetry_residual(grid, zeta0, np.zeros(grid.n, dtype=complex),
                             vortices) > parity_tol:
            raise InitialDataError("vortex set is not mirror symmetric")
    curve = CurveTrace.build(grid, zeta0, chord_arc_floor=chord_arc_floor)
    ops = CurveOperators(curve)
    Fr = ops.project_plus_half(g.astype(complex))
    residual = l2_norm(ops.project_minus(Fr), grid=grid)
    if residual > compatibility_tol:
        raise InitialDataError(
            "compatibility residual %.3g exceeds %.3g"
            % (residual, compatibility_tol))
    q = vortices.surface_field(curve.z, grid.L)
    u = np.conj(Fr + q)
    return SurfaceState(0.0, curve, u, vortices)


def make_scaled_state(grid, eps, wave_modes=((1, 1.0),), vortices=None,
                      velocity_modes=None, chord_arc_floor=0.05,
                      fixed_point_tol=1e-13, max_iters=30):
    """Constrained wave state of amplitude eps for scaling families.

    wave_modes / velocity_modes are (m, complex amplitude) pairs seeding
    conj(zeta) - alpha and Fr with e^{-i k_m alpha} content (the
    holomorphic side); the curve constraint is then imposed by
    fixed-point projection so the result satisfies the state invariants
    to round-off, not just to O(eps^2).
    """
    if vortices is None:
        vortices = VortexSet.empty()
    alpha = grid.alpha
    xi_bar = np.zeros(grid.n, dtype=complex)
    for m, amp in wave_modes:
        k = np.pi * m / grid.L
        xi_bar += eps * amp * np.exp(-1j * k * alpha)
    if velocity_modes is None:
        velocity_modes = wave_modes
    Fr = np.zeros(grid.n, dtype=complex)
    for m, amp in velocity_modes:
        k = np.pi * m / grid.L
        Fr += eps * amp * np.exp(-1j * k * alpha)
    zeta = alpha + np.conj(xi_bar)
    for _ in range(max_iters):
        curve = CurveTrace.build(grid, zeta, chord_arc_floor=chord_arc_floor)
        ops = CurveOperators(curve)
        xi_new = ops.project_holomorphic(xi_bar)
        drift = float(np.max(np.abs(xi_new - xi_bar)))
        xi_bar = xi_new
        zeta = alpha + np.conj(xi_bar)
        if drift <= fixed_point_tol:
            break
    curve = CurveTrace.build(grid, zeta, chord_arc_floor=chord_arc_floor)
    ops = CurveOperators(curve)
    Fr = ops.project_holomorphic(Fr)
    q = vortices.surface_field(curve.z, grid.L)
    u = np.conj(Fr + q)
    return SurfaceState(0.0, curve, u, vortices)


# -- checkpointing ------------------------------------------------------

def _complex_list(values):
    v = np.asarray(values, dtype=complex)
    return [[float(c.real), float(c.imag)] for c in v]


def _complex_array(pairs):
    arr = np.asarray(pairs, dtype=float)
    if arr.size == 0:
        return np.zeros(0, dtype=complex)
    return arr[:, 0] + 1j * arr[:, 1]


def state_to_dict(state, config_hash=None):
    return {
        "schema": CHECKPOINT_SCHEMA,
        "t": float(state.t),
        "grid": {"n": state.grid.n, "half_period": state.grid.half_period},
        "zeta": _complex_list(state.zeta),
        "u": _complex_list(state.u),
        "vortex_positions": _complex_list(state.vortices.positions),
        "vortex_strengths": [float(s) for s in state.vortices.strengths],
        "config_hash": config_hash,
    }


def state_from_dict(record, chord_arc_floor=0.01):
    if record.get("schema") != CHECKPOINT_SCHEMA:
        raise ValueError("unrecognized checkpoint schema %r"
                         % (record.get("schema"),))
    grid = PeriodicGrid(int(record["grid"]["n"]),
                        float(record["grid"]["half_period"]))
    vortices = VortexSet.build(
        _complex_array(record["vortex_positions"]),
        np.asarray(record["vortex_strengths"], dtype=float)) \
        if record["vortex_strengths"] else VortexSet.empty()
    return SurfaceState.build(
        grid, _complex_array(record["zeta"]), _complex_array(record["u"]),
        vortices, t=record["t"], chord_arc_floor=chord_arc_floor)


def save_checkpoint(path, state, config_hash=None):
    with open(path, "w") as fh:
        json.dump(state_to_dict(state, config_hash), fh)


def load_checkpoint(path, chord_arc_floor=0.01):
    with open(path) as fh:
        record = json.load(fh)
    return state_from_dict(record, chord_arc_floor=chord_arc_floor), \
        record.get("config_hash")
