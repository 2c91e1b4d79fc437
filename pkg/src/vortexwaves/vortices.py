"""Point-vortex state and motion laws.

A "vortex" on the periodized domain is a 2L-periodic array of identical
vortices.  The unit complex-velocity kernel is the periodized Cauchy
kernel plus a uniform counterflow,

    V(dz) = (pi/2L) cot(pi dz / 2L) + i pi/2L,

chosen so that V decays as Im dz -> +infinity.  With this choice the
vortex part of the surface velocity is mean-free and the trace
V(z(alpha) - z_j) is exactly (to quadrature accuracy) the boundary
value of a function holomorphic above the curve, which keeps the
holomorphic-projection identities of the flat model exact in the
periodized model.  V(dz) -> 1/dz pointwise as L -> infinity.

The derivative kernels V2 = -V' and V3 = -V2'/2 are the periodized
analogues of 1/dz^2 and 1/dz^3 (the counterflow constant drops out).
"""

from dataclasses import dataclass

import numpy as np

from .singular import CurveOperators


class VortexStateError(ValueError):
    pass


def vortex_kernel(dz, L):
    """Periodized 1/dz with the upward-decaying counterflow: V(dz)."""
    a = np.pi / (2.0 * L)
    return a / np.tan(a * dz) + 1j * a


def vortex_kernel_sq(dz, L):
    """Periodized 1/dz^2 (equals -V')."""
    a = np.pi / (2.0 * L)
    return a * a / np.sin(a * dz) ** 2


def vortex_kernel_cube(dz, L):
    """Periodized 1/dz^3 (equals -V2'/2)."""
    a = np.pi / (2.0 * L)
    return a ** 3 * np.cos(a * dz) / np.sin(a * dz) ** 3


@dataclass(frozen=True)
class VortexSet:
    """Positions z_j strictly inside the fluid and constant strengths."""

    positions: np.ndarray
    strengths: np.ndarray

    @classmethod
    def build(cls, positions, strengths):
        pos = np.atleast_1d(np.asarray(positions, dtype=complex))
        lam = np.atleast_1d(np.asarray(strengths, dtype=float))
        if pos.shape != lam.shape:
            raise VortexStateError("positions and strengths length mismatch")
        if pos.size and np.any(pos.imag >= 0):
            raise VortexStateError("vortices must lie below the mean line")
        return cls(pos, lam)

    @classmethod
    def empty(cls):
        return cls(np.zeros(0, dtype=complex), np.zeros(0))

    @property
    def count(self):
        return self.positions.size

    def with_positions(self, positions):
        pos = np.atleast_1d(np.asarray(positions, dtype=complex))
        if pos.shape != self.strengths.shape:
            raise VortexStateError("position count changed")
        return VortexSet(pos, self.strengths)

    def surface_field(self, zeta, L):
        """q(alpha) = -sum_j lambda_j i/(2 pi) V(zeta - z_j)."""
        q = np.zeros_like(np.asarray(zeta, dtype=complex))
        for zj, lam in zip(self.positions, self.strengths):
            q -= lam * 1j / (2.0 * np.pi) * vortex_kernel(zeta - zj, L)
        return q


@dataclass(frozen=True)
class SymmetricPair:
    """Mirror pair: z1 = -x + iy, z2 = x + iy, strengths (lam, -lam), lam < 0."""

    x: float
    y: float
    lam: float

    def __post_init__(self):
        if not (self.x > 0 and self.y < 0 and self.lam < 0):
            raise VortexStateError(
                "need x > 0, y < 0, lam < 0; got x=%g y=%g lam=%g"
                % (self.x, self.y, self.lam))

    def to_vortex_set(self):
        return VortexSet.build(
            [-self.x + 1j * self.y, self.x + 1j * self.y],
            [self.lam, -self.lam])


def separations(curve, vortices):
    """(d_I, d_P): min vortex-to-interface and pairwise distances.

    d_I is the distance to the sampled polyline vertices (error
    O(spacing^2), acceptable for monitors); d_P is +inf for N <= 1.
    Periodized metric throughout.
    """
    L = curve.grid.L
    pos = vortices.positions
    if pos.size == 0:
        return np.inf, np.inf
    d = curve.z[None, :] - pos[:, None]
    d -= 2.0 * L * np.round(d.real / (2.0 * L))
    d_i = float(np.min(np.abs(d)))
    if pos.size <= 1:
        return d_i, np.inf
    dp = pos[:, None] - pos[None, :]
    dp -= 2.0 * L * np.round(dp.real / (2.0 * L))
    iu = np.triu_indices(pos.size, k=1)
    return d_i, float(np.min(np.abs(dp[iu])))


def holomorphic_field_at(ops: CurveOperators, surface_velocity, vortices,
                         points, eps_near=2.0):
    """F at interior points, from the combined holomorphic density.

    The density conj(D_t zeta) + sum_j lambda_j i/(2 pi) V(zeta - z_j)
    equals the trace of F directly (no subtraction of vortex fields
    near the evaluation points), per the velocity recovery formula.
    """
    u = np.asarray(surface_velocity, dtype=complex)
    q = vortices.surface_field(ops.curve.z, ops.grid.L)
    density = np.conj(u) - q
    return ops.cauchy_interior(density, points, eps_near=eps_near)


def _pair_sum(vortices, L, j):
    """Conjugate accumulator for sum_{k != j} lambda_k i/(2 pi conj(z_j - z_k)).

    Periodized with the plain cotangent kernel: a vortex's own periodic
    images cancel by symmetry, so the self-term is exactly zero.  (For
    zero total circulation, the (H3) regime, this is the exact advection
    law of the periodized model; for nonzero total circulation it omits
    a uniform frame counterflow of size sum lambda / 4L.)
    """
    a = np.pi / (2.0 * L)
    zj = vortices.positions[j]
    total = 0.0 + 0.0j
    for k in range(vortices.count):
        if k == j:
            continue
        total -= vortices.strengths[k] * 1j / (2.0 * np.pi) \
            * a / np.tan(a * (zj - vortices.positions[k]))
    return total


def vortex_velocity(curve, surface_velocity, vortices, j=None, ops=None,
                    F_values=None, eps_near=2.0):
    """Desingularized velocity of vortex j (or all vortices if j is None).

    dz_j/dt = sum_{k != j} lambda_k i/(2 pi conj(z_j - z_k)) + conj(F(z_j))
    in periodized form.  F may be passed precomputed (F_values) to avoid
    re-evaluating the Cauchy integral.
    """
    if vortices.count == 0:
        return np.zeros(0, dtype=complex)
    if ops is None:
        ops = CurveOperators(curve)
    idx = range(vortices.count) if j is None else [j]
    if F_values is None:
        F_values = holomorphic_field_at(
            ops, surface_velocity, vortices,
            vortices.positions[list(idx)], eps_near=eps_near)
    F_values = np.atleast_1d(np.asarray(F_values, dtype=complex))
    out = np.array([np.conj(_pair_sum(vortices, curve.grid.L, jj))
                    + np.conj(F_values[i])
                    for i, jj in enumerate(idx)])
    return out if j is None else out[0]


def vortex_acceleration(curve, surface_velocity, acceleration_trace,
                        vortices, zdots, j=None, ops=None, eps_near=2.0):
    """Acceleration of vortex j from the differentiated velocity law.

    d^2 z_j/dt^2 = - sum_{k != j} lambda_k i conj((zdot_j - zdot_k)
                     * V2(z_j - z_k)) / (2 pi)
                   + conj(F_z(z_j)) zdot_j + conj(F_t(z_j)),
    with F_z and F_t evaluated by interior Cauchy integrals of their
    boundary traces:
        F_z trace = d_alpha Fr / zeta_alpha,
        F_t trace = D_t Fr - D_t zeta * d_alpha Fr / zeta_alpha,
    where Fr = conj(D_t zeta) - q and
        D_t Fr = conj(D_t^2 zeta) - sum lambda_j i/(2 pi) V2(zeta-z_j)
                 (D_t zeta - zdot_j) * (-1 from V' = -V2).
    """
    from .spectral import fourier_derivative

    if ops is None:
        ops = CurveOperators(curve)
    grid = curve.grid
    L = grid.L
    u = np.asarray(surface_velocity, dtype=complex)
    dtt = np.asarray(acceleration_trace, dtype=complex)
    zeta = curve.z
    q = vortices.surface_field(zeta, L)
    Fr = np.conj(u) - q
    Fr_a = fourier_derivative(Fr, 1, grid=grid)
    fz_trace = Fr_a / curve.z_alpha
    dt_q = np.zeros_like(q)
    for zj, lam, zd in zip(vortices.positions, vortices.strengths, zdots):
        dt_q += lam * 1j / (2.0 * np.pi) * vortex_kernel_sq(zeta - zj, L) \
            * (u - zd)
    dt_Fr = np.conj(dtt) - dt_q
    ft_trace = dt_Fr - u * fz_trace
    idx = range(vortices.count) if j is None else [j]
    pts = vortices.positions[list(idx)]
    fz = np.atleast_1d(ops.cauchy_interior(fz_trace, pts, eps_near=eps_near))
    ft = np.atleast_1d(ops.cauchy_interior(ft_trace, pts, eps_near=eps_near))
    out = []
    for i, jj in enumerate(idx):
        zj = vortices.positions[jj]
        pair = 0.0 + 0.0j
        for k in range(vortices.count):
            if k == jj:
                continue
            pair -= vortices.strengths[k] * 1j / (2.0 * np.pi) * np.conj(
                vortex_kernel_sq(zj - vortices.positions[k], L)
                * (zdots[jj] - zdots[k]))
        out.append(pair + np.conj(fz[i]) * zdots[jj] + np.conj(ft[i]))
    out = np.asarray(out, dtype=complex)
    return out if j is None else out[0]
