"""Taylor sign quantity A1: closed forms, quadrature paths, criteria.

A1 = A |Z_alpha|^2 in conformal variables; A1 / |Z_alpha| equals the
normal pressure derivative -dP/dn, so its sign classifies interface
stability.  For a flat interface with point-vortex-induced velocity the
quadratic integral term has a residue closed form (a double sum over
vortex pairs); independently it can be computed by real-line quadrature
or, on the periodized grid, spectrally through the commutator identity

    (1/2 pi) int |u(a) - u(b)|^2 / (a-b)^2 db
        = -Im{ [u, H] d_a conj(u) }(a).

Both paths are exposed for cross-validation.
"""

from dataclasses import dataclass

import numpy as np

from .grid import PeriodicGrid, as_values
from .spectral import flat_hilbert, fourier_derivative, real_line_quadrature
from .vortices import VortexSet, vortex_kernel, vortex_kernel_sq

DEGENERACY_BAND = 1e-8

STRONG, DEGENERATE, FAILED = "strong", "degenerate", "failed"


class TaylorInputError(ValueError):
    pass


@dataclass
class TaylorReport:
    samples: np.ndarray
    infimum: float
    argmin: float
    classification: str
    margin: float  # infimum of A1 / |Z_alpha|

    @classmethod
    def from_samples(cls, alpha, a1, speed=None):
        a1 = np.asarray(a1, dtype=float)
        i = int(np.argmin(a1))
        inf = float(a1[i])
        if speed is None:
            margin = inf
        else:
            margin = float(np.min(a1 / np.asarray(speed, dtype=float)))
        return cls(a1, inf, float(np.asarray(alpha)[i]),
                   classify(inf, float(np.max(np.abs(a1)))), margin)


def classify(infimum, scale=1.0):
    if abs(infimum) <= DEGENERACY_BAND * (1.0 + scale):
        return DEGENERATE
    return STRONG if infimum > 0 else FAILED


# -- closed forms -------------------------------------------------------

def a1_single_vortex_closed(lam, y):
    """A1 at the point above a single vortex at i*y: 1 - 3 lam^2/(8 pi^2 |y|^3).

    Classification flips across lam^2/|y|^3 = 8 pi^2 / 3.
    """
    if not y < 0:
        raise TaylorInputError("vortex depth y must be negative")
    val = 1.0 - 3.0 * lam ** 2 / (8.0 * np.pi ** 2 * abs(y) ** 3)
    return val, classify(val)


def a1_pair_closed(lam, x, y):
    """A1 at the symmetry axis for the mirror pair at +-x + iy."""
    if not (x > 0 and y < 0):
        raise TaylorInputError("need x > 0, y < 0")
    r2 = x * x + y * y
    return 1.0 + (lam ** 2 / (4.0 * np.pi ** 2)) \
        * (x ** 4 + 4.0 * y ** 4 - 7.0 * x * x * y * y) \
        / (abs(y) * r2 ** 3)


# -- real-line paths for the flat configuration ------------------------

def _line_velocity(alpha, vortices):
    """Vortex-induced D_t Z on the flat real line."""
    out = np.zeros_like(np.asarray(alpha, dtype=complex))
    for zj, lam in zip(vortices.positions, vortices.strengths):
        out += lam * 1j / (2.0 * np.pi * np.conj(alpha - zj))
    return out


def _line_vortex_velocities(vortices):
    """F == 0 advection velocities on the real line."""
    out = np.zeros(vortices.count, dtype=complex)
    for j in range(vortices.count):
        for k in range(vortices.count):
            if k != j:
                out[j] += vortices.strengths[k] * 1j / (
                    2.0 * np.pi * np.conj(
                        vortices.positions[j] - vortices.positions[k]))
    return out


def _vortex_correction_line(alpha, vortices, zdots):
    dtz = _line_velocity(alpha, vortices)
    corr = np.zeros_like(np.asarray(alpha, dtype=float))
    for zj, lam, zd in zip(vortices.positions, vortices.strengths, zdots):
        corr -= (lam / np.pi) * ((dtz - zd) / (alpha - zj) ** 2).real
    return corr


def a1_flat_closed_form(alpha, vortices, vortex_velocities=None):
    """Residue closed form of A1 on the flat line at sample points alpha.

    A1 = 1 + sum_{j,k} (lam_j lam_k/(2 pi)^2) * i /
             ((a - z_j) conj(a - z_k) (conj(z_k) - z_j))
         - sum_j (lam_j/pi) Re{(D_t Z - zdot_j)/(a - z_j)^2}.
    """
    alpha = np.asarray(alpha, dtype=float)
    if vortex_velocities is None:
        vortex_velocities = _line_vortex_velocities(vortices)
    dbl = np.zeros_like(alpha)
    for zj, lj in zip(vortices.positions, vortices.strengths):
        for zk, lk in zip(vortices.positions, vortices.strengths):
            term = (lj * lk / (2.0 * np.pi) ** 2) \
                * (1.0 / ((alpha - zj) * np.conj(alpha - zk))) \
                * (1j / (np.conj(zk) - zj))
            dbl += term.real
    return 1.0 + dbl + _vortex_correction_line(
        alpha, vortices, vortex_velocities)


def a1_flat_quadrature(alpha, vortices, vortex_velocities=None, n=2048):
    """Independent quadrature path: the integral term by sinh-rule
    quadrature of (1/2 pi) int |D_t Z(a) - D_t Z(b)|^2/(a-b)^2 db."""
    alpha = np.asarray(alpha, dtype=float)
    if vortex_velocities is None:
        vortex_velocities = _line_vortex_velocities(vortices)
    out = np.empty_like(alpha)
    for i, a in enumerate(alpha):
        ua = _line_velocity(np.asarray([a]), vortices)[0]

        def integrand(beta, a=a, ua=ua):
            ub = _line_velocity(beta, vortices)
            return np.abs(ua - ub) ** 2 / (a - beta) ** 2

        out[i] = real_line_quadrature(integrand, n=n).real / (2.0 * np.pi)
    return 1.0 + out + _vortex_correction_line(
        alpha, vortices, vortex_velocities)


# -- periodized grid engine --------------------------------------------

def _integral_term_spectral(grid, dtz):
    """Grid evaluation of the quadratic integral term via the commutator
    identity with the flat Hilbert transform."""
    dtz = as_values(dtz)
    du = fourier_derivative(np.conj(dtz), 1, grid=grid)
    bracket = dtz * flat_hilbert(du, grid=grid) \
        - flat_hilbert(dtz * du, grid=grid)
    return -bracket.imag


def a1_general(grid, dtz, vortices=None, vortex_velocities=None,
               conformal_images=None, conformal_derivs=None):
    """A1 on the grid from conformal data (flat conformal coordinates).

    The quadratic integral term is evaluated spectrally; the vortex
    correction uses the caller-supplied conformal images omega0_j =
    Phi(z_j) and map derivatives c0_j = (Phi^{-1})_z(omega0_j).  In flat
    configurations omega0_j = z_j and c0_j = 1.
    """
    dtz = as_values(dtz)
    a1 = 1.0 + _integral_term_spectral(grid, dtz)
    if vortices is not None and vortices.count:
        if conformal_images is None:
            conformal_images = vortices.positions
        if conformal_derivs is None:
            conformal_derivs = np.ones(vortices.count, dtype=complex)
        if vortex_velocities is None:
            raise TaylorInputError(
                "vortex velocities required with a nonempty vortex set")
        alpha = grid.alpha
        for zj, lam, zd, w0, c0 in zip(
                vortices.positions, vortices.strengths, vortex_velocities,
                conformal_images, conformal_derivs):
            a1 -= (lam / np.pi) * (
                (dtz - zd) * vortex_kernel_sq(alpha - w0, grid.L) / c0).real
    return TaylorReport.from_samples(grid.alpha, a1)


def periodized_vortex_velocity_trace(grid, vortices):
    """Vortex-induced D_t Z on the flat periodized line (F == 0)."""
    q = vortices.surface_field(grid.alpha.astype(complex), grid.L)
    return np.conj(q)


def periodized_pair_velocities(grid, vortices):
    a = np.pi / (2.0 * grid.L)
    out = np.zeros(vortices.count, dtype=complex)
    for j in range(vortices.count):
        for k in range(vortices.count):
            if k != j:
                out[j] -= np.conj(
                    vortices.strengths[k] * 1j / (2.0 * np.pi)
                    * a / np.tan(a * (vortices.positions[j]
                                      - vortices.positions[k])))
    return out


def a1_flat_general(grid_or_dtz, vortices, vortex_velocities=None,
                    grid=None):
    """TaylorReport for a flat interface carrying point vortices.

    Accepts either a PeriodicGrid (velocity trace defaults to the
    vortex-induced field) or a velocity-trace GridFunction.  Sampled on
    the periodized grid; the real-line closed-form and quadrature paths
    are exposed separately as a1_flat_closed_form / a1_flat_quadrature.
    """
    if isinstance(grid_or_dtz, PeriodicGrid):
        g = grid_or_dtz
        dtz = periodized_vortex_velocity_trace(g, vortices)
    else:
        dtz = as_values(grid_or_dtz)
        g = grid if grid is not None else grid_or_dtz.grid
    if vortex_velocities is None:
        vortex_velocities = periodized_pair_velocities(g, vortices)
    return a1_general(g, dtz, vortices, vortex_velocities)


# -- sufficient criterion ----------------------------------------------

def strong_taylor_criterion(curve, vortices, F_sup=0.0, beta0=None):
    """Sufficient (not necessary) strong-Taylor inequality.

    With lam~ = sum |lam_j| / pi, conformal distances proxied by
    d~_I = d_I / C2 and d~_P = d_P, the criterion is

        lam~^2/(2 d~_I^3 beta0) + lam~^2/(2 d~_I^2 d~_P)
            + 2 F_sup lam~ / d~_I^2  <  beta0.

    Returns (passed, slack) with slack = beta0 - left side.
    """
    from .vortices import separations

    if beta0 is None:
        beta0 = curve.min_speed
    if not beta0 > 0:
        raise TaylorInputError("beta0 must be positive")
    lam_t = float(np.sum(np.abs(vortices.strengths))) / np.pi
    if lam_t == 0.0:
        return True, beta0
    d_i, d_p = separations(curve, vortices)
    c2 = curve.chord_arc[1]
    dti = d_i / c2
    lhs = lam_t ** 2 / (2.0 * dti ** 3 * beta0)
    if np.isfinite(d_p):
        lhs += lam_t ** 2 / (2.0 * dti ** 2 * d_p)
    lhs += 2.0 * F_sup * lam_t / dti ** 2
    slack = beta0 - lhs
    return slack > 0, slack


# -- sweeps ------------------------------------------------------------

def sweep_single_vortex(ratios, y=-1.0):
    """Rows (lam, x, y, a1_center, classification) over lam^2/|y|^3 ratios."""
    rows = []
    for r in np.asarray(ratios, dtype=float):
        lam = -np.sqrt(r * abs(y) ** 3)
        val, cls = a1_single_vortex_closed(lam, y)
        rows.append((lam, 0.0, y, val, cls))
    return rows


def sweep_pair(ratios, x=1.0, y=-1.0):
    """Rows over lam^2/|y|^3 ratios for the mirror pair at +-x + iy."""
    rows = []
    for r in np.asarray(ratios, dtype=float):
        lam = -np.sqrt(r * abs(y) ** 3)
        val = a1_pair_closed(lam, x, y)
        rows.append((lam, x, y, val, classify(val, max(1.0, abs(val)))))
    return rows
