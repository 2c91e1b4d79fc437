"""Singular integral operators attached to a parametrized interface.

Curve Hilbert transform, double layer and its adjoint, commutators,
squared-difference kernels, second-kind solves, and interior Cauchy
evaluation.  All principal values use the alternating-point (odd
offset) trapezoidal rule on the periodized cotangent kernel

    1/(z(a) - z(b))  ->  (pi/2L) cot(pi (z(a)-z(b)) / 2L),

which is spectrally accurate for analytic integrands and needs no
regularization parameter.  Operators are dense n x n matrices; systems
are solved by direct factorization (desk scale, n <= 2048).
"""

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .curve import ChordArcError, CurveTrace
from .grid import GridFunction, as_values

SOLVE_KINDS = ("I-K", "I+K", "I+K*", "I-Kr")


class SolveError(RuntimeError):
    pass


class NearBoundaryError(ValueError):
    pass


def cot_kernel(dz, L):
    """Periodized Cauchy kernel (pi/2L) cot(pi dz / 2L)."""
    a = np.pi / (2.0 * L)
    return a / np.tan(a * dz)


class CurveOperators:
    """Dense discretizations of the boundary operators on one curve.

    Matrices are built lazily and cached; a CurveOperators instance is
    meant to be created once per curve evaluation and shared by all the
    solves and applications on that curve.
    """

    def __init__(self, curve: CurveTrace):
        self.curve = curve
        self.grid = curve.grid
        n = self.grid.n
        h = self.grid.spacing
        z = curve.z
        dz = z[:, None] - z[None, :]
        np.fill_diagonal(dz, 1.0)  # masked below
        idx = np.arange(n)
        mask = ((idx[:, None] - idx[None, :]) % 2 == 1).astype(float)
        self._V0 = cot_kernel(dz, self.grid.L) * mask
        # Hilbert matrix: (1/pi i) V0(z_i - z_j) z_alpha(j) * 2h on odd offsets
        self._H = (2.0 * h / (np.pi * 1j)) * self._V0 * curve.z_alpha[None, :]
        self._lu = {}

    # -- applications ---------------------------------------------------

    def hilbert(self, f):
        """Curve Hilbert transform (1/pi i) pv int z_b/(z(a)-z(b)) f db."""
        return self._H @ as_values(f)

    def project_minus(self, f):
        """(I - H) f."""
        v = as_values(f)
        return v - self._H @ v

    def project_plus_half(self, f):
        """(1/2)(I + H) f, the projection onto the holomorphic class."""
        v = as_values(f)
        return 0.5 * (v + self._H @ v)

    def project_holomorphic(self, f):
        """Exact projection onto the class (I - H) f = 0.

        P0 = (1/2)(I + H) fixes the class and kills its complement
        wherever H is involutive, but only halves constants (H
        annihilates them, while (I - H) c = c puts them in the
        complement).  The Richardson combination 2 P0^2 - P0 = H P0
        removes the constant component exactly instead of damping it
        by halves per application (incomplete removal would leave an
        equilibrium constant proportional to the step size when used
        as a per-step constraint projection).
        """
        v = as_values(f)
        return self._H @ (0.5 * (v + self._H @ v))

    def double_layer(self, f):
        """K f for real f (real part of the Cauchy kernel integral)."""
        v = np.asarray(as_values(f).real, dtype=float)
        return self._H.real @ v

    def adjoint_matrix(self):
        za = self.curve.z_alpha
        unit = za / np.abs(za)
        return (-(unit[:, None] / za[None, :]) * np.abs(za)[None, :]
                * self._H).real

    def adjoint_double_layer(self, f):
        """K* f for real f; adjoint of K in the |z_alpha|-weighted product."""
        v = np.asarray(as_values(f).real, dtype=float)
        return self.adjoint_matrix() @ v

    def commutator(self, g, h):
        """[g, H] h with the nonsingular difference kernel.

        Kernel (g(a)-g(b)) z_b/(z(a)-z(b)) has a removable singularity
        for smooth g; the alternating rule never touches the diagonal.
        """
        gv = as_values(g)
        hv = as_values(h)
        return ((gv[:, None] - gv[None, :]) * self._H) @ hv

    def squared_difference_integral(self, u, w):
        """(1/pi i) pv int ((u(a)-u(b)) / (z(a)-z(b)))^2 w(b) db.

        Plain d beta measure (no z_b factor); the squared kernel is
        periodized factor-by-factor with the cotangent substitution.
        """
        uv = as_values(u)
        wv = as_values(w)
        h = self.grid.spacing
        kern = ((uv[:, None] - uv[None, :]) * self._V0) ** 2
        return (2.0 * h / (np.pi * 1j)) * (kern @ wv)

    # -- second-kind solves ---------------------------------------------

    def _system(self, kind):
        n = self.grid.n
        if kind in ("I-K", "I-Kr"):
            return np.eye(n) - self._H.real
        if kind == "I+K":
            return np.eye(n) + self._H.real
        if kind == "I+K*":
            return np.eye(n) + self.adjoint_matrix()
        raise ValueError("unknown kind %r; expected one of %s"
                         % (kind, (SOLVE_KINDS,)))

    def solve_second_kind(self, kind, rhs, residual_tol=1e-11):
        """Solve the dense second-kind system for real data.

        kind "I-Kr" is the real-part inversion route for (I - H) h = g
        with h real: taking real parts gives (I - Re H) h = Re g, and
        Re H coincides with the double layer K on real data.
        """
        b = np.asarray(as_values(rhs).real, dtype=float)
        if kind not in self._lu:
            mat = self._system(kind)
            self._lu[kind] = (mat, lu_factor(mat))
        mat, lu = self._lu[kind]
        x = lu_solve(lu, b)
        res = np.max(np.abs(mat @ x - b))
        scale = 1.0 + np.max(np.abs(b))
        if not (res <= residual_tol * scale):
            cond = np.linalg.cond(mat)
            raise SolveError(
                "second-kind solve residual %.3g exceeds %.3g (cond ~ %.3g)"
                % (res, residual_tol * scale, cond))
        return x

    # -- interior evaluation --------------------------------------------

    def cauchy_interior(self, density, points, eps_near=2.0):
        """Cauchy integral (1/2pi i) int z_b/(w - z(b)) density db at interior w.

        Points must lie strictly inside the fluid (below the curve) at
        distance >= eps_near grid spacings; closer evaluation is
        refused rather than regularized.  The mean term restores
        constants exactly: for density c the result is c at every
        interior point (the deep closure of the periodized cell
        contributes the other half of the constant).
        """
        d = as_values(density)
        pts = np.atleast_1d(np.asarray(points, dtype=complex))
        grid = self.grid
        h = grid.spacing
        za = self.curve.z_alpha
        floor = eps_near * h
        out = np.empty(pts.shape, dtype=complex)
        mean_term = (h / (4.0 * grid.L)) * np.sum(d * za)
        for i, w in enumerate(pts):
            dz = self.curve.z - w
            dz -= 2.0 * grid.L * np.round(dz.real / (2.0 * grid.L))
            jmin = int(np.argmin(np.abs(dz)))
            if np.abs(dz[jmin]) < floor:
                raise NearBoundaryError(
                    "point %s within %.3g of the interface (floor %.3g)"
                    % (w, np.abs(dz[jmin]), floor))
            if w.imag >= self.curve.z[jmin].imag:
                raise NearBoundaryError(
                    "point %s is not below the interface" % (w,))
            kern = cot_kernel(w - self.curve.z, grid.L)
            out[i] = (h / (2.0 * np.pi * 1j)) * np.sum(za * kern * d) + mean_term
        if np.isscalar(points) or np.asarray(points).ndim == 0:
            return out[0]
        return out


def curve_hilbert(curve, f):
    out = CurveOperators(curve).hilbert(f)
    return GridFunction(curve.grid, out) if isinstance(f, GridFunction) else out


def double_layer(curve, f):
    out = CurveOperators(curve).double_layer(f)
    return GridFunction(curve.grid, out) if isinstance(f, GridFunction) else out


def adjoint_double_layer(curve, f):
    out = CurveOperators(curve).adjoint_double_layer(f)
    return GridFunction(curve.grid, out) if isinstance(f, GridFunction) else out


def solve_second_kind(curve, kind, rhs):
    out = CurveOperators(curve).solve_second_kind(kind, rhs)
    return GridFunction(curve.grid, out) if isinstance(rhs, GridFunction) else out


def commutator(curve, g, h):
    out = CurveOperators(curve).commutator(g, h)
    return GridFunction(curve.grid, out) if isinstance(g, GridFunction) else out


def cauchy_interior(curve, density, points, eps_near=2.0):
    return CurveOperators(curve).cauchy_interior(density, points, eps_near)
