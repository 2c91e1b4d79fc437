"""Interface parametrization and chord-arc monitoring.

A CurveTrace holds samples of z(alpha) with z(alpha) - alpha periodic.
Distances between parameters are measured in the periodized metric
(shortest image), and the chord |z(alpha) - z(beta)| uses the matching
image shift, which is well defined because z - alpha is periodic.
"""

from dataclasses import dataclass

import numpy as np

from .grid import PeriodicGrid
from .spectral import fourier_derivative


class ChordArcError(RuntimeError):
    """Raised when the measured lower chord-arc constant falls below the floor."""

    def __init__(self, c1, c2, floor):
        self.c1 = c1
        self.c2 = c2
        self.floor = floor
        super().__init__(
            "chord-arc collapse: C1=%.6g below floor %.3g (C2=%.6g)"
            % (c1, floor, c2))


def periodized_offset(delta, L):
    """Wrap real offsets into (-L, L]."""
    return delta - 2.0 * L * np.round(delta / (2.0 * L))


@dataclass(frozen=True)
class CurveTrace:
    """Immutable interface trace with cached derivative and chord-arc data."""

    grid: PeriodicGrid
    z: np.ndarray
    z_alpha: np.ndarray
    chord_arc: tuple  # (C1, C2)

    @classmethod
    def build(cls, grid, z, chord_arc_floor=0.05):
        z = grid.coerce(z)
        xi = z - grid.alpha
        z_alpha = 1.0 + fourier_derivative(xi, 1, grid=grid)
        c1, c2 = chord_arc_constants(grid, z)
        if not (c1 > chord_arc_floor):
            raise ChordArcError(c1, c2, chord_arc_floor)
        obj = cls(grid, z, z_alpha, (c1, c2))
        return obj

    @property
    def min_speed(self):
        return float(np.min(np.abs(self.z_alpha)))

    def is_flat(self, tol=0.0):
        return np.max(np.abs(self.z - self.grid.alpha)) <= tol


def chord_arc_constants(grid, z):
    """Measured C1 = min, C2 = max of |z(a)-z(b)| / |a-b| over the grid.

    Offsets are wrapped to the nearest periodic image; the chord uses
    the same image shift.  Pure periodized-metric computation, O(n^2).
    """
    alpha = grid.alpha
    da = alpha[:, None] - alpha[None, :]
    shift = 2.0 * grid.L * np.round(da / (2.0 * grid.L))
    dz = z[:, None] - z[None, :] - shift
    da = da - shift
    iu = np.triu_indices(grid.n, k=1)
    ratio = np.abs(dz[iu]) / np.abs(da[iu])
    return float(np.min(ratio)), float(np.max(ratio))


def periodized_point_distance(grid, z, w):
    """Min over grid samples of the periodized distance |z(alpha_i) - w|."""
    d = z - w
    d = d - 2.0 * grid.L * np.round(d.real / (2.0 * grid.L))
    return float(np.min(np.abs(d)))
