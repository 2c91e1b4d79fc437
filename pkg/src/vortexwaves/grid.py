"""Uniform periodic grid and grid-sampled functions.

The spatial domain is one period [-L, L) of a 2L-periodic line.  All
spectral operators in this package act on samples taken at the n
equispaced points alpha_i = -L + 2L*i/n.  Wavenumbers are angular,
k_m = pi*m/L for m in {-n/2, ..., n/2 - 1}, so that exp(i*k_m*alpha)
is 2L-periodic.
"""

from dataclasses import dataclass, field

import numpy as np


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodicGrid:
    """Discretization of one period [-L, L) with n equispaced points."""

    n: int
    half_period: float = 16.0 * np.pi

    def __post_init__(self):
        if self.n % 2 != 0 or self.n < 16:
            raise GridError("n must be even and >= 16, got %r" % (self.n,))
        if not (self.half_period > 0):
            raise GridError("half_period must be positive")

    @property
    def L(self):
        return self.half_period

    @property
    def spacing(self):
        return 2.0 * self.L / self.n

    @property
    def alpha(self):
        """Grid points alpha_i = -L + 2L*i/n, strictly increasing."""
        return -self.L + self.spacing * np.arange(self.n)

    @property
    def modes(self):
        """Integer mode numbers in FFT order (0, 1, ..., -n/2, ..., -1)."""
        return np.fft.fftfreq(self.n, d=1.0 / self.n)

    @property
    def wavenumbers(self):
        """Angular wavenumbers k_m = pi*m/L in FFT order."""
        return np.pi * self.modes / self.L

    @property
    def k_max(self):
        return np.pi * (self.n // 2) / self.L

    @property
    def nyquist_index(self):
        return self.n // 2

    def coerce(self, values):
        """Validate samples against this grid and return a complex array."""
        v = np.asarray(values)
        if v.shape != (self.n,):
            raise GridError(
                "expected %d samples, got shape %r" % (self.n, v.shape))
        if not np.all(np.isfinite(v.view(float) if v.dtype.kind == 'c' else v)):
            raise GridError("non-finite samples")
        return v.astype(complex)

    def integrate(self, values):
        """Trapezoidal (= spectral, on periodic data) integral over the period."""
        return self.spacing * np.sum(values)


@dataclass
class GridFunction:
    """Complex samples of a 2L-periodic function at the grid points."""

    grid: PeriodicGrid
    values: np.ndarray = field(default=None)

    def __post_init__(self):
        self.values = self.grid.coerce(self.values)

    def __len__(self):
        return self.grid.n

    def copy(self):
        return GridFunction(self.grid, self.values.copy())


def as_values(f):
    """Accept a GridFunction or a plain array; return the sample array."""
    if isinstance(f, GridFunction):
        return f.values
    return np.asarray(f, dtype=complex)
