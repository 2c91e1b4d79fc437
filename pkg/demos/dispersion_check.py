"""Does the nonlinear stepper reproduce linear deep-water dispersion?

Seeds a tiny right-moving wave at wavenumber k and measures the phase
speed of its Fourier mode over several periods; for infinite depth and
unit gravity the exact answer is omega = sqrt(k).
"""

import numpy as np

from vortexwaves import (EvolutionConfig, PeriodicGrid, evolve,
                         make_scaled_state)


def measured_omega(grid, m, periods=5):
    k = np.pi * m / grid.L
    omega = np.sqrt(k)
    period = 2.0 * np.pi / omega
    state = make_scaled_state(grid, 1e-5, wave_modes=((m, 1.0),),
                              velocity_modes=((m, 1j * omega),))
    config = EvolutionConfig(dt=period / 64.0, t_end=periods * period,
                             d_i_floor=0.0, d_p_floor=0.0)
    coeff0 = np.fft.fft(np.conj(state.zeta) - grid.alpha) / grid.n
    phases, times = [], []

    def watch(i, s):
        c = np.fft.fft(np.conj(s.zeta) - grid.alpha) / grid.n
        phases.append(np.angle(c[-m] / coeff0[-m]))
        times.append(s.t)

    evolve(state, config, observer=watch)
    return abs(np.polyfit(times, np.unwrap(phases), 1)[0]), omega


def main():
    grid = PeriodicGrid(128)
    print("%6s %12s %12s %12s" % ("k", "omega_meas", "sqrt(k)", "rel err"))
    for m in (8, 16, 32, 48):
        got, want = measured_omega(grid, m)
        print("%6.2f %12.6f %12.6f %12.2e"
              % (np.pi * m / grid.L, got, want, abs(got - want) / want))


if __name__ == "__main__":
    main()
