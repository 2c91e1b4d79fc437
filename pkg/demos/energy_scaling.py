"""Smallness structure of the flattened evolution coefficients.

For wave data of amplitude eps the advection speed b and the Taylor
coefficient deviation A - 1 are quadratic in eps, the cubic field G_c
is cubic, and the flattened energy E_s agrees with its quadratic norm
comparison to higher order.  This script fits the log-log slopes.
"""

import numpy as np

from vortexwaves import (PeriodicGrid, compute_A, compute_b, cubic_fields,
                         energy_Es, make_scaled_state, sobolev_norm)


def main():
    grid = PeriodicGrid(256)
    eps_list = (1e-3, 5e-4, 2.5e-4)
    rows = []
    for eps in eps_list:
        st = make_scaled_state(grid, eps, wave_modes=((6, 1.0), (9, 0.5j)),
                               velocity_modes=((7, 0.8),))
        A, _ = compute_A(st)
        b = compute_b(st)
        g_c, _ = cubic_fields(st)
        e_s, comp = energy_Es(st)
        rows.append((np.max(np.abs(A - 1.0)), np.max(np.abs(b)),
                     sobolev_norm(g_c, 4.0, grid=grid), abs(e_s - comp)))
        print("eps %.1e  |A-1| %.3e  |b| %.3e  |G_c|_H4 %.3e  "
              "|E_s - comp| %.3e" % ((eps,) + rows[-1]))

    logs = np.log(np.asarray(rows))
    x = np.log(eps_list)
    names = ("A-1", "b", "G_c", "E_s gap")
    print()
    for j, name in enumerate(names):
        slope = np.polyfit(x, logs[:, j], 1)[0]
        print("%8s scales like eps^%.2f" % (name, slope))


if __name__ == "__main__":
    main()
