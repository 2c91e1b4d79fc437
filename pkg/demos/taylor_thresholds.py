"""Where does a submerged vortex destabilize the flat free surface?

Sweeps the strength-to-depth ratio lam^2/|y|^3 for a single vortex and
for a counter-rotating mirror pair, locating the analytic thresholds
8 pi^2/3 and 16 pi^2 where the strong Taylor sign condition fails.
"""

import numpy as np

from vortexwaves import (a1_flat_quadrature, a1_pair_closed,
                         a1_single_vortex_closed, sweep_pair,
                         sweep_single_vortex)
from vortexwaves.vortices import SymmetricPair, VortexSet


def main():
    print("single vortex at depth 1")
    print("%10s %12s %12s" % ("lam^2", "A1(0)", "class"))
    for ratio in (10.0, 20.0, 26.0, 26.3189, 27.0, 30.0):
        lam = -np.sqrt(ratio)
        val, cls = a1_single_vortex_closed(lam, -1.0)
        print("%10.4f %12.6f %12s" % (ratio, val, cls))
    print("threshold 8 pi^2/3 = %.4f" % (8.0 * np.pi ** 2 / 3.0))

    # cross-check the closed form against independent quadrature
    lam = -np.sqrt(20.0)
    v = VortexSet.build([-1.0j], [lam])
    quad = a1_flat_quadrature(np.array([0.0]), v, vortex_velocities=[0.0])
    closed, _ = a1_single_vortex_closed(lam, -1.0)
    print("quadrature cross-check: |diff| = %.3g" % abs(quad[0] - closed))

    print()
    print("mirror pair at x = |y| = 1")
    rows = sweep_pair(np.linspace(140.0, 180.0, 9), x=1.0, y=-1.0)
    for lam, x, y, a1, cls in rows:
        print("ratio %8.2f  A1 = %+.5f  %s" % (lam ** 2, a1, cls))
    print("threshold 16 pi^2 = %.4f" % (16.0 * np.pi ** 2))


if __name__ == "__main__":
    main()
