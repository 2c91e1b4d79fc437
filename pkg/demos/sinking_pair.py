"""A counter-rotating vortex pair self-propels away from the surface.

Runs the interacting wave + pair system for a while and prints the
long-time monitors: the pair's half-separation stays confined, the
pair sinks at the predicted speed |lam|/(4 pi x), and the interface
stays small (the bootstrap bound in Sobolev norms).
"""

import numpy as np

from vortexwaves import evolve, longtime_monitors, record_for
from vortexwaves.presets import preset
from vortexwaves.runner import initial_state


def main():
    config = preset("pair-longtime").with_overrides(t_end=20.0)
    state = initial_state(config)
    evo = config.evolution_config()
    print("pair: lam = %g, x0 = %g, depth %g, eps = %g"
          % (config.lam, config.x0, -config.y0, config.eps))
    print("%6s %10s %10s %10s %12s" % ("t", "x/x0", "d_I", "y", "max triple"))

    hist = {"t": [], "x": [], "d": [], "y": [], "tr": []}

    def watch(i, s):
        if i % 20:
            return
        rec = record_for(s, x0=config.x0, with_at_over_a=False)
        hist["t"].append(s.t)
        hist["x"].append(rec.x_ratio)
        hist["d"].append(rec.d_I)
        hist["y"].append(float(s.vortices.positions[0].imag))
        hist["tr"].append(rec.sobolev_triple)
        print("%6.1f %10.5f %10.4f %10.4f %12.3e"
              % (s.t, rec.x_ratio, rec.d_I, hist["y"][-1],
                 max(rec.sobolev_triple)))

    evolve(state, evo, observer=watch)
    report = longtime_monitors(hist["t"], hist["x"], hist["d"], hist["y"],
                               hist["tr"], eps=config.eps,
                               lam=config.lam, x0=config.x0)
    print()
    print(report)
    print("predicted sink speed |lam|/(4 pi x0) = %.4f"
          % (abs(config.lam) / (4.0 * np.pi * config.x0)))


if __name__ == "__main__":
    main()
