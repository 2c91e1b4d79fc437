"""What happens when the Taylor sign condition fails at t = 0?

A single vortex whose strength exceeds the stability threshold makes
-dP/dn negative above it; the simulation driver detects this in the
initial screening and halts with a named status instead of stepping
into an ill-posed regime.
"""

import json
import tempfile

from vortexwaves.cli import main as cli_main
from vortexwaves.taylor import a1_single_vortex_closed
from vortexwaves.presets import preset


def main():
    config = preset("taylor-fail")
    val, cls = a1_single_vortex_closed(config.lam, config.y0)
    print("preset 'taylor-fail': lam = %.4f at depth %.1f" %
          (config.lam, -config.y0))
    print("closed-form A1 above the vortex: %.4f (%s)" % (val, cls))

    with tempfile.TemporaryDirectory() as out:
        code = cli_main(["simulate", "--preset", "taylor-fail",
                         "--out", out])
        status = json.load(open(out + "/status.json"))
    print("exit code %d, status %r at t = %g"
          % (code, status["status"], status["t"]))
    print("detail: %s" % status["detail"])


if __name__ == "__main__":
    main()
