"""Command-line front end.

Verbs:
  simulate     run a scenario from --config or --preset into --out
  sweep-taylor classify Taylor-sign stability over a parameter grid
  verify       run the fast oracle/property batteries
  resume       continue a checkpointed run in its output directory
"""

import argparse
import sys

import numpy as np

from .presets import ConfigError, PRESETS, ScenarioConfig, preset
from .runner import (EXIT_CONFIG, EXIT_IO, resume_simulation,
                     run_simulation, run_taylor_sweep, verify_suite)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="vortexwaves",
        description="Water-wave and point-vortex interface simulator.")
    sub = parser.add_subparsers(dest="verb", required=True)

    sim = sub.add_parser("simulate", help="run a scenario")
    sim.add_argument("--config", help="scenario config JSON path")
    sim.add_argument("--preset", choices=sorted(PRESETS),
                     help="named built-in scenario")
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--until", type=float, default=None,
                     help="override the final time")
    sim.add_argument("--seed", type=int, default=None,
                     help="override the config seed")

    sweep = sub.add_parser("sweep-taylor", help="Taylor threshold sweep")
    sweep.add_argument("--kind", choices=("single", "pair"),
                       default="single")
    sweep.add_argument("--out", required=True, help="output CSV path")
    sweep.add_argument("--ratio-min", type=float, default=8.0)
    sweep.add_argument("--ratio-max", type=float, default=30.0)
    sweep.add_argument("--count", type=int, default=100)
    sweep.add_argument("--x", type=float, default=1.0)
    sweep.add_argument("--y", type=float, default=-1.0)

    ver = sub.add_parser("verify", help="oracle/property batteries")
    ver.add_argument("selector", nargs="?", default="all")
    ver.add_argument("--seed", type=int, default=0)

    res = sub.add_parser("resume", help="continue a checkpointed run")
    res.add_argument("--out", required=True,
                     help="output directory of the interrupted run")
    res.add_argument("--until", type=float, default=None)
    return parser


def _load_scenario(args):
    if (args.config is None) == (args.preset is None):
        raise ConfigError("provide exactly one of --config or --preset")
    if args.config is not None:
        config = ScenarioConfig.load(args.config)
    else:
        config = preset(args.preset)
    if args.seed is not None:
        config = config.with_overrides(seed=args.seed)
    return config


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.verb == "simulate":
            config = _load_scenario(args)
            return run_simulation(config, args.out, until=args.until)
        if args.verb == "sweep-taylor":
            if args.count > 0:
                ratios = np.linspace(args.ratio_min, args.ratio_max,
                                     args.count)
            else:
                ratios = ()
            return run_taylor_sweep(args.out, kind=args.kind,
                                    ratios=ratios, x=args.x, y=args.y)
        if args.verb == "verify":
            return verify_suite(args.selector)
        if args.verb == "resume":
            return resume_simulation(args.out, until=args.until)
        return EXIT_CONFIG
    except (ConfigError, FileNotFoundError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG if isinstance(exc, ConfigError) else EXIT_IO
    except OSError as exc:
        print("i/o error: %s" % exc, file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
