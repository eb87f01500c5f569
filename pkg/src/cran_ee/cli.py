"""Command line entry point.

    cran-ee simulate --config cfg.toml --scenario wired --output out.csv [--seed N]
    cran-ee transition-window --tau 1e-3 --t1 2e-4 [--voltage 48] [--grid 100 [--grid-output g.csv]]

Exit codes: 0 success, 2 usage, 3 configuration error, 4 runtime error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import transition
from .config import SimConfig, parse_config, validate
from .errors import ConfigError, SimulationError
from .scenarios import SCENARIOS, emit_csv
from .scheduler import dump_traces

EXIT_CONFIG = 3
EXIT_RUNTIME = 4

log = logging.getLogger("cran_ee")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cran-ee", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a scenario and write CSV rows")
    sim.add_argument("--config", help="TOML config file; built-in defaults when omitted")
    sim.add_argument("--scenario", choices=sorted(SCENARIOS), required=True)
    sim.add_argument("--output", required=True, help="CSV output path")
    sim.add_argument("--seed", type=int, help="override [scenario].seed")
    sim.add_argument("--trace-output", help="combined scenario: write decision traces as JSON lines")

    tw = sub.add_parser("transition-window", help="closed-form switching bound and admissibility")
    tw.add_argument("--tau", type=float, required=True, help="oscillation period in s")
    g = tw.add_mutually_exclusive_group(required=True)
    g.add_argument("--t1", type=float, help="source-free duration; prints the bound on t2")
    g.add_argument("--t2", type=float, help="step-response duration; prints the bound on t1")
    tw.add_argument("--voltage", type=float, default=1.0, help="nominal voltage U")
    tw.add_argument("--grid", type=int, metavar="N", help="also dump an N x N feasibility grid")
    tw.add_argument("--grid-output", help="grid CSV path (stdout when omitted)")
    return p


def _simulate(args) -> int:
    cfg = parse_config(args.config) if args.config else validate(SimConfig())
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    result = SCENARIOS[args.scenario](cfg)
    emit_csv(result, args.output)
    log.info("wrote %d rows to %s", len(result.rows), args.output)
    if args.trace_output and "traces" in result.extras:
        with open(args.trace_output, "w") as f:
            dump_traces(result.extras["traces"], f)
    return 0


def _window(args) -> int:
    tau, U = args.tau, args.voltage
    if args.t1 is not None:
        given, label = args.t1, "t2"
    else:
        given, label = args.t2, "t1"
    bound = transition.bound_with_flag(given, tau)
    t1, t2 = (given, bound.value) if label == "t2" else (bound.value, given)
    ok = transition.is_admissible(t1, t2, U, tau)
    print(f"max_{label}={bound.value!r}")
    print(f"unconstrained={str(bound.unconstrained).lower()}")
    print(f"t1={t1!r} t2={t2!r} admissible={str(ok).lower()}")
    if args.grid:
        if args.grid_output:
            with open(args.grid_output, "w") as f:
                transition.write_grid_csv(tau, args.grid, f, U)
        else:
            transition.write_grid_csv(tau, args.grid, sys.stdout, U)
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "simulate":
            return _simulate(args)
        return _window(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (SimulationError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
