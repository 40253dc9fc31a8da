"""Command-line entry point: ``dqd-discord {fig1,traces,steady,state,kernel}``."""
from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

from .errors import ConfigError, ResolutionError, StateError
from .sweep import SweepConfig, run

log = logging.getLogger("dqd_discord")

EXIT_OK, EXIT_CONFIG, EXIT_RESOLUTION, EXIT_IO = 0, 2, 3, 4

SUBCOMMANDS = {
    "fig1": "fig1_grid",
    "traces": "coherence_traces",
    "steady": "steady_state_vs_alpha2",
    "state": "single_state",
    "kernel": None,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dqd-discord",
                                     description="Phonon-induced discord sweeps for two "
                                                 "quantum-dot qubits.",
                                     epilog="exit codes: 0 ok, 2 bad config or state, "
                                            "3 spectral grid too coarse, 4 I/O error")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file with SweepConfig fields")
        p.add_argument("--out", help="output directory (overrides output_dir)")
        p.add_argument("--distance-nm", type=float)
        p.add_argument("--temperature-k", type=float, action="append",
                       help="temperature in K; repeat for several")
        p.add_argument("--alpha2", type=float, action="append",
                       help="single-qubit occupation |alpha|^2; repeat for several")
        p.add_argument("--jobs", type=int)
        p.add_argument("--no-convergence-check", action="store_true",
                       help="skip the doubled-grid kernel comparison in the manifest")
        if name == "state":
            p.add_argument("--state-file", required=True,
                           help="JSON 4x4 array of [re, im] pairs")
    return parser


def config_from_args(args) -> SweepConfig:
    config = SweepConfig.load(args.config) if args.config else SweepConfig()
    updates = {}
    experiment = SUBCOMMANDS[args.command]
    if experiment is not None:
        updates["experiment"] = experiment
    if args.out:
        updates["output_dir"] = args.out
    if args.distance_nm is not None:
        updates["distance_nm"] = args.distance_nm
    if args.temperature_k:
        updates["temperatures_K"] = args.temperature_k
    if args.alpha2:
        updates["alpha2_values"] = args.alpha2
    if args.jobs is not None:
        updates["jobs"] = args.jobs
    try:
        return dataclasses.replace(config, **updates)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        outputs = run(config, state_file=getattr(args, "state_file", None),
                      kernel_only=args.command == "kernel",
                      check_convergence=not args.no_convergence_check)
    except ResolutionError as exc:
        log.error("numerical resolution: %s", exc)
        return EXIT_RESOLUTION
    except (ConfigError, StateError) as exc:
        log.error("configuration: %s", exc)
        return EXIT_CONFIG
    except OSError as exc:
        log.error("I/O: %s", exc)
        return EXIT_IO
    for name, rows in outputs.items():
        log.info("wrote %s (%d rows)", name, rows)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
