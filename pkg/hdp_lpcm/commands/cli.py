"""
Entry point for the CLI. It parses the arguments and calls the corresponding function.
"""

import asyncio
import logging
import sys
from argparse import ArgumentParser, ArgumentTypeError
from asyncio import iscoroutinefunction
from typing import Any

import numpy as np
from pydantic import ValidationError

from hdp_lpcm.commands import diagnose, evaluate, fit, simulate, summarize
from hdp_lpcm.commands.utils.defaults import EXIT_INPUT, EXIT_NUMERICAL, EXIT_SUCCESS, EXIT_USAGE
from hdp_lpcm.exceptions import InputError, NumericalError, UsageError
from hdp_lpcm.logger import enable_logging, logger, set_log_level

IGNORED_KEYS = ["command", "func", "verbose", "quiet"]


def parse_positive_int(arg: Any) -> int:
    try:
        value = int(arg)
    except ValueError as exc:
        raise ArgumentTypeError(f"{arg} is not an integer") from exc

    if value < 1:
        raise ArgumentTypeError(f"{arg} must be greater than 0")
    return value


def parse_nonnegative_int(arg: Any) -> int:
    try:
        value = int(arg)
    except ValueError as exc:
        raise ArgumentTypeError(f"{arg} is not an integer") from exc

    if value < 0:
        raise ArgumentTypeError(f"{arg} must not be negative")
    return value


def exit_code(exc: Exception) -> int:
    """
    Maps an exception onto the exit code of the CLI.

    Unreadable or undecodable files count as input errors. Arithmetic and linear algebra failures, as well
    as any exception outside of the package hierarchy, count as numerical failures of the run.
    """
    if isinstance(exc, UsageError):
        return EXIT_USAGE
    if isinstance(exc, (InputError, ValidationError, OSError, UnicodeError)):
        return EXIT_INPUT
    if not isinstance(exc, (NumericalError, ArithmeticError, np.linalg.LinAlgError)):
        logger.debug("Treating unexpected %s as a numerical failure", type(exc).__name__)
    return EXIT_NUMERICAL


def _add_run_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("-c", "--config", help="Path to a JSON config file", dest="config_path", required=False)
    parser.add_argument("-o", "--out", help="Output directory, must not exist or be empty", required=False)


def cli() -> None:
    """
    Function that parses the CLI arguments and calls the corresponding function.
    """
    parser = ArgumentParser(prog="hdp_lpcm", description="Sticky-HDP latent position clustering of dynamic networks")
    parser.add_argument("-v", "--verbose", help="Log progress, repeat for debug output", action="count", default=0)
    parser.add_argument("-q", "--quiet", help="Disable logging", action="store_true")
    subparsers = parser.add_subparsers(dest="command", title="Commands", metavar="")

    # Parser for `simulate` command
    simulate_parser = subparsers.add_parser("simulate", help="Simulates benchmark networks with ground truth")
    simulate_parser.add_argument("preset", help="Preset scenario: homogeneous or inhomogeneous", nargs="?")
    _add_run_arguments(simulate_parser)
    simulate_parser.add_argument("--seed", help="Seed of the first replication", type=parse_nonnegative_int)
    simulate_parser.add_argument("--replications", help="Number of networks", type=parse_positive_int)
    simulate_parser.set_defaults(func=simulate)

    # Parser for `fit` command
    fit_parser = subparsers.add_parser("fit", help="Fits the model to an edge list")
    fit_parser.add_argument("input_path", help="Edge list with records t,i,j[,w]", nargs="?")
    _add_run_arguments(fit_parser)
    fit_parser.add_argument("--seed", help="Run seed", type=parse_nonnegative_int)
    fit_parser.add_argument("--chains", help="Number of independent chains", type=parse_positive_int)
    fit_parser.add_argument("--n-tune", help="Tuning sweeps", dest="n_tune", type=parse_nonnegative_int)
    fit_parser.add_argument("--n-burn", help="Burn-in sweeps", dest="n_burn", type=parse_nonnegative_int)
    fit_parser.add_argument("--n-keep", help="Sampling sweeps", dest="n_keep", type=parse_nonnegative_int)
    fit_parser.add_argument("--thin", help="Keep every thin-th sampling sweep", type=parse_positive_int)
    fit_parser.add_argument("--L", help="Truncation level of the HDP", dest="L", type=parse_positive_int)
    fit_parser.add_argument("--p", help="Dimension of the latent space", dest="p", type=parse_positive_int)
    fit_parser.add_argument("--n", help="Declared number of actors", dest="n", type=parse_positive_int)
    fit_parser.add_argument("--T", help="Declared number of time steps", dest="T", type=parse_positive_int)
    fit_parser.add_argument("--window", help="Aggregate blocks of time steps", type=parse_positive_int)
    fit_parser.add_argument(
        "--min-degree",
        help="Keep actors reaching this degree at some time step",
        dest="min_degree",
        type=parse_nonnegative_int,
    )
    fit_parser.add_argument("--format", help="Chain file format", dest="chain_format", choices=["jsonl", "bin"])
    fit_parser.add_argument(
        "--storage",
        help="Keep full samples or only positions and labels with running means of the rest",
        choices=["full", "summary"],
    )
    fit_parser.add_argument(
        "--checkpoint-every",
        help="Write a checkpoint every this many sweeps",
        dest="checkpoint_every",
        type=parse_positive_int,
    )
    fit_parser.add_argument("--resume", help="Continue from existing checkpoints", action="store_true", default=None)
    fit_parser.set_defaults(func=fit)

    # Parser for `summarize` command
    summarize_parser = subparsers.add_parser("summarize", help="Writes summary tables of fitted chains")
    summarize_parser.add_argument("chains", help="Chain files", nargs="+")
    _add_run_arguments(summarize_parser)
    summarize_parser.add_argument("--network", help="Edge list of the fitted network", required=False)
    summarize_parser.set_defaults(func=summarize)

    # Parser for `evaluate` command
    evaluate_parser = subparsers.add_parser("evaluate", help="Scores fitted chains against a ground truth")
    evaluate_parser.add_argument("chains", help="Chain files", nargs="+")
    _add_run_arguments(evaluate_parser)
    evaluate_parser.add_argument("--network", help="Edge list of the fitted network", required=False)
    evaluate_parser.add_argument("--truth", help="True labels with columns t,actor,label", required=False)
    evaluate_parser.set_defaults(func=evaluate)

    # Parser for `diagnose` command
    diagnose_parser = subparsers.add_parser("diagnose", help="Writes traces, autocorrelations and ESS")
    diagnose_parser.add_argument("chains", help="Chain files", nargs="+")
    _add_run_arguments(diagnose_parser)
    diagnose_parser.add_argument(
        "--max-lag", help="Largest autocorrelation lag", dest="max_lag", type=parse_nonnegative_int
    )
    diagnose_parser.set_defaults(func=diagnose)

    args = parser.parse_args()

    if args.quiet:
        enable_logging(False)
    elif args.verbose:
        enable_logging(True)
        set_log_level(logging.DEBUG if args.verbose > 1 else logging.INFO)

    if args.command:
        arguments = {key: value for key, value in vars(args).items() if key not in IGNORED_KEYS and value is not None}
        if args.command == "fit" and args.verbose and not args.quiet:
            arguments["progress"] = True

        try:
            if iscoroutinefunction(args.func):
                asyncio.run(args.func(**arguments))
            else:
                args.func(**arguments)
        except Exception as exc:  # pylint: disable=broad-exception-caught
            logger.error("%s failed: %s", args.func.__name__, exc)
            sys.exit(exit_code(exc))

        sys.exit(EXIT_SUCCESS)
    else:
        parser.print_help()
        sys.exit(EXIT_USAGE)
