"""Command-line parser: one subcommand per handler."""

import argparse

from cli.handlers.analyze import cmd_analyze
from cli.handlers.distance import cmd_distance
from cli.handlers.ingest import cmd_ingest, cmd_pagerank
from cli.handlers.scaling import cmd_scaling
from cli.handlers.simulate import cmd_simulate
from config.experiment import MatrixMode
from graph.distance import Direction
from graph.pagerank import DEFAULT_ALPHA, DEFAULT_MAX_ITER, DEFAULT_TOL
from utils.validators import validate_seed


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _seed(value: str) -> int:
    number = int(value, 0)
    is_valid, error = validate_seed(number)
    if not is_valid:
        raise argparse.ArgumentTypeError(error)
    return number


def _add_groups(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument(
        "--red",
        nargs="+",
        required=required,
        metavar="SELECTOR",
        help="Red fixed nodes: exact titles or #node-ids, one per argument (commas are kept)",
    )
    parser.add_argument(
        "--blue",
        nargs="+",
        required=required,
        metavar="SELECTOR",
        help="Blue fixed nodes: exact titles or #node-ids, one per argument (commas are kept)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inof",
        description="Opinion formation on directed graphs with fixed red and blue node groups",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    ingest = subparsers.add_parser("ingest", help="Edge list and titles to binary graph cache")
    ingest.add_argument("--edges", required=True, help="Whitespace-separated 'src dst' pairs")
    ingest.add_argument("--titles", default=None, help="One title per line, line index = node id")
    ingest.add_argument("--out", required=True, help="Binary cache to write")
    ingest.set_defaults(handler=cmd_ingest)

    pagerank = subparsers.add_parser("pagerank", help="Write node_id,title,p,k_index CSV")
    pagerank.add_argument("--graph", required=True)
    pagerank.add_argument("--out", required=True)
    pagerank.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    pagerank.add_argument("--tol", type=float, default=DEFAULT_TOL)
    pagerank.add_argument("--max-iter", type=_positive_int, default=DEFAULT_MAX_ITER)
    pagerank.set_defaults(handler=cmd_pagerank)

    # Defaults stay None so values from --config survive unless a flag is given
    simulate = subparsers.add_parser("simulate", help="Run Monte Carlo slots into a results dir")
    simulate.add_argument("--config", default=None, help="JSON experiment file")
    simulate.add_argument("--graph", default=None)
    _add_groups(simulate, required=False)
    simulate.add_argument("--matrix", choices=[m.value for m in MatrixMode], default=None)
    simulate.add_argument("--tau", type=_positive_int, default=None, help="Sweeps (default 20)")
    simulate.add_argument("--realizations", type=_positive_int, default=None)
    simulate.add_argument("--slots", type=_positive_int, default=None)
    simulate.add_argument("--seed", type=_seed, default=None)
    simulate.add_argument("--out", default=None)
    simulate.add_argument(
        "--threads", type=_positive_int, default=None, help="Defaults to INOF_THREADS"
    )
    simulate.add_argument(
        "--early-stop", action="store_true", default=None, help="Stop after a sweep with no flips"
    )
    simulate.add_argument("--flip-threshold", type=float, choices=[0.0, 1.0], default=None)
    simulate.add_argument("--dump-realizations", action="store_true", default=None)
    simulate.add_argument(
        "--trace", action="store_true", default=None, help="Write f_r after every sweep"
    )
    simulate.set_defaults(handler=cmd_simulate)

    analyze = subparsers.add_parser("analyze", help="Statistics from a results directory")
    analyze.add_argument("--results", required=True)
    analyze.add_argument("--slot", type=int, default=0, help="Slot used by per-slot outputs")
    analyze.add_argument("--histogram", choices=["fr", "mu"], default=None)
    analyze.add_argument("--bin-width", type=float, default=None)
    analyze.add_argument("--fluctuations", action="store_true")
    analyze.add_argument("--correlate-slots", action="store_true")
    analyze.add_argument("--covariate", default=None, help="CSV of title,value")
    analyze.add_argument("--covariate-column", choices=["delta_mu", "mu"], default="delta_mu")
    analyze.add_argument("--top-k", type=_positive_int, default=None)
    analyze.add_argument("--select-titles", default=None, help="File with one title per line")
    analyze.add_argument("--extremes", type=_positive_int, default=None)
    analyze.add_argument("--slot-pair-density", action="store_true")
    analyze.set_defaults(handler=cmd_analyze)

    distance = subparsers.add_parser("distance", help="Hop counts from the fixed groups")
    distance.add_argument("--graph", required=True)
    _add_groups(distance, required=True)
    distance.add_argument(
        "--direction", choices=[d.value for d in Direction], default=Direction.FORWARD.value
    )
    distance.add_argument("--out", required=True)
    distance.add_argument("--results", default=None, help="Results dir for the delta-mu profile")
    distance.add_argument("--slot", type=int, default=0)
    distance.set_defaults(handler=cmd_distance)

    scaling = subparsers.add_parser("scaling", help="Fluctuation scaling across N_r values")
    scaling.add_argument("--results", nargs="+", required=True, metavar="DIR")
    scaling.add_argument("--out", required=True)
    scaling.set_defaults(handler=cmd_scaling)

    return parser
