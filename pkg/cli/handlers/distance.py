"""Distance command: hop counts from both fixed groups and the delta-mu profile."""

import argparse
import logging
from pathlib import Path

from cli.decorators import EXIT_OK, handle_errors
from config.settings import Settings
from config.storage import OutputLayout
from graph.distance import (
    Direction,
    bfs_from_group,
    delta_mu_by_distance,
    diagonal_mass_fraction,
    distance_table,
    joint_counts_table,
    joint_distance_counts,
    profile_table,
)
from graph.storage import load_binary
from results.repository import ResultsRepository
from utils.validators import resolve_selectors

logger = logging.getLogger(__name__)


@handle_errors
def cmd_distance(args: argparse.Namespace, settings: Settings) -> int:
    """
    Write distances.csv and joint_counts.csv, plus distance_profile.csv with --results.

    Args:
        args: Parsed arguments (graph, red, blue, direction, out, results, slot)
        settings: Application settings
    """
    graph = load_binary(args.graph)
    ids = resolve_selectors(graph, args.red + args.blue)
    red_nodes, blue_nodes = ids[: len(args.red)], ids[len(args.red) :]
    direction = Direction(args.direction)

    d_r = bfs_from_group(graph, red_nodes, direction)
    d_b = bfs_from_group(graph, blue_nodes, direction)
    counts = joint_distance_counts(d_r, d_b)

    out = OutputLayout(results_dir=args.out)
    out.root.mkdir(parents=True, exist_ok=True)
    writer = ResultsRepository(out)
    written: list[Path] = [
        writer.write_csv(distance_table(graph, d_r, d_b), out.root / "distances.csv"),
        writer.write_csv(joint_counts_table(counts), out.root / "joint_counts.csv"),
    ]
    print(
        f"{sum(counts.values())} nodes reachable from both groups, "
        f"{diagonal_mass_fraction(counts):.4f} on the three central diagonals"
    )

    if args.results:
        results = ResultsRepository(OutputLayout(results_dir=args.results))
        summary = next(
            (s for s in results.load_slot_summaries() if s.slot_index == args.slot), None
        )
        if summary is None:
            raise ValueError(f"slot {args.slot} not found in {args.results}")
        node_stats, _ = results.load_node_stats(summary)
        if node_stats.n_nodes != graph.n_nodes:
            raise ValueError(
                f"results cover {node_stats.n_nodes} nodes but the graph has {graph.n_nodes}"
            )
        rows = delta_mu_by_distance(d_r, d_b, node_stats)
        written.append(writer.write_csv(profile_table(rows), out.root / "distance_profile.csv"))

    for path in written:
        logger.info(f"Wrote {path}")
    return EXIT_OK
