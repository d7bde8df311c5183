"""Graph ingestion and PageRank export commands."""

import argparse
import logging
from pathlib import Path

from cli.decorators import EXIT_OK, handle_errors
from config.settings import Settings
from graph.ingest import ingest_edge_list
from graph.pagerank import compute_pagerank, pagerank_table
from graph.storage import load_binary, save_binary
from utils.formatters import format_load_report

logger = logging.getLogger(__name__)


@handle_errors
def cmd_ingest(args: argparse.Namespace, settings: Settings) -> int:
    """
    Convert an edge list (and titles) into a binary graph cache.

    Args:
        args: Parsed arguments (edges, titles, out)
        settings: Application settings
    """
    graph, report = ingest_edge_list(args.edges, args.titles)
    save_binary(graph, args.out)
    print(format_load_report(report))
    return EXIT_OK


@handle_errors
def cmd_pagerank(args: argparse.Namespace, settings: Settings) -> int:
    """
    Write node_id,title,p,k_index for a cached graph.

    Args:
        args: Parsed arguments (graph, out, alpha, tol, max_iter)
        settings: Application settings
    """
    graph = load_binary(args.graph)
    result = compute_pagerank(graph, alpha=args.alpha, tol=args.tol, max_iter=args.max_iter)

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    pagerank_table(graph, result).to_csv(out, index=False, lineterminator="\n")
    logger.info(f"PageRank table written to {out}")
    return EXIT_OK
