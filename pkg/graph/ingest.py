"""Edge-list ingestion: text files of "src dst" pairs plus an optional titles file."""

import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from models.graph import DirectedGraph, LoadReport
from utils.errors import GraphLoadError

logger = logging.getLogger(__name__)

MAX_NODE_ID = np.iinfo(np.int32).max - 1

PathLike = Union[str, Path]


def _find_malformed_line(path: Path) -> tuple[int, str]:
    """Scan the file line by line and return the first offending line."""
    with open(path, encoding="utf-8", errors="replace") as f:
        for line_number, line in enumerate(f, start=1):
            fields = line.split()
            if not fields:
                continue
            if len(fields) != 2:
                return line_number, f"expected 2 fields, got {len(fields)}: {line.strip()!r}"
            for token in fields:
                try:
                    value = int(token)
                except ValueError:
                    return line_number, f"not an integer: {token!r}"
                if value < 0:
                    return line_number, f"negative node id: {value}"
                if value > MAX_NODE_ID:
                    return line_number, f"node id {value} exceeds the supported maximum {MAX_NODE_ID}"
    return 0, "unparseable content"


def _find_undecodable_line(path: Path) -> int:
    """1-based number of the first line that is not valid UTF-8, 0 if none."""
    with open(path, "rb") as f:
        for line_number, raw in enumerate(f, start=1):
            try:
                raw.decode("utf-8")
            except UnicodeDecodeError:
                return line_number
    return 0


def _read_edge_array(path: Path) -> np.ndarray:
    """Parse the edge file into an (E, 2) int64 array."""
    try:
        frame = pd.read_csv(
            path,
            sep=r"\s+",
            header=None,
            dtype=str,
            skip_blank_lines=True,
            engine="c",
        )
    except pd.errors.EmptyDataError:
        return np.empty((0, 2), dtype=np.int64)
    except UnicodeDecodeError as e:
        line_number = _find_undecodable_line(path)
        logger.error(f"Edge list {path} is not valid UTF-8: {e}")
        raise GraphLoadError("invalid UTF-8", line_number or None) from e
    except pd.errors.ParserError as e:
        line_number, reason = _find_malformed_line(path)
        logger.error(f"Failed to parse edge list {path}: {e}")
        raise GraphLoadError(reason, line_number or None) from e

    if frame.shape[1] != 2 or frame.isna().any().any():
        line_number, reason = _find_malformed_line(path)
        raise GraphLoadError(reason, line_number or None)

    try:
        edges = frame.to_numpy().astype(np.int64)
    except (ValueError, OverflowError) as e:
        line_number, reason = _find_malformed_line(path)
        raise GraphLoadError(reason, line_number or None) from e

    if edges.size and (edges.min() < 0 or edges.max() > MAX_NODE_ID):
        line_number, reason = _find_malformed_line(path)
        raise GraphLoadError(reason, line_number or None)

    return edges


def read_titles(path: PathLike) -> tuple[str, ...]:
    """Read one UTF-8 title per LF-separated line; line index is the node id."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        line_number = _find_undecodable_line(path)
        logger.error(f"Titles file {path} is not valid UTF-8: {e}")
        raise GraphLoadError(f"invalid UTF-8 in titles file {path}", line_number or None) from e
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return tuple(line.rstrip("\r") for line in lines)


def ingest_edge_list(
    path: PathLike, titles_path: Optional[PathLike] = None
) -> tuple[DirectedGraph, LoadReport]:
    """
    Load an edge list into a DirectedGraph.

    Self-loops are dropped and duplicate (src, dst) pairs merged; both are counted in the
    returned LoadReport. A titles file shorter than the node count only produces a warning.

    Args:
        path: File of whitespace-separated "src dst" integer pairs, one per line
        titles_path: Optional file with one title per line

    Returns:
        Tuple of (graph, load report)

    Raises:
        GraphLoadError: On a malformed line or a node id out of range
        FileNotFoundError: If an input file does not exist
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Edge list not found: {path}")

    edges = _read_edge_array(path)
    titles = read_titles(titles_path) if titles_path is not None else None

    report = LoadReport()
    n_from_edges = int(edges.max()) + 1 if edges.size else 0
    n_nodes = max(n_from_edges, len(titles) if titles is not None else 0)

    if titles is not None and len(titles) < n_nodes:
        message = f"titles file has {len(titles)} lines but graph has {n_nodes} nodes"
        logger.warning(message)
        report.warnings.append(message)

    sources = edges[:, 0]
    targets = edges[:, 1]

    loops = sources == targets
    report.n_self_loops_dropped = int(np.count_nonzero(loops))
    sources = sources[~loops]
    targets = targets[~loops]

    keys = np.unique(sources * max(n_nodes, 1) + targets)
    report.n_duplicate_edges_merged = int(sources.shape[0] - keys.shape[0])
    sources = keys // max(n_nodes, 1)
    targets = keys % max(n_nodes, 1)

    graph = DirectedGraph.from_edges(n_nodes, sources, targets, titles=titles)

    report.n_nodes = n_nodes
    report.n_edges_kept = graph.n_edges
    report.n_dangling_nodes = int(graph.dangling_nodes.shape[0])

    logger.info(
        f"Ingested {path}: {report.n_nodes} nodes, {report.n_edges_kept} edges "
        f"({report.n_self_loops_dropped} self-loops dropped, "
        f"{report.n_duplicate_edges_merged} duplicates merged)"
    )
    return graph, report
