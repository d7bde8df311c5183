"""Per-node report tables ordered by PageRank index K."""

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from models.graph import title_index
from models.results import NodeStats, PageRankResult
from utils.errors import SelectionError, StatsError

NODE_COLUMNS = ["node_id", "title", "k_index", "mu", "delta_mu", "white_freq", "red_freq"]


@dataclass
class NodeSelection:
    """Exactly one of top_k, node_ids or titles picks the reported nodes."""

    top_k: Optional[int] = None
    node_ids: list[int] = field(default_factory=list)
    titles: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        chosen = sum(
            (self.top_k is not None, bool(self.node_ids), bool(self.titles))
        )
        if chosen != 1:
            raise StatsError("select nodes by exactly one of top-K, id list or title list")
        if self.top_k is not None and self.top_k < 1:
            raise StatsError(f"top-K must be positive, got {self.top_k}")


def _title(titles: Sequence[str], node: int) -> str:
    return titles[node] if node < len(titles) else f"#{node}"


def node_table(
    node_stats: NodeStats,
    pagerank: PageRankResult,
    titles: Sequence[str],
    node_ids: Optional[np.ndarray] = None,
) -> pd.DataFrame:
    """Per-node CSV rows in the given node order (all nodes by id when omitted)."""
    nodes = np.arange(node_stats.n_nodes) if node_ids is None else np.asarray(node_ids)
    return pd.DataFrame(
        {
            "node_id": nodes,
            "title": [_title(titles, int(node)) for node in nodes],
            "k_index": pagerank.k_index[nodes],
            "mu": node_stats.mu[nodes],
            "delta_mu": node_stats.delta_mu[nodes],
            "white_freq": node_stats.white_freq[nodes],
            "red_freq": node_stats.red_freq[nodes],
        },
        columns=NODE_COLUMNS,
    )


def report_nodes(
    node_stats: NodeStats,
    pagerank: PageRankResult,
    selection: NodeSelection,
    titles: Sequence[str] = (),
) -> pd.DataFrame:
    """
    Report rows for a node selection, sorted by K.

    Raises:
        SelectionError: If a requested title is not present (all misses are listed)
        StatsError: If a node id is out of range
    """
    n_nodes = node_stats.n_nodes
    if selection.top_k is not None:
        nodes = pagerank.order[: selection.top_k]
    elif selection.node_ids:
        nodes = np.asarray(selection.node_ids, dtype=np.int64)
        if np.any(nodes < 0) or np.any(nodes >= n_nodes):
            raise StatsError(f"node ids out of range for {n_nodes} nodes")
    else:
        index = title_index(titles)
        missing = [name for name in selection.titles if name not in index]
        if missing:
            raise SelectionError(missing)
        nodes = np.asarray([index[name] for name in selection.titles], dtype=np.int64)

    nodes = nodes[np.argsort(pagerank.k_index[nodes], kind="stable")]
    return node_table(node_stats, pagerank, titles, nodes)


def report_extremes(
    node_stats: NodeStats,
    pagerank: PageRankResult,
    n: int,
    titles: Sequence[str] = (),
) -> pd.DataFrame:
    """
    The n most negative and n most positive mu values.

    Fixed and persistently white nodes are skipped; equal mu values order by K.
    """
    candidates = np.flatnonzero(node_stats.averaged)
    mu = node_stats.mu[candidates]
    k = pagerank.k_index[candidates]

    negative = candidates[np.lexsort((k, mu))][:n]
    positive = candidates[np.lexsort((k, -mu))][:n]

    frames = []
    for side, nodes in (("negative", negative), ("positive", positive)):
        frame = node_table(node_stats, pagerank, titles, nodes)
        frame.insert(0, "rank", np.arange(1, len(nodes) + 1))
        frame.insert(0, "side", side)
        frames.append(frame)
    return pd.concat(frames, ignore_index=True)
